#pragma once

// One-dimensional quadrature kernels.
//
//   integrate_finite                adaptive Gauss-Kronrod (7/15) bisection
//   integrate_singular              tanh-sinh on a finite interval
//   integrate_improper              x = a + t/(1-t) compactification + tanh-sinh
//   integrate_oscillatory_improper  inter-zero partial sums + Wynn epsilon
//
// Every kernel returns a QuadResult carrying an error estimate; `integrate`
// dispatches on the endpoint classification of a DomainSpec.

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>

namespace pil::quad {

using Integrand = std::function<double(double)>;

enum class EndpointKind { regular, integrable_singularity, infinite };

struct OscillatoryTail {
  /// k -> k-th sign change of the integrand on the tail, k = 0, 1, 2, ...
  /// Must be strictly increasing and unbounded.
  std::function<double(std::size_t)> phase_zero;
};

struct DomainSpec {
  double lower = 0.0;
  double upper = 1.0;
  EndpointKind lower_kind = EndpointKind::regular;
  EndpointKind upper_kind = EndpointKind::regular;
  std::optional<OscillatoryTail> oscillatory_tail;

  static DomainSpec finite(double a, double b);
  static DomainSpec singular(double a, double b, bool lower_singular = true,
                             bool upper_singular = true);
  /// [a, +inf); `lower_singular` marks an integrable singularity at a.
  static DomainSpec half_line(double a, bool lower_singular = false);
  static DomainSpec whole_line();
  static DomainSpec oscillatory(double a, std::function<double(std::size_t)> phase_zero);

  bool is_finite() const;
  bool has_singular_endpoint() const;
  bool has_infinite_endpoint() const;
};

/// Throws InvalidArgumentError when the invariants of `d` do not hold.
void validate(const DomainSpec& d);

enum class Status { converged, max_depth, tail_truncated };

std::string_view to_string(Status s);

struct QuadResult {
  double value = 0.0;
  double abs_err_est = 0.0;
  std::size_t n_evals = 0;
  Status status = Status::converged;

  bool converged() const { return status == Status::converged; }
};

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_subdivisions = 2000;
  double tail_decay_threshold = 1e-14;

  double tolerance_for(double value) const;
};

void validate(const QuadConfig& cfg);

QuadResult integrate_finite(const Integrand& f, const DomainSpec& domain,
                            const QuadConfig& cfg = {});

QuadResult integrate_singular(const Integrand& f, const DomainSpec& domain,
                              const QuadConfig& cfg = {});

QuadResult integrate_improper(const Integrand& f, const DomainSpec& domain,
                              const QuadConfig& cfg = {});

QuadResult integrate_oscillatory_improper(const Integrand& f, const DomainSpec& domain,
                                          const QuadConfig& cfg = {});

/// Picks the kernel from the domain's endpoint kinds.
QuadResult integrate(const Integrand& f, const DomainSpec& domain, const QuadConfig& cfg = {});

}  // namespace pil::quad
