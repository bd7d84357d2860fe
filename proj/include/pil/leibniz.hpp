#pragma once

// Differentiation under the integral sign, mechanized.
//
// A ParametricIntegral bundles f(x, alpha), optionally df/dalpha, its x-domain
// and a known anchor value I(alpha0). From these the engine evaluates I(alpha)
// directly, evaluates dI/dalpha as the integral of df/dalpha, checks the
// interchange numerically, looks for an integrable dominating envelope, and
// rebuilds I(alpha) from the anchor by integrating dI/dalpha in alpha.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pil/quadrature.hpp"

namespace pil::leibniz {

using quad::DomainSpec;
using quad::QuadConfig;
using quad::QuadResult;

using ParamIntegrand = std::function<double(double x, double alpha)>;
using ParamFunction = std::function<double(double alpha)>;

/// Interval of admissible parameter values; either end may be open or infinite.
struct ParamInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double alpha) const;
  bool in_closure(double alpha) const;
  /// Strictly inside: both alpha - h and alpha + h are admissible for some h > 0.
  bool interior(double alpha) const;
  bool is_boundary(double alpha) const;
};

struct Anchor {
  double alpha0 = 0.0;
  double value0 = 0.0;
};

struct ParametricIntegral {
  ParamIntegrand integrand;
  ParamIntegrand d_alpha;  // may be empty; central differences are used then
  std::function<DomainSpec(double alpha)> domain;
  ParamInterval param_domain;
  std::optional<Anchor> anchor;
  ParamFunction rhs_closed;       // dI/dalpha, may be empty
  ParamFunction solution_closed;  // I(alpha), may be empty
  bool rhs_singular_at_anchor = false;
  // Parameter values where the integrand itself stops being finite on the domain.
  std::vector<double> singular_alphas;
};

/// I(alpha) by direct quadrature.
QuadResult eval_direct(const ParametricIntegral& p, double alpha, const QuadConfig& cfg = {});

/// Integral of df/dalpha at alpha (analytic rule if present, else central
/// difference of the integrand with h = cbrt(eps) * max(1, |alpha|)).
QuadResult deriv_under_integral(const ParametricIntegral& p, double alpha,
                                const QuadConfig& cfg = {});

struct InterchangeReport {
  double alpha = 0.0;
  double lhs = 0.0;  // central difference of the direct integral
  double rhs = 0.0;  // integral of the parameter derivative
  double discrepancy = 0.0;
  double tolerance = 0.0;  // tol plus the second-order bias allowance
  bool pass = false;
};

InterchangeReport interchange_check(const ParametricIntegral& p, double alpha, double fd_step,
                                    double tol, const QuadConfig& cfg = {});

enum class Verdict { dominated, suspect_divergent, inconclusive };

std::string_view to_string(Verdict v);

struct EnvelopeSample {
  double x;
  double bound;  // max over sampled alpha of |df/dalpha(x, alpha)|
};

struct EnvelopeGrid {
  std::size_t n_x = 400;
  double x_max = 1e4;  // reach of the sampling on infinite sides
};

struct DominationReport {
  ParamInterval alpha_window;
  std::vector<EnvelopeSample> envelope;
  std::optional<double> envelope_integral;  // empty when divergence is suspected
  double tail_exponent = 0.0;               // fitted power of the envelope's worst side
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

/// Samples an x-envelope of |df/dalpha| uniformly over the alpha window and
/// checks whether it is integrable. Numeric evidence only.
DominationReport domination_scan(const ParametricIntegral& p, ParamInterval alpha_window,
                                 std::size_t n_alpha, const EnvelopeGrid& grid = {});

/// value0 + integral from alpha0 to target of dI/dalpha.
QuadResult reconstruct(const ParametricIntegral& p, double alpha_target,
                       const QuadConfig& cfg = {});

struct PointVerification {
  double alpha = 0.0;
  std::optional<QuadResult> direct;
  std::optional<QuadResult> reconstructed;
  std::optional<double> closed_form;
  std::optional<double> disc_direct_closed;
  std::optional<double> disc_recon_direct;
  bool pass = false;
  std::string failure;  // set when a constituent threw
};

struct VerificationReport {
  std::vector<PointVerification> points;  // input order
  bool pass = false;
};

VerificationReport verify(const ParametricIntegral& p, const std::vector<double>& alphas,
                          double tol_direct, double tol_reconstruct, const QuadConfig& cfg = {});

}  // namespace pil::leibniz
