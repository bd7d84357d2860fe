#include <cmath>
#include <limits>
#include <utility>

#include "pil/errors.hpp"
#include "pil/quadrature.hpp"

namespace pil::quad {

DomainSpec DomainSpec::finite(double a, double b) {
  DomainSpec d;
  d.lower = a;
  d.upper = b;
  return d;
}

DomainSpec DomainSpec::singular(double a, double b, bool lower_singular, bool upper_singular) {
  DomainSpec d = finite(a, b);
  d.lower_kind = lower_singular ? EndpointKind::integrable_singularity : EndpointKind::regular;
  d.upper_kind = upper_singular ? EndpointKind::integrable_singularity : EndpointKind::regular;
  return d;
}

DomainSpec DomainSpec::half_line(double a, bool lower_singular) {
  DomainSpec d = finite(a, std::numeric_limits<double>::infinity());
  d.lower_kind = lower_singular ? EndpointKind::integrable_singularity : EndpointKind::regular;
  d.upper_kind = EndpointKind::infinite;
  return d;
}

DomainSpec DomainSpec::whole_line() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf, EndpointKind::infinite, EndpointKind::infinite, std::nullopt};
}

DomainSpec DomainSpec::oscillatory(double a, std::function<double(std::size_t)> phase_zero) {
  DomainSpec d = half_line(a);
  d.oscillatory_tail = OscillatoryTail{std::move(phase_zero)};
  return d;
}

bool DomainSpec::is_finite() const { return !has_infinite_endpoint(); }

bool DomainSpec::has_singular_endpoint() const {
  return lower_kind == EndpointKind::integrable_singularity ||
         upper_kind == EndpointKind::integrable_singularity;
}

bool DomainSpec::has_infinite_endpoint() const {
  return lower_kind == EndpointKind::infinite || upper_kind == EndpointKind::infinite;
}

void validate(const DomainSpec& d) {
  if (std::isnan(d.lower) || std::isnan(d.upper)) {
    throw InvalidArgumentError("domain endpoint is NaN");
  }
  if (!(d.lower < d.upper)) {
    throw InvalidArgumentError("domain requires lower < upper");
  }
  if (std::isinf(d.lower) != (d.lower_kind == EndpointKind::infinite)) {
    throw InvalidArgumentError("lower endpoint kind does not match its value");
  }
  if (std::isinf(d.upper) != (d.upper_kind == EndpointKind::infinite)) {
    throw InvalidArgumentError("upper endpoint kind does not match its value");
  }
  if (d.lower == std::numeric_limits<double>::infinity() ||
      d.upper == -std::numeric_limits<double>::infinity()) {
    throw InvalidArgumentError("domain endpoints point the wrong way");
  }
  if (d.oscillatory_tail) {
    if (d.upper_kind != EndpointKind::infinite) {
      throw InvalidArgumentError("an oscillatory tail needs an infinite upper endpoint");
    }
    if (d.lower_kind == EndpointKind::infinite) {
      throw InvalidArgumentError("an oscillatory tail needs a finite lower endpoint");
    }
    if (!d.oscillatory_tail->phase_zero) {
      throw InvalidArgumentError("oscillatory tail has no phase-zero rule");
    }
  }
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::converged:
      return "converged";
    case Status::max_depth:
      return "max_depth";
    case Status::tail_truncated:
      return "tail_truncated";
  }
  return "unknown";
}

double QuadConfig::tolerance_for(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

void validate(const QuadConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) || cfg.max_subdivisions == 0 ||
      !(cfg.tail_decay_threshold > 0.0)) {
    throw InvalidArgumentError("quadrature configuration fields must be strictly positive");
  }
}

QuadResult integrate(const Integrand& f, const DomainSpec& domain, const QuadConfig& cfg) {
  if (domain.oscillatory_tail) {
    return integrate_oscillatory_improper(f, domain, cfg);
  }
  if (domain.has_infinite_endpoint()) {
    return integrate_improper(f, domain, cfg);
  }
  if (domain.has_singular_endpoint()) {
    return integrate_singular(f, domain, cfg);
  }
  return integrate_finite(f, domain, cfg);
}

}  // namespace pil::quad
