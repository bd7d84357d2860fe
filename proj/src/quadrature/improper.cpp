#include <cmath>
#include <limits>

#include "detail.hpp"
#include "pil/errors.hpp"

namespace pil::quad {

namespace {

// Largest offset from the finite endpoint that the compactified rule samples.
constexpr double kHorizon = 1e100;

// Integrates y -> f(origin + sign * y) over y in [0, inf) through y = t / (1 - t).
QuadResult half_line(const Integrand& f, double origin, double sign, bool origin_singular,
                     const QuadConfig& cfg) {
  auto at = [&f, origin, sign](double y) { return f(origin + sign * y); };

  detail::TanhSinhOptions options;
  options.usable = [origin, sign, origin_singular](const detail::Node& n) {
    const double y = n.from_lower / n.from_upper;
    if (!(y <= kHorizon)) {
      return false;
    }
    return !origin_singular || origin + sign * y != origin;
  };
  options.probe_lower = true;
  options.lower_label = origin;
  options.probe_upper = false;
  options.correct_upper = false;

  auto mapped = [&at](const detail::Node& n) {
    const double y = n.from_lower / n.from_upper;
    return at(y) / (n.from_upper * n.from_upper);
  };
  const detail::TanhSinhResult ts = detail::tanh_sinh(mapped, 0.0, 1.0, cfg, options);
  QuadResult result = ts.result;

  // Monotone-envelope bound on what lies beyond the outermost sample.
  const double fu = ts.upper.distance;
  double tail = std::numeric_limits<double>::infinity();
  if (fu > 0.0) {
    const double y1 = (1.0 - fu) / fu;
    const double f1 = std::abs(at(y1));
    const double f2 = std::abs(at(2.0 * y1));
    result.n_evals += 2;
    if (f1 == 0.0 && f2 == 0.0) {
      tail = 0.0;
    } else if (std::isfinite(f1) && std::isfinite(f2) && f2 > 0.0) {
      const double decay = std::log2(f1 / f2);
      if (decay > 1.0 + 1e-3) {
        tail = y1 * f1 / (decay - 1.0);
      }
    } else if (std::isfinite(f1) && f2 == 0.0) {
      tail = y1 * f1;
    }
  }

  result.abs_err_est += tail;
  if (!(tail <= cfg.tail_decay_threshold)) {
    result.status = Status::tail_truncated;
  } else if (result.status == Status::converged &&
             result.abs_err_est > cfg.tolerance_for(result.value)) {
    result.status = Status::tail_truncated;
  }
  return result;
}

QuadResult combine(const QuadResult& l, const QuadResult& r) {
  QuadResult out;
  out.value = l.value + r.value;
  out.abs_err_est = l.abs_err_est + r.abs_err_est;
  out.n_evals = l.n_evals + r.n_evals;
  if (l.status == Status::tail_truncated || r.status == Status::tail_truncated) {
    out.status = Status::tail_truncated;
  } else if (l.status == Status::max_depth || r.status == Status::max_depth) {
    out.status = Status::max_depth;
  } else {
    out.status = Status::converged;
  }
  return out;
}

}  // namespace

QuadResult integrate_improper(const Integrand& f, const DomainSpec& domain, const QuadConfig& cfg) {
  validate(domain);
  validate(cfg);
  if (!domain.has_infinite_endpoint()) {
    throw InvalidArgumentError("integrate_improper needs an infinite endpoint");
  }
  if (domain.oscillatory_tail) {
    throw InvalidArgumentError("oscillatory tails go through integrate_oscillatory_improper");
  }

  const bool lower_inf = domain.lower_kind == EndpointKind::infinite;
  const bool upper_inf = domain.upper_kind == EndpointKind::infinite;
  if (lower_inf && upper_inf) {
    QuadConfig half_cfg = cfg;
    half_cfg.abs_tol = 0.5 * cfg.abs_tol;
    const QuadResult right = half_line(f, 0.0, 1.0, false, half_cfg);
    const QuadResult left = half_line(f, 0.0, -1.0, false, half_cfg);
    return combine(left, right);
  }
  if (upper_inf) {
    return half_line(f, domain.lower, 1.0,
                     domain.lower_kind == EndpointKind::integrable_singularity, cfg);
  }
  return half_line(f, domain.upper, -1.0,
                   domain.upper_kind == EndpointKind::integrable_singularity, cfg);
}

}  // namespace pil::quad
