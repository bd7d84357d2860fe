#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "pil/errors.hpp"
#include "pil/leibniz.hpp"

namespace pil::leibniz {

namespace {

std::string describe(const ParamInterval& d) {
  std::ostringstream os;
  os.precision(17);
  os << (d.lo_closed ? '[' : '(') << d.lo << ", " << d.hi << (d.hi_closed ? ']' : ')');
  return os.str();
}

void require_admissible(const ParametricIntegral& p, double alpha) {
  if (!p.param_domain.contains(alpha)) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha = " << alpha << " lies outside the parameter domain " << describe(p.param_domain);
    throw ParameterDomainError(os.str());
  }
}

double fd_step_for(double alpha) {
  return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(alpha));
}

}  // namespace

bool ParamInterval::contains(double alpha) const {
  if (std::isnan(alpha)) {
    return false;
  }
  const bool above = lo_closed ? alpha >= lo : alpha > lo;
  const bool below = hi_closed ? alpha <= hi : alpha < hi;
  return above && below && std::isfinite(alpha);
}

bool ParamInterval::in_closure(double alpha) const {
  return alpha >= lo && alpha <= hi && std::isfinite(alpha);
}

bool ParamInterval::interior(double alpha) const {
  return alpha > lo && alpha < hi && std::isfinite(alpha);
}

bool ParamInterval::is_boundary(double alpha) const { return alpha == lo || alpha == hi; }

QuadResult eval_direct(const ParametricIntegral& p, double alpha, const QuadConfig& cfg) {
  require_admissible(p, alpha);
  const ParamIntegrand& f = p.integrand;
  return quad::integrate([&f, alpha](double x) { return f(x, alpha); }, p.domain(alpha), cfg);
}

QuadResult deriv_under_integral(const ParametricIntegral& p, double alpha,
                                const QuadConfig& cfg) {
  require_admissible(p, alpha);
  const DomainSpec domain = p.domain(alpha);
  if (p.d_alpha) {
    const ParamIntegrand& df = p.d_alpha;
    return quad::integrate([&df, alpha](double x) { return df(x, alpha); }, domain, cfg);
  }
  const double h = fd_step_for(alpha);
  if (!p.param_domain.contains(alpha - h) || !p.param_domain.contains(alpha + h)) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha = " << alpha << " is at the boundary of " << describe(p.param_domain)
       << " and no analytic parameter derivative is available";
    throw OneSidedDifferenceUnsupportedError(os.str());
  }
  const ParamIntegrand& f = p.integrand;
  return quad::integrate(
      [&f, alpha, h](double x) { return (f(x, alpha + h) - f(x, alpha - h)) / (2.0 * h); },
      domain, cfg);
}

InterchangeReport interchange_check(const ParametricIntegral& p, double alpha, double fd_step,
                                    double tol, const QuadConfig& cfg) {
  if (!(fd_step > 0.0) || !(tol >= 0.0)) {
    throw InvalidArgumentError("interchange_check needs fd_step > 0 and tol >= 0");
  }
  require_admissible(p, alpha - fd_step);
  require_admissible(p, alpha + fd_step);

  const double plus = eval_direct(p, alpha + fd_step, cfg).value;
  const double minus = eval_direct(p, alpha - fd_step, cfg).value;
  const double center = eval_direct(p, alpha, cfg).value;

  InterchangeReport report;
  report.alpha = alpha;
  report.lhs = (plus - minus) / (2.0 * fd_step);
  report.rhs = deriv_under_integral(p, alpha, cfg).value;
  report.discrepancy = std::abs(report.lhs - report.rhs);
  // h^2 * |I''|, with I'' from the same three evaluations.
  const double bias_allowance = std::abs(plus - 2.0 * center + minus);
  report.tolerance = tol + bias_allowance;
  report.pass = report.discrepancy <= report.tolerance;
  return report;
}

QuadResult reconstruct(const ParametricIntegral& p, double alpha_target, const QuadConfig& cfg) {
  if (!p.anchor) {
    throw ParameterDomainError("integral has no anchor value to reconstruct from");
  }
  const Anchor anchor = *p.anchor;
  if (!p.param_domain.in_closure(alpha_target)) {
    std::ostringstream os;
    os.precision(17);
    os << "reconstruction path to alpha = " << alpha_target << " leaves "
       << describe(p.param_domain);
    throw ParameterDomainError(os.str());
  }
  if (alpha_target == anchor.alpha0) {
    return {anchor.value0, 0.0, 0, quad::Status::converged};
  }

  // Numeric right-hand sides carry their own quadrature error into the alpha integral.
  double worst_inner_error = 0.0;
  std::function<double(double)> slope;
  if (p.rhs_closed) {
    slope = p.rhs_closed;
  } else {
    slope = [&p, &cfg, &worst_inner_error](double alpha) {
      const QuadResult d = deriv_under_integral(p, alpha, cfg);
      worst_inner_error = std::max(worst_inner_error, d.abs_err_est);
      return d.value;
    };
  }

  const bool forward = alpha_target > anchor.alpha0;
  const double lo = forward ? anchor.alpha0 : alpha_target;
  const double hi = forward ? alpha_target : anchor.alpha0;

  bool target_singular = false;
  if (p.rhs_closed && p.param_domain.is_boundary(alpha_target)) {
    target_singular = !std::isfinite(p.rhs_closed(alpha_target));
  }
  const bool lo_singular = forward ? p.rhs_singular_at_anchor : target_singular;
  const bool hi_singular = forward ? target_singular : p.rhs_singular_at_anchor;

  QuadResult path;
  if (lo_singular || hi_singular) {
    path = quad::integrate_singular(slope, DomainSpec::singular(lo, hi, lo_singular, hi_singular),
                                    cfg);
  } else {
    path = quad::integrate_finite(slope, DomainSpec::finite(lo, hi), cfg);
  }

  QuadResult out = path;
  out.value = anchor.value0 + (forward ? path.value : -path.value);
  out.abs_err_est = path.abs_err_est + worst_inner_error * (hi - lo);
  if (out.status == quad::Status::converged && out.abs_err_est > cfg.tolerance_for(out.value)) {
    out.status = quad::Status::max_depth;
  }
  return out;
}

namespace {

PointVerification verify_point(const ParametricIntegral& p, double alpha, double tol_direct,
                               double tol_reconstruct, const QuadConfig& cfg) {
  PointVerification pt;
  pt.alpha = alpha;
  try {
    pt.direct = eval_direct(p, alpha, cfg);
    if (p.solution_closed) {
      pt.closed_form = p.solution_closed(alpha);
      pt.disc_direct_closed = std::abs(pt.direct->value - *pt.closed_form);
    }
    if (p.anchor) {
      pt.reconstructed = reconstruct(p, alpha, cfg);
      pt.disc_recon_direct = std::abs(pt.reconstructed->value - pt.direct->value);
    }
    pt.pass = (!pt.disc_direct_closed || *pt.disc_direct_closed <= tol_direct) &&
              (!pt.disc_recon_direct || *pt.disc_recon_direct <= tol_reconstruct);
  } catch (const Error& e) {
    pt.pass = false;
    pt.failure = e.what();
  }
  return pt;
}

}  // namespace

VerificationReport verify(const ParametricIntegral& p, const std::vector<double>& alphas,
                          double tol_direct, double tol_reconstruct, const QuadConfig& cfg) {
  if (alphas.empty()) {
    throw InvalidArgumentError("verify needs at least one alpha");
  }
  quad::validate(cfg);

  std::vector<std::future<PointVerification>> pending;
  pending.reserve(alphas.size());
  for (double alpha : alphas) {
    pending.push_back(std::async(std::launch::async, verify_point, std::cref(p), alpha,
                                 tol_direct, tol_reconstruct, std::cref(cfg)));
  }

  VerificationReport report;
  report.pass = true;
  for (auto& f : pending) {
    report.points.push_back(f.get());
    report.pass = report.pass && report.points.back().pass;
  }
  return report;
}

}  // namespace pil::leibniz
