#include "pil/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pil/errors.hpp"

namespace pil::catalog {

namespace {

using leibniz::Anchor;
using leibniz::ParamInterval;
using leibniz::ParametricIntegral;
using quad::DomainSpec;
using quad::QuadConfig;
using std::numbers::pi;

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this x the removable-singularity limit is returned (x^2 would lose precision).
constexpr double kTiny = 1e-100;

// ---- closed forms ---------------------------------------------------------

double gauss_solution(double a) { return 0.5 * std::sqrt(pi / a); }

double ex1_solution(double a) { return pi * std::sqrt(a); }
double ex1_rhs(double a) { return pi / (2.0 * std::sqrt(a)); }

double ex2_solution(double a) { return 2.0 * pi * std::log(a); }
double ex2_rhs(double a) { return 2.0 * pi / a; }

double ex3_beta_solution(double b) {
  const double r = std::sqrt(1.0 + b * b);
  // sqrt(1+b^2) - 1 cancels for small b.
  const double gap = b < 0.5 ? b * b / (r + 1.0) : r - 1.0;
  return std::sqrt(pi / 2.0) * std::sqrt(gap);
}

double ex3_beta_rhs(double b) {
  const double theta = std::atan(b);
  return 0.5 * std::sqrt(pi) * std::cos(0.5 * theta) / std::pow(1.0 + b * b, 0.25);
}

double ex3_alpha_solution(double a) {
  const double r = std::sqrt(a * a + 1.0);
  // sqrt(a^2+1) - a cancels for large a; at a <= 1 the direct form matches ex3_beta at 1.
  const double gap = a > 1.0 ? 1.0 / (r + a) : r - a;
  return std::sqrt(pi / 2.0) * std::sqrt(gap);
}

double ex4_solution(double a) {
  const double s = std::sqrt((1.0 - a) * (1.0 + a));
  // ln((1+s)/2) = log1p((s-1)/2), and s - 1 = -a^2/(1+s).
  return pi * std::log1p(-a * a / (2.0 * (1.0 + s))) + 0.0;  // no -0 at a = 0
}

double ex4_rhs(double a) {
  const double s = std::sqrt((1.0 - a) * (1.0 + a));
  // (pi/a)(1 - 1/s) rewritten without the 0/0 at a = 0.
  return -pi * a / ((1.0 + s) * s);
}

// ---- integrands -----------------------------------------------------------

double gauss_f(double x, double a) { return std::exp(-a * x * x); }
double gauss_df(double x, double a) { return -x * x * std::exp(-a * x * x); }

double ex1_f(double x, double a) {
  if (x < kTiny) {
    return a;
  }
  return std::log1p(a * x * x) / (x * x);
}
double ex1_df(double x, double a) { return 1.0 / (1.0 + a * x * x); }

// 1 - 2a cos x + a^2 = (a-1)^2 + a (2 sin(x/2))^2, free of cancellation near a = 1, x = 0.
double ex2_f(double x, double a) {
  const double s = 2.0 * std::sin(0.5 * x);
  return 2.0 * std::log(std::hypot(a - 1.0, std::sqrt(a) * s));
}
double ex2_df(double x, double a) {
  const double gap = a - 1.0;
  const double s = 2.0 * std::sin(0.5 * x);
  const double m = std::max(std::abs(gap), s);
  if (m == 0.0) {
    return 1.0 / a;
  }
  const double g = gap / m;
  const double t = s / m;
  return (2.0 * g / m + t * t) / (g * g + a * t * t);
}

double ex3_beta_f(double x, double b) {
  if (x < kTiny) {
    return b;
  }
  return std::exp(-x * x) * std::sin(b * x * x) / (x * x);
}
double ex3_beta_df(double x, double b) { return std::exp(-x * x) * std::cos(b * x * x); }

double ex3_alpha_f(double x, double a) {
  if (x < kTiny) {
    return 1.0;
  }
  return std::exp(-a * x * x) * std::sin(x * x) / (x * x);
}
double ex3_alpha_df(double x, double a) { return -std::exp(-a * x * x) * std::sin(x * x); }

// 1 + a sin p, rewritten near p = -pi/2 as (1 - a) + 2a sin^2((p + pi/2)/2).
double ex4_arg(double p, double a) {
  if (p < -0.25 * pi) {
    const double h = std::sin(0.5 * (p + 0.5 * pi));
    return (1.0 - a) + 2.0 * a * h * h;
  }
  return 1.0 + a * std::sin(p);
}
double ex4_f(double p, double a) { return std::log(ex4_arg(p, a)); }
double ex4_df(double p, double a) { return std::sin(p) / ex4_arg(p, a); }

// ---- registry -------------------------------------------------------------

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;

  {
    CatalogEntry e;
    e.id = "gauss";
    e.title = "Gaussian integral: int_0^inf exp(-a x^2) dx";
    e.parametric.integrand = gauss_f;
    e.parametric.d_alpha = gauss_df;
    e.parametric.domain = [](double) { return DomainSpec::half_line(0.0); };
    e.parametric.param_domain = {0.0, kInf, false, false};
    e.parametric.solution_closed = gauss_solution;
    e.parametric.singular_alphas = {0.0};
    e.verification_grid = {0.5, 1.0, 2.0};
    e.singular_notes = "reference only, no anchor; diverges at a = 0";
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "ex1";
    e.title = "int_0^inf ln(1 + a x^2) / x^2 dx";
    e.parametric.integrand = ex1_f;
    e.parametric.d_alpha = ex1_df;
    e.parametric.domain = [](double) { return DomainSpec::half_line(0.0); };
    e.parametric.param_domain = {0.0, kInf, true, false};
    e.parametric.anchor = Anchor{0.0, 0.0};
    e.parametric.rhs_closed = ex1_rhs;
    e.parametric.solution_closed = ex1_solution;
    e.parametric.rhs_singular_at_anchor = true;
    e.verification_grid = {0.25, 1.0, 4.0};
    e.singular_notes = "x = 0 is removable (value a); dI/da = pi/(2 sqrt a) blows up at the anchor";
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "ex2";
    e.title = "int_0^pi ln(1 - 2a cos x + a^2) dx, a >= 1";
    e.parametric.integrand = ex2_f;
    e.parametric.d_alpha = ex2_df;
    e.parametric.domain = [](double a) {
      // ln(x^2) at x = 0 when a = 1; stays sharply dipped for a just above 1.
      return DomainSpec::singular(0.0, pi, a < 1.0 + 1e-3, false);
    };
    e.parametric.param_domain = {1.0, kInf, true, false};
    e.parametric.anchor = Anchor{1.0, 0.0};
    e.parametric.rhs_closed = ex2_rhs;
    e.parametric.solution_closed = ex2_solution;
    e.parametric.singular_alphas = {1.0};
    e.verification_grid = {1.0, 1.5, 2.0, 5.0};
    e.loose_points = {1.0};
    e.singular_notes = "logarithmic singularity at x = 0 when a = 1; |a| < 1 excluded";
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "ex3_beta";
    e.title = "int_0^inf exp(-x^2) sin(b x^2) / x^2 dx";
    e.parametric.integrand = ex3_beta_f;
    e.parametric.d_alpha = ex3_beta_df;
    e.parametric.domain = [](double) { return DomainSpec::half_line(0.0); };
    e.parametric.param_domain = {0.0, kInf, true, false};
    e.parametric.anchor = Anchor{0.0, 0.0};
    e.parametric.rhs_closed = ex3_beta_rhs;
    e.parametric.solution_closed = ex3_beta_solution;
    e.verification_grid = {0.0, 0.5, 1.0, 2.0};
    e.singular_notes = "x = 0 is removable (value b); b < 0 excluded";
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "ex3_alpha";
    e.title = "int_0^inf exp(-a x^2) sin(x^2) / x^2 dx";
    e.parametric.integrand = ex3_alpha_f;
    e.parametric.d_alpha = ex3_alpha_df;
    e.parametric.domain = [](double) {
      return DomainSpec::oscillatory(
          0.0, [](std::size_t k) { return std::sqrt(static_cast<double>(k + 1) * pi); });
    };
    e.parametric.param_domain = {0.0, kInf, true, false};
    e.parametric.anchor = Anchor{1.0, ex3_beta_solution(1.0)};
    e.parametric.solution_closed = ex3_alpha_solution;
    e.verification_grid = {0.0, 0.5, 1.0, 2.0};
    e.loose_points = {0.0};
    e.singular_notes = "x = 0 is removable (value 1); at a = 0 the tail only decays like 1/x^2";
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "ex4";
    e.title = "int_{-pi/2}^{pi/2} ln(1 + a sin p) dp, 0 <= a <= 1";
    e.parametric.integrand = ex4_f;
    e.parametric.d_alpha = ex4_df;
    e.parametric.domain = [](double a) {
      return DomainSpec::singular(-0.5 * pi, 0.5 * pi, a > 1.0 - 1e-3, false);
    };
    e.parametric.param_domain = {0.0, 1.0, true, true};
    e.parametric.anchor = Anchor{0.0, 0.0};
    e.parametric.rhs_closed = ex4_rhs;
    e.parametric.solution_closed = ex4_solution;
    e.parametric.singular_alphas = {1.0};
    e.verification_grid = {0.0, 0.2, 0.5, 0.9, 0.99, 1.0};
    e.loose_points = {0.99, 1.0};
    e.singular_notes =
        "log singularity at p = -pi/2 when a = 1, where dI/da also diverges; a > 1 excluded";
    out.push_back(std::move(e));
  }
  return out;
}

void require(const CatalogEntry& e, double alpha, bool ok) {
  if (!ok || !e.parametric.param_domain.contains(alpha)) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha = " << alpha << " is outside the validity range of " << e.id;
    throw ParameterDomainError(os.str());
  }
}

QuadConfig tight() {
  QuadConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-13;
  return cfg;
}

}  // namespace

bool CatalogEntry::is_loose(double alpha) const {
  return std::find(loose_points.begin(), loose_points.end(), alpha) != loose_points.end();
}

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> registry = build();
  return registry;
}

const CatalogEntry& find(std::string_view id) {
  for (const CatalogEntry& e : entries()) {
    if (e.id == id) {
      return e;
    }
  }
  std::ostringstream os;
  os << "unknown entry '" << id << "'; valid ids:";
  for (const CatalogEntry& e : entries()) {
    os << ' ' << e.id;
  }
  throw UnknownEntryError(os.str());
}

std::vector<std::string> ids() {
  std::vector<std::string> out;
  for (const CatalogEntry& e : entries()) {
    out.push_back(e.id);
  }
  return out;
}

double closed_form(std::string_view id, double alpha) {
  const CatalogEntry& e = find(id);
  require(e, alpha, true);
  return e.parametric.solution_closed(alpha);
}

double rhs_closed_form(std::string_view id, double alpha) {
  const CatalogEntry& e = find(id);
  if (!e.parametric.rhs_closed) {
    throw UnknownEntryError("entry '" + e.id + "' has no closed-form right-hand side");
  }
  bool ok = true;
  if (e.id == "ex1") {
    ok = alpha > 0.0;
  } else if (e.id == "ex4") {
    ok = alpha < 1.0;
  }
  require(e, alpha, ok);
  return e.parametric.rhs_closed(alpha);
}

double reciprocal_sine_integral(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ParameterDomainError("reciprocal_sine_integral needs 0 <= a < 1");
  }
  return quad::integrate_finite([alpha](double p) { return 1.0 / ex4_arg(p, alpha); },
                                DomainSpec::finite(-0.5 * pi, 0.5 * pi), tight())
      .value;
}

double conjugate_real_part(double alpha) {
  if (!(alpha > 1.0)) {
    throw ParameterDomainError("conjugate_real_part needs a > 1");
  }
  return quad::integrate_finite(
             [alpha](double x) {
               const double s = 2.0 * std::sin(0.5 * x);
               const double gap = alpha - 1.0;
               return (alpha * std::cos(x) - 1.0) / (gap * gap + alpha * s * s);
             },
             DomainSpec::finite(0.0, pi), tight())
      .value;
}

double conjugate_imag_part(double alpha) {
  if (!(alpha > 1.0)) {
    throw ParameterDomainError("conjugate_imag_part needs a > 1");
  }
  return quad::integrate_finite(
             [alpha](double x) {
               const double s = 2.0 * std::sin(0.5 * x);
               const double gap = alpha - 1.0;
               return -alpha * std::sin(x) / (gap * gap + alpha * s * s);
             },
             DomainSpec::finite(0.0, pi), tight())
      .value;
}

}  // namespace pil::catalog
