#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "detail.hpp"
#include "pil/errors.hpp"
#include "pil/quadrature.hpp"

namespace pil::quad {

namespace {

// Kronrod abscissae on [-1, 1] (positive half, descending). Odd indices are
// the 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) {
      return lhs.error < rhs.error;
    }
    return lhs.a > rhs.a;  // deterministic tie-break
  }
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw DomainEvaluationError(x, y);
  }
  return y;
}

Panel evaluate_panel(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = checked(f, center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);

  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) {
      gauss += kGaussWeights[j / 2] * (f1 + f2);
    }
  }

  const double value = kronrod * half;
  const double roundoff = 50.0 * kEps * abs_sum * std::abs(half);
  const double error = std::max(std::abs((kronrod - gauss) * half), roundoff);
  return {a, b, value, error};
}

}  // namespace

namespace detail {

QuadResult gauss_kronrod(const Integrand& f, double a, double b, const QuadConfig& cfg) {
  std::priority_queue<Panel, std::vector<Panel>, ByError> panels;
  panels.push(evaluate_panel(f, a, b));
  std::size_t n_panels = 1;
  std::size_t n_evals = 15;

  double value = panels.top().value;
  double error = panels.top().error;
  Status status = Status::converged;

  while (error > cfg.tolerance_for(value)) {
    if (n_panels >= cfg.max_subdivisions) {
      status = Status::max_depth;
      break;
    }
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b) ||
        (worst.b - worst.a) < 100.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      status = Status::max_depth;
      break;
    }
    panels.pop();
    const Panel left = evaluate_panel(f, worst.a, mid);
    const Panel right = evaluate_panel(f, mid, worst.b);
    n_evals += 30;
    ++n_panels;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum from the panel list so the result does not carry update drift.
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  value = 0.0;
  error = 0.0;
  for (const Panel& p : all) {
    value += p.value;
    error += p.error;
  }
  if (status == Status::converged && error > cfg.tolerance_for(value)) {
    status = Status::max_depth;
  }
  return {value, error, n_evals, status};
}

}  // namespace detail

QuadResult integrate_finite(const Integrand& f, const DomainSpec& domain, const QuadConfig& cfg) {
  validate(domain);
  validate(cfg);
  if (!domain.is_finite() || domain.has_singular_endpoint() || domain.oscillatory_tail) {
    throw InvalidArgumentError("integrate_finite needs a finite domain with regular endpoints");
  }
  return detail::gauss_kronrod(f, domain.lower, domain.upper, cfg);
}

}  // namespace pil::quad
