#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "detail.hpp"
#include "pil/errors.hpp"

namespace pil::quad {

namespace detail {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxLevel = 10;
constexpr int kMinLevel = 3;
// Beyond this abscissa (in t) the weights underflow for every interval.
constexpr double kMaxT = 6.6;
// Fitted exponents at or below this are treated as 1/distance growth.
constexpr double kDivergentExponent = -1.0 + 1e-3;

struct Abscissa {
  double distance;  // to the nearer endpoint
  double weight;
};

// x(t) = c + h tanh(pi/2 sinh t);  distance = h (1 - tanh u) = 2h q / (1 + q), q = e^{-2u}
Abscissa abscissa(double t, double half_width) {
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double q = std::exp(-2.0 * u);
  const double distance = half_width * 2.0 * q / (1.0 + q);
  const double weight =
      half_width * 0.5 * std::numbers::pi * std::cosh(t) * 4.0 * q / ((1.0 + q) * (1.0 + q));
  return {distance, weight};
}

struct SideTrack {
  // Level-0 samples, outermost last.
  double d_prev2 = 0.0, f_prev2 = 0.0;
  double d_prev = 0.0, f_prev = 0.0;
  double d_last = 0.0, f_last = 0.0;
  int n = 0;
  bool fitted = false;  // exponent frozen after level 0
  double exponent = 0.0;
  // Outermost used node over all levels.
  double d_min = std::numeric_limits<double>::infinity();
  double f_at_min = 0.0;
  double w_at_min = 0.0;

  void record(double d, double f, double w, bool level0) {
    if (level0 && f != 0.0) {
      d_prev2 = d_prev;
      f_prev2 = f_prev;
      d_prev = d_last;
      f_prev = f_last;
      d_last = d;
      f_last = f;
      ++n;
    }
    if (d < d_min) {
      d_min = d;
      f_at_min = f;
      w_at_min = w;
    }
  }

  SideReport report() const {
    SideReport r;
    r.distance = std::isfinite(d_min) ? d_min : 0.0;
    r.value = f_at_min;
    r.weight = w_at_min;
    if (n >= 2 && d_last > 0.0 && d_prev > d_last) {
      r.exponent = std::log(std::abs(f_last / f_prev)) / std::log(d_last / d_prev);
      r.exponent_known = std::isfinite(r.exponent);
    }
    if (r.exponent_known && n >= 3 && d_prev2 > d_prev) {
      const double inner = std::log(std::abs(f_prev / f_prev2)) / std::log(d_prev / d_prev2);
      if (std::isfinite(inner)) {
        r.exponent_drift = std::abs(r.exponent - inner);
      }
    }
    return r;
  }
};

// Trapezoidal sums cut at the outermost node t_L already count (step/2) F(t_L)
// of what lies beyond it; the rest is the power-law remainder.
struct Remainder {
  double value = 0.0;
  double uncertainty = 0.0;
};

Remainder remainder(const SideReport& side, double step) {
  if (!side.exponent_known || side.exponent <= kDivergentExponent) {
    return {};
  }
  const double beyond = side.distance * side.value / (1.0 + side.exponent);
  // A drifting exponent means a logarithmic factor the power law does not capture.
  const double spread = 2.0 * side.exponent_drift / (1.0 + side.exponent) + 1e-3;
  return {beyond - 0.5 * step * side.weight * side.value, std::abs(beyond) * spread};
}

}  // namespace

TanhSinhResult tanh_sinh(const NodeIntegrand& g, double a, double b, const QuadConfig& cfg,
                         const TanhSinhOptions& options) {
  const double half = 0.5 * (b - a);
  const double width = b - a;
  SideTrack lower_track;
  SideTrack upper_track;

  double raw = 0.0;       // sum of w f over all nodes so far
  double raw_abs = 0.0;   // sum of |w f|
  std::size_t n_evals = 0;

  auto visit = [&](const Node& node, double weight, SideTrack* track, bool level0) {
    if (options.usable && !options.usable(node)) {
      return;
    }
    double y = g(node);
    if (!std::isfinite(y)) {
      throw DomainEvaluationError(node.x, y);
    }
    if (options.rescale_rounded && track != nullptr && track->fitted) {
      const bool near_lower = track == &lower_track;
      const double exact = near_lower ? node.from_lower : node.from_upper;
      const double actual = near_lower ? node.x - a : b - node.x;
      if (actual > 0.0 && actual != exact) {
        y *= std::pow(exact / actual, track->exponent);
      }
    }
    ++n_evals;
    raw += weight * y;
    raw_abs += std::abs(weight * y);
    if (track != nullptr) {
      const double d = track == &lower_track ? node.from_lower : node.from_upper;
      track->record(d, y, weight, level0);
    }
  };

  auto visit_pair = [&](double t, bool level0) {
    const Abscissa ab = abscissa(t, half);
    if (ab.distance <= 0.0 || ab.weight <= 0.0) {
      return false;
    }
    visit({a + ab.distance, ab.distance, width - ab.distance}, ab.weight, &lower_track, level0);
    visit({b - ab.distance, width - ab.distance, ab.distance}, ab.weight, &upper_track, level0);
    return true;
  };

  // Level 0: t = 0, +-1, +-2, ...
  {
    const Abscissa center = abscissa(0.0, half);
    visit({a + half, half, half}, center.weight, nullptr, true);
    for (double t = 1.0; t <= kMaxT; t += 1.0) {
      if (!visit_pair(t, true)) {
        break;
      }
    }
  }

  SideReport lower = lower_track.report();
  SideReport upper = upper_track.report();
  lower_track.fitted = lower.exponent_known;
  lower_track.exponent = lower.exponent;
  upper_track.fitted = upper.exponent_known;
  upper_track.exponent = upper.exponent;
  if (options.probe_lower && lower.exponent_known && lower.exponent <= kDivergentExponent) {
    throw NonIntegrableSingularityError(options.lower_label, lower.exponent);
  }
  if (options.probe_upper && upper.exponent_known && upper.exponent <= kDivergentExponent) {
    throw NonIntegrableSingularityError(options.upper_label, upper.exponent);
  }

  auto corrected = [&](double step) {
    Remainder total;
    for (const auto& [wanted, track] :
         {std::pair{options.correct_lower, &lower_track}, {options.correct_upper, &upper_track}}) {
      if (wanted) {
        const Remainder r = remainder(track->report(), step);
        total.value += r.value;
        total.uncertainty += r.uncertainty;
      }
    }
    return std::pair{raw * step + total.value, total.uncertainty};
  };

  double step = 1.0;
  auto [estimate, correction_err] = corrected(step);
  double level_error = std::numeric_limits<double>::infinity();
  bool level_converged = false;

  for (int level = 1; level <= kMaxLevel; ++level) {
    step *= 0.5;
    for (double t = step; t <= kMaxT; t += 2.0 * step) {
      if (!visit_pair(t, false)) {
        break;
      }
    }
    const auto [next, next_correction_err] = corrected(step);
    level_error = std::abs(next - estimate);
    estimate = next;
    correction_err = next_correction_err;
    if (level >= kMinLevel && level_error <= cfg.tolerance_for(estimate)) {
      level_converged = true;
      break;
    }
  }

  lower = lower_track.report();
  upper = upper_track.report();
  const double value = estimate;
  const double roundoff = 10.0 * kEps * raw_abs * step;
  const double error = level_error + correction_err + roundoff;

  Status status = Status::converged;
  if (!level_converged) {
    status = Status::max_depth;
  } else if (error > cfg.tolerance_for(value)) {
    // The sum itself settled; what is left is the unresolvable piece next to an endpoint.
    status = Status::tail_truncated;
  }
  return {{value, error, n_evals, status}, lower, upper};
}

}  // namespace detail

QuadResult integrate_singular(const Integrand& f, const DomainSpec& domain, const QuadConfig& cfg) {
  validate(domain);
  validate(cfg);
  if (!domain.is_finite() || domain.oscillatory_tail) {
    throw InvalidArgumentError("integrate_singular needs a finite domain");
  }
  const double a = domain.lower;
  const double b = domain.upper;

  detail::TanhSinhOptions options;
  // Nodes that round onto an endpoint would evaluate f exactly at the singularity.
  options.usable = [a, b](const detail::Node& n) { return n.x > a && n.x < b; };
  options.lower_label = a;
  options.upper_label = b;
  options.rescale_rounded = true;
  return detail::tanh_sinh([&f](const detail::Node& n) { return f(n.x); }, a, b, cfg, options)
      .result;
}

}  // namespace pil::quad
