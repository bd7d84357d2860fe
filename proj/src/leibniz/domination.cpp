#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pil/errors.hpp"
#include "pil/leibniz.hpp"

namespace pil::leibniz {

namespace {

// Envelope decays faster than 1/x^(1+margin) on a tail: integrable.
constexpr double kExponentMargin = 0.1;
constexpr int kApproachDecades = 12;

// Least-squares slope of log|bound| against log(distance) over strictly positive samples.
std::optional<double> log_slope(const std::vector<std::pair<double, double>>& pts) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [dist, bound] : pts) {
    if (!(bound > 0.0) || !(dist > 0.0)) {
      continue;
    }
    const double lx = std::log(dist);
    const double ly = std::log(bound);
    n += 1;
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || denom <= 0.0) {
    return std::nullopt;
  }
  return (n * sxy - sx * sy) / denom;
}

struct SideVerdict {
  Verdict verdict = Verdict::dominated;
  double exponent = 0.0;
  double tail = 0.0;  // envelope integral beyond the outermost sample
};

// Infinite side: bound ~ x^p, integrable when p < -1.
SideVerdict infinite_side(const std::vector<std::pair<double, double>>& far) {
  SideVerdict s;
  const bool all_zero =
      std::all_of(far.begin(), far.end(), [](const auto& pt) { return pt.second == 0.0; });
  if (all_zero) {
    s.exponent = -std::numeric_limits<double>::infinity();
    return s;
  }
  const auto slope = log_slope(far);
  if (!slope) {
    s.verdict = Verdict::inconclusive;
    return s;
  }
  s.exponent = *slope;
  if (*slope < -1.0 - kExponentMargin) {
    const auto& [x, bound] = far.back();
    s.tail = bound * x / (-*slope - 1.0);
  } else if (*slope > -1.0 + kExponentMargin) {
    s.verdict = Verdict::suspect_divergent;
  } else {
    s.verdict = Verdict::inconclusive;
  }
  return s;
}

// Finite endpoint: bound ~ d^p as d -> 0, integrable when p > -1.
SideVerdict finite_side(const std::vector<std::pair<double, double>>& near) {
  SideVerdict s;
  const auto slope = log_slope(near);
  if (!slope) {
    return s;  // bounded (often identically zero) next to the endpoint
  }
  s.exponent = *slope;
  if (*slope <= -1.0 + kExponentMargin && *slope > -1.0 - kExponentMargin) {
    s.verdict = Verdict::inconclusive;
  } else if (*slope <= -1.0) {
    s.verdict = Verdict::suspect_divergent;
  }
  return s;
}

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::suspect_divergent || b == Verdict::suspect_divergent) {
    return Verdict::suspect_divergent;
  }
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) {
    return Verdict::inconclusive;
  }
  return Verdict::dominated;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::dominated:
      return "dominated";
    case Verdict::suspect_divergent:
      return "suspect_divergent";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

DominationReport domination_scan(const ParametricIntegral& p, ParamInterval alpha_window,
                                 std::size_t n_alpha, const EnvelopeGrid& grid) {
  if (n_alpha < 3) {
    throw InvalidArgumentError("domination_scan needs at least 3 alpha samples");
  }
  if (!(alpha_window.lo < alpha_window.hi) || !std::isfinite(alpha_window.lo) ||
      !std::isfinite(alpha_window.hi)) {
    throw DegenerateWindowError("alpha window is empty or unbounded");
  }
  if (!p.param_domain.contains(alpha_window.lo) || !p.param_domain.contains(alpha_window.hi)) {
    throw ParameterDomainError("alpha window is not inside the parameter domain");
  }
  for (double s : p.singular_alphas) {
    if (s >= alpha_window.lo && s <= alpha_window.hi) {
      std::ostringstream os;
      os << "alpha window touches the singular parameter value " << s;
      throw DegenerateWindowError(os.str());
    }
  }
  if (grid.n_x < 8 || !(grid.x_max > 1.0)) {
    throw InvalidArgumentError("envelope grid needs n_x >= 8 and x_max > 1");
  }

  std::vector<double> alphas(n_alpha);
  for (std::size_t i = 0; i < n_alpha; ++i) {
    alphas[i] = alpha_window.lo +
                (alpha_window.hi - alpha_window.lo) * static_cast<double>(i) /
                    static_cast<double>(n_alpha - 1);
  }

  const double h_fd = std::cbrt(std::numeric_limits<double>::epsilon());
  auto partial = [&p, h_fd](double x, double alpha) {
    if (p.d_alpha) {
      return p.d_alpha(x, alpha);
    }
    const double h = h_fd * std::max(1.0, std::abs(alpha));
    if (!p.param_domain.contains(alpha - h) || !p.param_domain.contains(alpha + h)) {
      throw OneSidedDifferenceUnsupportedError(
          "domination_scan needs an analytic parameter derivative at the window edge");
    }
    return (p.integrand(x, alpha + h) - p.integrand(x, alpha - h)) / (2.0 * h);
  };
  auto envelope_at = [&](double x) {
    double m = 0.0;
    for (double a : alphas) {
      const double v = std::abs(partial(x, a));
      m = std::max(m, std::isfinite(v) ? v : std::numeric_limits<double>::infinity());
    }
    return m;
  };

  // The domain is taken at the window centre; catalog domains only change the
  // endpoint kind with alpha, never the endpoints themselves.
  const DomainSpec domain = p.domain(0.5 * (alpha_window.lo + alpha_window.hi));
  const bool lower_inf = domain.lower_kind == quad::EndpointKind::infinite;
  const bool upper_inf = domain.upper_kind == quad::EndpointKind::infinite;

  // Samples along each side: distance to the finite endpoint, or |x| on infinite sides.
  std::vector<double> xs;
  std::vector<std::pair<double, double>> lower_side;  // (distance or reach, bound)
  std::vector<std::pair<double, double>> upper_side;

  DominationReport report;
  report.alpha_window = alpha_window;
  report.note = "numeric evidence from sampled alpha and x, not a proof of domination";

  auto sample = [&](double x) {
    const double m = envelope_at(x);
    report.envelope.push_back({x, m});
    return m;
  };

  const std::size_t n_body = grid.n_x;
  if (!lower_inf && !upper_inf) {
    const double a = domain.lower;
    const double b = domain.upper;
    const double w = b - a;
    for (int k = kApproachDecades; k >= 2; --k) {
      const double d = w * std::pow(10.0, -k);
      lower_side.emplace_back(d, sample(a + d));
    }
    for (std::size_t i = 0; i < n_body; ++i) {
      sample(a + w * (static_cast<double>(i) + 0.5) / static_cast<double>(n_body));
    }
    for (int k = 2; k <= kApproachDecades; ++k) {
      const double d = w * std::pow(10.0, -k);
      upper_side.emplace_back(d, sample(b - d));
    }
  } else {
    // Half-lines are handled in a local coordinate y >= 0 measured from the finite
    // endpoint (or from 0 on the whole line), mirrored for the lower side.
    auto half_line = [&](double origin, double sign, bool origin_finite,
                         std::vector<std::pair<double, double>>& near,
                         std::vector<std::pair<double, double>>& far) {
      if (origin_finite) {
        for (int k = kApproachDecades; k >= 2; --k) {
          const double d = std::pow(10.0, -k);
          near.emplace_back(d, sample(origin + sign * d));
        }
      }
      const std::size_t n_lin = n_body / 4;
      for (std::size_t i = 0; i < n_lin; ++i) {
        sample(origin + sign * (static_cast<double>(i) + 0.5) / static_cast<double>(n_lin));
      }
      const std::size_t n_log = n_body - n_lin;
      const double span = std::log(grid.x_max);
      for (std::size_t i = 0; i < n_log; ++i) {
        const double y = std::exp(span * static_cast<double>(i + 1) / static_cast<double>(n_log));
        const double m = sample(origin + sign * y);
        if (i >= 3 * n_log / 4) {
          far.emplace_back(y, m);
        }
      }
    };
    std::vector<std::pair<double, double>> unused;
    if (lower_inf && upper_inf) {
      half_line(0.0, 1.0, false, unused, upper_side);
      half_line(0.0, -1.0, false, unused, lower_side);
    } else if (upper_inf) {
      half_line(domain.lower, 1.0, true, lower_side, upper_side);
    } else {
      half_line(domain.upper, -1.0, true, upper_side, lower_side);
    }
  }

  std::sort(report.envelope.begin(), report.envelope.end(),
            [](const EnvelopeSample& l, const EnvelopeSample& r) { return l.x < r.x; });

  const SideVerdict lower = lower_inf ? infinite_side(lower_side) : finite_side(lower_side);
  const SideVerdict upper = upper_inf ? infinite_side(upper_side) : finite_side(upper_side);
  report.verdict = worst(lower.verdict, upper.verdict);
  report.tail_exponent = (lower_inf || upper_inf)
                             ? std::max(lower_inf ? lower.exponent : -HUGE_VAL,
                                        upper_inf ? upper.exponent : -HUGE_VAL)
                             : std::min(lower.exponent, upper.exponent);

  double body = 0.0;
  for (std::size_t i = 1; i < report.envelope.size(); ++i) {
    const auto& l = report.envelope[i - 1];
    const auto& r = report.envelope[i];
    body += 0.5 * (l.bound + r.bound) * (r.x - l.x);
  }
  const double total = body + lower.tail + upper.tail;
  if (report.verdict == Verdict::dominated && std::isfinite(total)) {
    report.envelope_integral = total;
  } else if (report.verdict == Verdict::dominated) {
    report.verdict = Verdict::inconclusive;
  }
  return report;
}

}  // namespace pil::leibniz
