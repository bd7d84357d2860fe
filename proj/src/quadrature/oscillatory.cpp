#include <cmath>
#include <limits>
#include <vector>

#include "detail.hpp"
#include "pil/errors.hpp"
#include "pil/sequence_acceleration.hpp"

namespace pil::quad {

namespace {

constexpr std::size_t kMinHalfPeriods = 6;
constexpr std::size_t kMaxHalfPeriods = 60;
constexpr std::size_t kWarmUp = 2;

QuadResult fallback(const Integrand& f, const DomainSpec& domain, const QuadConfig& cfg,
                    std::size_t spent) {
  DomainSpec plain = domain;
  plain.oscillatory_tail.reset();
  QuadResult r = integrate_improper(f, plain, cfg);
  r.n_evals += spent;
  r.status = Status::tail_truncated;
  return r;
}

}  // namespace

QuadResult integrate_oscillatory_improper(const Integrand& f, const DomainSpec& domain,
                                          const QuadConfig& cfg) {
  validate(domain);
  validate(cfg);
  if (!domain.oscillatory_tail) {
    throw InvalidArgumentError("integrate_oscillatory_improper needs an oscillatory tail");
  }
  const auto& zero_at = domain.oscillatory_tail->phase_zero;

  // Pieces share the error budget so their sum can still meet the tolerance.
  QuadConfig piece_cfg = cfg;
  piece_cfg.abs_tol = cfg.abs_tol / static_cast<double>(2 * kMaxHalfPeriods);
  piece_cfg.rel_tol = cfg.rel_tol / static_cast<double>(2 * kMaxHalfPeriods);

  std::size_t k = 0;
  double left = zero_at(k);
  while (!(left > domain.lower)) {
    left = zero_at(++k);
  }

  QuadResult head = domain.lower_kind == EndpointKind::integrable_singularity
                        ? integrate_singular(f, DomainSpec::singular(domain.lower, left, true, false),
                                             piece_cfg)
                        : detail::gauss_kronrod(f, domain.lower, left, piece_cfg);

  double partial = head.value;
  double piece_error = head.abs_err_est;
  std::size_t n_evals = head.n_evals;

  WynnEpsilon epsilon;
  epsilon.push(partial);

  double best = partial;
  double best_increment = std::numeric_limits<double>::infinity();
  double previous_estimate = partial;
  double previous_piece = 0.0;

  for (std::size_t n = 1; n <= kMaxHalfPeriods; ++n) {
    const double right = zero_at(++k);
    if (!(right > left)) {
      throw InvalidArgumentError("phase-zero rule must be strictly increasing");
    }
    const QuadResult piece = detail::gauss_kronrod(f, left, right, piece_cfg);
    left = right;
    n_evals += piece.n_evals;
    piece_error += piece.abs_err_est;
    partial += piece.value;

    const bool negligible =
        std::abs(piece.value) <= std::numeric_limits<double>::epsilon() * std::abs(partial);
    if (!negligible && n > kWarmUp && previous_piece != 0.0 &&
        std::signbit(piece.value) == std::signbit(previous_piece)) {
      return fallback(f, domain, cfg, n_evals);
    }
    if (!negligible) {
      previous_piece = piece.value;
    }

    if (negligible && n >= kMinHalfPeriods) {
      // The tail has died out on its own; no extrapolation needed.
      best = partial;
      best_increment = std::abs(piece.value);
      break;
    }

    const double estimate = epsilon.push(partial);
    const double increment = std::abs(estimate - previous_estimate);
    previous_estimate = estimate;
    if (n < kMinHalfPeriods) {
      continue;
    }
    if (increment <= best_increment) {
      best = estimate;
      best_increment = increment;
    }
    if (increment <= 0.5 * cfg.tolerance_for(estimate)) {
      break;
    }
  }

  const double error = best_increment + piece_error;
  const Status status = error <= cfg.tolerance_for(best) ? Status::converged : Status::max_depth;
  return {best, error, n_evals, status};
}

}  // namespace pil::quad
