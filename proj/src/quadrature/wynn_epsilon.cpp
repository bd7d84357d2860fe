#include <cmath>

#include "pil/sequence_acceleration.hpp"

namespace pil::quad {

double WynnEpsilon::push(double partial_sum) {
  std::vector<double> next;
  next.reserve(diagonal_.size() + 1);
  next.push_back(partial_sum);

  for (std::size_t k = 0; k < diagonal_.size(); ++k) {
    const double diff = next[k] - diagonal_[k];
    if (diff == 0.0) {
      break;
    }
    const double below = k == 0 ? 0.0 : diagonal_[k - 1];
    const double value = below + 1.0 / diff;
    if (!std::isfinite(value)) {
      break;
    }
    next.push_back(value);
  }

  diagonal_ = std::move(next);
  ++n_;

  // Odd columns hold reciprocals of differences, not estimates.
  const std::size_t top = (diagonal_.size() - 1) & ~std::size_t{1};
  estimate_ = diagonal_[top];
  return estimate_;
}

}  // namespace pil::quad
