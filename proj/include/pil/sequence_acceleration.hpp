#pragma once

#include <cstddef>
#include <vector>

namespace pil::quad {

/// Streaming Wynn epsilon algorithm.
///
/// Partial sums are pushed one at a time; the table is kept as its latest
/// counter-diagonal, so memory is linear in the number of terms. The estimate
/// is the highest even column reached. A zero difference inside the table
/// means that column has converged exactly and the row is cut there.
class WynnEpsilon {
 public:
  /// Pushes partial sum S_n and returns the current extrapolated limit.
  double push(double partial_sum);

  double estimate() const { return estimate_; }
  std::size_t size() const { return n_; }

 private:
  std::vector<double> diagonal_;  // diagonal_[k] = eps_k^{(n-k)}
  double estimate_ = 0.0;
  std::size_t n_ = 0;
};

}  // namespace pil::quad
