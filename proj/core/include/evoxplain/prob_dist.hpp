#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace evoxplain {

/// Probability vector over K classes: entries >= 0, sum within tolerance of 1.
class ProbDist {
 public:
  static constexpr double kSumTolerance = 1e-9;

  /// Throws Error(Input) on negative/non-finite entries, K == 0, or a sum off by
  /// more than kSumTolerance.
  explicit ProbDist(std::vector<double> probs);

  /// Same checks with a caller-chosen sum tolerance. Used for distributions
  /// produced outside this process (single-precision softmax on the wire).
  static ProbDist with_tolerance(std::vector<double> probs, double sum_tolerance);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  /// Index of the largest probability; the lowest index wins ties.
  std::size_t argmax() const noexcept;

 private:
  ProbDist(std::vector<double> probs, double sum_tolerance);

  std::vector<double> probs_;
};

}  // namespace evoxplain
