#include "evoxplain/prob_dist.hpp"

#include <cmath>
#include <string>

#include "evoxplain/error.hpp"

namespace evoxplain {

ProbDist::ProbDist(std::vector<double> probs) : ProbDist(std::move(probs), kSumTolerance) {}

ProbDist ProbDist::with_tolerance(std::vector<double> probs, double sum_tolerance) {
  return ProbDist(std::move(probs), sum_tolerance);
}

ProbDist::ProbDist(std::vector<double> probs, double sum_tolerance) : probs_(std::move(probs)) {
  if (probs_.empty()) fail(ErrorKind::Input, "probability vector is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p) || p < 0.0) {
      fail(ErrorKind::Input, "probability " + std::to_string(i) + " is negative or not finite");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > sum_tolerance) {
    fail(ErrorKind::Input, "probabilities sum to " + std::to_string(sum));
  }
}

std::size_t ProbDist::argmax() const noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs_.size(); ++i) {
    if (probs_[i] > probs_[best]) best = i;
  }
  return best;
}

}  // namespace evoxplain
