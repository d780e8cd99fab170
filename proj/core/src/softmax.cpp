#include "evoxplain/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "evoxplain/error.hpp"

namespace evoxplain {

ProbDist softmax(std::span<const double> logits) {
  if (logits.size() < 2) fail(ErrorKind::Input, "softmax needs at least two logits");
  for (double z : logits) {
    if (!std::isfinite(z)) fail(ErrorKind::Input, "softmax input is not finite");
  }
  const double shift = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - shift);
    total += out[i];
  }
  for (double& p : out) p /= total;
  return ProbDist(std::move(out));
}

}  // namespace evoxplain
