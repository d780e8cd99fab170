#include "evoxplain/explanation.hpp"

namespace evoxplain {

bool Explanation::is_consistent() const noexcept {
  if (history.empty()) return false;
  for (std::size_t i = 1; i < history.size(); ++i) {
    if (history[i] < history[i - 1]) return false;
  }
  return history.back() == best_fitness;
}

}  // namespace evoxplain
