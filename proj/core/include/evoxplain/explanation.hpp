#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "evoxplain/chromosome.hpp"

namespace evoxplain {

/// Result of one explanation run (evolutionary or baseline).
struct Explanation {
  std::string method;
  Chromosome best;
  double best_fitness = 0.0;
  std::size_t target_label = 0;
  double original_probability = 0.0;
  /// Best-so-far fitness after initialisation and after each generation.
  std::vector<double> history;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::size_t classifier_calls = 0;
  /// Numeric parameters the run was configured with, in declaration order.
  std::vector<std::pair<std::string, double>> params;

  /// History non-empty and non-decreasing, best_fitness == history.back().
  bool is_consistent() const noexcept;
};

}  // namespace evoxplain
