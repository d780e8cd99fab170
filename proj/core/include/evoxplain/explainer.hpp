#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "evoxplain/chromosome.hpp"
#include "evoxplain/classifier.hpp"
#include "evoxplain/explanation.hpp"
#include "evoxplain/image.hpp"
#include "evoxplain/superpixel_map.hpp"

namespace evoxplain {

enum class CrossoverKind { SinglePoint, Uniform };

struct GaParams {
  std::size_t population_size = 100;
  std::size_t generations = 50;
  double crossover_rate = 0.9;
  /// Probability that an offspring is mutated at all; a mutated offspring
  /// flips each bit independently with probability 1/ns.
  double mutation_rate = 0.2;
  std::size_t tournament_size = 3;
  std::uint64_t seed = 0;
  CrossoverKind crossover = CrossoverKind::SinglePoint;
  /// Replace the first random individual with the all-ones chromosome.
  bool seed_all_ones = false;
  /// Concurrent fitness evaluations per generation; the result does not depend on it.
  std::size_t workers = 1;

  /// Throws Error(Parameter) unless population_size >= 2 and even,
  /// generations >= 1, rates in [0, 1], tournament_size in [1, population_size]
  /// and workers >= 1.
  void validate() const;
};

struct EvaluatedIndividual {
  Chromosome chromosome;
  double fitness = 0.0;
};

/// Label predicted for the unmasked image and its probability.
struct OriginalPrediction {
  std::size_t target = 0;
  double probability = 0.0;
};

OriginalPrediction predict_target(const Classifier& model, const RasterImage& image);

/// Keeps the pixels of superpixels whose bit is 1 and paints the rest black.
RasterImage decode_mask(const Chromosome& c, const RasterImage& image, const SuperpixelMap& map);

/// Probability of `target` for the masked image.
double evaluate_fitness(const Classifier& model, const RasterImage& original, std::size_t target,
                        const Chromosome& c, const SuperpixelMap& map);

/// Fitness of every chromosome, fanned out over `workers` threads. Results are
/// stored by index. On failure the error of the lowest failing index is
/// rethrown with "individual <i>" context.
std::vector<double> evaluate_batch(const Classifier& model, const RasterImage& original,
                                   std::size_t target, std::span<const Chromosome> batch,
                                   const SuperpixelMap& map, std::size_t workers = 1);

/// Called after the initial population (generation 0) and after each
/// generation's offspring have been evaluated.
using GenerationObserver =
    std::function<void(std::size_t generation, std::span<const EvaluatedIndividual> population)>;

/// Generational GA over superpixel masks: tournament selection, crossover,
/// mutation, wholesale replacement and a best-so-far archive that is replaced
/// only on strict improvement. Issues population_size * (generations + 1) + 1
/// classifier calls.
Explanation evolve(const Classifier& model, const RasterImage& image, const SuperpixelMap& map,
                   const GaParams& params, const GenerationObserver& observer = {});

inline constexpr std::size_t kExhaustiveMaxNs = 20;

/// Evaluates all 2^ns masks. Ties go to the lowest value of the bits read
/// most-significant first (bit 0 is the MSB). Throws Error(Refused) if ns > 20.
EvaluatedIndividual exhaustive_best(const Classifier& model, const RasterImage& image,
                                    const SuperpixelMap& map, std::size_t target,
                                    std::size_t workers = 1);

}  // namespace evoxplain
