#include "evoxplain/explainer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <string>
#include <thread>

#include "evoxplain/error.hpp"
#include "evoxplain/random.hpp"

namespace evoxplain {

void GaParams::validate() const {
  if (population_size < 2 || population_size % 2 != 0) {
    fail(ErrorKind::Parameter, "population size must be even and at least 2");
  }
  if (generations < 1) fail(ErrorKind::Parameter, "generations must be at least 1");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    fail(ErrorKind::Parameter, "crossover rate must lie in [0, 1]");
  }
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    fail(ErrorKind::Parameter, "mutation rate must lie in [0, 1]");
  }
  if (tournament_size < 1 || tournament_size > population_size) {
    fail(ErrorKind::Parameter, "tournament size must lie in [1, population size]");
  }
  if (workers < 1) fail(ErrorKind::Parameter, "workers must be at least 1");
}

OriginalPrediction predict_target(const Classifier& model, const RasterImage& image) {
  const ProbDist probs = model.predict(image);
  const std::size_t target = probs.argmax();
  return OriginalPrediction{target, probs[target]};
}

RasterImage decode_mask(const Chromosome& c, const RasterImage& image, const SuperpixelMap& map) {
  if (!validate_chromosome(c, map)) {
    fail(ErrorKind::Input, "chromosome length " + std::to_string(c.size()) +
                               " does not match superpixel count " + std::to_string(map.ns()));
  }
  if (!image.same_size(map.width(), map.height())) {
    fail(ErrorKind::Input, "image and superpixel map dimensions differ");
  }
  const auto src = image.pixels();
  const auto labels = map.labels();
  const auto bits = c.bits();
  std::vector<Rgb> out(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    out[i] = bits[static_cast<std::size_t>(labels[i])] ? src[i] : kBlack;
  }
  return RasterImage(image.width(), image.height(), std::move(out));
}

double evaluate_fitness(const Classifier& model, const RasterImage& original, std::size_t target,
                        const Chromosome& c, const SuperpixelMap& map) {
  const ProbDist probs = model.predict(decode_mask(c, original, map));
  if (target >= probs.size()) {
    fail(ErrorKind::Input, "target label " + std::to_string(target) + " outside the " +
                               std::to_string(probs.size()) + " classes");
  }
  return probs[target];
}

std::vector<double> evaluate_batch(const Classifier& model, const RasterImage& original,
                                   std::size_t target, std::span<const Chromosome> batch,
                                   const SuperpixelMap& map, std::size_t workers) {
  const std::size_t n = batch.size();
  std::vector<double> fitness(n, 0.0);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  // Indices are handed out in increasing order and dispatch stops at the first
  // failure, so every index below a recorded failure has been evaluated.
  const auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fitness[i] = evaluate_fitness(model, original, target, batch[i], map);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };

  const std::size_t threads = std::min(std::max<std::size_t>(workers, 1), n);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw e.with_context("individual " + std::to_string(i));
    }
  }
  return fitness;
}

namespace {

std::size_t first_best(const std::vector<double>& fitness) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < fitness.size(); ++i) {
    if (fitness[i] > fitness[best]) best = i;
  }
  return best;
}

class Breeder {
 public:
  Breeder(const GaParams& params, std::size_t ns, Rng& rng) : params_(params), ns_(ns), rng_(rng) {}

  std::size_t tournament(const std::vector<double>& fitness) {
    std::size_t winner = rng_.index(fitness.size());
    for (std::size_t t = 1; t < params_.tournament_size; ++t) {
      const std::size_t challenger = rng_.index(fitness.size());
      if (fitness[challenger] > fitness[winner]) winner = challenger;
    }
    return winner;
  }

  void crossover(Chromosome& a, Chromosome& b) {
    if (!rng_.bernoulli(params_.crossover_rate)) return;
    if (params_.crossover == CrossoverKind::SinglePoint) {
      if (ns_ < 2) return;
      const std::size_t point = 1 + rng_.index(ns_ - 1);
      for (std::size_t i = point; i < ns_; ++i) swap_bit(a, b, i);
    } else {
      for (std::size_t i = 0; i < ns_; ++i) {
        if (rng_.coin()) swap_bit(a, b, i);
      }
    }
  }

  void mutate(Chromosome& c) {
    if (!rng_.bernoulli(params_.mutation_rate)) return;
    const double per_bit = 1.0 / static_cast<double>(ns_);
    for (std::size_t i = 0; i < ns_; ++i) {
      if (rng_.bernoulli(per_bit)) c.flip(i);
    }
  }

 private:
  static void swap_bit(Chromosome& a, Chromosome& b, std::size_t i) {
    const bool tmp = a[i];
    a.set(i, b[i]);
    b.set(i, tmp);
  }

  const GaParams& params_;
  std::size_t ns_;
  Rng& rng_;
};

void notify(const GenerationObserver& observer, std::size_t generation,
            const std::vector<Chromosome>& pop, const std::vector<double>& fitness) {
  if (!observer) return;
  std::vector<EvaluatedIndividual> view;
  view.reserve(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) view.push_back({pop[i], fitness[i]});
  observer(generation, view);
}

}  // namespace

Explanation evolve(const Classifier& model, const RasterImage& image, const SuperpixelMap& map,
                   const GaParams& params, const GenerationObserver& observer) {
  params.validate();
  if (!image.same_size(map.width(), map.height())) {
    fail(ErrorKind::Input, "image and superpixel map dimensions differ");
  }
  const auto started = std::chrono::steady_clock::now();
  const std::size_t ns = map.ns();
  const std::size_t pop_size = params.population_size;

  Explanation result;
  result.method = "elime";
  result.seed = params.seed;

  // The label is fixed once from the unmasked image.
  const OriginalPrediction original = predict_target(model, image);
  result.target_label = original.target;
  result.original_probability = original.probability;
  std::size_t calls = 1;

  Rng rng(params.seed);
  std::vector<Chromosome> pop;
  pop.reserve(pop_size);
  for (std::size_t p = 0; p < pop_size; ++p) {
    std::vector<std::uint8_t> bits(ns);
    for (auto& bit : bits) bit = rng.coin() ? 1 : 0;
    pop.emplace_back(std::move(bits));
  }
  if (params.seed_all_ones) pop.front() = Chromosome::ones(ns);

  const auto evaluate = [&](const std::vector<Chromosome>& batch, std::size_t generation) {
    try {
      auto f = evaluate_batch(model, image, original.target, batch, map, params.workers);
      calls += batch.size();
      return f;
    } catch (const Error& e) {
      throw e.with_context("generation " + std::to_string(generation));
    }
  };

  std::vector<double> fitness = evaluate(pop, 0);
  std::size_t best_index = first_best(fitness);
  Chromosome best = pop[best_index];
  double best_fitness = fitness[best_index];
  result.history.push_back(best_fitness);
  notify(observer, 0, pop, fitness);

  Breeder breeder(params, ns, rng);
  for (std::size_t generation = 1; generation <= params.generations; ++generation) {
    std::vector<Chromosome> offspring;
    offspring.reserve(pop_size);
    for (std::size_t pair = 0; pair < pop_size / 2; ++pair) {
      Chromosome a = pop[breeder.tournament(fitness)];
      Chromosome b = pop[breeder.tournament(fitness)];
      breeder.crossover(a, b);
      breeder.mutate(a);
      breeder.mutate(b);
      offspring.push_back(std::move(a));
      offspring.push_back(std::move(b));
    }
    fitness = evaluate(offspring, generation);
    pop = std::move(offspring);

    best_index = first_best(fitness);
    if (fitness[best_index] > best_fitness) {
      best_fitness = fitness[best_index];
      best = pop[best_index];
    }
    result.history.push_back(best_fitness);
    notify(observer, generation, pop, fitness);
  }

  result.best = std::move(best);
  result.best_fitness = best_fitness;
  result.classifier_calls = calls;
  result.params = {
      {"ns", static_cast<double>(ns)},
      {"population_size", static_cast<double>(params.population_size)},
      {"generations", static_cast<double>(params.generations)},
      {"crossover_rate", params.crossover_rate},
      {"mutation_rate", params.mutation_rate},
      {"tournament_size", static_cast<double>(params.tournament_size)},
      {"uniform_crossover", params.crossover == CrossoverKind::Uniform ? 1.0 : 0.0},
      {"seed_all_ones", params.seed_all_ones ? 1.0 : 0.0},
  };
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

EvaluatedIndividual exhaustive_best(const Classifier& model, const RasterImage& image,
                                    const SuperpixelMap& map, std::size_t target,
                                    std::size_t workers) {
  const std::size_t ns = map.ns();
  if (ns > kExhaustiveMaxNs) {
    fail(ErrorKind::Refused, "exhaustive search over " + std::to_string(ns) +
                                 " superpixels refused (limit " +
                                 std::to_string(kExhaustiveMaxNs) + ")");
  }
  const std::uint64_t total = std::uint64_t{1} << ns;
  constexpr std::uint64_t kChunk = 4096;

  EvaluatedIndividual best{Chromosome::zeros(ns), -1.0};
  std::vector<Chromosome> chunk;
  for (std::uint64_t start = 0; start < total; start += kChunk) {
    const std::uint64_t end = std::min(total, start + kChunk);
    chunk.clear();
    for (std::uint64_t v = start; v < end; ++v) {
      std::vector<std::uint8_t> bits(ns);
      for (std::size_t j = 0; j < ns; ++j) bits[j] = static_cast<std::uint8_t>((v >> (ns - 1 - j)) & 1U);
      chunk.emplace_back(std::move(bits));
    }
    const auto fitness = evaluate_batch(model, image, target, chunk, map, workers);
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      if (fitness[i] > best.fitness) best = {chunk[i], fitness[i]};
    }
  }
  return best;
}

}  // namespace evoxplain
