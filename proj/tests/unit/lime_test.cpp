#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "evoxplain/explainer.hpp"
#include "evoxplain/lime.hpp"
#include "evoxplain/scenario.hpp"
#include "helpers.hpp"

namespace evoxplain {
namespace {

using test::kind_of;

TEST(SampleMasks, AnchorAndDeterminism) {
  const auto one = sample_masks(7, 1, 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], Chromosome::ones(7));
  const auto a = sample_masks(7, 50, 3);
  EXPECT_EQ(a, sample_masks(7, 50, 3));
  EXPECT_NE(a, sample_masks(7, 50, 4));
  EXPECT_EQ(a[0], Chromosome::ones(7));
}

TEST(SampleMasks, BitsAreFair) {
  const auto masks = sample_masks(10, 10001, 17);
  std::size_t ones = 0;
  for (std::size_t i = 1; i < masks.size(); ++i) ones += masks[i].count_ones();
  const double mean = static_cast<double>(ones) / (10000.0 * 10.0);
  EXPECT_GE(mean, 0.48);
  EXPECT_LE(mean, 0.52);
}

TEST(KernelWeight, Examples) {
  EXPECT_EQ(kernel_weight(Chromosome::ones(100), 2.5), 1.0);
  // d = 100 / sqrt(100) = 10, exp(-100 / 6.25) = exp(-16).
  EXPECT_NEAR(kernel_weight(Chromosome::zeros(100), 2.5), std::exp(-16.0), 1e-20);
  EXPECT_NEAR(kernel_weight(Chromosome::zeros(100), 2.5), 1.125e-7, 1e-10);
  double prev = 2.0;
  for (std::size_t zeros = 0; zeros <= 20; ++zeros) {
    Chromosome c = Chromosome::ones(20);
    for (std::size_t j = 0; j < zeros; ++j) c.set(j, false);
    const double w = kernel_weight(c, 1.0);
    EXPECT_LT(w, prev);
    prev = w;
  }
  EXPECT_EQ(kind_of([] { kernel_weight(Chromosome::ones(3), 0.0); }), ErrorKind::Parameter);
}

// Weighted ridge with unpenalised intercept, solved by Gaussian elimination
// with partial pivoting on the explicit normal equations.
std::vector<double> reference_ridge(const std::vector<Chromosome>& x, const std::vector<double>& y,
                                    const std::vector<double>& w, double lambda) {
  const std::size_t p = x[0].size() + 1;
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> row{1.0};
    for (std::size_t j = 0; j < x[i].size(); ++j) row.push_back(x[i][j] ? 1.0 : 0.0);
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t c = 0; c < p; ++c) a[r][c] += w[i] * row[r] * row[c];
      a[r][p] += w[i] * row[r] * y[i];
    }
  }
  for (std::size_t r = 1; r < p; ++r) a[r][r] += lambda;
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < p; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= p; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> beta(p);
  for (std::size_t r = 0; r < p; ++r) beta[r] = a[r][p] / a[r][r];
  return beta;
}

TEST(Ridge, MatchesReferenceSolver) {
  const auto masks = sample_masks(6, 80, 1);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> y(masks.size());
  std::vector<double> w(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    y[i] = u(gen);
    w[i] = 0.1 + u(gen);
  }
  const auto fit = fit_weighted_ridge(masks, y, w, 0.3);
  const auto ref = reference_ridge(masks, y, w, 0.3);
  EXPECT_NEAR(fit.intercept, ref[0], 1e-10);
  ASSERT_EQ(fit.coefficients.size(), 6u);
  for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(fit.coefficients[j], ref[j + 1], 1e-10);
}

TEST(Ridge, RecoversExactLinearData) {
  const std::vector<double> truth{0.9, 0.1, 0.5, 0.3, 0.7, 0.2, 0.6, 0.4};
  const auto masks = sample_masks(8, 200, 2);
  std::vector<double> y;
  for (const auto& m : masks) {
    double v = 0.25;
    for (std::size_t j = 0; j < 8; ++j) v += truth[j] * m[j];
    y.push_back(v);
  }
  const std::vector<double> w(masks.size(), 1.0);
  const auto fit = fit_weighted_ridge(masks, y, w, 0.0);
  EXPECT_NEAR(fit.intercept, 0.25, 1e-9);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(fit.coefficients[j], truth[j], 1e-9);
  // Top three true coefficients: 0.9 (0), 0.7 (4), 0.6 (6).
  EXPECT_EQ(fit_and_select(masks, y, w, 3, 1e-3), Chromosome::parse("10001010"));
}

TEST(Ridge, OrderFree) {
  auto masks = sample_masks(5, 40, 8);
  std::vector<double> y;
  std::vector<double> w;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    y.push_back(std::sin(static_cast<double>(i)) * 0.5 + 0.5);
    w.push_back(kernel_weight(masks[i], 1.0));
  }
  const auto forward = fit_weighted_ridge(masks, y, w, 1e-3);
  std::reverse(masks.begin(), masks.end());
  std::reverse(y.begin(), y.end());
  std::reverse(w.begin(), w.end());
  const auto backward = fit_weighted_ridge(masks, y, w, 1e-3);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(forward.coefficients[j], backward.coefficients[j], 1e-12);
}

TEST(Ridge, ConstantTargetsAndSingularSystems) {
  const auto masks = sample_masks(4, 30, 3);
  const std::vector<double> y(masks.size(), 0.7);
  const std::vector<double> w(masks.size(), 1.0);
  const auto fit = fit_weighted_ridge(masks, y, w, 1e-3);
  for (double c : fit.coefficients) EXPECT_EQ(c, 0.0);
  EXPECT_EQ(fit_and_select(masks, y, w, 2), Chromosome::parse("1100"));

  // Zero weights leave nothing to fit.
  std::vector<double> varied(y);
  varied[3] = 0.9;
  const std::vector<double> zero(masks.size(), 0.0);
  EXPECT_EQ(kind_of([&] { fit_weighted_ridge(masks, varied, zero, 0.0); }), ErrorKind::Numeric);
}

TEST(Select, BudgetAndTieRules) {
  EXPECT_EQ(select_top_features(std::vector<double>{0.1, 0.5, 0.5, -1.0}, 2), Chromosome::parse("0110"));
  EXPECT_EQ(select_top_features(std::vector<double>{0.3, 0.3, 0.3}, 2), Chromosome::parse("110"));
  // Fewer positives than the budget: fill by descending value.
  EXPECT_EQ(select_top_features(std::vector<double>{-0.5, 0.2, -0.1, -0.9}, 3), Chromosome::parse("1110"));
  EXPECT_EQ(select_top_features(std::vector<double>{-0.5, 0.2, -0.1}, 3), Chromosome::ones(3));
  EXPECT_EQ(kind_of([] { select_top_features(std::vector<double>{1.0, 2.0}, 0); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([] { select_top_features(std::vector<double>{1.0, 2.0}, 3); }), ErrorKind::Parameter);
}

TEST(LimeParams, Validation) {
  LimeParams p;
  p.num_samples = 12;
  EXPECT_EQ(kind_of([&] { p.validate(12); }), ErrorKind::Parameter);
  EXPECT_NO_THROW(p.validate(11));
  p.kernel_width = -1.0;
  EXPECT_EQ(kind_of([&] { p.validate(4); }), ErrorKind::Parameter);
  EXPECT_NEAR(LimeParams{}.effective_kernel_width(100), 2.5, 1e-15);
}

class LimeScenario : public ::testing::Test {
 protected:
  static const Scenario& scenario() {
    // Four strongly positive superpixels, nothing else.
    static const Scenario s = make_scenario(ScenarioSpec{"lime", 12, 4, 0, 3.0, 48, 48, 4});
    return s;
  }
};

TEST_F(LimeScenario, RecoversPositiveSuperpixels) {
  const auto& s = scenario();
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    LimeParams p;
    p.seed = seed;
    const auto e = explain_lime(s.classifier, s.reference, s.map, p, 4);
    EXPECT_EQ(e.best.count_ones(), 4u);
    hits += e.best.ones_indices() == s.salient;
  }
  EXPECT_GE(hits, 28);
}

TEST_F(LimeScenario, CallCountAndReport) {
  const auto& s = scenario();
  test::CountingClassifier counting(s.classifier);
  LimeParams p;
  p.num_samples = 40;
  p.seed = 1;
  const auto e = explain_lime(counting, s.reference, s.map, p, 5);
  EXPECT_EQ(counting.calls(), 41u);
  EXPECT_EQ(e.classifier_calls, 41u);
  EXPECT_EQ(e.method, "lime-baseline");
  ASSERT_EQ(e.history.size(), 1u);
  EXPECT_EQ(e.history[0], e.best_fitness);
  EXPECT_EQ(e.best_fitness, evaluate_fitness(s.classifier, s.reference, 0, e.best, s.map));
  EXPECT_EQ(e.original_probability, s.classifier.predict(s.reference)[0]);

  LimeParams det = p;
  EXPECT_EQ(explain_lime(s.classifier, s.reference, s.map, det, 5).best, e.best);
  EXPECT_EQ(explain_lime(s.classifier, s.reference, s.map, p, 12).best, Chromosome::ones(12));
}

TEST_F(LimeScenario, ParameterErrors) {
  const auto& s = scenario();
  LimeParams p;
  p.num_samples = 12;
  EXPECT_EQ(kind_of([&] { explain_lime(s.classifier, s.reference, s.map, p, 4); }), ErrorKind::Parameter);
  p.num_samples = 100;
  EXPECT_EQ(kind_of([&] { explain_lime(s.classifier, s.reference, s.map, p, 0); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([&] { explain_lime(s.classifier, s.reference, s.map, p, 13); }), ErrorKind::Parameter);
}

}  // namespace
}  // namespace evoxplain
