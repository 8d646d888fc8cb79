#include <gtest/gtest.h>

#include <sstream>

#include "erc20graph/logistic.hpp"
#include "oracles.hpp"

using namespace erc20graph;

namespace {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (auto& v : m.data) v = rng.normal();
  return m;
}

std::vector<int> random_labels(Rng& rng, std::size_t n) {
  std::vector<int> y(n);
  for (auto& v : y) v = rng.bernoulli(0.4) ? 1 : 0;
  y[0] = 1;
  y[1] = 0;
  return y;
}

// Noisy linear labels over d columns.
Design noisy_design(Rng& rng, std::size_t n, std::size_t d) {
  Design des;
  des.x = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    double z = 0.3;
    for (std::size_t j = 0; j < d; ++j) {
      double v = rng.normal(10.0 * static_cast<double>(j), 1.0 + static_cast<double>(j));
      des.x(i, j) = v;
      z += (j % 2 ? -0.7 : 0.9) * (v - 10.0 * static_cast<double>(j)) / (1.0 + static_cast<double>(j));
    }
    des.y.push_back(rng.bernoulli(sigmoid(z)) ? 1 : 0);
    des.keys.push_back(i);
  }
  return des;
}

double max_relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1e-3, std::max(std::abs(a[i]), std::abs(b[i]))));
  return worst;
}

}  // namespace

TEST(Standardizer, TwoPoints) {
  Matrix x;
  x.push_row({1.0});
  x.push_row({3.0});
  auto s = standardize_fit(x);
  EXPECT_DOUBLE_EQ(s.mean[0], 2.0);
  EXPECT_DOUBLE_EQ(s.std[0], 1.0);
}

TEST(Standardizer, ConstantColumn) {
  Matrix x;
  for (int i = 0; i < 3; ++i) x.push_row({5.0});
  auto s = standardize_fit(x);
  EXPECT_EQ(s.std[0], 0.0);
  auto xs = s.apply(x);
  for (double v : xs.data) EXPECT_EQ(v, 0.0);
}

TEST(Standardizer, Idempotent) {
  Rng rng(1);
  auto x = random_matrix(rng, 200, 4);
  auto once = standardize_fit(x).apply(x);
  auto s2 = standardize_fit(once);
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(s2.mean[j], 0.0, 1e-12);
    EXPECT_NEAR(s2.std[j], 1.0, 1e-12);
  }
}

TEST(Standardizer, EmptyIsError) { EXPECT_THROW(standardize_fit(Matrix{}), DimensionError); }

TEST(Loss, ZeroParamsBalancedIsLn2) {
  Rng rng(2);
  auto x = random_matrix(rng, 10, 3);
  std::vector<int> y{1, 0, 1, 0, 1, 0, 1, 0, 1, 0};
  auto lg = loss_and_gradient(std::vector<double>(4, 0.0), x, y, 1.0);
  EXPECT_NEAR(lg.loss, std::log(2.0), 1e-15);
}

TEST(Loss, DimensionMismatch) {
  Rng rng(3);
  auto x = random_matrix(rng, 5, 3);
  std::vector<int> y(5, 0);
  EXPECT_THROW(loss_and_gradient(std::vector<double>(3, 0.0), x, y, 1.0), DimensionError);
  EXPECT_THROW(loss_and_gradient(std::vector<double>(4, 0.0), x, std::vector<int>(4, 0), 1.0), DimensionError);
}

TEST(Loss, GradientMatchesFiniteDifferences) {
  Rng rng(4);
  for (int instance = 0; instance < 20; ++instance) {
    auto x = random_matrix(rng, 50, 8);
    auto y = random_labels(rng, 50);
    std::vector<double> params(9);
    for (auto& p : params) p = rng.normal(0.0, 0.5);
    double lambda = rng.uniform(0.0, 3.0);
    auto analytic = loss_and_gradient(params, x, y, lambda).gradient;
    auto numeric = oracle::central_difference(
        [&](const std::vector<double>& p) { return loss_and_gradient(p, x, y, lambda).loss; }, params, 1e-6);
    EXPECT_LT(max_relative_error(analytic, numeric), 1e-6) << "instance " << instance;
  }
}

TEST(Sigmoid, OverflowSafe) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_LT(1.0 - sigmoid(50.0), 1e-20);  // 1 - 1e-20 is not representable
  EXPECT_LE(sigmoid(50.0), 1.0);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  EXPECT_GT(sigmoid(-400.0), 0.0);
  EXPECT_TRUE(std::isfinite(softplus(1000.0)));
  EXPECT_NEAR(softplus(0.0), std::log(2.0), 1e-15);
}

TEST(Classify, BoundaryInclusive) {
  EXPECT_EQ(classify(0.5), 1);
  EXPECT_EQ(classify(0.4999), 0);
  EXPECT_EQ(classify(0.8, 0.9), 0);
  EXPECT_EQ(classify(std::nextafter(0.5, 0.0)), 0);
}

TEST(Train, SignMonotonicity1D) {
  Design d;
  for (int i = 0; i < 40; ++i) {
    d.x.push_row({static_cast<double>(i)});
    d.y.push_back(i >= 20 ? 1 : 0);
    d.keys.push_back(static_cast<std::uint64_t>(i));
  }
  // train() ties the column count to a feature variant, so drive the
  // optimizer directly on one column.
  auto s = standardize_fit(d.x);
  auto xs = s.apply(d.x);
  std::vector<double> p(2, 0.0);
  for (int it = 0; it < 2000; ++it) {
    auto lg = loss_and_gradient(p, xs, d.y, 1.0);
    for (std::size_t j = 0; j < 2; ++j) p[j] -= 0.1 * lg.gradient[j];
  }
  EXPECT_GT(p[1], 0.0);
}

TEST(Train, SingleClassIsDegenerate) {
  Rng rng(5);
  auto d = noisy_design(rng, 30, 8);
  std::fill(d.y.begin(), d.y.end(), 1);
  EXPECT_THROW(train(d, FeatureVariant::full), DegenerateTrainingError);
}

TEST(Train, LossNonIncreasing) {
  Rng rng(6);
  for (int run = 0; run < 5; ++run) {
    auto d = noisy_design(rng, 200, 8);
    auto m = train(d, FeatureVariant::full);
    ASSERT_GT(m.loss_history.size(), 2u);
    for (std::size_t i = 1; i < m.loss_history.size(); ++i)
      ASSERT_LE(m.loss_history[i], m.loss_history[i - 1]) << "iteration " << i;
    EXPECT_LT(m.iterations, m.config.max_iterations);
  }
}

TEST(Train, Deterministic) {
  Rng rng(7);
  auto d = noisy_design(rng, 150, 8);
  auto a = train(d, FeatureVariant::full);
  auto b = train(d, FeatureVariant::full);
  EXPECT_EQ(a.coefficients, b.coefficients);
  EXPECT_EQ(a.intercept, b.intercept);
}

TEST(Train, ConvexityTwoInitsAgree) {
  Rng rng(8);
  auto d = noisy_design(rng, 200, 8);
  TrainConfig c1, c2;
  c1.random_init = true;
  c1.seed = 1;
  c2.random_init = true;
  c2.seed = 2;
  auto a = train(d, FeatureVariant::full, c1);
  auto b = train(d, FeatureVariant::full, c2);
  EXPECT_NEAR(a.final_loss, b.final_loss, 1e-6);
}

// Mean NLL is invariant to replicating every row. The penalty is scaled by
// 1/n, so the fitted coefficients are only replication-invariant without it.
TEST(Train, ReplicationInvarianceUnpenalized) {
  Rng rng(9);
  auto d = noisy_design(rng, 120, 8);
  Design twice = d;
  for (std::size_t i = 0; i < d.x.rows; ++i) {
    std::vector<double> r(d.x.row(i), d.x.row(i) + d.x.cols);
    twice.x.push_row(r);
    twice.y.push_back(d.y[i]);
    twice.keys.push_back(d.keys[i]);
  }
  TrainConfig cfg;
  cfg.lambda = 0.0;
  cfg.tolerance = 1e-10;
  cfg.max_iterations = 200'000;
  auto a = train(d, FeatureVariant::full, cfg);
  auto b = train(twice, FeatureVariant::full, cfg);
  EXPECT_LT(a.iterations, cfg.max_iterations);
  EXPECT_NEAR(a.intercept, b.intercept, 1e-8);
  for (std::size_t j = 0; j < a.coefficients.size(); ++j) EXPECT_NEAR(a.coefficients[j], b.coefficients[j], 1e-8);
}

TEST(Train, StrongPenaltyShrinksToBaseRate) {
  Rng rng(10);
  auto d = noisy_design(rng, 200, 8);
  double base = static_cast<double>(std::count(d.y.begin(), d.y.end(), 1)) / static_cast<double>(d.y.size());
  double prev = INFINITY;
  for (double per_row : {0.0, 1.0, 5.0, 15.0}) {
    TrainConfig cfg;
    cfg.lambda = per_row * static_cast<double>(d.y.size());
    auto m = train(d, FeatureVariant::full, cfg);
    double norm = 0.0;
    for (double c : m.coefficients) norm = std::max(norm, std::abs(c));
    EXPECT_LT(norm, prev);
    prev = norm;
    if (per_row == 15.0) {
      EXPECT_LT(norm, 0.05);
      EXPECT_NEAR(m.intercept, std::log(base / (1 - base)), 0.05);
    }
  }
}

TEST(Predict, InterceptOnlyAtMeans) {
  Rng rng(11);
  auto m = train(noisy_design(rng, 100, 8), FeatureVariant::full);
  std::fill(m.coefficients.begin(), m.coefficients.end(), 0.0);
  m.intercept = 0.7;
  EXPECT_DOUBLE_EQ(predict_proba(m, m.feature_names, m.standardizer.mean), sigmoid(0.7));
  m.intercept = 0.0;
  EXPECT_EQ(predict_proba(m, m.feature_names, m.standardizer.mean), 0.5);
}

TEST(Predict, FeatureNameMismatch) {
  Rng rng(12);
  auto m = train(noisy_design(rng, 100, 8), FeatureVariant::full);
  EXPECT_THROW(predict_proba(m, feature_names(FeatureVariant::reduced), std::vector<double>(6, 0.0)),
               FeatureMismatchError);
}

TEST(ModelFile, RoundTrip) {
  Rng rng(13);
  TrainConfig cfg;
  cfg.seed = 18446744073709551557ull;
  auto m = train(noisy_design(rng, 100, 6), FeatureVariant::reduced, cfg);
  std::stringstream s;
  save_model(s, m);
  auto back = load_model(s);
  EXPECT_EQ(back.feature_names, m.feature_names);
  EXPECT_EQ(back.variant, m.variant);
  EXPECT_EQ(back.config.seed, m.config.seed);
  EXPECT_EQ(back.iterations, m.iterations);
  EXPECT_EQ(back.config.lambda, m.config.lambda);
  for (std::size_t j = 0; j < m.coefficients.size(); ++j) {
    EXPECT_NEAR(back.coefficients[j], m.coefficients[j], 1e-15 * std::max(1.0, std::abs(m.coefficients[j])));
    EXPECT_EQ(back.standardizer.mean[j], m.standardizer.mean[j]);
    EXPECT_EQ(back.standardizer.std[j], m.standardizer.std[j]);
  }
  for (int i = 0; i < 100; ++i) {
    std::vector<double> row(6);
    for (auto& v : row) v = rng.normal(5.0, 5.0);
    EXPECT_NEAR(predict_proba(back, back.feature_names, row), predict_proba(m, m.feature_names, row), 1e-12);
  }
}

TEST(ModelFile, TruncatedAndVersionErrors) {
  Rng rng(14);
  auto m = train(noisy_design(rng, 100, 8), FeatureVariant::full);
  std::stringstream s;
  save_model(s, m);
  std::string text = s.str();

  std::istringstream truncated(text.substr(0, text.size() / 2));
  EXPECT_THROW(load_model(truncated), ModelFormatError);

  std::string v2 = text;
  v2.replace(v2.find("format_version=1"), 16, "format_version=2");
  std::istringstream future(v2);
  try {
    load_model(future);
    FAIL();
  } catch (const ModelFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }

  std::string bad_seed = text;
  auto pos = bad_seed.find("seed=");
  bad_seed.replace(pos, bad_seed.find('\n', pos) - pos, "seed=x1");
  std::istringstream seeded(bad_seed);
  EXPECT_THROW(load_model(seeded), ModelFormatError);

  std::istringstream garbage("hello\n");
  EXPECT_THROW(load_model(garbage), ModelFormatError);
}
