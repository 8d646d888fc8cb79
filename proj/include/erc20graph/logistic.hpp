#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "erc20graph/dataset.hpp"
#include "erc20graph/errors.hpp"
#include "erc20graph/features.hpp"
#include "erc20graph/rng.hpp"

namespace erc20graph {

// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }
  double* row(std::size_t i) { return data.data() + i * cols; }

  void push_row(const std::vector<double>& r) {
    if (rows == 0 && cols == 0) cols = r.size();
    if (r.size() != cols) throw DimensionError("row width " + std::to_string(r.size()) + " != " + std::to_string(cols));
    data.insert(data.end(), r.begin(), r.end());
    ++rows;
  }
};

// Stable row identity for leakage bookkeeping.
inline std::uint64_t row_key(const FeatureVector& fv) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint8_t b) { h = (h ^ b) * 0x100000001b3ULL; };
  for (auto b : fv.token.bytes) mix(b);
  for (int i = 0; i < 8; ++i) mix(static_cast<std::uint8_t>(fv.window.start >> (8 * i)));
  return h;
}

struct Design {
  Matrix x;
  std::vector<int> y;
  std::vector<std::uint64_t> keys;
};

inline Design make_design(const LabeledDataset& ds, FeatureVariant variant, ProjectionOptions opt = {}) {
  Design d;
  d.x.cols = feature_names(variant).size();
  for (const auto& r : ds.rows) {
    d.x.push_row(project(r.features, variant, opt));
    d.y.push_back(r.label);
    d.keys.push_back(row_key(r.features));
  }
  return d;
}

// ---------------------------------------------------------------------------

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> std;  // 0 for constant columns; applied as 1

  std::size_t dims() const noexcept { return mean.size(); }

  void apply_inplace(double* row) const noexcept {
    for (std::size_t j = 0; j < mean.size(); ++j) row[j] = (row[j] - mean[j]) / (std[j] == 0.0 ? 1.0 : std[j]);
  }

  std::vector<double> apply(std::vector<double> row) const {
    if (row.size() != dims()) throw DimensionError("standardizer expects " + std::to_string(dims()) + " features");
    apply_inplace(row.data());
    return row;
  }

  Matrix apply(Matrix m) const {
    if (m.cols != dims()) throw DimensionError("standardizer expects " + std::to_string(dims()) + " features");
    for (std::size_t i = 0; i < m.rows; ++i) apply_inplace(m.row(i));
    return m;
  }
};

// Population mean and standard deviation per column.
inline Standardizer standardize_fit(const Matrix& x) {
  if (x.rows == 0) throw DimensionError("standardize_fit on an empty matrix");
  Standardizer s;
  s.mean.assign(x.cols, 0.0);
  s.std.assign(x.cols, 0.0);
  const double n = static_cast<double>(x.rows);
  for (std::size_t j = 0; j < x.cols; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) sum += x(i, j);
    double mean = sum / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
      double d = x(i, j) - mean;
      ss += d * d;
    }
    s.mean[j] = mean;
    s.std[j] = std::sqrt(ss / n);
    // Treat round-off-level spread on a constant column as zero.
    if (s.std[j] <= 1e-12 * std::max(1.0, std::abs(mean))) s.std[j] = 0.0;
  }
  return s;
}

// ---------------------------------------------------------------------------

inline double sigmoid(double z) noexcept {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  if (z < -500.0) return 0.0;
  double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + e^z) without overflow.
inline double softplus(double z) noexcept { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

struct LossGrad {
  double loss = 0.0;
  std::vector<double> gradient;  // [intercept, beta_1..beta_d]
};

// Mean negative log-likelihood plus (lambda / 2n) * |beta_1..d|^2; the
// intercept params[0] is not penalized.
inline LossGrad loss_and_gradient(const std::vector<double>& params, const Matrix& x, const std::vector<int>& y,
                                  double lambda) {
  if (params.size() != x.cols + 1) throw DimensionError("parameter count does not match feature count + 1");
  if (y.size() != x.rows) throw DimensionError("label count does not match row count");
  if (x.rows == 0) throw DimensionError("loss on zero rows");
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");

  const double n = static_cast<double>(x.rows);
  LossGrad out;
  out.gradient.assign(params.size(), 0.0);
  double nll = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double* r = x.row(i);
    double z = params[0];
    for (std::size_t j = 0; j < x.cols; ++j) z += params[j + 1] * r[j];
    nll += softplus(z) - (y[i] ? z : 0.0);
    double residual = sigmoid(z) - y[i];
    out.gradient[0] += residual;
    for (std::size_t j = 0; j < x.cols; ++j) out.gradient[j + 1] += residual * r[j];
  }
  double penalty = 0.0;
  for (std::size_t j = 1; j < params.size(); ++j) penalty += params[j] * params[j];
  out.loss = nll / n + lambda / (2.0 * n) * penalty;
  for (std::size_t j = 0; j < params.size(); ++j) {
    out.gradient[j] /= n;
    if (j > 0) out.gradient[j] += lambda / n * params[j];
  }
  return out;
}

struct TrainConfig {
  double lambda = 1.0;
  double learning_rate = 0.1;
  int max_iterations = 10'000;
  double tolerance = 1e-7;
  std::uint64_t seed = 0;
  // Start from N(0, 1) coefficients drawn from `seed` instead of zeros.
  bool random_init = false;
  bool log_amount = false;
};

struct Model {
  FeatureVariant variant = FeatureVariant::full;
  std::vector<std::string> feature_names;
  double intercept = 0.0;
  std::vector<double> coefficients;
  Standardizer standardizer;
  TrainConfig config;
  int iterations = 0;
  double final_loss = 0.0;
  std::vector<double> loss_history;  // in-memory only
  std::vector<std::uint64_t> fitted_row_keys;  // in-memory only; sorted

  bool fitted_on(std::uint64_t key) const {
    return std::binary_search(fitted_row_keys.begin(), fitted_row_keys.end(), key);
  }
};

// Full-batch gradient descent on standardized features. Deterministic in
// (data, config).
inline Model train(const Design& design, FeatureVariant variant, const TrainConfig& config = {}) {
  if (design.x.rows == 0) throw DegenerateTrainingError("training set is empty");
  std::size_t pos = static_cast<std::size_t>(std::count(design.y.begin(), design.y.end(), 1));
  if (pos == 0 || pos == design.y.size())
    throw DegenerateTrainingError("training set has a single class (" + std::to_string(pos) + " of " +
                                  std::to_string(design.y.size()) + " positive)");
  if (design.x.cols != feature_names(variant).size()) throw DimensionError("design width does not match variant");

  Model m;
  m.variant = variant;
  m.feature_names = feature_names(variant);
  m.config = config;
  m.standardizer = standardize_fit(design.x);
  Matrix xs = m.standardizer.apply(design.x);

  std::vector<double> params(xs.cols + 1, 0.0);
  if (config.random_init) {
    Rng rng(config.seed);
    for (auto& p : params) p = rng.normal();
  }

  LossGrad lg = loss_and_gradient(params, xs, design.y, config.lambda);
  m.loss_history.push_back(lg.loss);
  int it = 0;
  for (; it < config.max_iterations; ++it) {
    double gmax = 0.0;
    for (double g : lg.gradient) gmax = std::max(gmax, std::abs(g));
    if (gmax < config.tolerance) break;
    for (std::size_t j = 0; j < params.size(); ++j) params[j] -= config.learning_rate * lg.gradient[j];
    lg = loss_and_gradient(params, xs, design.y, config.lambda);
    m.loss_history.push_back(lg.loss);
  }
  for (double p : params)
    if (!std::isfinite(p)) throw RuntimeFailure("training diverged to non-finite coefficients");

  m.iterations = it;
  m.final_loss = lg.loss;
  m.intercept = params[0];
  m.coefficients.assign(params.begin() + 1, params.end());
  m.fitted_row_keys = design.keys;
  std::sort(m.fitted_row_keys.begin(), m.fitted_row_keys.end());
  return m;
}

inline Model train(const LabeledDataset& ds, FeatureVariant variant, const TrainConfig& config = {}) {
  return train(make_design(ds, variant, {.log_amount = config.log_amount}), variant, config);
}

inline double decision_value(const Model& m, const std::vector<double>& raw_row) {
  if (raw_row.size() != m.coefficients.size()) throw DimensionError("feature count does not match model");
  auto x = m.standardizer.apply(raw_row);
  double z = m.intercept;
  for (std::size_t j = 0; j < x.size(); ++j) z += m.coefficients[j] * x[j];
  return z;
}

inline double predict_proba(const Model& m, const std::vector<std::string>& names, const std::vector<double>& row) {
  if (names != m.feature_names) throw FeatureMismatchError("feature names do not match the model");
  return sigmoid(decision_value(m, row));
}

inline double predict_proba(const Model& m, const FeatureVector& fv) {
  return sigmoid(decision_value(m, project(fv, m.variant, {.log_amount = m.config.log_amount})));
}

inline int classify(double p, double threshold = 0.5) noexcept { return p >= threshold ? 1 : 0; }

// ---------------------------------------------------------------------------
// Model file: line-oriented key=value text, reals with 17 significant digits.

inline constexpr int kModelFormatVersion = 1;
inline constexpr std::string_view kModelMagic = "erc20graph-model";

namespace detail {

inline std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_exact(v[i]);
  }
  return s;
}

inline std::vector<double> parse_reals(const std::string& s, const std::string& key) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (auto f : split_csv(s)) {
    std::string tmp(f);
    char* end = nullptr;
    double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw ModelFormatError("bad number in '" + key + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

inline void save_model(std::ostream& out, const Model& m) {
  out << kModelMagic << '\n';
  out << "format_version=" << kModelFormatVersion << '\n';
  out << "variant=" << to_string(m.variant) << '\n';
  out << "features=";
  for (std::size_t i = 0; i < m.feature_names.size(); ++i) out << (i ? "," : "") << m.feature_names[i];
  out << '\n';
  out << "amount_transform=" << (m.config.log_amount ? "log10p1" : "none") << '\n';
  out << "intercept=" << detail::format_exact(m.intercept) << '\n';
  out << "coefficients=" << detail::join_reals(m.coefficients) << '\n';
  out << "means=" << detail::join_reals(m.standardizer.mean) << '\n';
  out << "stds=" << detail::join_reals(m.standardizer.std) << '\n';
  out << "lambda=" << detail::format_exact(m.config.lambda) << '\n';
  out << "learning_rate=" << detail::format_exact(m.config.learning_rate) << '\n';
  out << "max_iterations=" << m.config.max_iterations << '\n';
  out << "tolerance=" << detail::format_exact(m.config.tolerance) << '\n';
  out << "seed=" << m.config.seed << '\n';
  out << "iterations=" << m.iterations << '\n';
  out << "final_loss=" << detail::format_exact(m.final_loss) << '\n';
  out << "training_rows=" << m.fitted_row_keys.size() << '\n';
  out << "end\n";
}

inline void save_model(const std::string& path, const Model& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write model '" + path + "'");
  save_model(out, m);
}

inline Model load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kModelMagic) throw ModelFormatError("not a model file");
  std::map<std::string, std::string> kv;
  bool ended = false;
  while (std::getline(in, line)) {
    if (line == "end") {
      ended = true;
      break;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ModelFormatError("malformed model line '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ModelFormatError("model file is missing '" + k + "'");
    return it->second;
  };
  const auto& version = get("format_version");
  if (version != std::to_string(kModelFormatVersion))
    throw ModelFormatError("unsupported model format version " + version + " (expected " +
                           std::to_string(kModelFormatVersion) + ")");
  if (!ended) throw ModelFormatError("model file is truncated");

  auto num = [&](const std::string& k) {
    auto v = detail::parse_reals(get(k), k);
    if (v.size() != 1) throw ModelFormatError("'" + k + "' must be a single number");
    return v[0];
  };
  Model m;
  try {
    m.variant = parse_variant(get("variant"));
  } catch (const InputError& e) {
    throw ModelFormatError(e.what());
  }
  for (auto f : detail::split_csv(get("features"))) m.feature_names.emplace_back(f);
  if (m.feature_names != feature_names(m.variant)) throw ModelFormatError("feature list does not match variant");
  const auto& transform = get("amount_transform");
  if (transform != "none" && transform != "log10p1") throw ModelFormatError("unknown amount_transform");
  m.config.log_amount = transform == "log10p1";
  m.intercept = num("intercept");
  m.coefficients = detail::parse_reals(get("coefficients"), "coefficients");
  m.standardizer.mean = detail::parse_reals(get("means"), "means");
  m.standardizer.std = detail::parse_reals(get("stds"), "stds");
  const auto d = m.feature_names.size();
  if (m.coefficients.size() != d || m.standardizer.mean.size() != d || m.standardizer.std.size() != d)
    throw ModelFormatError("coefficient/standardizer length does not match feature count");
  m.config.lambda = num("lambda");
  m.config.learning_rate = num("learning_rate");
  m.config.max_iterations = static_cast<int>(num("max_iterations"));
  m.config.tolerance = num("tolerance");
  {
    const auto text = get("seed");
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), m.config.seed);
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw ModelFormatError("bad seed '" + text + "'");
  }
  m.iterations = static_cast<int>(num("iterations"));
  m.final_loss = num("final_loss");
  for (double c : m.coefficients)
    if (!std::isfinite(c)) throw ModelFormatError("non-finite coefficient");
  return m;
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open model '" + path + "'");
  return load_model(in);
}

}  // namespace erc20graph
