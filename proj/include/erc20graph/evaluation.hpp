#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "erc20graph/dataset.hpp"
#include "erc20graph/errors.hpp"
#include "erc20graph/logistic.hpp"
#include "erc20graph/rng.hpp"

namespace erc20graph {

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Zero denominators give 0 for precision, recall and F1.
inline Metrics metrics(const ConfusionCounts& c) {
  if (c.total() == 0) throw std::invalid_argument("metrics on zero evaluated rows");
  Metrics m;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  m.precision = c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  m.recall = c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

inline ConfusionCounts confusion(const std::vector<int>& truth, const std::vector<int>& predicted) {
  if (truth.size() != predicted.size()) throw DimensionError("truth/prediction length mismatch");
  ConfusionCounts c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i]) (truth[i] ? c.tp : c.fp)++;
    else (truth[i] ? c.fn : c.tn)++;
  }
  return c;
}

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocResult {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

class UndefinedAucError : public InputError {
 public:
  using InputError::InputError;
};

// Thresholds sweep the distinct scores from high to low; equal scores move
// together, so a tie contributes a diagonal segment (half credit).
inline RocResult roc_auc(const std::vector<double>& scores, const std::vector<int>& truth) {
  if (scores.size() != truth.size()) throw DimensionError("score/truth length mismatch");
  const std::size_t pos = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), 1));
  const std::size_t neg = truth.size() - pos;
  if (pos == 0 || neg == 0) throw UndefinedAucError("ROC/AUC needs both classes");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });

  RocResult r;
  r.points.push_back({0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  double area2 = 0.0;  // twice the area, in units of (1/neg)*(1/pos)
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::size_t dtp = 0, dfp = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (truth[order[j]] ? dtp : dfp)++;
      ++j;
    }
    area2 += static_cast<double>(dfp) * static_cast<double>(2 * tp + dtp);
    tp += dtp;
    fp += dfp;
    r.points.push_back({static_cast<double>(fp) / neg, static_cast<double>(tp) / pos});
    i = j;
  }
  r.auc = area2 / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
  return r;
}

// ---------------------------------------------------------------------------

struct EvalRun {
  std::string name;
  ConfusionCounts counts;
  Metrics metrics;
  std::optional<double> auc;  // absent when the evaluated rows are single-class
  std::vector<RocPoint> roc;
};

struct EvalReport {
  std::vector<EvalRun> runs;
  Metrics mean;
  std::optional<double> mean_auc;
};

inline EvalReport finalize_report(std::vector<EvalRun> runs) {
  EvalReport rep;
  rep.runs = std::move(runs);
  if (rep.runs.empty()) return rep;
  double n = static_cast<double>(rep.runs.size());
  double auc_sum = 0.0;
  std::size_t auc_n = 0;
  for (const auto& r : rep.runs) {
    rep.mean.accuracy += r.metrics.accuracy / n;
    rep.mean.precision += r.metrics.precision / n;
    rep.mean.recall += r.metrics.recall / n;
    rep.mean.f1 += r.metrics.f1 / n;
    if (r.auc) {
      auc_sum += *r.auc;
      ++auc_n;
    }
  }
  if (auc_n) rep.mean_auc = auc_sum / static_cast<double>(auc_n);
  return rep;
}

// Scores `rows` with a fixed model; never refits the standardizer.
inline EvalRun evaluate(const Model& model, const LabeledDataset& ds, std::string name, double threshold = 0.5) {
  EvalRun run;
  run.name = std::move(name);
  std::vector<double> scores;
  std::vector<int> truth, pred;
  for (const auto& r : ds.rows) {
    double p = predict_proba(model, r.features);
    scores.push_back(p);
    truth.push_back(r.label);
    pred.push_back(classify(p, threshold));
  }
  run.counts = confusion(truth, pred);
  run.metrics = metrics(run.counts);
  std::size_t pos = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), 1));
  if (pos > 0 && pos < truth.size()) {
    auto roc = roc_auc(scores, truth);
    run.auc = roc.auc;
    run.roc = std::move(roc.points);
  }
  return run;
}

// Stratified fold ids: each class is shuffled separately and dealt
// round-robin, negatives continuing where positives stopped, so fold sizes
// differ by at most one and each fold's positive count by at most one.
inline std::vector<int> stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] ? pos : neg).push_back(i);
  if (pos.size() < static_cast<std::size_t>(k) || neg.size() < static_cast<std::size_t>(k))
    throw InputError("each class needs at least k=" + std::to_string(k) + " rows (have " +
                     std::to_string(pos.size()) + " positive, " + std::to_string(neg.size()) + " negative)");
  Rng rng(derive_seed(seed, 0x666f6c64ULL));
  auto shuffle = [&](std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.uniform_int(0, i - 1)]);
  };
  shuffle(pos);
  shuffle(neg);
  std::vector<int> fold(labels.size(), -1);
  std::size_t slot = 0;
  for (auto i : pos) fold[i] = static_cast<int>(slot++ % k);
  for (auto i : neg) fold[i] = static_cast<int>(slot++ % k);
  return fold;
}

inline LabeledDataset subset(const LabeledDataset& ds, const std::vector<int>& fold, int which, bool in_fold) {
  LabeledDataset out;
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    if ((fold[i] == which) == in_fold) {
      out.rows.push_back(ds.rows[i]);
      out.windows.insert(ds.rows[i].features.window);
    }
  }
  return out;
}

inline void assert_no_leakage(const Model& model, const LabeledDataset& test) {
  for (const auto& r : test.rows)
    if (model.fitted_on(row_key(r.features)))
      throw std::logic_error("model was fitted on a row it is being evaluated on");
}

inline EvalReport kfold_cv(const LabeledDataset& ds, FeatureVariant variant, const TrainConfig& config, int k = 5,
                           std::uint64_t seed = 0) {
  std::vector<int> labels;
  for (const auto& r : ds.rows) labels.push_back(r.label);
  auto fold = stratified_folds(labels, k, seed);
  std::vector<EvalRun> runs;
  for (int f = 0; f < k; ++f) {
    auto train_set = subset(ds, fold, f, false);
    auto test_set = subset(ds, fold, f, true);
    auto model = train(train_set, variant, config);
    assert_no_leakage(model, test_set);
    runs.push_back(evaluate(model, test_set, "fold" + std::to_string(f + 1)));
  }
  return finalize_report(std::move(runs));
}

struct NamedDataset {
  std::string name;
  LabeledDataset data;
};

// One model fitted on `train_set`, applied unchanged to each eval set.
inline EvalReport cross_window_eval(const LabeledDataset& train_set, const std::vector<NamedDataset>& eval_sets,
                                    FeatureVariant variant, const TrainConfig& config) {
  auto model = train(train_set, variant, config);
  std::vector<EvalRun> runs;
  for (const auto& e : eval_sets) {
    if (e.data.rows.empty()) continue;
    runs.push_back(evaluate(model, e.data, e.name));
  }
  return finalize_report(std::move(runs));
}

// ---------------------------------------------------------------------------

struct ScanStratum {
  std::size_t total = 0;
  std::size_t predicted_scam = 0;
  double share() const noexcept { return total == 0 ? 0.0 : static_cast<double>(predicted_scam) / total; }
};

struct ScanReport {
  ScanStratum all;
  ScanStratum over_100_nodes;
  ScanStratum lifetime_under_1000;
};

// Predicts graphs at or below the labeling floor with a size-free model.
inline ScanReport unlabeled_scan(const Model& model, const std::vector<FeatureVector>& graphs,
                                 std::size_t max_nodes = kDefaultMinNodes, double threshold = 0.5) {
  if (model.variant == FeatureVariant::full)
    throw FeatureMismatchError("scan needs a reduced-variant model; got variant 'full'");
  ScanReport rep;
  for (const auto& g : graphs) {
    if (g.num_nodes > max_nodes) continue;
    int scam = classify(predict_proba(model, g), threshold);
    rep.all.total++;
    rep.all.predicted_scam += scam;
    if (g.num_nodes > 100) {
      rep.over_100_nodes.total++;
      rep.over_100_nodes.predicted_scam += scam;
    }
    if (g.lifetime < 1000) {
      rep.lifetime_under_1000.total++;
      rep.lifetime_under_1000.predicted_scam += scam;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Report files

inline void write_eval_report(std::ostream& out, const EvalReport& rep) {
  out << "run,rows,tp,fp,fn,tn,accuracy,precision,recall,f1,auc\n";
  ConfusionCounts sum;
  for (const auto& r : rep.runs) {
    out << r.name << ',' << r.counts.total() << ',' << r.counts.tp << ',' << r.counts.fp << ',' << r.counts.fn << ','
        << r.counts.tn << ',' << format_real(r.metrics.accuracy) << ',' << format_real(r.metrics.precision) << ','
        << format_real(r.metrics.recall) << ',' << format_real(r.metrics.f1) << ','
        << (r.auc ? format_real(*r.auc) : "nan") << '\n';
    sum.tp += r.counts.tp;
    sum.fp += r.counts.fp;
    sum.fn += r.counts.fn;
    sum.tn += r.counts.tn;
  }
  out << "mean," << sum.total() << ',' << sum.tp << ',' << sum.fp << ',' << sum.fn << ',' << sum.tn << ','
      << format_real(rep.mean.accuracy) << ',' << format_real(rep.mean.precision) << ','
      << format_real(rep.mean.recall) << ',' << format_real(rep.mean.f1) << ','
      << (rep.mean_auc ? format_real(*rep.mean_auc) : "nan") << '\n';
}

inline void write_roc(std::ostream& out, const std::vector<RocPoint>& roc) {
  out << "fpr,tpr\n";
  for (const auto& p : roc) out << format_real(p.fpr) << ',' << format_real(p.tpr) << '\n';
}

inline void write_scan_report(std::ostream& out, const ScanReport& rep) {
  out << "stratum,total,predicted_scam,share\n";
  auto row = [&](const char* name, const ScanStratum& s) {
    out << name << ',' << s.total << ',' << s.predicted_scam << ',' << format_real(s.share()) << '\n';
  };
  row("all", rep.all);
  row("nodes_over_100", rep.over_100_nodes);
  row("lifetime_under_1000", rep.lifetime_under_1000);
}

}  // namespace erc20graph
