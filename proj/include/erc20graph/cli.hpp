#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "erc20graph/dataset.hpp"
#include "erc20graph/errors.hpp"
#include "erc20graph/evaluation.hpp"
#include "erc20graph/features.hpp"
#include "erc20graph/graph.hpp"
#include "erc20graph/ingest.hpp"
#include "erc20graph/logistic.hpp"
#include "erc20graph/manifest.hpp"
#include "erc20graph/rpc.hpp"
#include "erc20graph/synth.hpp"

namespace erc20graph::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kRuntimeFailure = 3 };

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::uint64_t window_width = kDefaultWindowWidth;
  std::size_t min_nodes = kDefaultMinNodes;
  std::string variant = "full";
  std::string endpoint;
};

struct ModelOptions {
  double lambda = 1.0;
  double learning_rate = 0.1;
  int max_iterations = 10'000;
  double tolerance = 1e-7;
  bool log_amount = false;

  TrainConfig to_config(std::uint64_t seed) const {
    TrainConfig c;
    c.lambda = lambda;
    c.learning_rate = learning_rate;
    c.max_iterations = max_iterations;
    c.tolerance = tolerance;
    c.seed = seed;
    c.log_amount = log_amount;
    return c;
  }

  void add_to(CLI::App* app) {
    app->add_option("--lambda", lambda, "L2 strength")->check(CLI::NonNegativeNumber)->capture_default_str();
    app->add_option("--learning-rate", learning_rate, "gradient descent step")->capture_default_str();
    app->add_option("--max-iterations", max_iterations)->capture_default_str();
    app->add_option("--tolerance", tolerance, "stop when |gradient|_inf falls below")->capture_default_str();
    app->add_flag("--log-amount", log_amount, "model log10(1 + amount) instead of raw amount");
  }

  nlohmann::ordered_json to_json() const {
    return {{"lambda", lambda},
            {"learning_rate", learning_rate},
            {"max_iterations", max_iterations},
            {"tolerance", tolerance},
            {"log_amount", log_amount}};
  }
};

namespace detail {

inline void ensure_parent_dir(const std::string& path) {
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

inline std::ofstream open_out(const std::string& path) {
  ensure_parent_dir(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write '" + path + "'");
  return out;
}

inline LabeledDataset load_dataset(const std::string& features, const std::string& labels, std::size_t min_nodes) {
  return join(read_feature_table(features), load_labels(labels), min_nodes);
}

inline void write_rocs(const std::string& dir, const EvalReport& rep) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  for (const auto& r : rep.runs) {
    if (r.roc.empty()) continue;
    auto out = open_out((std::filesystem::path(dir) / (r.name + ".roc.csv")).string());
    write_roc(out, r.roc);
  }
}

inline std::string format_metrics(const Metrics& m, std::optional<double> auc) {
  std::ostringstream s;
  s << "accuracy=" << format_real(m.accuracy) << " precision=" << format_real(m.precision)
    << " recall=" << format_real(m.recall) << " f1=" << format_real(m.f1)
    << " auc=" << (auc ? format_real(*auc) : "nan");
  return s.str();
}

}  // namespace detail

// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace detail {

inline int cmd_fetch(const std::vector<std::string>& args, const GlobalOptions& g, std::uint64_t from,
                     std::uint64_t to, std::uint64_t chunk, const std::string& out_path, bool resume,
                     int max_attempts, int backoff_ms, std::ostream& out) {
  std::string endpoint = g.endpoint;
  if (endpoint.empty()) {
    if (const char* env = std::getenv(kEndpointEnvVar)) endpoint = env;
  }
  if (to < from) throw InputError("--to must be >= --from");
  if (chunk < 1) throw InputError("--chunk must be >= 1");

  Manifest m;
  m.command = "fetch";
  m.argv = args;
  m.config = {{"from", from}, {"to", to}, {"chunk", chunk}, {"endpoint", endpoint}, {"max_attempts", max_attempts}};
  m.outputs = {{"fixture", out_path}};
  const auto mpath = manifest_path_for(out_path);

  std::uint64_t start = from;
  std::uint64_t written = 0;
  bool append = false;
  if (resume && std::filesystem::exists(mpath)) {
    auto prev = read_manifest(mpath);
    if (prev.command != "fetch" || prev.config.value("from", UINT64_MAX) != from ||
        prev.config.value("to", UINT64_MAX) != to)
      throw InputError("manifest '" + mpath + "' records a different fetch range; refusing to resume");
    start = prev.state.value("completed_until", from);
    written = prev.state.value("events", std::uint64_t{0});
    append = true;
  }

  ensure_parent_dir(out_path);
  std::ofstream fixture(out_path, append ? std::ios::binary | std::ios::app : std::ios::binary | std::ios::trunc);
  if (!fixture) throw RuntimeFailure("cannot write '" + out_path + "'");

  auto save_state = [&](std::uint64_t done) {
    m.state = {{"completed_until", done}, {"events", written}};
    write_manifest(mpath, m);
  };
  save_state(start);
  if (start >= to) {
    out << "fetch: nothing to do, " << written << " events in " << out_path << '\n';
    return kOk;
  }
  if (endpoint.empty()) throw InputError(std::string("no endpoint: pass --endpoint or set ") + kEndpointEnvVar);

  HttpTransport transport(endpoint);
  FetchOptions fo;
  fo.chunk = chunk;
  fo.max_attempts = max_attempts;
  fo.backoff_base = std::chrono::milliseconds(backoff_ms);
  LogFetcher fetcher(transport, fo);
  fetcher.run({start, to}, [&](BlockWindow span, std::vector<RawLog>&& logs) {
    auto events = decode_transfers(logs);
    write_fixture(fixture, events);
    fixture.flush();
    written += events.size();
    save_state(span.end);
  });
  out << "fetch: " << written << " events in " << out_path << " (" << fetcher.requests_issued()
      << " requests)\n";
  return kOk;
}

inline int cmd_features(const std::vector<std::string>& args, const GlobalOptions& g, const std::string& fixture,
                        const std::string& out_path, const std::string& histogram, int bins,
                        const std::string& graph_dir, std::ostream& out) {
  if (g.window_width < 1) throw InputError("--window-width must be >= 1");
  auto windows = partition_windows(read_fixture(fixture), g.window_width);
  std::vector<FeatureVector> rows;
  for (const auto& [window, events] : windows) {
    auto graphs = build_graphs(events, window);
    for (const auto& [token, graph] : graphs) {
      rows.push_back(extract_features(graph));
      if (!graph_dir.empty()) {
        std::filesystem::create_directories(graph_dir);
        auto f = open_out((std::filesystem::path(graph_dir) /
                           (token.hex() + "_" + std::to_string(window.start) + ".edges"))
                              .string());
        write_graph_edgelist(f, graph);
      }
    }
  }
  {
    auto f = open_out(out_path);
    write_feature_table(f, rows);
  }
  if (!histogram.empty()) {
    auto f = open_out(histogram);
    write_feature_histograms(f, rows, bins);
  }
  Manifest m;
  m.command = "features";
  m.argv = args;
  m.config = {{"fixture", fixture}, {"window_width", g.window_width}, {"bins", bins}};
  m.outputs = {{"features", out_path}, {"histogram", histogram}, {"graph_dir", graph_dir}};
  m.state = {{"windows", windows.size()}, {"rows", rows.size()}};
  write_manifest(manifest_path_for(out_path), m);
  out << "features: " << rows.size() << " graphs in " << windows.size() << " windows -> " << out_path << '\n';
  return kOk;
}

inline int cmd_train(const std::vector<std::string>& args, const GlobalOptions& g, const ModelOptions& mo,
                     const std::string& features, const std::string& labels, const std::string& model_out,
                     const std::string& loss_log, std::ostream& out) {
  auto variant = parse_variant(g.variant);
  auto ds = load_dataset(features, labels, g.min_nodes);
  auto model = train(ds, variant, mo.to_config(g.seed));
  ensure_parent_dir(model_out);
  save_model(model_out, model);

  bool monotone = true;
  for (std::size_t i = 1; i < model.loss_history.size(); ++i)
    monotone = monotone && model.loss_history[i] <= model.loss_history[i - 1];
  if (!loss_log.empty()) {
    auto f = open_out(loss_log);
    f << "iteration,loss\n";
    for (std::size_t i = 0; i < model.loss_history.size(); ++i)
      f << i << ',' << erc20graph::detail::format_exact(model.loss_history[i]) << '\n';
  }
  Manifest m;
  m.command = "train";
  m.argv = args;
  m.config = {{"features", features}, {"labels", labels}, {"variant", g.variant}, {"min_nodes", g.min_nodes},
              {"seed", g.seed},         {"model", mo.to_json()}};
  m.outputs = {{"model", model_out}, {"loss_log", loss_log}};
  m.state = {{"rows", ds.size()},
             {"positives", ds.positives()},
             {"coverage_gaps", ds.coverage_gaps.size()},
             {"iterations", model.iterations},
             {"loss_monotone", monotone}};
  write_manifest(manifest_path_for(model_out), m);
  out << "train: " << ds.size() << " rows (" << ds.positives() << " suspicious, " << ds.coverage_gaps.size()
      << " unlabeled over threshold), " << model.iterations << " iterations, final loss "
      << format_real(model.final_loss) << ", loss monotone: " << (monotone ? "yes" : "no") << '\n';
  out << "features: ";
  for (std::size_t i = 0; i < model.feature_names.size(); ++i) out << (i ? "," : "") << model.feature_names[i];
  out << '\n';
  return kOk;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ERC-20 transfer graph features and suspicious-token classifier", "erc20graph"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--window-width", g.window_width, "blocks per window")->capture_default_str();
  app.add_option("--min-nodes", g.min_nodes, "label only graphs with more nodes than this")->capture_default_str();
  app.add_option("--variant", g.variant, "feature set")
      ->check(CLI::IsMember({"full", "reduced", "reduced-no-lifetime"}))
      ->capture_default_str();
  app.add_option("--endpoint", g.endpoint, std::string("JSON-RPC URL (default $") + kEndpointEnvVar + ")");

  ModelOptions mo;

  // fetch
  auto* fetch = app.add_subcommand("fetch", "download Transfer logs into a fixture file");
  std::uint64_t from = 0, to = 0, chunk = 2000;
  std::string fetch_out;
  bool resume = false;
  int max_attempts = 5, backoff_ms = 250;
  fetch->add_option("--from", from, "first block (inclusive)")->required();
  fetch->add_option("--to", to, "last block (exclusive)")->required();
  fetch->add_option("--chunk", chunk, "blocks per eth_getLogs request")->capture_default_str();
  fetch->add_option("--out", fetch_out, "fixture path")->required();
  fetch->add_flag("--resume", resume, "continue after the chunks recorded in the manifest");
  fetch->add_option("--max-attempts", max_attempts)->capture_default_str();
  fetch->add_option("--backoff-ms", backoff_ms)->capture_default_str();

  // features
  auto* features = app.add_subcommand("features", "fixture -> per-(token, window) feature table");
  std::string fixture, features_out, histogram, graph_dir;
  int bins = 20;
  features->add_option("--fixture", fixture)->required()->check(CLI::ExistingFile);
  features->add_option("--out", features_out, "feature table (CSV)")->required();
  features->add_option("--histogram", histogram, "also write per-feature bin counts here");
  features->add_option("--bins", bins)->capture_default_str()->check(CLI::PositiveNumber);
  features->add_option("--graph-dir", graph_dir, "also export each graph as an edge list");

  // train
  auto* trainc = app.add_subcommand("train", "fit the logistic model");
  std::string train_features, train_labels, model_out, loss_log;
  trainc->add_option("--features", train_features)->required()->check(CLI::ExistingFile);
  trainc->add_option("--labels", train_labels)->required()->check(CLI::ExistingFile);
  trainc->add_option("--model-out", model_out)->required();
  trainc->add_option("--loss-log", loss_log, "write the per-iteration training loss");
  mo.add_to(trainc);

  // cv
  auto* cv = app.add_subcommand("cv", "stratified k-fold cross-validation");
  std::string cv_features, cv_labels, cv_report, cv_roc_dir;
  int k = 5;
  cv->add_option("--features", cv_features)->required()->check(CLI::ExistingFile);
  cv->add_option("--labels", cv_labels)->required()->check(CLI::ExistingFile);
  cv->add_option("--k", k)->capture_default_str()->check(CLI::Range(2, 1000));
  cv->add_option("--report", cv_report, "report CSV")->required();
  cv->add_option("--roc-dir", cv_roc_dir, "write one ROC curve per fold");
  cv->add_flag("--per-window", "run CV separately inside each window");
  mo.add_to(cv);

  // crosseval
  auto* crosseval = app.add_subcommand("crosseval", "train on one window, evaluate on others");
  std::string ce_features, ce_labels, ce_report, ce_roc_dir;
  std::vector<std::string> eval_features, eval_labels;
  std::optional<std::uint64_t> train_window;
  crosseval->add_option("--train-features", ce_features)->required()->check(CLI::ExistingFile);
  crosseval->add_option("--train-labels", ce_labels)->required()->check(CLI::ExistingFile);
  crosseval->add_option("--eval-features", eval_features, "evaluation feature tables");
  crosseval->add_option("--eval-labels", eval_labels, "label files, paired by position with --eval-features");
  crosseval->add_option("--train-window", train_window,
                        "without --eval-features: start block of the training window (default: first)");
  crosseval->add_option("--report", ce_report)->required();
  crosseval->add_option("--roc-dir", ce_roc_dir);
  mo.add_to(crosseval);

  // scan
  auto* scan = app.add_subcommand("scan", "predict unlabeled small graphs with a reduced model");
  std::string scan_model, scan_features, scan_report;
  scan->add_option("--model", scan_model)->required()->check(CLI::ExistingFile);
  scan->add_option("--features", scan_features)->required()->check(CLI::ExistingFile);
  scan->add_option("--report", scan_report)->required();

  // synth
  auto* synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
  std::string prefix;
  CorpusConfig cc;
  std::size_t n_windows = 1;
  std::uint64_t first_block = 18'000'000;
  synth->add_option("--out-prefix", prefix, "writes <prefix>.fixture.tsv, .labels.csv, .tokens.csv")->required();
  synth->add_option("--tokens", cc.tokens_per_window, "tokens per window")->capture_default_str();
  synth->add_option("--scam-fraction", cc.scam_fraction)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  synth->add_option("--windows", n_windows)->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--first-block", first_block)->capture_default_str();
  synth->add_option("--min-budget", cc.min_budget, "smallest node budget")->capture_default_str();
  synth->add_option("--max-budget", cc.max_budget, "largest node budget")->capture_default_str();

  // replay
  auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  std::string replay_manifest;
  replay->add_option("manifest", replay_manifest)->required()->check(CLI::ExistingFile);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (fetch->parsed())
      return detail::cmd_fetch(args, g, from, to, chunk, fetch_out, resume, max_attempts, backoff_ms, out);
    if (features->parsed())
      return detail::cmd_features(args, g, fixture, features_out, histogram, bins, graph_dir, out);
    if (trainc->parsed())
      return detail::cmd_train(args, g, mo, train_features, train_labels, model_out, loss_log, out);

    if (cv->parsed()) {
      auto variant = parse_variant(g.variant);
      auto ds = detail::load_dataset(cv_features, cv_labels, g.min_nodes);
      bool per_window = cv->count("--per-window") > 0;
      EvalReport rep;
      if (per_window) {
        std::vector<EvalRun> runs;
        for (auto& [w, wds] : split_by_window(ds)) {
          auto r = kfold_cv(wds, variant, mo.to_config(g.seed), k, g.seed);
          EvalRun row;
          row.name = "window" + std::to_string(w.start);
          for (const auto& f : r.runs) {
            row.counts.tp += f.counts.tp;
            row.counts.fp += f.counts.fp;
            row.counts.fn += f.counts.fn;
            row.counts.tn += f.counts.tn;
          }
          row.metrics = r.mean;
          row.auc = r.mean_auc;
          runs.push_back(std::move(row));
        }
        rep = finalize_report(std::move(runs));
      } else {
        rep = kfold_cv(ds, variant, mo.to_config(g.seed), k, g.seed);
      }
      {
        auto f = detail::open_out(cv_report);
        write_eval_report(f, rep);
      }
      detail::write_rocs(cv_roc_dir, rep);
      Manifest m;
      m.command = "cv";
      m.argv = args;
      m.config = {{"features", cv_features}, {"labels", cv_labels}, {"k", k},        {"seed", g.seed},
                  {"variant", g.variant},    {"min_nodes", g.min_nodes}, {"per_window", per_window},
                  {"model", mo.to_json()}};
      m.outputs = {{"report", cv_report}, {"roc_dir", cv_roc_dir}};
      m.state = {{"rows", ds.size()}, {"positives", ds.positives()}};
      write_manifest(manifest_path_for(cv_report), m);
      out << "cv: " << ds.size() << " rows, k=" << k << ", " << detail::format_metrics(rep.mean, rep.mean_auc)
          << '\n';
      return kOk;
    }

    if (crosseval->parsed()) {
      auto variant = parse_variant(g.variant);
      if (eval_features.size() != eval_labels.size())
        throw InputError("--eval-features and --eval-labels must pair up");
      auto train_all = detail::load_dataset(ce_features, ce_labels, g.min_nodes);
      LabeledDataset train_set;
      std::vector<NamedDataset> evals;
      if (eval_features.empty()) {
        auto by_window = split_by_window(train_all);
        if (by_window.empty()) throw InputError("training set has no labeled rows");
        auto it = by_window.begin();
        if (train_window) {
          it = std::find_if(by_window.begin(), by_window.end(),
                            [&](const auto& kv) { return kv.first.start == *train_window; });
          if (it == by_window.end()) throw InputError("no labeled rows in window " + std::to_string(*train_window));
        }
        train_set = it->second;
        for (auto& [w, wds] : by_window)
          if (w != it->first) evals.push_back({"window" + std::to_string(w.start), wds});
      } else {
        train_set = std::move(train_all);
        for (std::size_t i = 0; i < eval_features.size(); ++i) {
          std::string name = std::filesystem::path(eval_features[i]).stem().string();
          LabeledDataset eds;
          try {
            eds = detail::load_dataset(eval_features[i], eval_labels[i], g.min_nodes);
          } catch (const InputError& e) {
            err << "warning: skipping eval set " << name << ": " << e.what() << '\n';
            continue;
          }
          if (eds.rows.empty()) {
            err << "warning: skipping eval set " << name << ": no labeled rows\n";
            continue;
          }
          evals.push_back({name, std::move(eds)});
        }
      }
      auto rep = cross_window_eval(train_set, evals, variant, mo.to_config(g.seed));
      {
        auto f = detail::open_out(ce_report);
        write_eval_report(f, rep);
      }
      detail::write_rocs(ce_roc_dir, rep);
      Manifest m;
      m.command = "crosseval";
      m.argv = args;
      m.config = {{"train_features", ce_features}, {"train_labels", ce_labels}, {"eval_features", eval_features},
                  {"eval_labels", eval_labels},     {"variant", g.variant},      {"min_nodes", g.min_nodes},
                  {"seed", g.seed},                 {"model", mo.to_json()}};
      if (train_window) m.config["train_window"] = *train_window;
      m.outputs = {{"report", ce_report}, {"roc_dir", ce_roc_dir}};
      m.state = {{"train_rows", train_set.size()}, {"eval_sets", rep.runs.size()}};
      write_manifest(manifest_path_for(ce_report), m);
      out << "crosseval: trained on " << train_set.size() << " rows, evaluated " << rep.runs.size() << " sets, "
          << detail::format_metrics(rep.mean, rep.mean_auc) << '\n';
      return kOk;
    }

    if (scan->parsed()) {
      auto model = load_model(scan_model);
      auto rows = read_feature_table(scan_features);
      auto rep = unlabeled_scan(model, rows, g.min_nodes);
      {
        auto f = detail::open_out(scan_report);
        write_scan_report(f, rep);
      }
      Manifest m;
      m.command = "scan";
      m.argv = args;
      m.config = {{"model", scan_model}, {"features", scan_features}, {"max_nodes", g.min_nodes}};
      m.outputs = {{"report", scan_report}};
      write_manifest(manifest_path_for(scan_report), m);
      out << "scan: " << rep.all.total << " graphs, predicted scam " << format_real(rep.all.share())
          << " (nodes>100: " << format_real(rep.over_100_nodes.share())
          << ", lifetime<1000: " << format_real(rep.lifetime_under_1000.share()) << ")\n";
      return kOk;
    }

    if (synth->parsed()) {
      if (cc.min_budget < 20 || cc.max_budget < cc.min_budget)
        throw InputError("need 20 <= --min-budget <= --max-budget");
      cc.seed = g.seed;
      cc.windows = consecutive_windows(first_block, n_windows, g.window_width);
      auto corpus = gen_corpus(cc);
      const std::string fixture_path = prefix + ".fixture.tsv";
      const std::string labels_path = prefix + ".labels.csv";
      const std::string tokens_path = prefix + ".tokens.csv";
      detail::ensure_parent_dir(fixture_path);
      write_fixture(fixture_path, corpus.events);
      {
        auto f = detail::open_out(labels_path);
        write_labels(f, corpus.labels);
      }
      {
        auto f = detail::open_out(tokens_path);
        f << "token,kind,label,window_start,window_end,node_budget,seed\n";
        for (const auto& t : corpus.tokens)
          f << t.token.hex() << ',' << to_string(t.kind) << ',' << label_of(t.kind) << ',' << t.window.start << ','
            << t.window.end << ',' << t.node_budget << ',' << t.seed << '\n';
      }
      std::size_t scams = 0;
      for (const auto& t : corpus.tokens) scams += label_of(t.kind);
      Manifest m;
      m.command = "synth";
      m.argv = args;
      m.config = {{"seed", cc.seed},
                  {"tokens_per_window", cc.tokens_per_window},
                  {"scam_fraction", cc.scam_fraction},
                  {"windows", n_windows},
                  {"first_block", first_block},
                  {"window_width", g.window_width},
                  {"min_budget", cc.min_budget},
                  {"max_budget", cc.max_budget},
                  {"legit_lifetime_min", cc.legit_lifetime_min},
                  {"scam_lifetime_min", cc.scam_lifetime_min},
                  {"scam_lifetime_max", cc.scam_lifetime_max},
                  {"scam_concentration_min", cc.scam_concentration_min},
                  {"scam_concentration_max", cc.scam_concentration_max}};
      m.outputs = {{"fixture", fixture_path}, {"labels", labels_path}, {"tokens", tokens_path}};
      m.state = {{"events", corpus.events.size()}, {"token_windows", corpus.tokens.size()}, {"scam_token_windows", scams}};
      write_manifest(prefix + ".manifest.json", m);
      out << "synth: " << corpus.tokens.size() << " token-windows (" << scams << " scam), " << corpus.events.size()
          << " transfers -> " << fixture_path << '\n';
      return kOk;
    }

    if (replay->parsed()) {
      auto m = read_manifest(replay_manifest);
      if (!m.argv.empty() && m.argv.front() == "replay") throw InputError("refusing to replay a replay");
      return run(m.argv, out, err);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsage;
}

}  // namespace erc20graph::cli
