#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "erc20graph/errors.hpp"
#include "erc20graph/features.hpp"

namespace erc20graph {

inline constexpr std::size_t kDefaultMinNodes = 500;

// token -> suspicious (0/1). Labels are per token and apply to every window.
using LabelMap = std::map<Address, int>;

inline constexpr std::string_view kLabelHeader = "token,suspicious";

inline LabelMap read_labels(std::istream& in) {
  LabelMap labels;
  std::string buf;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(in, buf)) {
    ++line;
    if (!buf.empty() && buf.back() == '\r') buf.pop_back();
    if (buf.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (buf == kLabelHeader) continue;
      throw ParseError(line, "expected header '" + std::string(kLabelHeader) + "'");
    }
    auto f = detail::split_csv(buf);
    if (f.size() != 2) throw ParseError(line, "expected 2 fields, got " + std::to_string(f.size()));
    auto token = detail::parse_hex_field<20>(f[0], line, "token");
    int label;
    if (f[1] == "0") label = 0;
    else if (f[1] == "1") label = 1;
    else throw ParseError(line, "suspicious must be 0 or 1, got '" + std::string(f[1]) + "'");
    auto [it, inserted] = labels.emplace(token, label);
    if (!inserted && it->second != label)
      throw LabelConflictError("line " + std::to_string(line) + ": conflicting labels for " + token.hex());
  }
  return labels;
}

inline LabelMap load_labels(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open label file '" + path + "'");
  return read_labels(in);
}

inline void write_labels(std::ostream& out, const LabelMap& labels) {
  out << kLabelHeader << '\n';
  for (const auto& [token, label] : labels) out << token.hex() << ',' << label << '\n';
}

struct LabeledRow {
  FeatureVector features;
  int label = 0;
};

struct LabeledDataset {
  std::vector<LabeledRow> rows;
  std::set<BlockWindow> windows;
  // Over-threshold graphs with no label; excluded from training.
  std::vector<FeatureVector> coverage_gaps;

  std::size_t positives() const noexcept {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.label == 1;
    return n;
  }
  std::size_t size() const noexcept { return rows.size(); }
};

// Keeps graphs with strictly more than `min_nodes` nodes that carry a label.
inline LabeledDataset join(const std::vector<FeatureVector>& features, const LabelMap& labels,
                           std::size_t min_nodes = kDefaultMinNodes) {
  LabeledDataset ds;
  std::set<std::pair<BlockWindow, Address>> seen;
  for (const auto& fv : features) {
    if (fv.num_nodes <= min_nodes) continue;
    if (!seen.emplace(fv.window, fv.token).second)
      throw ValueError("duplicate feature row for " + fv.token.hex() + " in window " +
                       std::to_string(fv.window.start) + "-" + std::to_string(fv.window.end));
    auto it = labels.find(fv.token);
    if (it == labels.end()) {
      ds.coverage_gaps.push_back(fv);
      continue;
    }
    ds.rows.push_back({fv, it->second});
    ds.windows.insert(fv.window);
  }
  return ds;
}

// Splits a multi-window dataset into one dataset per window.
inline std::map<BlockWindow, LabeledDataset> split_by_window(const LabeledDataset& ds) {
  std::map<BlockWindow, LabeledDataset> out;
  for (const auto& r : ds.rows) {
    auto& w = out[r.features.window];
    w.rows.push_back(r);
    w.windows.insert(r.features.window);
  }
  return out;
}

struct WindowStats {
  BlockWindow window;
  std::size_t rows = 0;
  std::size_t suspicious = 0;
  double fraction() const noexcept { return rows == 0 ? 0.0 : static_cast<double>(suspicious) / rows; }
};

struct CorpusStats {
  std::vector<WindowStats> per_window;
  std::size_t pooled_rows = 0;
  std::size_t pooled_suspicious = 0;
  std::size_t unique_tokens = 0;
  std::size_t unique_suspicious = 0;  // suspicious in any window

  double pooled_fraction() const noexcept {
    return pooled_rows == 0 ? 0.0 : static_cast<double>(pooled_suspicious) / pooled_rows;
  }
  double unique_fraction() const noexcept {
    return unique_tokens == 0 ? 0.0 : static_cast<double>(unique_suspicious) / unique_tokens;
  }
};

inline CorpusStats summarize(const std::vector<LabeledDataset>& datasets) {
  CorpusStats s;
  std::map<Address, bool> tokens;
  for (const auto& ds : datasets) {
    std::map<BlockWindow, WindowStats> by_window;
    for (const auto& r : ds.rows) {
      auto& w = by_window[r.features.window];
      w.window = r.features.window;
      ++w.rows;
      w.suspicious += r.label == 1;
      auto& flag = tokens[r.features.token];
      flag = flag || r.label == 1;
    }
    for (auto& [_, w] : by_window) {
      s.pooled_rows += w.rows;
      s.pooled_suspicious += w.suspicious;
      s.per_window.push_back(w);
    }
  }
  s.unique_tokens = tokens.size();
  for (const auto& [_, sus] : tokens) s.unique_suspicious += sus;
  return s;
}

inline void write_corpus_stats(std::ostream& out, const CorpusStats& s) {
  out << "window_start,window_end,rows,suspicious,fraction\n";
  for (const auto& w : s.per_window)
    out << w.window.start << ',' << w.window.end << ',' << w.rows << ',' << w.suspicious << ','
        << format_real(w.fraction()) << '\n';
  out << "pooled,," << s.pooled_rows << ',' << s.pooled_suspicious << ',' << format_real(s.pooled_fraction()) << '\n';
  out << "unique,," << s.unique_tokens << ',' << s.unique_suspicious << ',' << format_real(s.unique_fraction())
      << '\n';
}

}  // namespace erc20graph
