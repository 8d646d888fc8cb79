#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "erc20graph/errors.hpp"
#include "erc20graph/graph.hpp"
#include "erc20graph/uint256.hpp"

namespace erc20graph {

struct FeatureVector {
  Address token;
  BlockWindow window;
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  double density = 0.0;
  std::size_t num_components = 0;
  double avg_comp_size = 0.0;
  std::uint64_t lifetime = 0;  // blocks
  double transfer_std_dev = 0.0;  // blocks
  BigUInt amount;  // raw token units, exact

  double amount_as_double() const { return amount.convert_to<double>(); }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Size-free projection used for scanning graphs below the labeling floor.
struct ReducedFeatureVector {
  double density = 0.0;
  double avg_comp_size = 0.0;
  std::optional<double> lifetime;
  double transfer_std_dev = 0.0;
  double amount = 0.0;
  double edges_per_component = 0.0;
};

// Edges / (n (n - 1)); 0 when there are fewer than two nodes. Exceeds 1 for
// dense multigraphs.
inline double multigraph_density(std::size_t nodes, std::size_t edges) noexcept {
  if (nodes <= 1) return 0.0;
  return static_cast<double>(edges) / (static_cast<double>(nodes) * static_cast<double>(nodes - 1));
}

inline FeatureVector extract_features(const TokenGraph& graph, const ComponentSummary& components) {
  FeatureVector fv;
  fv.token = graph.token;
  fv.window = graph.window;
  fv.num_nodes = graph.num_nodes();
  fv.num_edges = graph.num_edges();
  fv.density = multigraph_density(fv.num_nodes, fv.num_edges);
  fv.num_components = components.count;
  fv.avg_comp_size = components.count == 0 ? 0.0
                                           : static_cast<double>(fv.num_nodes) / static_cast<double>(components.count);
  if (graph.edges.empty()) return fv;

  std::uint64_t lo = graph.edges.front().block, hi = lo;
  for (const auto& e : graph.edges) {
    lo = std::min(lo, e.block);
    hi = std::max(hi, e.block);
  }
  fv.lifetime = hi - lo;

  // Offsets from the first block keep the two-pass variance well conditioned.
  const double n = static_cast<double>(graph.edges.size());
  double sum = 0.0;
  for (const auto& e : graph.edges) sum += static_cast<double>(e.block - lo);
  const double mean = sum / n;
  double ss = 0.0;
  for (const auto& e : graph.edges) {
    double d = static_cast<double>(e.block - lo) - mean;
    ss += d * d;
  }
  fv.transfer_std_dev = std::sqrt(ss / n);

  using Acc = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<
      512, 512, boost::multiprecision::unsigned_magnitude, boost::multiprecision::unchecked, void>>;
  Acc total = 0;
  for (const auto& e : graph.edges) total += Acc(e.value);
  fv.amount = BigUInt(total);
  return fv;
}

inline FeatureVector extract_features(const TokenGraph& graph) {
  return extract_features(graph, weak_components(graph));
}

inline ReducedFeatureVector reduce_features(const FeatureVector& fv, bool include_lifetime) {
  ReducedFeatureVector r;
  r.density = fv.density;
  r.avg_comp_size = fv.avg_comp_size;
  if (include_lifetime) r.lifetime = static_cast<double>(fv.lifetime);
  r.transfer_std_dev = fv.transfer_std_dev;
  r.amount = fv.amount_as_double();
  r.edges_per_component = fv.num_components == 0 ? 0.0
                                                 : static_cast<double>(fv.num_edges) /
                                                       static_cast<double>(fv.num_components);
  return r;
}

// ---------------------------------------------------------------------------
// Model-facing projections

enum class FeatureVariant { full, reduced, reduced_no_lifetime };

inline std::string_view to_string(FeatureVariant v) {
  switch (v) {
    case FeatureVariant::full: return "full";
    case FeatureVariant::reduced: return "reduced";
    case FeatureVariant::reduced_no_lifetime: return "reduced-no-lifetime";
  }
  return "full";
}

inline FeatureVariant parse_variant(std::string_view s) {
  if (s == "full") return FeatureVariant::full;
  if (s == "reduced") return FeatureVariant::reduced;
  if (s == "reduced-no-lifetime") return FeatureVariant::reduced_no_lifetime;
  throw InputError("unknown feature variant '" + std::string(s) + "'");
}

inline std::vector<std::string> feature_names(FeatureVariant v) {
  switch (v) {
    case FeatureVariant::full:
      return {"num_nodes",      "num_edges", "density",          "num_components",
              "avg_comp_size",  "lifetime",  "transfer_std_dev", "amount"};
    case FeatureVariant::reduced:
      return {"density", "avg_comp_size", "lifetime", "transfer_std_dev", "amount", "edges_per_component"};
    case FeatureVariant::reduced_no_lifetime:
      return {"density", "avg_comp_size", "transfer_std_dev", "amount", "edges_per_component"};
  }
  return {};
}

inline FeatureVariant variant_from_names(const std::vector<std::string>& names) {
  for (auto v : {FeatureVariant::full, FeatureVariant::reduced, FeatureVariant::reduced_no_lifetime})
    if (feature_names(v) == names) return v;
  throw FeatureMismatchError("feature names match no known variant");
}

struct ProjectionOptions {
  bool log_amount = false;  // log10(1 + amount)
};

inline std::vector<double> project(const FeatureVector& fv, FeatureVariant v, ProjectionOptions opt = {}) {
  double amount = fv.amount_as_double();
  if (opt.log_amount) amount = std::log10(1.0 + amount);
  if (v == FeatureVariant::full) {
    return {static_cast<double>(fv.num_nodes),      static_cast<double>(fv.num_edges), fv.density,
            static_cast<double>(fv.num_components), fv.avg_comp_size,                  static_cast<double>(fv.lifetime),
            fv.transfer_std_dev,                    amount};
  }
  auto r = reduce_features(fv, v == FeatureVariant::reduced);
  std::vector<double> row{r.density, r.avg_comp_size};
  if (r.lifetime) row.push_back(*r.lifetime);
  row.insert(row.end(), {r.transfer_std_dev, amount, r.edges_per_component});
  return row;
}

// Builds every graph in every window and extracts its features, ordered by
// (window, token).
inline std::vector<FeatureVector> features_for_windows(
    const std::map<BlockWindow, std::vector<TransferEvent>>& windows) {
  std::vector<FeatureVector> out;
  for (const auto& [window, events] : windows) {
    for (const auto& [token, graph] : build_graphs(events, window)) out.push_back(extract_features(graph));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Feature table (CSV)

inline constexpr std::string_view kFeatureHeader =
    "token,window_start,window_end,num_nodes,num_edges,density,num_components,avg_comp_size,lifetime,"
    "transfer_std_dev,amount";

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string format_feature_row(const FeatureVector& f) {
  std::string s = f.token.hex();
  s += ',' + std::to_string(f.window.start) + ',' + std::to_string(f.window.end);
  s += ',' + std::to_string(f.num_nodes) + ',' + std::to_string(f.num_edges);
  s += ',' + format_real(f.density);
  s += ',' + std::to_string(f.num_components);
  s += ',' + format_real(f.avg_comp_size);
  s += ',' + std::to_string(f.lifetime);
  s += ',' + format_real(f.transfer_std_dev);
  s += ',' + to_decimal(f.amount);
  return s;
}

inline void write_feature_table(std::ostream& out, const std::vector<FeatureVector>& rows) {
  out << kFeatureHeader << '\n';
  for (const auto& r : rows) out << format_feature_row(r) << '\n';
}

inline void write_feature_table(const std::string& path, const std::vector<FeatureVector>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write feature table '" + path + "'");
  write_feature_table(out, rows);
}

namespace detail {

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

inline double parse_real_field(std::string_view f, std::size_t line, const char* name) {
  std::string tmp(f);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size() || !std::isfinite(v))
    throw ParseError(line, std::string("bad ") + name + " '" + tmp + "'");
  return v;
}

}  // namespace detail

inline std::vector<FeatureVector> read_feature_table(std::istream& in) {
  std::vector<FeatureVector> out;
  std::string buf;
  std::size_t line = 0;
  if (!std::getline(in, buf)) return out;
  ++line;
  if (!buf.empty() && buf.back() == '\r') buf.pop_back();
  if (buf != kFeatureHeader) throw ParseError(line, "unexpected feature table header");
  while (std::getline(in, buf)) {
    ++line;
    if (!buf.empty() && buf.back() == '\r') buf.pop_back();
    if (buf.empty()) continue;
    auto f = detail::split_csv(buf);
    if (f.size() != 11) throw ParseError(line, "expected 11 fields, got " + std::to_string(f.size()));
    FeatureVector fv;
    fv.token = detail::parse_hex_field<20>(f[0], line, "token");
    fv.window.start = detail::parse_u64_field(f[1], line, "window_start");
    fv.window.end = detail::parse_u64_field(f[2], line, "window_end");
    fv.num_nodes = detail::parse_u64_field(f[3], line, "num_nodes");
    fv.num_edges = detail::parse_u64_field(f[4], line, "num_edges");
    fv.density = detail::parse_real_field(f[5], line, "density");
    fv.num_components = detail::parse_u64_field(f[6], line, "num_components");
    fv.avg_comp_size = detail::parse_real_field(f[7], line, "avg_comp_size");
    fv.lifetime = detail::parse_u64_field(f[8], line, "lifetime");
    fv.transfer_std_dev = detail::parse_real_field(f[9], line, "transfer_std_dev");
    if (f[10].empty() || f[10].find_first_not_of("0123456789") != std::string_view::npos)
      throw ParseError(line, "bad amount '" + std::string(f[10]) + "'");
    fv.amount = BigUInt(std::string(f[10]));
    if (fv.window.end <= fv.window.start) throw ValueError("line " + std::to_string(line) + ": empty window");
    out.push_back(std::move(fv));
  }
  return out;
}

inline std::vector<FeatureVector> read_feature_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open feature table '" + path + "'");
  return read_feature_table(in);
}

// Per-feature equal-width bin counts over the observed range (amount in
// log10(1 + x) space), for external distribution plots.
inline void write_feature_histograms(std::ostream& out, const std::vector<FeatureVector>& rows, int bins) {
  out << "feature,bin,lo,hi,count\n";
  if (rows.empty() || bins < 1) return;
  auto names = feature_names(FeatureVariant::full);
  for (std::size_t j = 0; j < names.size(); ++j) {
    std::vector<double> col;
    col.reserve(rows.size());
    for (const auto& r : rows) col.push_back(project(r, FeatureVariant::full, {.log_amount = true})[j]);
    auto [mn, mx] = std::minmax_element(col.begin(), col.end());
    double lo = *mn, hi = *mx;
    double step = hi > lo ? (hi - lo) / bins : 1.0;
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double x : col) {
      auto b = static_cast<std::size_t>(std::min<double>(bins - 1, std::floor((x - lo) / step)));
      ++counts[b];
    }
    std::string name = names[j] == "amount" ? "log10_amount" : names[j];
    for (int b = 0; b < bins; ++b)
      out << name << ',' << b << ',' << format_real(lo + b * step) << ',' << format_real(lo + (b + 1) * step) << ','
          << counts[static_cast<std::size_t>(b)] << '\n';
  }
}

}  // namespace erc20graph
