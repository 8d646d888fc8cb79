#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "erc20graph/bytes.hpp"
#include "erc20graph/dataset.hpp"
#include "erc20graph/errors.hpp"
#include "erc20graph/ingest.hpp"
#include "erc20graph/rng.hpp"
#include "erc20graph/uint256.hpp"

namespace erc20graph {

// Synthetic token transfer streams with the three graph shapes seen in the
// labeled data:
//   legitimate             giant weak component (>= 75% of nodes) grown by
//                          preferential attachment, a halo of 2-5 node
//                          components, activity spread over most of the window
//   honeypot_star          one star-like component around the null address
//                          and a pool node, short and bursty
//   counterfeit_poisoning  many 2-4 node components, one distinct sender each,
//                          dust values, short and bursty
enum class Archetype { legitimate, honeypot_star, counterfeit_poisoning };

inline std::string_view to_string(Archetype a) {
  switch (a) {
    case Archetype::legitimate: return "legitimate";
    case Archetype::honeypot_star: return "honeypot_star";
    case Archetype::counterfeit_poisoning: return "counterfeit_poisoning";
  }
  return "legitimate";
}

inline int label_of(Archetype a) noexcept { return a == Archetype::legitimate ? 0 : 1; }

inline constexpr std::uint64_t kScamLifetimeBound = 10'000;

struct ArchetypeConfig {
  Archetype kind = Archetype::legitimate;
  Address token;
  std::size_t node_budget = 1000;
  BlockWindow window{0, kDefaultWindowWidth};
  std::uint64_t lifetime = 90'000;  // span between first and last transfer
  // Target std dev of transfer blocks as a fraction of the std dev a uniform
  // spread over `lifetime` would have. 1 means uniform.
  double concentration = 1.0;
  UInt256 value_scale = UInt256(1'000'000'000'000'000'000ULL);
  std::uint64_t seed = 0;
};

struct GeneratedToken {
  Address token;
  Archetype kind = Archetype::legitimate;
  int label = 0;
  std::vector<TransferEvent> events;  // block order; logIndex set per token
};

namespace detail {

inline Address random_address(Rng& rng) {
  Address a;
  for (std::size_t i = 0; i < 20; i += 8) {
    std::uint64_t r = rng.next_u64();
    for (std::size_t j = 0; j < 8 && i + j < 20; ++j) a.bytes[i + j] = static_cast<std::uint8_t>(r >> (8 * j));
  }
  return a;
}

inline Hash32 random_hash(Rng& rng) {
  Hash32 h;
  for (std::size_t i = 0; i < 32; i += 8) {
    std::uint64_t r = rng.next_u64();
    for (std::size_t j = 0; j < 8; ++j) h.bytes[i + j] = static_cast<std::uint8_t>(r >> (8 * j));
  }
  return h;
}

struct PendingEdge {
  std::uint32_t from;
  std::uint32_t to;
  UInt256 value;
  double order;  // relative time in [0, 1]; edges are timed in this order
};

inline void validate(const ArchetypeConfig& cfg, std::size_t min_budget) {
  if (cfg.node_budget < min_budget)
    throw std::invalid_argument(std::string(to_string(cfg.kind)) + " needs a node budget >= " +
                                std::to_string(min_budget) + ", got " + std::to_string(cfg.node_budget));
  if (cfg.window.width() == 0) throw std::invalid_argument("empty window");
  if (cfg.lifetime >= cfg.window.width()) throw std::invalid_argument("lifetime must be < window width");
  if (!(cfg.concentration > 0.0 && cfg.concentration <= 1.0))
    throw std::invalid_argument("concentration must lie in (0, 1]");
}

// Sorted block numbers for `count` transfers in [start, start + lifetime].
// Uniform profiles pin the first and last transfer to the span ends; clustered
// profiles draw a truncated normal around the span centre and are shrunk if
// needed so the sample std dev stays within concentration * lifetime / sqrt(12).
inline std::vector<std::uint64_t> draw_blocks(Rng& rng, std::size_t count, std::uint64_t start,
                                              std::uint64_t lifetime, double concentration) {
  std::vector<std::uint64_t> blocks(count, start);
  if (count == 0) return blocks;
  const double span = static_cast<double>(lifetime);
  if (concentration >= 1.0) {
    for (auto& b : blocks) b = start + rng.uniform_int(0, lifetime);
    std::sort(blocks.begin(), blocks.end());
    if (count >= 2) {
      blocks.front() = start;
      blocks.back() = start + lifetime;
    }
    return blocks;
  }
  const double target_sd = concentration * span / std::sqrt(12.0);
  const double centre = span / 2.0;
  std::vector<double> offs(count);
  for (auto& o : offs) {
    double x = -1.0;
    for (int tries = 0; tries < 16 && (x < 0.0 || x > span); ++tries) x = rng.normal(centre, 0.8 * target_sd);
    o = std::clamp(x, 0.0, span);
  }
  double mean = std::accumulate(offs.begin(), offs.end(), 0.0) / static_cast<double>(count);
  double ss = 0.0;
  for (double o : offs) ss += (o - mean) * (o - mean);
  double sd = std::sqrt(ss / static_cast<double>(count));
  // Rounding to whole blocks can add up to half a block of spread.
  double allowed = std::max(0.0, target_sd - 1.0);
  double shrink = sd > allowed && sd > 0.0 ? allowed / sd : 1.0;
  for (std::size_t i = 0; i < count; ++i) {
    double o = mean + (offs[i] - mean) * shrink;
    blocks[i] = start + static_cast<std::uint64_t>(std::llround(std::clamp(o, 0.0, span)));
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

inline GeneratedToken materialize(const ArchetypeConfig& cfg, Rng& rng, const std::vector<Address>& nodes,
                                  std::vector<PendingEdge>& edges) {
  std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.order < b.order; });
  std::uint64_t slack = cfg.window.width() - 1 - cfg.lifetime;
  std::uint64_t start = cfg.window.start + rng.uniform_int(0, slack);
  auto blocks = draw_blocks(rng, edges.size(), start, cfg.lifetime, cfg.concentration);

  GeneratedToken out;
  out.token = cfg.token;
  out.kind = cfg.kind;
  out.label = label_of(cfg.kind);
  out.events.reserve(edges.size());
  std::uint64_t log_index = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0 && blocks[i] != blocks[i - 1]) log_index = 0;
    TransferEvent e;
    e.token = cfg.token;
    e.from = nodes[edges[i].from];
    e.to = nodes[edges[i].to];
    e.value = edges[i].value;
    e.block = blocks[i];
    e.tx_hash = random_hash(rng);
    e.log_index = log_index++;
    out.events.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

inline GeneratedToken gen_legitimate(const ArchetypeConfig& cfg) {
  detail::validate(cfg, 20);
  Rng rng(derive_seed(cfg.seed, 1));
  const std::size_t n = cfg.node_budget;

  // Giant component holds 78-92% of the budget; the rest is split into
  // satellites of 2-5 nodes.
  std::size_t giant = static_cast<std::size_t>(std::llround(static_cast<double>(n) * rng.uniform(0.78, 0.92)));
  giant = std::clamp<std::size_t>(giant, (3 * n + 3) / 4, n);
  std::vector<std::size_t> satellites;
  std::size_t rest = n - giant;
  while (rest > 0) {
    if (rest == 1) {
      ++giant;
      break;
    }
    std::size_t s = std::min<std::size_t>(rest, 2 + rng.uniform_int(0, 3));
    if (rest - s == 1) s = rest <= 5 ? rest : s - 1;
    satellites.push_back(s);
    rest -= s;
  }

  std::vector<Address> nodes(n);
  nodes[0] = kNullAddress;  // mint/burn counterpart inside the giant component
  for (std::size_t i = 1; i < n; ++i) nodes[i] = detail::random_address(rng);

  std::vector<detail::PendingEdge> edges;
  edges.reserve(n * 3);
  auto value = [&] { return cfg.value_scale * rng.uniform_int(1, 5000); };

  // Preferential attachment over the giant component; `ends` lists every edge
  // endpoint so a uniform pick from it is degree-proportional.
  std::vector<std::uint32_t> ends;
  ends.reserve(n * 6);
  // A minority of tokens are heavily traded among their holders.
  const double extra_rate = rng.bernoulli(0.15) ? std::exp(rng.uniform(std::log(3.0), std::log(30.0))) : rng.uniform(0.3, 2.0);
  for (std::uint32_t v = 1; v < giant; ++v) {
    double t = static_cast<double>(v) / static_cast<double>(giant);
    std::uint32_t target = ends.empty() || rng.bernoulli(0.1) ? static_cast<std::uint32_t>(rng.uniform_int(0, v - 1))
                                                                : ends[rng.uniform_int(0, ends.size() - 1)];
    if (rng.bernoulli(0.5)) edges.push_back({target, v, value(), t});
    else edges.push_back({v, target, value(), t});
    ends.push_back(target);
    ends.push_back(v);
    // Repeat trading among already-active holders.
    std::size_t extra = static_cast<std::size_t>(extra_rate) + (rng.bernoulli(extra_rate - std::floor(extra_rate)) ? 1 : 0);
    for (std::size_t k = 0; k < extra && v >= 2; ++k) {
      std::uint32_t a = ends[rng.uniform_int(0, ends.size() - 1)];
      std::uint32_t b = static_cast<std::uint32_t>(rng.uniform_int(0, v));
      if (a == b) continue;
      edges.push_back({a, b, value(), t});
      ends.push_back(a);
      ends.push_back(b);
    }
  }

  std::uint32_t next = static_cast<std::uint32_t>(giant);
  for (std::size_t s : satellites) {
    std::uint32_t hub = next;
    for (std::uint32_t j = 1; j < s; ++j) {
      double t = rng.uniform();
      std::uint32_t other = hub + j;
      std::uint32_t anchor = rng.bernoulli(0.5) ? hub : static_cast<std::uint32_t>(hub + rng.uniform_int(0, j - 1));
      if (rng.bernoulli(0.5)) edges.push_back({anchor, other, value(), t});
      else edges.push_back({other, anchor, value(), t});
      if (rng.bernoulli(0.3)) edges.push_back({other, anchor, value(), rng.uniform()});
    }
    next += static_cast<std::uint32_t>(s);
  }
  return detail::materialize(cfg, rng, nodes, edges);
}

inline GeneratedToken gen_honeypot_star(const ArchetypeConfig& cfg) {
  detail::validate(cfg, 10);
  Rng rng(derive_seed(cfg.seed, 2));
  const std::size_t n = cfg.node_budget;
  std::vector<Address> nodes(n);
  nodes[0] = kNullAddress;
  for (std::size_t i = 1; i < n; ++i) nodes[i] = detail::random_address(rng);
  const std::uint32_t null_node = 0, pool = 1;

  std::vector<detail::PendingEdge> edges;
  edges.reserve(n * 2);
  // Liquidity mints open the window; four or more keep the null address a hub.
  std::size_t mints = 4 + rng.uniform_int(0, 4);
  for (std::size_t i = 0; i < mints; ++i)
    edges.push_back({null_node, pool, cfg.value_scale * rng.uniform_int(100'000, 1'000'000), 0.0});
  // Each buyer: one buy from the pool, maybe one sell back, maybe one burn.
  // Buyer degree therefore never exceeds 3.
  const double p_sell = rng.uniform(0.2, 0.9), p_burn = rng.uniform(0.05, 0.5);
  for (std::uint32_t b = 2; b < n; ++b) {
    double t = rng.uniform(0.01, 1.0);
    edges.push_back({pool, b, cfg.value_scale * rng.uniform_int(1, 1000), t});
    if (rng.bernoulli(p_sell)) edges.push_back({b, pool, cfg.value_scale * rng.uniform_int(1, 1000), rng.uniform(t, 1.0)});
    if (rng.bernoulli(p_burn)) edges.push_back({b, null_node, cfg.value_scale * rng.uniform_int(1, 100), rng.uniform(t, 1.0)});
  }
  return detail::materialize(cfg, rng, nodes, edges);
}

inline GeneratedToken gen_counterfeit_poisoning(const ArchetypeConfig& cfg) {
  detail::validate(cfg, 6);
  Rng rng(derive_seed(cfg.seed, 3));
  const std::size_t n = cfg.node_budget;
  std::vector<Address> nodes(n);
  for (auto& a : nodes) a = detail::random_address(rng);

  std::vector<detail::PendingEdge> edges;
  edges.reserve(n * 2);
  auto dust = [&] { return rng.bernoulli(0.5) ? UInt256(0) : UInt256(rng.uniform_int(1, 1000)); };
  // Per-token resend rate: some bots hit each victim once, others repeatedly.
  const double resend = rng.uniform(0.1, 2.0);
  std::size_t rest = n;
  std::uint32_t next = 0;
  while (rest > 0) {
    std::size_t size = 2 + rng.uniform_int(0, 2);
    if (rest <= 4) size = rest;
    else if (rest - size == 1) size = size == 4 ? 3 : size + 1;
    std::uint32_t scammer = next;
    for (std::uint32_t v = 1; v < size; ++v) {
      double t = rng.uniform();
      edges.push_back({scammer, scammer + v, dust(), t});
      std::size_t again = static_cast<std::size_t>(resend) + (rng.bernoulli(resend - std::floor(resend)) ? 1 : 0);
      for (std::size_t k = 0; k < again; ++k) edges.push_back({scammer, scammer + v, dust(), rng.uniform()});
    }
    next += static_cast<std::uint32_t>(size);
    rest -= size;
  }
  return detail::materialize(cfg, rng, nodes, edges);
}

inline GeneratedToken generate(const ArchetypeConfig& cfg) {
  switch (cfg.kind) {
    case Archetype::legitimate: return gen_legitimate(cfg);
    case Archetype::honeypot_star: return gen_honeypot_star(cfg);
    case Archetype::counterfeit_poisoning: return gen_counterfeit_poisoning(cfg);
  }
  throw std::invalid_argument("unknown archetype");
}

// ---------------------------------------------------------------------------
// Corpus

struct CorpusConfig {
  std::size_t tokens_per_window = 926;
  double scam_fraction = 0.353;
  std::vector<BlockWindow> windows{{18'000'000, 18'100'000}};
  std::size_t min_budget = 510;
  std::size_t max_budget = 2000;
  double legit_lifetime_min = 0.8;  // fraction of window width
  std::uint64_t scam_lifetime_min = 300;
  std::uint64_t scam_lifetime_max = 9'999;
  double scam_concentration_min = 0.15;
  double scam_concentration_max = 0.5;
  std::uint64_t seed = 1;
};

struct CorpusToken {
  Address token;
  Archetype kind;
  BlockWindow window;
  std::size_t node_budget;
  std::uint64_t seed;
};

struct Corpus {
  std::vector<TransferEvent> events;  // (block, logIndex) order
  LabelMap labels;
  std::vector<CorpusToken> tokens;
};

inline std::size_t scam_count(std::size_t tokens, double scam_fraction) {
  if (!(scam_fraction >= 0.0 && scam_fraction <= 1.0)) throw std::invalid_argument("scam_fraction must be in [0, 1]");
  return static_cast<std::size_t>(std::llround(static_cast<double>(tokens) * scam_fraction));
}

// Per-token configs for one window. Legitimate token i keeps the same address
// in every window; scam tokens are fresh per window.
inline std::vector<ArchetypeConfig> corpus_plan(const CorpusConfig& c, std::size_t window_index) {
  const BlockWindow w = c.windows.at(window_index);
  const std::size_t scams = scam_count(c.tokens_per_window, c.scam_fraction);
  const std::size_t honeypots = (scams + 1) / 2;
  const std::size_t legit = c.tokens_per_window - scams;
  std::vector<ArchetypeConfig> plan;
  plan.reserve(c.tokens_per_window);
  for (std::size_t i = 0; i < c.tokens_per_window; ++i) {
    ArchetypeConfig cfg;
    cfg.window = w;
    const bool is_legit = i < legit;
    cfg.kind = is_legit ? Archetype::legitimate
                        : (i - legit < honeypots ? Archetype::honeypot_star : Archetype::counterfeit_poisoning);
    std::uint64_t token_seed = is_legit ? derive_seed(c.seed, 0x746f6b656eULL, 0, i)
                                        : derive_seed(c.seed, 0x746f6b656eULL, window_index + 1, i);
    Rng token_rng(token_seed);
    cfg.token = detail::random_address(token_rng);
    cfg.seed = derive_seed(c.seed, 0x6772617068ULL, window_index, i);
    Rng rng(cfg.seed);
    double lo = std::log(static_cast<double>(c.min_budget)), hi = std::log(static_cast<double>(c.max_budget));
    cfg.node_budget = static_cast<std::size_t>(std::llround(std::exp(rng.uniform(lo, hi))));
    if (is_legit) {
      auto min_life = static_cast<std::uint64_t>(std::ceil(c.legit_lifetime_min * static_cast<double>(w.width())));
      cfg.lifetime = rng.uniform_int(std::min(min_life, w.width() - 1), w.width() - 1);
      cfg.concentration = 1.0;
    } else {
      cfg.lifetime = rng.uniform_int(c.scam_lifetime_min, std::min(c.scam_lifetime_max, w.width() - 1));
      cfg.concentration = rng.uniform(c.scam_concentration_min, c.scam_concentration_max);
    }
    plan.push_back(cfg);
  }
  return plan;
}

// Merges tokens into one stream: sorted by block, ties in plan order, with
// logIndex renumbered per block across all tokens.
inline std::vector<TransferEvent> merge_streams(std::vector<GeneratedToken>& tokens) {
  std::size_t total = 0;
  for (const auto& t : tokens) total += t.events.size();
  std::vector<TransferEvent> out;
  out.reserve(total);
  for (auto& t : tokens) {
    out.insert(out.end(), std::make_move_iterator(t.events.begin()), std::make_move_iterator(t.events.end()));
    t.events.clear();
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.block < b.block; });
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i > 0 && out[i].block != out[i - 1].block) idx = 0;
    out[i].log_index = idx++;
  }
  return out;
}

inline std::vector<TransferEvent> gen_window_events(const CorpusConfig& c, std::size_t window_index,
                                                    std::vector<CorpusToken>* tokens_out = nullptr) {
  auto plan = corpus_plan(c, window_index);
  std::vector<GeneratedToken> gen;
  gen.reserve(plan.size());
  for (const auto& cfg : plan) {
    gen.push_back(generate(cfg));
    if (tokens_out) tokens_out->push_back({cfg.token, cfg.kind, cfg.window, cfg.node_budget, cfg.seed});
  }
  return merge_streams(gen);
}

inline Corpus gen_corpus(const CorpusConfig& c) {
  Corpus corpus;
  for (std::size_t w = 0; w < c.windows.size(); ++w) {
    auto events = gen_window_events(c, w, &corpus.tokens);
    corpus.events.insert(corpus.events.end(), std::make_move_iterator(events.begin()),
                         std::make_move_iterator(events.end()));
  }
  for (const auto& t : corpus.tokens) corpus.labels[t.token] = label_of(t.kind);
  return corpus;
}

inline std::vector<BlockWindow> consecutive_windows(std::uint64_t first_start, std::size_t count,
                                                    std::uint64_t width = kDefaultWindowWidth) {
  std::vector<BlockWindow> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({first_start + i * width, first_start + (i + 1) * width});
  return out;
}

}  // namespace erc20graph
