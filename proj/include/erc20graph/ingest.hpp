#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "erc20graph/bytes.hpp"
#include "erc20graph/errors.hpp"
#include "erc20graph/keccak.hpp"
#include "erc20graph/uint256.hpp"

namespace erc20graph {

inline constexpr std::uint64_t kDefaultWindowWidth = 100'000;

// One log record as returned by eth_getLogs.
struct RawLog {
  Address address;
  std::vector<Hash32> topics;
  std::string data;  // raw bytes
  std::uint64_t block_number = 0;
  Hash32 transaction_hash;
  std::uint64_t log_index = 0;

  friend bool operator==(const RawLog&, const RawLog&) = default;
};

struct TransferEvent {
  Address token;
  Address from;
  Address to;
  UInt256 value;
  std::uint64_t block = 0;
  Hash32 tx_hash;
  std::uint64_t log_index = 0;

  friend bool operator==(const TransferEvent&, const TransferEvent&) = default;
};

// Half-open block range [start, end).
struct BlockWindow {
  std::uint64_t start = 0;
  std::uint64_t end = 0;

  std::uint64_t width() const noexcept { return end - start; }
  bool contains(std::uint64_t block) const noexcept { return block >= start && block < end; }

  static BlockWindow containing(std::uint64_t block, std::uint64_t width) noexcept {
    std::uint64_t start = block / width * width;
    return {start, start + width};
  }

  friend auto operator<=>(const BlockWindow&, const BlockWindow&) = default;
};

inline constexpr std::string_view kTransferSignature = "Transfer(address,address,uint256)";

inline const Hash32& transfer_topic_hash() {
  static const Hash32 topic = keccak256(kTransferSignature);
  return topic;
}

// The ERC-20 shape: signature topic plus two indexed addresses, and one
// 32-byte data word. ERC-721 Transfer has the same topic0 but 4 topics.
inline bool is_erc20_transfer(const RawLog& log) noexcept {
  return log.topics.size() == 3 && log.topics[0] == transfer_topic_hash() && log.data.size() == 32;
}

inline TransferEvent decode_transfer(const RawLog& log) {
  if (!is_erc20_transfer(log))
    throw DecodeError("log " + log.transaction_hash.hex() + ":" + std::to_string(log.log_index) +
                      " is not an ERC-20 Transfer");
  auto from = address_from_word(log.topics[1]);
  auto to = address_from_word(log.topics[2]);
  if (!from || !to)
    throw DecodeError("log " + log.transaction_hash.hex() + ":" + std::to_string(log.log_index) +
                      " has an address topic with nonzero high bytes");
  Hash32 word;
  std::copy(log.data.begin(), log.data.end(), word.bytes.begin());
  return TransferEvent{log.address, *from, *to, uint256_from_word(word), log.block_number,
                       log.transaction_hash, log.log_index};
}

// Filters and decodes; logs that fail the shape check or carry dirty
// address topics are dropped.
inline std::vector<TransferEvent> decode_transfers(const std::vector<RawLog>& logs) {
  std::vector<TransferEvent> out;
  out.reserve(logs.size());
  for (const auto& log : logs) {
    if (!is_erc20_transfer(log)) continue;
    if (!address_from_word(log.topics[1]) || !address_from_word(log.topics[2])) continue;
    out.push_back(decode_transfer(log));
  }
  return out;
}

inline bool event_order_less(const TransferEvent& a, const TransferEvent& b) noexcept {
  return std::tie(a.block, a.log_index) < std::tie(b.block, b.log_index);
}

// Sorts by (block, logIndex) and drops repeats of (block, txHash, logIndex).
inline void sort_and_dedupe(std::vector<TransferEvent>& events) {
  auto key = [](const TransferEvent& e) { return std::tie(e.block, e.log_index, e.tx_hash); };
  std::sort(events.begin(), events.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  events.erase(std::unique(events.begin(), events.end(),
                           [&](const auto& a, const auto& b) { return key(a) == key(b); }),
               events.end());
}

// ---------------------------------------------------------------------------
// Fixture format: token \t from \t to \t value \t block \t logIndex \t txHash

inline std::string format_fixture_line(const TransferEvent& e) {
  std::string line;
  line.reserve(240);
  line += e.token.hex();
  line += '\t';
  line += e.from.hex();
  line += '\t';
  line += e.to.hex();
  line += '\t';
  line += to_decimal(e.value);
  line += '\t';
  line += std::to_string(e.block);
  line += '\t';
  line += std::to_string(e.log_index);
  line += '\t';
  line += e.tx_hash.hex();
  return line;
}

namespace detail {

inline std::uint64_t parse_u64_field(std::string_view f, std::size_t line, const char* name) {
  std::uint64_t v = 0;
  if (f.empty()) throw ParseError(line, std::string("empty ") + name);
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec == std::errc::result_out_of_range) throw ValueError("line " + std::to_string(line) + ": " + name + " out of range");
  if (ec != std::errc{} || ptr != f.data() + f.size())
    throw ParseError(line, std::string("bad ") + name + " '" + std::string(f) + "'");
  return v;
}

template <std::size_t N>
FixedBytes<N> parse_hex_field(std::string_view f, std::size_t line, const char* name) {
  if (f.size() != 2 + 2 * N || f[0] != '0' || (f[1] != 'x' && f[1] != 'X'))
    throw ParseError(line, std::string("bad ") + name + " '" + std::string(f) + "'");
  auto v = FixedBytes<N>::from_hex(f);
  if (!v) throw ParseError(line, std::string("non-hex ") + name + " '" + std::string(f) + "'");
  return *v;
}

}  // namespace detail

inline TransferEvent parse_fixture_line(std::string_view text, std::size_t line) {
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
  std::array<std::string_view, 7> f;
  std::size_t n = 0;
  while (true) {
    auto tab = text.find('\t');
    if (n == f.size()) throw ParseError(line, "expected 7 tab-separated fields, got more");
    f[n++] = text.substr(0, tab);
    if (tab == std::string_view::npos) break;
    text.remove_prefix(tab + 1);
  }
  if (n != f.size()) throw ParseError(line, "expected 7 tab-separated fields, got " + std::to_string(n));

  TransferEvent e;
  e.token = detail::parse_hex_field<20>(f[0], line, "token address");
  e.from = detail::parse_hex_field<20>(f[1], line, "from address");
  e.to = detail::parse_hex_field<20>(f[2], line, "to address");
  for (char c : f[3])
    if (c < '0' || c > '9') throw ParseError(line, "bad value '" + std::string(f[3]) + "'");
  auto value = parse_uint256_decimal(f[3]);
  if (!value) {
    if (f[3].empty()) throw ParseError(line, "empty value");
    throw ValueError("line " + std::to_string(line) + ": value exceeds 2^256-1");
  }
  e.value = *value;
  e.block = detail::parse_u64_field(f[4], line, "block");
  e.log_index = detail::parse_u64_field(f[5], line, "logIndex");
  e.tx_hash = detail::parse_hex_field<32>(f[6], line, "txHash");
  return e;
}

// Streams events from a fixture in file order. Blank lines are skipped.
class FixtureReader {
 public:
  explicit FixtureReader(std::istream& in) : in_(&in) {}
  explicit FixtureReader(const std::string& path) : file_(std::make_unique<std::ifstream>(path, std::ios::binary)) {
    if (!*file_) throw InputError("cannot open fixture '" + path + "'");
    in_ = file_.get();
  }

  std::optional<TransferEvent> next() {
    while (std::getline(*in_, buf_)) {
      ++line_;
      if (!buf_.empty() && buf_.back() == '\r') buf_.pop_back();
      if (buf_.empty()) continue;
      return parse_fixture_line(buf_, line_);
    }
    return std::nullopt;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* in_ = nullptr;
  std::string buf_;
  std::size_t line_ = 0;
};

inline std::vector<TransferEvent> read_fixture(FixtureReader& reader) {
  std::vector<TransferEvent> out;
  while (auto e = reader.next()) out.push_back(std::move(*e));
  return out;
}

inline std::vector<TransferEvent> read_fixture(std::istream& in) {
  FixtureReader reader(in);
  return read_fixture(reader);
}

inline std::vector<TransferEvent> read_fixture(const std::string& path) {
  FixtureReader reader(path);
  return read_fixture(reader);
}

inline void write_fixture(std::ostream& out, const std::vector<TransferEvent>& events) {
  for (const auto& e : events) {
    out << format_fixture_line(e) << '\n';
  }
}

inline void write_fixture(const std::string& path, const std::vector<TransferEvent>& events) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write fixture '" + path + "'");
  write_fixture(out, events);
}

// Assigns each event to the window starting at floor(block / width) * width.
// Each window's list is ordered by (block, logIndex); the sort is stable so
// ties keep input order.
inline std::map<BlockWindow, std::vector<TransferEvent>> partition_windows(
    std::vector<TransferEvent> events, std::uint64_t width = kDefaultWindowWidth) {
  if (width == 0) throw std::invalid_argument("window width must be >= 1");
  std::map<BlockWindow, std::vector<TransferEvent>> out;
  for (auto& e : events) out[BlockWindow::containing(e.block, width)].push_back(std::move(e));
  for (auto& [w, list] : out) std::stable_sort(list.begin(), list.end(), event_order_less);
  return out;
}

}  // namespace erc20graph
