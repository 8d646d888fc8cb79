#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "erc20graph/bytes.hpp"
#include "erc20graph/errors.hpp"
#include "erc20graph/ingest.hpp"

namespace erc20graph {

inline constexpr const char* kEndpointEnvVar = "ERC20GRAPH_RPC_URL";

// Raised by transports for failures worth retrying (connection refused,
// timeouts, HTTP 5xx/429).
class TransportError : public FetchError {
 public:
  using FetchError::FetchError;
};

// One JSON-RPC round trip. Implementations throw TransportError on
// transient failure and return the decoded response body otherwise.
class RpcTransport {
 public:
  virtual ~RpcTransport() = default;
  virtual nlohmann::json call(const nlohmann::json& request) = 0;
};

class HttpTransport : public RpcTransport {
 public:
  explicit HttpTransport(const std::string& url, std::chrono::seconds timeout = std::chrono::seconds(30)) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw InputError("endpoint URL needs a scheme: '" + url + "'");
    auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") throw InputError("unsupported URL scheme '" + scheme + "'");
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https") throw InputError("https endpoints need a build with OpenSSL");
#endif
    auto path_start = url.find('/', scheme_end + 3);
    std::string host = url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
    if (host.size() <= scheme_end + 3) throw InputError("endpoint URL has no host: '" + url + "'");
    client_ = std::make_unique<httplib::Client>(host);
    if (!client_->is_valid()) throw InputError("invalid endpoint URL '" + url + "'");
    client_->set_connection_timeout(timeout);
    client_->set_read_timeout(timeout);
  }

  nlohmann::json call(const nlohmann::json& request) override {
    auto res = client_->Post(path_, request.dump(), "application/json");
    if (!res) throw TransportError("HTTP request failed: " + httplib::to_string(res.error()));
    if (res->status == 429 || res->status >= 500)
      throw TransportError("HTTP status " + std::to_string(res->status));
    if (res->status != 200) throw FetchError("HTTP status " + std::to_string(res->status));
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw TransportError(std::string("malformed JSON-RPC response: ") + e.what());
    }
  }

 private:
  std::unique_ptr<httplib::Client> client_;
  std::string path_;
};

struct FetchOptions {
  std::uint64_t chunk = 2000;
  int max_attempts = 5;
  std::chrono::milliseconds backoff_base{250};
  std::chrono::milliseconds backoff_max{8000};
};

inline std::string hex_quantity(std::uint64_t v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, 16);
  (void)ec;
  return "0x" + std::string(buf, ptr);
}

inline std::uint64_t parse_hex_quantity(const std::string& s) {
  auto digits = detail::strip_0x(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, 16);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
    throw FetchError("bad hex quantity '" + s + "'");
  return v;
}

// Inclusive toBlock, per eth_getLogs.
inline nlohmann::json make_get_logs_request(BlockWindow span, std::uint64_t id) {
  return {{"jsonrpc", "2.0"},
          {"id", id},
          {"method", "eth_getLogs"},
          {"params",
           nlohmann::json::array({{{"fromBlock", hex_quantity(span.start)},
                                   {"toBlock", hex_quantity(span.end - 1)},
                                   {"topics", nlohmann::json::array({transfer_topic_hash().hex()})}}})}};
}

inline RawLog parse_raw_log(const nlohmann::json& j) {
  try {
    RawLog log;
    auto addr = Address::from_hex(j.at("address").get<std::string>());
    if (!addr) throw FetchError("bad log address");
    log.address = *addr;
    for (const auto& t : j.at("topics")) {
      auto topic = Hash32::from_hex(t.get<std::string>());
      if (!topic) throw FetchError("bad log topic");
      log.topics.push_back(*topic);
    }
    auto data = bytes_from_hex(j.at("data").get<std::string>());
    if (!data) throw FetchError("bad log data");
    log.data = std::move(*data);
    log.block_number = parse_hex_quantity(j.at("blockNumber").get<std::string>());
    auto tx = Hash32::from_hex(j.at("transactionHash").get<std::string>());
    if (!tx) throw FetchError("bad transaction hash");
    log.transaction_hash = *tx;
    log.log_index = parse_hex_quantity(j.at("logIndex").get<std::string>());
    return log;
  } catch (const nlohmann::json::exception& e) {
    throw FetchError(std::string("malformed log object: ") + e.what());
  }
}

// Providers signal over-limit responses in several dialects (-32005 from
// Infura/Alchemy, free-text messages elsewhere).
inline bool is_over_limit_error(const nlohmann::json& error) {
  if (error.contains("code") && error["code"].is_number_integer() && error["code"].get<int>() == -32005)
    return true;
  std::string msg = error.value("message", "");
  std::transform(msg.begin(), msg.end(), msg.begin(), [](unsigned char c) { return std::tolower(c); });
  for (const char* needle : {"too many", "limit exceeded", "query returned more than", "response size",
                             "range too large", "block range"})
    if (msg.find(needle) != std::string::npos) return true;
  return false;
}

// Streams Transfer-topic logs for `range`, one eth_getLogs per chunk.
// `sink` receives each completed span in ascending block order together with
// its logs sorted by (blockNumber, logIndex) and de-duplicated.
class LogFetcher {
 public:
  using Sink = std::function<void(BlockWindow span, std::vector<RawLog>&& logs)>;
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  LogFetcher(RpcTransport& transport, FetchOptions options)
      : transport_(transport), options_(options) {
    if (options_.chunk < 1) throw std::invalid_argument("chunk must be >= 1");
    sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }

  void set_sleeper(Sleeper s) { sleep_ = std::move(s); }

  void run(BlockWindow range, const Sink& sink) {
    for (std::uint64_t start = range.start; start < range.end;) {
      std::uint64_t end = std::min(range.end, start + options_.chunk);
      fetch_span({start, end}, sink);
      start = end;
    }
  }

  std::uint64_t requests_issued() const noexcept { return requests_; }

 private:
  void fetch_span(BlockWindow span, const Sink& sink) {
    auto result = request_with_retry(span);
    if (!result) {
      if (span.width() <= 1)
        throw RangeTooDenseError("block " + std::to_string(span.start) + " exceeds the provider result limit");
      std::uint64_t mid = span.start + span.width() / 2;
      fetch_span({span.start, mid}, sink);
      fetch_span({mid, span.end}, sink);
      return;
    }
    sink(span, std::move(*result));
  }

  // nullopt means the provider refused the span as too large.
  std::optional<std::vector<RawLog>> request_with_retry(BlockWindow span) {
    std::string last_cause;
    for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
      if (attempt > 0) {
        auto delay = options_.backoff_base * (1LL << std::min(attempt - 1, 20));
        sleep_(std::min<std::chrono::milliseconds>(delay, options_.backoff_max));
      }
      nlohmann::json response;
      try {
        ++requests_;
        response = transport_.call(make_get_logs_request(span, requests_));
      } catch (const TransportError& e) {
        last_cause = e.what();
        continue;
      }
      if (response.contains("error") && !response["error"].is_null()) {
        if (is_over_limit_error(response["error"])) return std::nullopt;
        last_cause = "JSON-RPC error: " + response["error"].dump();
        continue;
      }
      if (!response.contains("result") || !response["result"].is_array()) {
        last_cause = "response has no result array";
        continue;
      }
      return collect(response["result"]);
    }
    throw FetchError("eth_getLogs [" + std::to_string(span.start) + ", " + std::to_string(span.end) +
                     ") failed after " + std::to_string(options_.max_attempts) + " attempts: " + last_cause);
  }

  static std::vector<RawLog> collect(const nlohmann::json& result) {
    std::vector<RawLog> logs;
    logs.reserve(result.size());
    for (const auto& j : result) {
      if (j.value("removed", false)) continue;
      auto log = parse_raw_log(j);
      if (log.topics.empty() || log.topics[0] != transfer_topic_hash()) continue;
      logs.push_back(std::move(log));
    }
    auto key = [](const RawLog& l) { return std::tie(l.block_number, l.log_index, l.transaction_hash); };
    std::sort(logs.begin(), logs.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    logs.erase(std::unique(logs.begin(), logs.end(), [&](const auto& a, const auto& b) { return key(a) == key(b); }),
               logs.end());
    return logs;
  }

  RpcTransport& transport_;
  FetchOptions options_;
  Sleeper sleep_;
  std::uint64_t requests_ = 0;
};

inline std::vector<RawLog> fetch_logs(RpcTransport& transport, BlockWindow range, FetchOptions options = {}) {
  std::vector<RawLog> out;
  LogFetcher fetcher(transport, options);
  fetcher.run(range, [&](BlockWindow, std::vector<RawLog>&& logs) {
    out.insert(out.end(), std::make_move_iterator(logs.begin()), std::make_move_iterator(logs.end()));
  });
  return out;
}

}  // namespace erc20graph
