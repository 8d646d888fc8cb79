#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <deque>
#include <thread>

#include <httplib.h>

#include "erc20graph/rng.hpp"
#include "erc20graph/rpc.hpp"

using namespace erc20graph;
using nlohmann::json;

namespace {

json log_json(std::uint64_t block, std::uint64_t index, std::uint8_t from, std::uint64_t value,
              bool erc721 = false) {
  Address a;
  a.bytes.fill(from);
  Address token;
  token.bytes.fill(0xee);
  Hash32 tx;
  tx.bytes.fill(static_cast<std::uint8_t>(block));
  tx.bytes[0] = static_cast<std::uint8_t>(index);
  json topics = json::array({transfer_topic_hash().hex(), word_from_address(a).hex(), word_from_address(a).hex()});
  if (erc721) topics.push_back(word_from_uint256(value).hex());
  return {{"address", token.hex()},
          {"topics", topics},
          {"data", erc721 ? "0x" : word_from_uint256(value).hex()},
          {"blockNumber", hex_quantity(block)},
          {"transactionHash", tx.hex()},
          {"logIndex", hex_quantity(index)},
          {"removed", false}};
}

// In-memory chain: a few logs per block, an optional result cap that
// triggers over-limit errors, and a queue of injected transient failures.
class FakeChain : public RpcTransport {
 public:
  explicit FakeChain(std::size_t limit = SIZE_MAX) : limit_(limit) {
    Rng rng(11);
    for (std::uint64_t b = 0; b < 1000; ++b) {
      std::uint64_t n = rng.uniform_int(0, 3);
      for (std::uint64_t i = 0; i < n; ++i) logs_.push_back(log_json(b, i, static_cast<std::uint8_t>(i + 1), b * 10 + i));
    }
  }

  json call(const json& req) override {
    requests.push_back(req);
    if (!failures.empty()) {
      auto f = failures.front();
      failures.pop_front();
      if (f == "transport") throw TransportError("connection reset");
      if (f == "rpc") return {{"jsonrpc", "2.0"}, {"id", req["id"]}, {"error", {{"code", -32000}, {"message", "header not found"}}}};
    }
    const auto& p = req["params"][0];
    auto from = parse_hex_quantity(p["fromBlock"].get<std::string>());
    auto to = parse_hex_quantity(p["toBlock"].get<std::string>());
    json result = json::array();
    for (const auto& l : logs_) {
      auto b = parse_hex_quantity(l["blockNumber"].get<std::string>());
      if (b >= from && b <= to) result.push_back(l);
    }
    if (result.size() > limit_)
      return {{"jsonrpc", "2.0"},
              {"id", req["id"]},
              {"error", {{"code", -32005}, {"message", "query returned more than 10000 results"}}}};
    // Providers do not promise ordering; hand results back reversed.
    std::reverse(result.begin(), result.end());
    return {{"jsonrpc", "2.0"}, {"id", req["id"]}, {"result", result}};
  }

  std::vector<json> requests;
  std::deque<std::string> failures;

 private:
  std::vector<json> logs_;
  std::size_t limit_;
};

FetchOptions fast(std::uint64_t chunk) {
  FetchOptions o;
  o.chunk = chunk;
  o.backoff_base = std::chrono::milliseconds(0);
  return o;
}

}  // namespace

TEST(FetchLogs, RequestShape) {
  auto req = make_get_logs_request({18'000'000, 18'002'000}, 7);
  EXPECT_EQ(req["jsonrpc"], "2.0");
  EXPECT_EQ(req["method"], "eth_getLogs");
  const auto& p = req["params"][0];
  EXPECT_EQ(p["fromBlock"], "0x112a880");
  EXPECT_EQ(p["toBlock"], "0x112b04f");
  ASSERT_EQ(p["topics"].size(), 1u);
  EXPECT_EQ(p["topics"][0], "0xddf252ad1be2c89b69c2b068fc378daa952ba7f163c4a11628f55a4df523b3ef");
}

TEST(FetchLogs, ChunkArithmetic) {
  // 100k blocks in chunks of 2000 is 50 requests; the fake chain only holds
  // blocks below 1000 but the request count depends on the range alone.
  FakeChain chain;
  LogFetcher f(chain, fast(2000));
  f.run({18'000'000, 18'100'000}, [](BlockWindow, std::vector<RawLog>&&) {});
  EXPECT_EQ(f.requests_issued(), 50u);
  EXPECT_EQ(chain.requests.size(), 50u);
}

TEST(FetchLogs, EmptyRangeIsEmpty) {
  FakeChain chain;
  EXPECT_TRUE(fetch_logs(chain, {500, 500}, fast(10)).empty());
  EXPECT_TRUE(chain.requests.empty());
}

TEST(FetchLogs, OverLimitSplitsIntoHalves) {
  FakeChain chain(20);
  std::vector<BlockWindow> spans;
  LogFetcher f(chain, fast(100));
  f.run({0, 100}, [&](BlockWindow s, std::vector<RawLog>&&) { spans.push_back(s); });
  // First request covers [0,100) and is refused; the next two are its halves.
  ASSERT_GE(chain.requests.size(), 3u);
  EXPECT_EQ(chain.requests[1]["params"][0]["fromBlock"], hex_quantity(0));
  EXPECT_EQ(chain.requests[1]["params"][0]["toBlock"], hex_quantity(49));
  for (std::size_t i = 1; i < spans.size(); ++i) EXPECT_EQ(spans[i].start, spans[i - 1].end);
  EXPECT_EQ(spans.front().start, 0u);
  EXPECT_EQ(spans.back().end, 100u);
}

TEST(FetchLogs, RangeTooDense) {
  FakeChain chain(0);  // any non-empty block exceeds the cap
  EXPECT_THROW(fetch_logs(chain, {0, 64}, fast(64)), RangeTooDenseError);
}

TEST(FetchLogs, TransientErrorsAreRetriedWithBackoff) {
  FakeChain chain;
  chain.failures = {"transport", "rpc", "transport"};
  FetchOptions o = fast(1000);
  o.backoff_base = std::chrono::milliseconds(10);
  o.backoff_max = std::chrono::milliseconds(15);
  std::vector<std::chrono::milliseconds> sleeps;
  LogFetcher f(chain, o);
  f.set_sleeper([&](std::chrono::milliseconds d) { sleeps.push_back(d); });
  std::size_t n = 0;
  f.run({0, 1000}, [&](BlockWindow, std::vector<RawLog>&& logs) { n += logs.size(); });
  EXPECT_GT(n, 0u);
  ASSERT_EQ(sleeps.size(), 3u);
  EXPECT_EQ(sleeps[0].count(), 10);
  EXPECT_EQ(sleeps[1].count(), 15);  // 20 capped
  EXPECT_EQ(sleeps[2].count(), 15);
}

TEST(FetchLogs, GivesUpWithLastCause) {
  FakeChain chain;
  chain.failures = {"transport", "transport", "transport"};
  FetchOptions o = fast(1000);
  o.max_attempts = 3;
  try {
    fetch_logs(chain, {0, 10}, o);
    FAIL();
  } catch (const FetchError& e) {
    EXPECT_NE(std::string(e.what()).find("connection reset"), std::string::npos);
  }
}

// Property: the merged stream does not depend on the chunk size or on the
// provider's result cap.
TEST(FetchLogs, OrderStableAcrossChunkSizes) {
  FakeChain reference_chain;
  auto reference = fetch_logs(reference_chain, {0, 1000}, fast(1000));
  ASSERT_FALSE(reference.empty());
  for (std::size_t i = 1; i < reference.size(); ++i)
    EXPECT_LT(std::tie(reference[i - 1].block_number, reference[i - 1].log_index),
              std::tie(reference[i].block_number, reference[i].log_index));
  for (std::uint64_t chunk : {1ull, 7ull, 64ull, 333ull, 5000ull}) {
    for (std::size_t limit : {SIZE_MAX, std::size_t{40}}) {
      FakeChain chain(limit);
      EXPECT_EQ(fetch_logs(chain, {0, 1000}, fast(chunk)), reference) << "chunk " << chunk;
    }
  }
}

TEST(FetchLogs, DeduplicatesRepeatedLogs) {
  struct Dup : RpcTransport {
    json call(const json& req) override {
      auto l = log_json(5, 0, 1, 1);
      return {{"jsonrpc", "2.0"}, {"id", req["id"]}, {"result", json::array({l, l, log_json(5, 1, 2, 2)})}};
    }
  } dup;
  EXPECT_EQ(fetch_logs(dup, {0, 10}, fast(10)).size(), 2u);
}

TEST(OverLimitDetection, Dialects) {
  EXPECT_TRUE(is_over_limit_error({{"code", -32005}, {"message", "x"}}));
  EXPECT_TRUE(is_over_limit_error({{"code", -32602}, {"message", "Log response size exceeded."}}));
  EXPECT_TRUE(is_over_limit_error({{"code", -32000}, {"message", "query returned more than 10000 results"}}));
  EXPECT_FALSE(is_over_limit_error({{"code", -32000}, {"message", "header not found"}}));
}

TEST(HttpTransport, RejectsBadUrls) {
  EXPECT_THROW(HttpTransport("localhost:8545"), InputError);
  EXPECT_THROW(HttpTransport("ftp://localhost"), InputError);
  EXPECT_THROW(HttpTransport("http://"), InputError);
}

TEST(HttpTransport, UnreachableIsFetchFailure) {
  HttpTransport t("http://127.0.0.1:1", std::chrono::seconds(1));
  FetchOptions o = fast(10);
  o.max_attempts = 2;
  EXPECT_THROW(fetch_logs(t, {0, 10}, o), FetchError);
}

// End to end over a real socket against a small JSON-RPC server.
TEST(HttpTransport, EthGetLogsOverHttp) {
  FakeChain chain(30);
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Post("/rpc", [&](const httplib::Request& req, httplib::Response& res) {
    ++hits;
    auto body = json::parse(req.body);
    res.set_content(chain.call(body).dump(), "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  HttpTransport t("http://127.0.0.1:" + std::to_string(port) + "/rpc");
  auto logs = fetch_logs(t, {0, 1000}, fast(250));
  server.stop();
  th.join();

  FakeChain reference_chain;
  EXPECT_EQ(logs, fetch_logs(reference_chain, {0, 1000}, fast(1000)));
  EXPECT_GT(hits.load(), 4);
}

TEST(ParseRawLog, SkipsRemovedAndForeignTopics) {
  struct Mixed : RpcTransport {
    json call(const json& req) override {
      auto removed = log_json(1, 0, 1, 1);
      removed["removed"] = true;
      auto foreign = log_json(1, 1, 1, 1);
      foreign["topics"][0] = Hash32{}.hex();
      return {{"jsonrpc", "2.0"}, {"id", req["id"]}, {"result", json::array({removed, foreign, log_json(1, 2, 1, 1, true)})}};
    }
  } mixed;
  auto logs = fetch_logs(mixed, {0, 5}, fast(5));
  ASSERT_EQ(logs.size(), 1u);  // the ERC-721-shaped log still matches topic0
  EXPECT_FALSE(is_erc20_transfer(logs[0]));
}
