// Copyright 2026 The mtbias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <thread>

#include "mtbias/errors.hpp"
#include "mtbias/parallel.hpp"
#include "mtbias/text.hpp"
#include "mtbias/translator.hpp"
#include "support.hpp"

using namespace mtbias;
using namespace std::chrono_literals;
using mtbias::testing::scratch_dir;
using mtbias::testing::write_text;

namespace {

TranslationRecord rec(std::string text, std::string src, std::string out,
                      std::string backend = "b") {
  return {{std::move(text), std::move(src), "en"}, std::move(out), std::move(backend),
          "2026-01-01T00:00:00Z", false};
}

// Local HTTP server on an ephemeral port, stopped on destruction.
class MockServer {
 public:
  explicit MockServer(httplib::Server::Handler handler) {
    server_.Post("/translate", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockServer() {
    server_.stop();
    thread_.join();
  }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/translate"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

BackendConfig fast_config(const std::string& endpoint) {
  BackendConfig c;
  c.endpoint = endpoint;
  c.requests_per_second = 1000;
  c.backoff_initial = 1ms;
  c.backoff_max = 4ms;
  c.timeout = 2s;
  return c;
}

}  // namespace

TEST_CASE("request validation") {
  CHECK_THROWS_AS(TranslationRequest({"", "hu", "en"}).validate(), DataError);
  CHECK_THROWS_AS(TranslationRequest({"x", "en", "en"}).validate(), DataError);
  CHECK_NOTHROW(TranslationRequest({"x", "hu", "en"}).validate());
}

TEST_CASE("snapshot: bit-exact round trip and sorted output") {
  std::vector<TranslationRecord> rs{rec("z last", "tr", "he is"), rec("a\tb\nc", "hu", "x\\y"),
                                    rec("ő egy ápolónő", "hu", "she's a nurse", "a")};
  const auto text = format_snapshot(rs);
  const auto back = parse_snapshot(text, "mem");
  REQUIRE(back.size() == 3);
  CHECK(back[0].backend_id == "a");
  CHECK(back[1].request.text == "a\tb\nc");
  CHECK(back[1].output == "x\\y");
  CHECK(back[2].request.source_lang == "tr");
  CHECK(format_snapshot(back) == text);
}

TEST_CASE("snapshot: truncated and corrupt lines name the line") {
  const auto good = format_snapshot({rec("a", "hu", "b"), rec("c", "hu", "d")});
  const auto truncated = good.substr(0, good.size() - 3);
  try {
    parse_snapshot(truncated, "snap.tsv");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("snap.tsv:3") != std::string::npos);
  }
  try {
    parse_snapshot("hu\ten\t!!!!\tYQ==\tb\tt\n", "snap.tsv");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("snap.tsv:1") != std::string::npos);
  }
}

TEST_CASE("snapshot: export then import into an empty cache is the identity") {
  const auto dir = scratch_dir("snap");
  {
    TranslationCache cache(dir / "cache.tsv");
    cache.insert(rec("ő egy ápolónő", "hu", "she's a nurse"));
    cache.insert(rec("o bir mühendis", "tr", "he is an engineer"));
  }
  export_snapshot(dir / "cache.tsv", dir / "snap.tsv");
  import_snapshot(dir / "snap.tsv", dir / "fresh.tsv");
  TranslationCache a(dir / "cache.tsv");
  TranslationCache b(dir / "fresh.tsv");
  CHECK(a.records() == b.records());
  CHECK(a.size() == 2);
}

TEST_CASE("cache: second request is served from cache; keys are exact text") {
  auto inner = std::make_shared<IdentityBackend>();
  auto cache = std::make_shared<TranslationCache>();
  CachingBackend backend(inner, cache);
  const auto first = backend.translate({"ő egy ápolónő", "hu", "en"});
  const auto second = backend.translate({"ő egy ápolónő", "hu", "en"});
  CHECK_FALSE(first.from_cache);
  CHECK(second.from_cache);
  CHECK(second.output == first.output);
  backend.translate({"ő egy  ápolónő", "hu", "en"});
  CHECK(cache->size() == 2);
}

TEST_CASE("cache: persisted atomically and reloaded") {
  const auto dir = scratch_dir("cache");
  {
    TranslationCache cache(dir / "c.tsv", 1);
    cache.insert(rec("a", "hu", "b"));
    CHECK(std::filesystem::exists(dir / "c.tsv"));
    CHECK_FALSE(std::filesystem::exists(dir / "c.tsv.tmp"));
  }
  TranslationCache again(dir / "c.tsv");
  CHECK(again.size() == 1);
}

TEST_CASE("fixture backend replays and reports missing entries") {
  FixtureBackend fx({rec("ő egy ápolónő", "hu", "she's a nurse")});
  CHECK(fx.translate({"ő egy ápolónő", "hu", "en"}).output == "she's a nurse");
  CHECK_THROWS_AS(fx.translate({"ő egy pék", "hu", "en"}), Unavailable);
}

TEST_CASE("rate limiter: no window holds more than its capacity") {
  for (double rps : {0.5, 1.0, 2.5, 5.0, 40.0}) {
    RateLimiter::Clock::time_point now{};
    RateLimiter limiter(
        rps, [&] { return now; }, [&](RateLimiter::Clock::duration d) { now += d; });
    std::vector<RateLimiter::Clock::time_point> issued;
    for (int i = 0; i < 50; ++i) {
      issued.push_back(limiter.acquire());
      if (i % 7 == 0) now += 13ms;
    }
    const auto cap = limiter.capacity();
    CHECK(cap >= 1);
    for (std::size_t i = 0; i + cap < issued.size(); ++i) {
      CHECK(issued[i + cap] - issued[i] >= limiter.window());
    }
    const auto span = issued.back() - issued.front();
    const double seconds = std::chrono::duration<double>(span).count();
    CHECK(seconds > 0.0);
  }
}

TEST_CASE("backend config validation") {
  BackendConfig c = fast_config("http://127.0.0.1:1/translate");
  c.requests_per_second = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = fast_config("http://127.0.0.1:1/translate");
  c.retry_budget = 11;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(make_adapter("babelfish"), ConfigError);
}

TEST_CASE("http: missing credential fails before any request") {
  std::atomic<int> hits{0};
  MockServer server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.set_content(R"({"translation":"x"})", "application/json");
  });
  auto c = fast_config(server.endpoint());
  c.credential_env = "MTBIAS_TEST_SURELY_UNSET_VARIABLE";
  ::unsetenv(c.credential_env.c_str());
  CHECK_THROWS_AS(HttpBackend{c}, ConfigError);
  CHECK(hits == 0);
}

TEST_CASE("http: HTTP 500 three times with retry budget 2 is Unavailable") {
  std::atomic<int> hits{0};
  MockServer server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 500;
    res.set_content("boom", "text/plain");
  });
  auto c = fast_config(server.endpoint());
  c.retry_budget = 2;
  HttpBackend backend(c);
  CHECK_THROWS_AS(backend.translate({"dia adalah X", "ms", "en"}), Unavailable);
  CHECK(hits == 3);
}

TEST_CASE("http: retry recovers, client errors are classified") {
  std::atomic<int> hits{0};
  MockServer server([&](const httplib::Request& req, httplib::Response& res) {
    const int n = ++hits;
    const auto body = nlohmann::json::parse(req.body);
    const std::string text = body.at("text");
    if (text == "flaky" && n == 1) {
      res.status = 429;
      return;
    }
    if (text == "garbage") {
      res.status = 400;
      res.set_content("<html>nope</html>", "text/html");
      return;
    }
    if (text == "refused") {
      res.status = 403;
      res.set_content(R"({"error":"quota"})", "application/json");
      return;
    }
    CHECK(req.get_header_value("Authorization") == "Bearer sekrit");
    res.set_content(nlohmann::json{{"translation", "echo " + text}}.dump(), "application/json");
  });
  ::setenv("MTBIAS_TEST_TOKEN", "sekrit", 1);
  auto c = fast_config(server.endpoint());
  c.credential_env = "MTBIAS_TEST_TOKEN";
  HttpBackend backend(c);
  CHECK(backend.id() == "http:generic");
  CHECK(backend.translate({"flaky", "hu", "en"}).output == "echo flaky");
  CHECK_THROWS_AS(backend.translate({"garbage", "hu", "en"}), ProtocolError);
  CHECK_THROWS_AS(backend.translate({"refused", "hu", "en"}), Unavailable);
}

TEST_CASE("http: in-flight requests never exceed max_concurrent") {
  std::atomic<int> in_flight{0};
  std::atomic<int> peak{0};
  MockServer server([&](const httplib::Request& req, httplib::Response& res) {
    const int now = ++in_flight;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(20ms);
    --in_flight;
    res.set_content(nlohmann::json{{"translation", req.body}}.dump(), "application/json");
  });
  auto c = fast_config(server.endpoint());
  c.max_concurrent = 2;
  HttpBackend backend(c);
  parallel_for(12, 6, [&](std::size_t i) {
    backend.translate({"t" + std::to_string(i), "hu", "en"});
  });
  CHECK(peak.load() <= 2);
  CHECK(peak.load() >= 1);
}

TEST_CASE("http: a warm cache issues zero requests") {
  std::atomic<int> hits{0};
  MockServer server([&](const httplib::Request& req, httplib::Response& res) {
    ++hits;
    const std::string text = nlohmann::json::parse(req.body).at("text");
    res.set_content(nlohmann::json{{"translation", "he is " + text}}.dump(), "application/json");
  });
  const auto dir = scratch_dir("warm");
  auto c = fast_config(server.endpoint());
  c.cache_path = dir / "cache.tsv";
  const std::vector<std::string> texts{"a", "b", "c"};
  {
    auto live = make_live_backend(c);
    for (const auto& t : texts) live->translate({t, "tr", "en"});
  }
  CHECK(hits == 3);
  {
    auto live = make_live_backend(c);
    for (const auto& t : texts) CHECK(live->translate({t, "tr", "en"}).from_cache);
  }
  CHECK(hits == 3);
}

TEST_CASE("adapters build the provider request shapes") {
  const TranslationRequest r{"ő egy ápolónő", "hu", "en"};
  const auto libre = make_adapter("libretranslate")->build(r, std::string("k"), "");
  const auto lj = nlohmann::json::parse(libre.body);
  CHECK(lj.at("q") == "ő egy ápolónő");
  CHECK(lj.at("api_key") == "k");
  CHECK(make_adapter("libretranslate")->parse(R"({"translatedText":"she's a nurse"})") ==
        "she's a nurse");

  const auto google = make_adapter("google-v2")->build(r, std::string("k"), "");
  CHECK(google.path == "/language/translate/v2?key=k");
  CHECK(make_adapter("google-v2")->parse(
            R"({"data":{"translations":[{"translatedText":"he is"}]}})") == "he is");
  CHECK_THROWS_AS(make_adapter("google-v2")->parse(R"({"data":{}})"), ProtocolError);
  CHECK_THROWS_AS(make_adapter("generic")->parse("not json"), ProtocolError);
}
