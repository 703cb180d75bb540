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

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include "mtbias/errors.hpp"
#include "mtbias/translator.hpp"

namespace mtbias {
namespace {

using nlohmann::json;

json parse_json_body(std::string_view body, std::string_view provider) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string(provider) + ": response is not JSON: " + e.what());
  }
}

std::string require_string(const json& j, std::string_view provider) {
  if (!j.is_string()) {
    throw ProtocolError(std::string(provider) + ": translated text is not a string");
  }
  auto s = j.get<std::string>();
  if (s.empty()) throw ProtocolError(std::string(provider) + ": empty translation");
  return s;
}

class GenericAdapter final : public ProviderAdapter {
 public:
  std::string name() const override { return "generic"; }

  HttpCall build(const TranslationRequest& request,
                 const std::optional<std::string>& credential,
                 const std::string& base_path) const override {
    HttpCall call;
    call.path = base_path.empty() ? "/translate" : base_path;
    call.body = json{{"text", request.text},
                     {"source", request.source_lang},
                     {"target", request.target_lang}}
                    .dump();
    if (credential) call.headers.emplace_back("Authorization", "Bearer " + *credential);
    return call;
  }

  std::string parse(std::string_view body) const override {
    const auto j = parse_json_body(body, name());
    if (!j.is_object() || !j.contains("translation")) {
      throw ProtocolError("generic: response lacks 'translation'");
    }
    return require_string(j["translation"], name());
  }
};

class LibreTranslateAdapter final : public ProviderAdapter {
 public:
  std::string name() const override { return "libretranslate"; }

  HttpCall build(const TranslationRequest& request,
                 const std::optional<std::string>& credential,
                 const std::string& base_path) const override {
    HttpCall call;
    call.path = base_path.empty() ? "/translate" : base_path;
    json body{{"q", request.text},
              {"source", request.source_lang},
              {"target", request.target_lang},
              {"format", "text"}};
    if (credential) body["api_key"] = *credential;
    call.body = body.dump();
    return call;
  }

  std::string parse(std::string_view body) const override {
    const auto j = parse_json_body(body, name());
    if (!j.is_object() || !j.contains("translatedText")) {
      throw ProtocolError("libretranslate: response lacks 'translatedText'");
    }
    return require_string(j["translatedText"], name());
  }
};

class GoogleV2Adapter final : public ProviderAdapter {
 public:
  std::string name() const override { return "google-v2"; }

  HttpCall build(const TranslationRequest& request,
                 const std::optional<std::string>& credential,
                 const std::string& base_path) const override {
    HttpCall call;
    call.path = base_path.empty() ? "/language/translate/v2" : base_path;
    if (credential) call.path += "?key=" + httplib::detail::encode_query_param(*credential);
    call.body = json{{"q", request.text},
                     {"source", request.source_lang},
                     {"target", request.target_lang},
                     {"format", "text"}}
                    .dump();
    return call;
  }

  std::string parse(std::string_view body) const override {
    const auto j = parse_json_body(body, name());
    try {
      return require_string(j.at("data").at("translations").at(0).at("translatedText"),
                            name());
    } catch (const json::exception&) {
      throw ProtocolError("google-v2: response lacks data.translations[0].translatedText");
    }
  }
};

// Splits "scheme://host[:port]/path" into ("scheme://host[:port]", "/path").
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  const auto scheme_end = endpoint.find("://");
  const auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {endpoint, ""};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

std::string snippet(const std::string& body) {
  constexpr std::size_t kMax = 200;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

}  // namespace

std::unique_ptr<ProviderAdapter> make_adapter(std::string_view name) {
  if (name == "generic") return std::make_unique<GenericAdapter>();
  if (name == "libretranslate") return std::make_unique<LibreTranslateAdapter>();
  if (name == "google-v2") return std::make_unique<GoogleV2Adapter>();
  throw ConfigError("unknown translation adapter '" + std::string(name) + "'");
}

struct HttpBackend::Impl {
  explicit Impl(const BackendConfig& config)
      : adapter(make_adapter(config.adapter)),
        limiter(config.requests_per_second),
        slots(static_cast<std::ptrdiff_t>(config.max_concurrent)) {
    std::tie(base_url, base_path) = split_endpoint(config.endpoint);
  }

  std::unique_ptr<ProviderAdapter> adapter;
  std::optional<std::string> credential;
  std::string base_url;
  std::string base_path;
  RateLimiter limiter;
  std::counting_semaphore<> slots;
};

HttpBackend::HttpBackend(BackendConfig config) : config_(std::move(config)) {
  config_.validate();
  impl_ = std::make_unique<Impl>(config_);
  if (!config_.credential_env.empty()) {
    const char* value = std::getenv(config_.credential_env.c_str());
    if (value == nullptr || *value == '\0') {
      throw ConfigError("credential environment variable " + config_.credential_env +
                        " is not set");
    }
    impl_->credential = value;
  }
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::id() const { return "http:" + config_.adapter; }

TranslationRecord HttpBackend::translate(const TranslationRequest& request) {
  request.validate();
  impl_->slots.acquire();
  struct Release {
    std::counting_semaphore<>& s;
    ~Release() { s.release(); }
  } release{impl_->slots};

  std::string last_detail;
  const unsigned attempts = config_.retry_budget + 1;
  for (unsigned attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      const std::chrono::milliseconds delay = config_.backoff_initial * (1LL << std::min(attempt - 1, 20u));
      std::this_thread::sleep_for(std::min(delay, config_.backoff_max));
    }
    impl_->limiter.acquire();
    const auto call = impl_->adapter->build(request, impl_->credential, impl_->base_path);

    httplib::Client client(impl_->base_url);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
        config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    httplib::Headers headers(call.headers.begin(), call.headers.end());

    const auto res = client.Post(call.path, headers, call.body, call.content_type);
    if (!res) {
      last_detail = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    const int status = res->status;
    if (status >= 200 && status < 300) {
      auto output = impl_->adapter->parse(res->body);
      return {request, std::move(output), id(), utc_timestamp_now(), false};
    }
    if (status == 429 || status >= 500) {
      last_detail = "HTTP " + std::to_string(status) + ": " + snippet(res->body);
      continue;
    }
    if (!nlohmann::json::accept(res->body)) {
      throw ProtocolError("HTTP " + std::to_string(status) +
                          " with unparseable body: " + snippet(res->body));
    }
    throw Unavailable("HTTP " + std::to_string(status) + ": " + snippet(res->body));
  }
  throw Unavailable("gave up after " + std::to_string(attempts) +
                    " attempts; last: " + last_detail);
}

std::shared_ptr<CachingBackend> make_live_backend(const BackendConfig& config) {
  auto http = std::make_shared<HttpBackend>(config);
  auto cache = std::make_shared<TranslationCache>(config.cache_path);
  return std::make_shared<CachingBackend>(std::move(http), std::move(cache));
}

}  // namespace mtbias
