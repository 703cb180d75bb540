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

#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mtbias {

struct TranslationRequest {
  std::string text;
  std::string source_lang;
  std::string target_lang;

  // Throws DataError for empty text or source == target.
  void validate() const;

  friend bool operator==(const TranslationRequest&, const TranslationRequest&) = default;
};

// Exact-text cache key. No whitespace or case normalization is applied.
struct TranslationKey {
  std::string backend_id;
  std::string source_lang;
  std::string target_lang;
  std::string text;

  friend auto operator<=>(const TranslationKey&, const TranslationKey&) = default;
};

struct TranslationRecord {
  TranslationRequest request;
  std::string output;
  std::string backend_id;
  std::string retrieved_at;  // ISO 8601 UTC, informational only
  bool from_cache = false;

  TranslationKey key() const {
    return {backend_id, request.source_lang, request.target_lang, request.text};
  }

  friend bool operator==(const TranslationRecord&, const TranslationRecord&) = default;
};

std::string utc_timestamp_now();

class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;

  virtual std::string id() const = 0;

  // Throws Unavailable when no answer can be produced, ProtocolError when
  // the answer cannot be interpreted.
  virtual TranslationRecord translate(const TranslationRequest& request) = 0;

  // Number of requests callers may keep in flight at once.
  virtual std::size_t max_concurrency() const { return 1; }
};

// Returns the input text unchanged.
class IdentityBackend final : public TranslationBackend {
 public:
  std::string id() const override { return "identity"; }
  TranslationRecord translate(const TranslationRequest& request) override;
  std::size_t max_concurrency() const override { return 8; }
};

// Replays a recorded snapshot. Lookups ignore the recorded backend id; a
// request absent from the snapshot is Unavailable.
class FixtureBackend final : public TranslationBackend {
 public:
  explicit FixtureBackend(std::vector<TranslationRecord> records);
  static FixtureBackend from_file(const std::filesystem::path& snapshot);

  std::string id() const override { return "fixture"; }
  TranslationRecord translate(const TranslationRequest& request) override;
  std::size_t max_concurrency() const override { return 8; }

  std::size_t size() const { return index_.size(); }

 private:
  using Triple = std::tuple<std::string, std::string, std::string>;
  std::map<Triple, TranslationRecord> index_;
};

// ---------------------------------------------------------------------------
// Snapshot files
//
// One record per line, tab separated:
//   source_lang, target_lang, base64(text), base64(output), backend_id,
//   timestamp
// Lines are sorted by (backend_id, source_lang, target_lang, text). Lines
// starting with '#' are comments. Every record line ends with '\n'; a final
// line without one is reported as truncated.

std::vector<TranslationRecord> parse_snapshot(std::string_view contents,
                                              const std::string& source);
std::string format_snapshot(std::vector<TranslationRecord> records);

std::vector<TranslationRecord> read_snapshot(const std::filesystem::path& path);
void write_snapshot(const std::filesystem::path& path,
                    std::vector<TranslationRecord> records);

// Copies the cache at `cache_path` to a sorted snapshot file.
void export_snapshot(const std::filesystem::path& cache_path,
                     const std::filesystem::path& snapshot_path);

// Merges a snapshot into the cache at `cache_path`; snapshot entries replace
// cached entries with the same key.
void import_snapshot(const std::filesystem::path& snapshot_path,
                     const std::filesystem::path& cache_path);

// ---------------------------------------------------------------------------
// Disk-backed cache. The on-disk form is a snapshot file, rewritten
// atomically (temp file + rename). Safe for concurrent use.
class TranslationCache {
 public:
  // Loads `path` when it exists. An empty path keeps the cache in memory.
  explicit TranslationCache(std::filesystem::path path = {},
                            std::size_t flush_every = 64);
  ~TranslationCache();

  TranslationCache(const TranslationCache&) = delete;
  TranslationCache& operator=(const TranslationCache&) = delete;

  std::optional<TranslationRecord> lookup(const TranslationKey& key) const;
  void insert(TranslationRecord record);
  void flush();

  std::size_t size() const;
  std::vector<TranslationRecord> records() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  void flush_locked();

  std::filesystem::path path_;
  std::size_t flush_every_;
  mutable std::mutex mu_;
  std::map<TranslationKey, TranslationRecord> entries_;
  std::size_t pending_ = 0;
};

// Serves cache hits (from_cache = true) and stores misses.
class CachingBackend final : public TranslationBackend {
 public:
  CachingBackend(std::shared_ptr<TranslationBackend> inner,
                 std::shared_ptr<TranslationCache> cache);

  std::string id() const override { return inner_->id(); }
  TranslationRecord translate(const TranslationRequest& request) override;
  std::size_t max_concurrency() const override { return inner_->max_concurrency(); }

  TranslationCache& cache() { return *cache_; }

 private:
  std::shared_ptr<TranslationBackend> inner_;
  std::shared_ptr<TranslationCache> cache_;
};

// ---------------------------------------------------------------------------
// Live HTTP backend

struct BackendConfig {
  std::string endpoint;          // e.g. "http://localhost:5000/translate"
  std::string adapter = "generic";
  std::string credential_env;    // environment variable holding the secret
  std::size_t max_concurrent = 4;
  double requests_per_second = 5.0;
  unsigned retry_budget = 3;     // retries after the first attempt, <= 10
  std::filesystem::path cache_path;
  std::chrono::milliseconds backoff_initial{500};
  std::chrono::milliseconds backoff_max{30000};
  std::chrono::milliseconds timeout{30000};

  // Throws ConfigError.
  void validate() const;
};

// Limits issued requests so that no window of length `window()` holds more
// than `capacity()` of them. With rps >= 1 the window is one second and the
// capacity floor(rps); below 1 rps a single request per 1/rps seconds.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;
  using NowFn = std::function<Clock::time_point()>;
  using SleepFn = std::function<void(Clock::duration)>;

  explicit RateLimiter(double requests_per_second, NowFn now = {}, SleepFn sleep = {});

  // Blocks until a request may be issued and returns its issue time.
  Clock::time_point acquire();

  Clock::duration window() const { return window_; }
  std::size_t capacity() const { return capacity_; }

 private:
  Clock::duration window_;
  std::size_t capacity_;
  NowFn now_;
  SleepFn sleep_;
  std::mutex mu_;
  std::vector<Clock::time_point> issued_;  // ring of the last `capacity_` issues
  std::size_t next_ = 0;
};

struct HttpCall {
  std::string path;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::string content_type = "application/json";
};

// Maps the generic translate(text, source, target) shape onto one
// provider's REST API.
class ProviderAdapter {
 public:
  virtual ~ProviderAdapter() = default;
  virtual std::string name() const = 0;
  virtual HttpCall build(const TranslationRequest& request,
                         const std::optional<std::string>& credential,
                         const std::string& base_path) const = 0;
  // Extracts the translated text; throws ProtocolError.
  virtual std::string parse(std::string_view body) const = 0;
};

// "generic", "libretranslate" or "google-v2"; throws ConfigError otherwise.
std::unique_ptr<ProviderAdapter> make_adapter(std::string_view name);

class HttpBackend final : public TranslationBackend {
 public:
  // Reads the credential from the environment; throws ConfigError if the
  // configured variable is unset, before any network activity.
  explicit HttpBackend(BackendConfig config);
  ~HttpBackend() override;

  std::string id() const override;
  TranslationRecord translate(const TranslationRequest& request) override;
  std::size_t max_concurrency() const override { return config_.max_concurrent; }

 private:
  struct Impl;
  BackendConfig config_;
  std::unique_ptr<Impl> impl_;
};

// HttpBackend behind a TranslationCache stored at config.cache_path.
std::shared_ptr<CachingBackend> make_live_backend(const BackendConfig& config);

}  // namespace mtbias
