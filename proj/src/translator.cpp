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

#include <algorithm>
#include <cmath>
#include <ctime>
#include <thread>

#include "mtbias/errors.hpp"
#include "mtbias/translator.hpp"

namespace mtbias {

void TranslationRequest::validate() const {
  if (text.empty()) throw DataError("translation request with empty text");
  if (source_lang.empty() || target_lang.empty()) {
    throw DataError("translation request without language codes");
  }
  if (source_lang == target_lang) {
    throw DataError("translation request with source == target ('" + source_lang + "')");
  }
}

std::string utc_timestamp_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

TranslationRecord IdentityBackend::translate(const TranslationRequest& request) {
  request.validate();
  return {request, request.text, id(), utc_timestamp_now(), false};
}

FixtureBackend::FixtureBackend(std::vector<TranslationRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const auto& a, const auto& b) { return a.key() < b.key(); });
  for (auto& r : records) {
    Triple t{r.request.source_lang, r.request.target_lang, r.request.text};
    index_.try_emplace(std::move(t), std::move(r));
  }
}

FixtureBackend FixtureBackend::from_file(const std::filesystem::path& snapshot) {
  return FixtureBackend(read_snapshot(snapshot));
}

TranslationRecord FixtureBackend::translate(const TranslationRequest& request) {
  request.validate();
  const auto it =
      index_.find(Triple{request.source_lang, request.target_lang, request.text});
  if (it == index_.end()) {
    throw Unavailable("fixture has no entry for " + request.source_lang + "->" +
                      request.target_lang + " '" + request.text + "'");
  }
  auto record = it->second;
  record.from_cache = false;
  return record;
}

// ---------------------------------------------------------------------------

TranslationCache::TranslationCache(std::filesystem::path path, std::size_t flush_every)
    : path_(std::move(path)), flush_every_(std::max<std::size_t>(1, flush_every)) {
  if (!path_.empty() && std::filesystem::exists(path_)) {
    for (auto& r : read_snapshot(path_)) {
      auto key = r.key();
      entries_.insert_or_assign(std::move(key), std::move(r));
    }
  }
}

TranslationCache::~TranslationCache() {
  try {
    flush();
  } catch (...) {
    // Destructors must not throw; callers wanting the error call flush().
  }
}

std::optional<TranslationRecord> TranslationCache::lookup(const TranslationKey& key) const {
  std::lock_guard lock(mu_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void TranslationCache::insert(TranslationRecord record) {
  record.from_cache = false;
  std::lock_guard lock(mu_);
  auto key = record.key();
  entries_.insert_or_assign(std::move(key), std::move(record));
  if (++pending_ >= flush_every_) flush_locked();
}

void TranslationCache::flush() {
  std::lock_guard lock(mu_);
  flush_locked();
}

void TranslationCache::flush_locked() {
  if (pending_ == 0 || path_.empty()) {
    pending_ = 0;
    return;
  }
  std::vector<TranslationRecord> all;
  all.reserve(entries_.size());
  for (const auto& [k, v] : entries_) all.push_back(v);
  write_snapshot(path_, std::move(all));
  pending_ = 0;
}

std::size_t TranslationCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::vector<TranslationRecord> TranslationCache::records() const {
  std::lock_guard lock(mu_);
  std::vector<TranslationRecord> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(v);
  return out;
}

CachingBackend::CachingBackend(std::shared_ptr<TranslationBackend> inner,
                               std::shared_ptr<TranslationCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

TranslationRecord CachingBackend::translate(const TranslationRequest& request) {
  request.validate();
  const TranslationKey key{inner_->id(), request.source_lang, request.target_lang,
                           request.text};
  if (auto hit = cache_->lookup(key)) {
    hit->from_cache = true;
    return *hit;
  }
  auto record = inner_->translate(request);
  record.backend_id = inner_->id();
  cache_->insert(record);
  record.from_cache = false;
  return record;
}

// ---------------------------------------------------------------------------

void BackendConfig::validate() const {
  if (endpoint.empty()) throw ConfigError("backend endpoint is empty");
  if (endpoint.rfind("http://", 0) != 0 && endpoint.rfind("https://", 0) != 0) {
    throw ConfigError("backend endpoint must start with http:// or https://: " + endpoint);
  }
  if (max_concurrent == 0) throw ConfigError("max_concurrent must be positive");
  if (!(requests_per_second > 0.0) || !std::isfinite(requests_per_second)) {
    throw ConfigError("requests_per_second must be positive");
  }
  if (retry_budget > 10) throw ConfigError("retry_budget must be <= 10");
  if (backoff_initial.count() < 0 || backoff_max < backoff_initial) {
    throw ConfigError("invalid backoff bounds");
  }
}

RateLimiter::RateLimiter(double requests_per_second, NowFn now, SleepFn sleep)
    : now_(now ? std::move(now) : NowFn([] { return Clock::now(); })),
      sleep_(sleep ? std::move(sleep)
                   : SleepFn([](Clock::duration d) { std::this_thread::sleep_for(d); })) {
  if (!(requests_per_second > 0.0)) {
    throw ConfigError("requests_per_second must be positive");
  }
  if (requests_per_second >= 1.0) {
    capacity_ = static_cast<std::size_t>(std::floor(requests_per_second));
    window_ = std::chrono::seconds(1);
  } else {
    capacity_ = 1;
    window_ = std::chrono::duration_cast<Clock::duration>(
        std::chrono::duration<double>(1.0 / requests_per_second));
  }
}

RateLimiter::Clock::time_point RateLimiter::acquire() {
  while (true) {
    Clock::duration wait{};
    {
      std::lock_guard lock(mu_);
      const auto now = now_();
      if (issued_.size() < capacity_) {
        issued_.push_back(now);
        return now;
      }
      // issued_[next_] is the oldest of the last `capacity_` issues.
      const auto oldest = issued_[next_];
      if (now - oldest >= window_) {
        issued_[next_] = now;
        next_ = (next_ + 1) % capacity_;
        return now;
      }
      wait = window_ - (now - oldest);
    }
    sleep_(wait);
  }
}

}  // namespace mtbias
