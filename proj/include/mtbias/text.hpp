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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mtbias::text {

// Decodes one UTF-8 code point starting at `pos` and advances `pos`.
// Invalid bytes decode to U+FFFD and consume a single byte.
char32_t next_code_point(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

// Simple (one-to-one) lowercase mapping for Latin, Greek, Cyrillic and
// Armenian letters. Code points outside those blocks map to themselves.
char32_t to_lower(char32_t cp);

std::string lowercase(std::string_view s);

bool is_space(char32_t cp);

// ASCII punctuation except the apostrophe, general punctuation, CJK and
// fullwidth punctuation.
bool is_punctuation(char32_t cp);

std::string_view trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string base64_encode(std::string_view bytes);

// Throws std::invalid_argument when `encoded` is not canonical base64.
std::string base64_decode(std::string_view encoded);

std::string sha256_hex(std::string_view bytes);

// Rounds half away from zero at `decimals` places and prints with exactly
// that many decimals. Inputs here are nonnegative percentages.
std::string fixed_half_up(double value, int decimals);

// Backslash escaping for tab-delimited fields: \t, \n, \r and \\.
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

std::string read_file(const std::filesystem::path& path);

// Writes through a sibling temporary file and renames it over `path`, so
// readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

}  // namespace mtbias::text
