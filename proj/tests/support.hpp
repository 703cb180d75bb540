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

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>

namespace mtbias::testing {

inline std::filesystem::path data_dir() { return MTBIAS_DATA_DIR; }
inline std::filesystem::path test_data_dir() { return MTBIAS_TEST_DATA_DIR; }

// Fresh, empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() /
             ("mtbias-" + name + "-" + std::to_string(rng()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << s;
}

// Upper tail of Student's t by direct quadrature of the density, kept
// independent of the incomplete-beta code under test.
inline double t_density(double x, double df) {
  const double log_c = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) -
                       0.5 * std::log(df * M_PI);
  return std::exp(log_c - (df + 1) / 2 * std::log1p(x * x / df));
}

inline double t_sf_oracle(double t, double df) {
  auto f = [df](double x) { return t_density(x, df); };
  if (t >= 0) {
    boost::math::quadrature::exp_sinh<double> upper;
    // Shift so the integral runs over [0, inf).
    return upper.integrate([&](double u) { return f(t + u); }, 1e-15);
  }
  boost::math::quadrature::tanh_sinh<double> finite;
  return 0.5 + finite.integrate(f, t, 0.0, 1e-15);
}

// Every regular file under `root`, keyed by relative path.
inline std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    out[std::filesystem::relative(e.path(), root).generic_string()] =
        std::string(std::istreambuf_iterator<char>(in), {});
  }
  return out;
}

}  // namespace mtbias::testing
