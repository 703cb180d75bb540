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

namespace mtbias::stats {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
// evaluated with the modified Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Upper tail P(T > t) of Student's t with `df` degrees of freedom.
// Handles t = +-infinity.
double student_t_sf(double t, double df);

// P(T <= t).
double student_t_cdf(double t, double df);

}  // namespace mtbias::stats
