// Copyright 2026 The Amrprobe Authors.
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


#ifndef AMRPROBE_STATS_STATS_H_
#define AMRPROBE_STATS_STATS_H_

#include <stdexcept>
#include <string>

namespace amrprobe {

class StatsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WilsonInterval {
  double low = 0;
  double high = 0;
  double confidence = 0.95;
};

// Wilson score interval for k successes out of n. k may be fractional
// (averaged per-entry scores). Throws StatsError for n <= 0, k outside
// [0, n] or confidence outside (0, 1).
WilsonInterval Wilson(double k, double n, double confidence = 0.95);

struct ZTestResult {
  double z = 0;
  double p_two_tailed = 1;
};

// Pooled two-proportion z test of k1/n1 against k2/n2. Throws StatsError
// when the pooled proportion is 0 or 1.
ZTestResult TwoProportionZ(double k1, double n1, double k2, double n2);

// Standard normal CDF and quantile.
double NormalCdf(double x);
double NormalQuantile(double p);

// Half-up rounding to an integer.
long RoundHalfUp(double x);

// Rounded percentage with at least two digits: 6.2 -> "06", 100 -> "100".
std::string FormatPercent(double percent);

}  // namespace amrprobe

#endif  // AMRPROBE_STATS_STATS_H_
