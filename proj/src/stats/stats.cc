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


#include "amrprobe/stats/stats.h"

#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

namespace amrprobe {

double NormalCdf(double x) {
  return boost::math::cdf(boost::math::normal_distribution<double>(), x);
}

double NormalQuantile(double p) {
  if (!(p > 0 && p < 1)) throw StatsError("quantile outside (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

WilsonInterval Wilson(double k, double n, double confidence) {
  if (!(n > 0)) throw StatsError("wilson interval needs n >= 1");
  if (k < 0 || k > n) throw StatsError("wilson interval needs 0 <= k <= n");
  if (!(confidence > 0 && confidence < 1)) {
    throw StatsError("confidence must lie in (0, 1)");
  }
  double z = NormalQuantile(0.5 + confidence / 2);
  double p = k / n;
  double z2 = z * z;
  double denom = 1 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  WilsonInterval out;
  out.confidence = confidence;
  out.low = k == 0 ? 0.0 : std::max(0.0, center - half);
  out.high = k == n ? 1.0 : std::min(1.0, center + half);
  return out;
}

ZTestResult TwoProportionZ(double k1, double n1, double k2, double n2) {
  if (!(n1 > 0 && n2 > 0)) throw StatsError("z test needs n1, n2 >= 1");
  if (k1 < 0 || k1 > n1 || k2 < 0 || k2 > n2) {
    throw StatsError("z test needs 0 <= k <= n");
  }
  double pooled = (k1 + k2) / (n1 + n2);
  if (pooled <= 0 || pooled >= 1) {
    throw StatsError("pooled proportion is 0 or 1; standard error undefined");
  }
  double se = std::sqrt(pooled * (1 - pooled) * (1 / n1 + 1 / n2));
  ZTestResult out;
  out.z = (k1 / n1 - k2 / n2) / se;
  out.p_two_tailed = 2 * NormalCdf(-std::fabs(out.z));
  return out;
}

long RoundHalfUp(double x) {
  // The epsilon absorbs binary noise such as 59.4999999 for 59.5.
  return static_cast<long>(std::floor(x + 0.5 + 1e-9));
}

std::string FormatPercent(double percent) {
  return fmt::format("{:02d}", RoundHalfUp(percent));
}

}  // namespace amrprobe
