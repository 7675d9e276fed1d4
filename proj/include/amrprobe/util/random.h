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


#ifndef AMRPROBE_UTIL_RANDOM_H_
#define AMRPROBE_UTIL_RANDOM_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace amrprobe {

// Seeded generator with platform-independent draws. The standard
// distributions are implementation-defined, so bounded draws are done here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n); n must be positive.
  uint64_t Uniform(uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform real in [0, 1).
  double Real() { return (engine_() >> 11) * (1.0 / 9007199254740992.0); }

  template <typename T>
  void Shuffle(std::vector<T> &items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Uniform(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace amrprobe

#endif  // AMRPROBE_UTIL_RANDOM_H_
