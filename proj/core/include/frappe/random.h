//
// Copyright 2026 The FRAPPE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef FRAPPE_RANDOM_H_
#define FRAPPE_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace frappe {

// Explicitly seeded random source with deterministic stream splitting.
//
// Derive(a, b, ...) returns an independent child stream whose seed is a
// SplitMix64 hash chain of the parent seed and the tags. The harness uses
// (task, replication), the solvers use (stage, outer index, inner index),
// so a draw never depends on how many draws other streams made or on which
// worker thread ran the fit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  Rng Derive(std::initializer_list<std::uint64_t> tags) const;

  std::mt19937_64& engine() { return engine_; }
  double Normal() { return normal_(engine_); }
  // Uniform on [0, 1).
  double Uniform() { return std::generate_canonical<double, 64>(engine_); }
  // Uniform integer on [0, n).
  std::uint64_t Below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace frappe

#endif  // FRAPPE_RANDOM_H_
