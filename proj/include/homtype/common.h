/*
 * Copyright 2026 The Homtype Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HOMTYPE_COMMON_H_
#define HOMTYPE_COMMON_H_

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace homtype {

constexpr uint64_t kDefaultSeed = 0xD1AD1C;

// Process exit codes shared by the library errors and the CLI.
enum ExitCode {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInadmissible = 3,
  kExitDiscrepancy = 4,
  kExitInternal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}

  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

enum class Verdict { kPass, kFail, kInconclusive };

std::string VerdictName(Verdict verdict);

// Portable generator: the engine output is fixed by the standard, and the
// helpers below avoid the implementation-defined distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform in [0, n).
  int Index(int n) { return static_cast<int>(engine_() % static_cast<uint64_t>(n)); }

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates permutation of 0..n-1 keyed by the seed.
std::vector<int> SeededPermutation(int n, uint64_t seed);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
// handled exactly once, so writes to per-index slots stay deterministic.
void ParallelFor(int n, int threads, const std::function<void(int)>& fn);

// Sum of the values accumulated in ascending order of magnitude.
double SortedSum(std::vector<double> values);

// Ordinary least squares slope of y against x. Requires x.size() >= 2.
double OlsSlope(const std::vector<double>& x, const std::vector<double>& y);

double Median(std::vector<double> values);

}  // namespace homtype

#endif  // HOMTYPE_COMMON_H_
