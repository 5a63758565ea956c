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

#ifndef HOMTYPE_EMBED_H_
#define HOMTYPE_EMBED_H_

#include <string>
#include <vector>

#include "homtype/dyadic.h"
#include "homtype/seqnorm.h"
#include "homtype/space.h"

namespace homtype {

struct EmbedParams {
  NormParams source;  // (s2, p2, q2)
  NormParams target;  // (s1, p1, q1)
  double omega = 1.;
  // Wavelet regularity bounding |s - omega/p|; recorded, never enforced.
  double eta = 1.;
};

// Throws kExitUsage naming the violated constraint. Returns warnings for
// smoothness outside (-eta, eta).
std::vector<std::string> ValidateEmbedParams(const EmbedParams& params);

// 1/p1 - 1/p2, which is <= 0 on valid parameters.
double EmbedExponent(const EmbedParams& params);

// The embedding constant c_min^(1/p1 - 1/p2) that a uniform cube lower
// bound c_min yields for Besov pairs.
double ProofConstant(double c_min, const EmbedParams& params);

// Inverse of the delta-sequence identity ratio = c^(1/p1 - 1/p2): the cube
// constant implied by an embedding constant.
double ImpliedConstant(double ratio, const EmbedParams& params);

struct CubeConstant {
  int k = 0;
  int alpha = 0;
  double mass = 0.;
  double constant = 0.;  // mass / delta^(k omega)
  double target_norm = 0.;
  double source_norm = 0.;
  double ratio = 0.;
};

struct ChainWitness {
  int point = -1;
  int k_coarse = 0;
  int k_fine = 0;
  double fitted_exponent = 0.;
  double decay = 1.;
  std::string direction;  // small-r | large-r
};

struct TrendOptions {
  double exponent_tolerance = 0.2;
  double decay_ratio = 0.1;
};

struct DeltaNecessityReport {
  bool vacuous = false;
  Verdict verdict = Verdict::kPass;
  bool insufficient_data = false;
  double c_min = 0.;
  int c_min_k = 0;
  int c_min_alpha = -1;
  // Levels of the cube system used by the trend.
  std::vector<int> resolved_levels;
  // Smallest implied constant per index level.
  std::vector<int> level_k;
  std::vector<double> level_min_constant;
  // Smallest decay ratio among failing chains; 1 when none fail.
  double min_decay_ratio = 1.;
  std::vector<CubeConstant> constants;
  std::vector<ChainWitness> witnesses;  // strongest first, at most 16
};

DeltaNecessityReport DeltaNecessityTest(const CubeSystem& cubes,
                                        const FiniteHomSpace& space,
                                        const IndexSet& index,
                                        const EmbedParams& params,
                                        const TrendOptions& options = {});

enum class Generator { kDelta, kSingleLevel, kMultiLevel, kAdversarial };
std::string GeneratorName(Generator generator);

struct GeneratedSequence {
  Generator generator = Generator::kDelta;
  CoefSequence seq;
};

// Quarter of the batch per generator; the remainder goes to multi-level.
std::vector<GeneratedSequence> GenerateBatch(const IndexSet& index,
                                             const NormParams& scope,
                                             int batch_size, uint64_t seed);

struct EmbedReport {
  double sup_ratio = 0.;
  int witness_id = -1;
  std::string witness_generator;
  int tested = 0;
  int neutral = 0;
  bool proof_checked = false;  // Besov pairs only
  double proof_constant = 0.;
  int proof_violations = 0;
  std::vector<double> ratios;  // per sequence; NaN for neutral ones
  std::vector<std::string> generators;
};

EmbedReport EmbeddingRatioScan(const IndexSet& index,
                               const EmbedParams& params,
                               const std::vector<GeneratedSequence>& batch,
                               double c_min, int threads = 1);

struct CharacterizeOptions {
  int batch_size = 256;
  uint64_t seed = kDefaultSeed;
  int threads = 1;
  TrendOptions trend;
};

struct CharacterizeReport {
  bool atomic = false;
  std::string message;
  LowerBoundReport lower_bound;
  DeltaNecessityReport necessity;
  EmbedReport scan;
  bool consistent = true;
  std::vector<std::string> discrepancies;
  std::vector<std::string> warnings;
  // PASS, FAIL, INCONCLUSIVE, DISCREPANCY or NONE (atomic).
  std::string verdict;
};

CharacterizeReport Characterize(const FiniteHomSpace& space,
                                const CubeSystem& cubes,
                                const EmbedParams& params,
                                const CharacterizeOptions& options = {});

struct ApWeightReport {
  double constant = 1.;
  int k = 0;
  int alpha = -1;
  std::vector<long long> corner;
  int cubes_tested = 0;
};

// sup over the dyadic cubes of avg(w) avg(w^(-1/(p-1)))^(p-1), with
// averages over the lattice points of each cube.
ApWeightReport ApWeightCheck(const IndexSet& dyadic,
                             const std::vector<double>& density, double p);

}  // namespace homtype

#endif  // HOMTYPE_EMBED_H_
