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

#ifndef HOMTYPE_MAXIMAL_H_
#define HOMTYPE_MAXIMAL_H_

#include <vector>

#include "homtype/seqnorm.h"
#include "homtype/space.h"

namespace homtype {

// Centered maximal function over every ball that a finite space can
// distinguish: the strict balls at each distinct distance from the center,
// plus the whole space.
std::vector<double> HlMaximal(const FiniteHomSpace& space,
                              const std::vector<double>& f, int threads = 1);

// HlMaximal evaluated only at the given points.
std::vector<double> HlMaximalAt(const FiniteHomSpace& space,
                                const std::vector<double>& f,
                                const std::vector<int>& points,
                                int threads = 1);

struct KernelParams {
  double epsilon = 0.5;
  double gamma = 2.;
  double eta = 1.;
  double r_exp = 0.5;
  double omega = 1.;
};

// r with 1/r - 1 = 1/p.
double DefaultKernelExponent(double p);

// Throws kExitUsage unless 0 < epsilon < eta <= 1, 0 < r_exp <= 1 and
// gamma r - omega (1 - r) > 0.
void ValidateKernelParams(const KernelParams& params);

// Bound on |<psi_(k,alpha), psi_(j,tau)>| with unit constant. Both indices
// refer to the index set; V(x, y) is the symmetrized ball mass
// mass(B(x, d)) + mass(B(y, d)).
double AlmostOrthKernel(const IndexSet& index, const FiniteHomSpace& space,
                        int k, int alpha, int j, int tau,
                        const KernelParams& params);

struct KernelBoundResult {
  double lhs = 0.;
  double rhs = 0.;
  // lhs / rhs; 0 when both vanish.
  double ratio = 0.;
  Verdict verdict = Verdict::kPass;
};

// Both sides of the maximal bound for level-k coefficients seen from the
// point x at level j. The verdict compares lhs with constant * rhs.
KernelBoundResult KernelMaximalBoundCheck(const IndexSet& index,
                                          const FiniteHomSpace& space,
                                          const CoefSequence& seq, int k,
                                          int j, int x,
                                          const KernelParams& params,
                                          double constant);

struct KernelCalibration {
  double constant = 0.;
  int trials = 0;
  int witness_trial = -1;
};

struct KernelTrial {
  int k = 0;
  int j = 0;
  int x = 0;
  CoefSequence seq;
};

// Random sparse level-k sequences with uniform values in [-1, 1] and random
// (k, j, x).
std::vector<KernelTrial> RandomKernelTrials(const IndexSet& index, int count,
                                            uint64_t seed);

// Largest ratio over RandomKernelTrials(index, trials, seed). Trials drawn
// from another seed are fresh trials for the frozen constant.
KernelCalibration CalibrateKernelConstant(const IndexSet& index,
                                          const FiniteHomSpace& space,
                                          const KernelParams& params,
                                          int trials, uint64_t seed,
                                          int threads = 1);

struct FsResult {
  double lhs = 0.;
  double rhs = 0.;
  double ratio = 1.;
};

// ||(sum_k (M f_k)^q)^(1/q)||_p over ||(sum_k |f_k|^q)^(1/q)||_p.
// Requires r_exp < min(p, q).
FsResult FsVectorMaximalCheck(const FiniteHomSpace& space,
                              const std::vector<std::vector<double>>& family,
                              double p, double q, double r_exp,
                              int threads = 1);

}  // namespace homtype

#endif  // HOMTYPE_MAXIMAL_H_
