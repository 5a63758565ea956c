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

#ifndef HOMTYPE_SEQNORM_H_
#define HOMTYPE_SEQNORM_H_

#include <string>
#include <vector>

#include "homtype/dyadic.h"
#include "homtype/space.h"

namespace homtype {

enum class Family { kBesov, kTriebelLizorkin };
enum class Variant { kHomogeneous, kInhomogeneous };

std::string FamilyName(Family family);
std::string VariantName(Variant variant);
Family ParseFamily(const std::string& name);
Variant ParseVariant(const std::string& name);

// p or q equal to infinity select the supremum forms.
struct NormParams {
  Family family = Family::kBesov;
  double s = 0.;
  double p = 2.;
  double q = 2.;
  Variant variant = Variant::kHomogeneous;
  // Inhomogeneous sums start at k = 0 when set, at k = 1 otherwise.
  bool include_k0 = true;
};

struct Coefficient {
  int k = 0;
  int alpha = 0;
  double value = 0.;
};

using CoefSequence = std::vector<Coefficient>;

struct IndexCube {
  int center = -1;
  int cube_level = 0;  // level of the underlying cube
  int cube = -1;       // index of the underlying cube at that level
  double mass = 0.;
  std::vector<int> members;
  std::vector<long long> corner;  // standard dyadic grid only
};

struct IndexLevel {
  int k = 0;
  std::vector<IndexCube> cubes;
};

enum class IndexMode {
  // Indices at level k are the centers new at level k + 1; the cube of
  // index (k, alpha) is the level-(k+1) cube around that center.
  kNewCenters,
  // Indices at level k are all level-k cubes.
  kAllCenters,
  // Standard dyadic cubes of a lattice in R^n, delta = 1/2.
  kStandardDyadic,
};

std::string IndexModeName(IndexMode mode);

struct IndexSet {
  double delta = 0.5;
  IndexMode mode = IndexMode::kNewCenters;
  std::vector<IndexLevel> levels;  // ascending k
  std::vector<double> weights;     // point masses of the backing space

  const IndexLevel* Find(int k) const;
  const IndexCube& Cube(int k, int alpha) const;
  int num_points() const { return static_cast<int>(weights.size()); }
  // Levels of the index set taking part in the given variant.
  std::vector<int> VariantLevels(const NormParams& params) const;
};

IndexSet MakeIndexSet(const CubeSystem& cubes, const FiniteHomSpace& space,
                      IndexMode mode = IndexMode::kNewCenters);

// Cubes {x : 2^j x - m in [0,1)^n} holding at least one lattice point,
// for j in [j_min, j_max]. Requires a space built from coordinates.
IndexSet MakeStandardDyadicIndexSet(const FiniteHomSpace& space, int j_min,
                                    int j_max);

// Throws on unknown levels, out-of-range indices, duplicates, non-finite
// values.
void ValidateSequence(const IndexSet& index, const CoefSequence& seq);

double BesovNorm(const IndexSet& index, const CoefSequence& seq,
                 const NormParams& params);
double TriebelLizorkinNorm(const IndexSet& index, const CoefSequence& seq,
                           const NormParams& params);
// Same norm through the distribution function, summed exactly over the
// level sets of the piecewise constant square function.
double LayerCakeTlNorm(const IndexSet& index, const CoefSequence& seq,
                       const NormParams& params);
// Dispatches on params.family.
double SequenceNorm(const IndexSet& index, const CoefSequence& seq,
                    const NormParams& params);

// Norm over a standard dyadic grid whose cube masses are weighted masses.
double WeightedRnNorm(const IndexSet& dyadic, const CoefSequence& seq,
                      const NormParams& params);

// delta^(-k s) * mass^(1/p - 1/2): the norm of a single unit coefficient.
double DeltaClosedForm(double delta, int k, double s, double p, double mass);

}  // namespace homtype

#endif  // HOMTYPE_SEQNORM_H_
