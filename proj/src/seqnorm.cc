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

#include "homtype/seqnorm.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace homtype {

namespace {

bool IsInf(double v) { return std::isinf(v) && v > 0.; }

void CheckExponents(const NormParams& params) {
  if (!(params.p > 0.) || !(params.q > 0.)) {
    throw Error(kExitUsage, "norm exponents must satisfy p, q > 0");
  }
  if (params.family == Family::kTriebelLizorkin && IsInf(params.p)) {
    throw Error(kExitUsage, "Triebel-Lizorkin norms need p < infinity");
  }
}

bool InVariant(int k, const NormParams& params) {
  if (params.variant == Variant::kHomogeneous) return true;
  return params.include_k0 ? k >= 0 : k >= 1;
}

// (sum a^e)^(1/e), or max a when e is infinite.
double LpAggregate(const std::vector<double>& a, double e) {
  if (a.empty()) return 0.;
  if (IsInf(e)) return *std::max_element(a.begin(), a.end());
  std::vector<double> powers;
  powers.reserve(a.size());
  for (double v : a) powers.push_back(std::pow(v, e));
  return std::pow(SortedSum(std::move(powers)), 1. / e);
}

// Square function g(x) at every point of the backing space.
std::vector<double> SquareFunction(const IndexSet& index,
                                   const CoefSequence& seq,
                                   const NormParams& params) {
  std::vector<std::vector<double>> terms(index.num_points());
  for (const Coefficient& c : seq) {
    if (c.value == 0. || !InVariant(c.k, params)) continue;
    const IndexCube& cube = index.Cube(c.k, c.alpha);
    const double t = std::pow(index.delta, -c.k * params.s) *
                     std::fabs(c.value) / std::sqrt(cube.mass);
    for (int x : cube.members) terms[x].push_back(t);
  }
  std::vector<double> g(index.num_points(), 0.);
  for (int x = 0; x < index.num_points(); ++x) g[x] = LpAggregate(terms[x], params.q);
  return g;
}

}  // namespace

std::string FamilyName(Family family) {
  return family == Family::kBesov ? "besov" : "triebel_lizorkin";
}

std::string VariantName(Variant variant) {
  return variant == Variant::kHomogeneous ? "homogeneous" : "inhomogeneous";
}

Family ParseFamily(const std::string& name) {
  if (name == "besov") return Family::kBesov;
  if (name == "triebel_lizorkin" || name == "tl") return Family::kTriebelLizorkin;
  throw Error(kExitUsage, "unknown norm family: " + name);
}

Variant ParseVariant(const std::string& name) {
  if (name == "homogeneous") return Variant::kHomogeneous;
  if (name == "inhomogeneous") return Variant::kInhomogeneous;
  throw Error(kExitUsage, "unknown variant: " + name);
}

std::string IndexModeName(IndexMode mode) {
  switch (mode) {
    case IndexMode::kNewCenters:
      return "new_centers";
    case IndexMode::kAllCenters:
      return "all_centers";
    case IndexMode::kStandardDyadic:
      return "standard_dyadic";
  }
  return "new_centers";
}

const IndexLevel* IndexSet::Find(int k) const {
  for (const IndexLevel& level : levels) {
    if (level.k == k) return &level;
  }
  return nullptr;
}

const IndexCube& IndexSet::Cube(int k, int alpha) const {
  const IndexLevel* level = Find(k);
  if (level == nullptr) {
    throw Error(kExitUsage, "index outside backing system: level " + std::to_string(k));
  }
  if (alpha < 0 || alpha >= static_cast<int>(level->cubes.size())) {
    throw Error(kExitUsage, "index outside backing system: (" + std::to_string(k) +
                                ", " + std::to_string(alpha) + ")");
  }
  return level->cubes[alpha];
}

std::vector<int> IndexSet::VariantLevels(const NormParams& params) const {
  std::vector<int> ks;
  for (const IndexLevel& level : levels) {
    if (InVariant(level.k, params) && !level.cubes.empty()) ks.push_back(level.k);
  }
  return ks;
}

IndexSet MakeIndexSet(const CubeSystem& cubes, const FiniteHomSpace& space,
                      IndexMode mode) {
  if (mode == IndexMode::kStandardDyadic) {
    throw Error(kExitUsage, "standard dyadic index sets come from a lattice");
  }
  IndexSet index;
  index.delta = cubes.constants.delta;
  index.mode = mode;
  index.weights = space.weights();
  for (int li = 0; li < cubes.num_levels(); ++li) {
    IndexLevel out;
    const CubeLevel* source = nullptr;
    if (mode == IndexMode::kAllCenters) {
      source = &cubes.levels[li];
      out.k = source->k;
    } else {
      if (li + 1 >= cubes.num_levels()) break;
      source = &cubes.levels[li + 1];
      out.k = cubes.levels[li].k;
    }
    for (int a = 0; a < static_cast<int>(source->centers.size()); ++a) {
      if (mode == IndexMode::kNewCenters && source->inherited[a]) continue;
      IndexCube cube;
      cube.center = source->centers[a];
      cube.cube_level = source->k;
      cube.cube = a;
      cube.mass = source->mass[a];
      cube.members = source->members[a];
      out.cubes.push_back(std::move(cube));
    }
    index.levels.push_back(std::move(out));
  }
  return index;
}

IndexSet MakeStandardDyadicIndexSet(const FiniteHomSpace& space, int j_min,
                                    int j_max) {
  if (!space.has_coords()) throw Error(kExitUsage, "standard dyadic grid needs coordinates");
  if (j_max < j_min) throw Error(kExitUsage, "empty dyadic level range");
  IndexSet index;
  index.delta = 0.5;
  index.mode = IndexMode::kStandardDyadic;
  index.weights = space.weights();
  const int dim = space.dim();
  for (int j = j_min; j <= j_max; ++j) {
    const double scale = std::ldexp(1., j);
    std::map<std::vector<long long>, std::vector<int>> groups;
    for (int x = 0; x < space.size(); ++x) {
      std::vector<long long> corner(dim);
      for (int c = 0; c < dim; ++c) {
        corner[c] = static_cast<long long>(std::floor(scale * space.point(x)[c]));
      }
      groups[corner].push_back(x);
    }
    IndexLevel level;
    level.k = j;
    for (auto& [corner, members] : groups) {
      IndexCube cube;
      cube.center = members.front();
      cube.cube_level = j;
      cube.cube = static_cast<int>(level.cubes.size());
      for (int x : members) cube.mass += space.weight(x);
      cube.members = members;
      cube.corner = corner;
      level.cubes.push_back(std::move(cube));
    }
    index.levels.push_back(std::move(level));
  }
  return index;
}

void ValidateSequence(const IndexSet& index, const CoefSequence& seq) {
  std::set<std::pair<int, int>> seen;
  for (const Coefficient& c : seq) {
    index.Cube(c.k, c.alpha);
    if (!std::isfinite(c.value)) throw Error(kExitUsage, "non-finite coefficient");
    if (!seen.insert({c.k, c.alpha}).second) {
      throw Error(kExitUsage, "duplicate index (" + std::to_string(c.k) + ", " +
                                  std::to_string(c.alpha) + ")");
    }
  }
}

double BesovNorm(const IndexSet& index, const CoefSequence& seq,
                 const NormParams& params) {
  CheckExponents(params);
  ValidateSequence(index, seq);
  std::map<int, std::vector<double>> by_level;
  for (const Coefficient& c : seq) {
    if (c.value == 0. || !InVariant(c.k, params)) continue;
    const IndexCube& cube = index.Cube(c.k, c.alpha);
    const double weight = IsInf(params.p) ? std::pow(cube.mass, -0.5)
                                          : std::pow(cube.mass, 1. / params.p - 0.5);
    by_level[c.k].push_back(weight * std::fabs(c.value));
  }
  std::vector<double> level_values;
  for (const auto& [k, terms] : by_level) {
    level_values.push_back(std::pow(index.delta, -k * params.s) *
                           LpAggregate(terms, params.p));
  }
  return LpAggregate(level_values, params.q);
}

double TriebelLizorkinNorm(const IndexSet& index, const CoefSequence& seq,
                           const NormParams& params) {
  CheckExponents(params);
  ValidateSequence(index, seq);
  const std::vector<double> g = SquareFunction(index, seq, params);
  std::vector<double> integrand;
  for (int x = 0; x < index.num_points(); ++x) {
    if (g[x] > 0.) integrand.push_back(index.weights[x] * std::pow(g[x], params.p));
  }
  if (integrand.empty()) return 0.;
  return std::pow(SortedSum(std::move(integrand)), 1. / params.p);
}

double LayerCakeTlNorm(const IndexSet& index, const CoefSequence& seq,
                       const NormParams& params) {
  CheckExponents(params);
  ValidateSequence(index, seq);
  const std::vector<double> g = SquareFunction(index, seq, params);
  // Level sets {g >= v} for the distinct positive values v, ascending.
  std::map<double, double> mass_at;
  for (int x = 0; x < index.num_points(); ++x) {
    if (g[x] > 0.) mass_at[g[x]] += index.weights[x];
  }
  if (mass_at.empty()) return 0.;
  std::vector<double> values;
  std::vector<double> tail_mass;
  for (const auto& [v, m] : mass_at) {
    values.push_back(v);
    tail_mass.push_back(m);
  }
  for (int i = static_cast<int>(tail_mass.size()) - 2; i >= 0; --i) {
    tail_mass[i] += tail_mass[i + 1];
  }
  // p * integral of t^(p-1) mu{g > t} dt over each interval between
  // consecutive values, where the distribution function is constant.
  std::vector<double> slabs;
  double previous = 0.;
  for (size_t i = 0; i < values.size(); ++i) {
    const double vp = std::pow(values[i], params.p);
    slabs.push_back((vp - previous) * tail_mass[i]);
    previous = vp;
  }
  return std::pow(SortedSum(std::move(slabs)), 1. / params.p);
}

double SequenceNorm(const IndexSet& index, const CoefSequence& seq,
                    const NormParams& params) {
  return params.family == Family::kBesov ? BesovNorm(index, seq, params)
                                         : TriebelLizorkinNorm(index, seq, params);
}

double WeightedRnNorm(const IndexSet& dyadic, const CoefSequence& seq,
                      const NormParams& params) {
  if (dyadic.mode != IndexMode::kStandardDyadic || dyadic.delta != 0.5) {
    throw Error(kExitUsage, "weighted R^n norms need a standard dyadic grid");
  }
  return SequenceNorm(dyadic, seq, params);
}

double DeltaClosedForm(double delta, int k, double s, double p, double mass) {
  const double exponent = IsInf(p) ? -0.5 : 1. / p - 0.5;
  return std::pow(delta, -k * s) * std::pow(mass, exponent);
}

}  // namespace homtype
