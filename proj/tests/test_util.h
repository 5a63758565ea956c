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

#ifndef HOMTYPE_TESTS_TEST_UTIL_H_
#define HOMTYPE_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <vector>

#include "homtype/common.h"
#include "homtype/dyadic.h"
#include "homtype/seqnorm.h"
#include "homtype/space.h"

namespace homtype::testing {

// n points i * spacing on the line, each of mass `weight`.
inline FiniteHomSpace Line(int n, double spacing = 1., double weight = 1.) {
  std::vector<double> coords(n);
  for (int i = 0; i < n; ++i) coords[i] = i * spacing;
  return FiniteHomSpace::FromPoints(1, coords, std::vector<double>(n, weight));
}

// side x side lattice with unit spacing and unit masses.
inline FiniteHomSpace Square(int side) {
  std::vector<double> coords;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      coords.push_back(i);
      coords.push_back(j);
    }
  }
  return FiniteHomSpace::FromPoints(
      2, coords, std::vector<double>(static_cast<size_t>(side) * side, 1.));
}

inline CubeSystem Cubes(const FiniteHomSpace& space,
                        const NetConstants& constants,
                        uint64_t seed = kDefaultSeed) {
  const NetSystem nets = BuildNets(space, constants,
                                   DefaultLevelWindow(space, constants), seed);
  return BuildCubes(nets, space);
}

inline NetConstants Constants(double delta, double c0 = 1., double C0 = 2.) {
  NetConstants constants;
  constants.delta = delta;
  constants.c0 = c0;
  constants.C0 = C0;
  return constants;
}

// Each index of the set enters with probability `density` and a value
// uniform in [-1, 1]. Never empty.
inline CoefSequence RandomSequence(const IndexSet& index, Rng& rng,
                                   double density = 0.3) {
  CoefSequence seq;
  for (const IndexLevel& level : index.levels) {
    for (int a = 0; a < static_cast<int>(level.cubes.size()); ++a) {
      if (rng.Uniform() < density) {
        seq.push_back({level.k, a, rng.Uniform(-1., 1.)});
      }
    }
  }
  if (seq.empty()) {
    const IndexLevel& level = index.levels[rng.Index(
        static_cast<int>(index.levels.size()))];
    seq.push_back({level.k, rng.Index(static_cast<int>(level.cubes.size())),
                   0.5});
  }
  return seq;
}

inline bool Near(double a, double b, double rel = 1e-12) {
  return std::fabs(a - b) <= rel * std::max({1., std::fabs(a), std::fabs(b)});
}

}  // namespace homtype::testing

#endif  // HOMTYPE_TESTS_TEST_UTIL_H_
