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

#ifndef HOMTYPE_GALLERY_H_
#define HOMTYPE_GALLERY_H_

#include <string>

#include "homtype/space.h"

namespace homtype {
namespace gallery {

enum class Kind { kEuclideanGrid, kWeightedGrid, kCantor, kSnowflake, kFile };

constexpr int kMaxPoints = 16384;
constexpr int kMaxCantorDepth = 14;

struct Spec {
  Kind kind = Kind::kEuclideanGrid;
  int n = 64;       // points per axis
  int dim = 1;
  int depth = 6;    // cantor
  double alpha = 0.;
  double beta = 0.;
  // Half-width of the weighted grid box [-extent, extent]^dim.
  double extent = 1.;
  double exponent = 1.;  // snowflake
  std::string path;
};

Kind ParseKind(const std::string& name);
std::string KindName(Kind kind);

FiniteHomSpace Build(const Spec& spec);

// Power weight |x|^alpha inside the unit ball and |x|^beta outside.
// Returns 0 at the origin when the weight is undefined or vanishes.
double PowerWeight(double norm, double alpha, double beta);

// Parses the space-file JSON and validates the result.
FiniteHomSpace LoadSpace(const std::string& path);
FiniteHomSpace ParseSpace(const std::string& text);

}  // namespace gallery
}  // namespace homtype

#endif  // HOMTYPE_GALLERY_H_
