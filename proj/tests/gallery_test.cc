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

#include <cmath>
#include <string>

#include "doctest.h"
#include "homtype/gallery.h"
#include "homtype/space.h"

namespace homtype {
namespace {

std::string Data(const std::string& name) {
  return std::string(HOMTYPE_TESTDATA) + "/" + name;
}

gallery::Spec Grid(int n, int dim = 1) {
  gallery::Spec spec;
  spec.n = n;
  spec.dim = dim;
  return spec;
}

}  // namespace

TEST_SUITE("gallery") {

TEST_CASE("every gallery kind builds a valid space") {
  gallery::Spec weighted;
  weighted.kind = gallery::Kind::kWeightedGrid;
  weighted.n = 32;
  weighted.alpha = 0.5;
  weighted.beta = -0.5;
  weighted.extent = 4.;
  gallery::Spec cantor;
  cantor.kind = gallery::Kind::kCantor;
  cantor.depth = 5;
  gallery::Spec snow = Grid(20, 2);
  snow.kind = gallery::Kind::kSnowflake;
  snow.exponent = 0.5;
  for (const gallery::Spec& spec : {Grid(64), Grid(8, 3), weighted, cantor, snow}) {
    const FiniteHomSpace space = gallery::Build(spec);
    CHECK(space.size() > 0);
    CHECK(ValidateQuasiMetric(space).ok);
  }
  CHECK(gallery::Build(cantor).size() == 32);
  CHECK(gallery::ParseKind(gallery::KindName(gallery::Kind::kSnowflake)) ==
        gallery::Kind::kSnowflake);
  CHECK_THROWS_AS(gallery::ParseKind("torus"), Error);
}

TEST_CASE("uniform grids carry unit total mass") {
  CHECK(gallery::Build(Grid(64)).total_mass() == 1.);
  CHECK(gallery::Build(Grid(32, 2)).total_mass() == 1.);
  for (int n : {1, 3, 7, 100}) {
    CHECK(gallery::Build(Grid(n)).total_mass() == doctest::Approx(1.).epsilon(1e-14));
  }
  const FiniteHomSpace one = gallery::Build(Grid(1));
  CHECK(one.size() == 1);
  CHECK(one.diameter() == 0.);
}

TEST_CASE("snowflake with exponent one is the plain grid") {
  gallery::Spec snow = Grid(12, 2);
  snow.kind = gallery::Kind::kSnowflake;
  snow.exponent = 1.;
  const FiniteHomSpace a = gallery::Build(snow);
  const FiniteHomSpace b = gallery::Build(Grid(12, 2));
  for (int i = 0; i < a.size(); i += 5) {
    for (int j = 0; j < a.size(); j += 3) CHECK(a.dist(i, j) == b.dist(i, j));
  }
  snow.exponent = 0.5;
  const FiniteHomSpace half = gallery::Build(snow);
  CHECK(half.dist(0, 1) == doctest::Approx(std::sqrt(b.dist(0, 1))));
  snow.exponent = 1.5;
  CHECK_THROWS_AS(gallery::Build(snow), Error);
}

TEST_CASE("limits") {
  gallery::Spec deep;
  deep.kind = gallery::Kind::kCantor;
  deep.depth = gallery::kMaxCantorDepth + 1;
  CHECK_THROWS_WITH(gallery::Build(deep), "cantor depth limit exceeded");
  CHECK_THROWS_WITH(gallery::Build(Grid(200, 2)), "size limit exceeded");
  CHECK_THROWS_AS(gallery::Build(Grid(0)), Error);
}

TEST_CASE("power weights and the weighted grid") {
  CHECK(gallery::PowerWeight(0.5, 2., 0.) == 0.25);
  CHECK(gallery::PowerWeight(4., 2., -0.5) == 0.5);
  CHECK(gallery::PowerWeight(1., 3., -1.) == 1.);
  CHECK(gallery::PowerWeight(0., 0., 1.) == 1.);
  CHECK(gallery::PowerWeight(0., 2., 0.) == 0.);

  gallery::Spec spec;
  spec.kind = gallery::Kind::kWeightedGrid;
  spec.n = 5;
  spec.alpha = 2.;
  // Cell centres -0.8, -0.4, 0, 0.4, 0.8; the origin has zero weight.
  const FiniteHomSpace odd = gallery::Build(spec);
  CHECK(odd.size() == 4);
  CHECK(odd.weight(0) == doctest::Approx(0.64 * 0.4));
  spec.alpha = 0.;
  CHECK(gallery::Build(spec).size() == 5);
  CHECK(gallery::Build(spec).total_mass() == doctest::Approx(2.));
  spec.alpha = -1.;
  CHECK_THROWS_AS(gallery::Build(spec), Error);
  spec.alpha = 0.;
  spec.extent = 0.;
  CHECK_THROWS_AS(gallery::Build(spec), Error);
}

TEST_CASE("space files") {
  const FiniteHomSpace two = gallery::LoadSpace(Data("two_points.json"));
  CHECK(two.size() == 2);
  CHECK(two.dist(0, 1) == 1.);
  CHECK(two.metric_name() == "euclidean");

  const FiniteHomSpace tri = gallery::LoadSpace(Data("triangle.json"));
  CHECK(tri.metric_name() == "explicit");
  CHECK(tri.declared_a0.value() == 1.5);
  CHECK(tri.declared_omega.value() == 1.);
  CHECK(tri.total_mass() == 4.);

  CHECK_THROWS_WITH(gallery::LoadSpace(Data("asymmetric.json")),
                    doctest::Contains("symmetry violated at (0,1)"));
  CHECK_THROWS_WITH(gallery::LoadSpace(Data("negative_weight.json")),
                    doctest::Contains("invalid measure"));
  CHECK_THROWS_WITH(gallery::LoadSpace(Data("missing.json")),
                    doctest::Contains("file not found"));
  try {
    gallery::LoadSpace(Data("missing.json"));
  } catch (const Error& e) {
    CHECK(e.exit_code() == kExitUsage);
  }
}

TEST_CASE("space file schema errors") {
  CHECK_THROWS_WITH(gallery::ParseSpace("{"), doctest::Contains("parse error"));
  CHECK_THROWS_WITH(gallery::ParseSpace(R"({"points": [[0]]})"),
                    doctest::Contains("weights"));
  CHECK_THROWS_WITH(gallery::ParseSpace(R"({"points": [[0]], "dist": [[0]], "weights": [1]})"),
                    doctest::Contains("exactly one"));
  CHECK_THROWS_WITH(gallery::ParseSpace(R"({"points": [[0], [1, 2]], "weights": [1, 1]})"),
                    doctest::Contains("dimension mismatch"));
  CHECK_THROWS_WITH(gallery::ParseSpace(R"({"points": [], "weights": []})"),
                    doctest::Contains("empty space"));
  CHECK_THROWS_WITH(
      gallery::ParseSpace(R"({"points": [[0], [1]], "weights": [1, 1], "declared_A0": 0.5})"),
      doctest::Contains("declared_A0"));
  CHECK_THROWS_WITH(
      gallery::ParseSpace(
          R"({"dist": [[0, 1, 3], [1, 0, 1], [3, 1, 0]], "weights": [1, 1, 1], "declared_A0": 1})"),
      doctest::Contains("triangle violated"));
  const FiniteHomSpace snow = gallery::ParseSpace(
      R"({"metric": "snowflake:0.5", "points": [[0], [4]], "weights": [1, 1]})");
  CHECK(snow.dist(0, 1) == 2.);
}

}  // TEST_SUITE
}  // namespace homtype
