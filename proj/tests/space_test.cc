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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "homtype/gallery.h"
#include "homtype/space.h"
#include "test_util.h"

namespace homtype {
namespace {

using testing::Line;
using testing::Near;
using testing::Square;

FiniteHomSpace ThreePoints(double d02) {
  return FiniteHomSpace::FromTable(3, {0., 1., d02, 1., 0., 1., d02, 1., 0.},
                                   {1., 1., 1.});
}

FiniteHomSpace RandomSpace(int n, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> coords(2 * n);
  std::vector<double> weights(n);
  for (double& c : coords) c = rng.Uniform(0., 10.);
  for (double& w : weights) w = rng.Uniform(0.1, 2.);
  return FiniteHomSpace::FromPoints(2, coords, weights, 1.5);
}

double BruteA0(const FiniteHomSpace& space) {
  double best = 0.;
  const int n = space.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (x == y || y == z || x == z) continue;
        best = std::max(best, space.dist(x, y) /
                                  (space.dist(x, z) + space.dist(z, y)));
      }
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("space") {

TEST_CASE("ball profile agrees with the direct strict ball") {
  const FiniteHomSpace space = RandomSpace(60, 3);
  Rng rng(5);
  for (int x = 0; x < space.size(); x += 7) {
    const BallProfile profile(space, x);
    for (int t = 0; t < 30; ++t) {
      const double r = rng.Uniform(0., 40.);
      CHECK(Near(profile.Mass(r), BallMass(space, x, r)));
      CHECK(profile.Count(r) ==
            static_cast<int>(BallMembers(space, x, r).size()));
    }
    // Strictness: the ball of radius dist(x, y) leaves y out.
    const int y = (x + 1) % space.size();
    const auto members = BallMembers(space, x, space.dist(x, y));
    CHECK(std::find(members.begin(), members.end(), y) == members.end());
  }
}

TEST_CASE("ball mass is monotone in the radius") {
  const FiniteHomSpace space = RandomSpace(40, 9);
  const BallProfile profile(space, 0);
  double last = 0.;
  for (double r = 0.; r < 60.; r += 0.37) {
    const double m = profile.Mass(r);
    CHECK(m >= last);
    last = m;
  }
  CHECK(Near(last, space.total_mass()));
}

TEST_CASE("quasi-metric validation") {
  const FiniteHomSpace line = FiniteHomSpace::FromPoints(1, {0., 1., 2.},
                                                         {1., 1., 1.});
  CHECK(ValidateQuasiMetric(line).ok);

  FiniteHomSpace asym = FiniteHomSpace::FromTable(
      2, {0., 1., 2., 0.}, {1., 1.});
  const QuasiMetricVerdict v = ValidateQuasiMetric(asym);
  REQUIRE_FALSE(v.ok);
  CHECK(v.violations.front().kind == "symmetry");
  CHECK(v.violations.front().ids == std::vector<int>{0, 1});

  FiniteHomSpace stretched = ThreePoints(3.);
  stretched.declared_a0 = 1.;
  const QuasiMetricVerdict tri = ValidateQuasiMetric(stretched);
  REQUIRE_FALSE(tri.ok);
  CHECK(tri.violations.front().kind == "triangle");
  CHECK(tri.violations.front().ids == std::vector<int>{0, 2, 1});
  stretched.declared_a0 = 1.5;
  CHECK(ValidateQuasiMetric(stretched).ok);

  CHECK_THROWS_WITH(ValidateQuasiMetric(FiniteHomSpace()), "empty space");
  const FiniteHomSpace bad = FiniteHomSpace::FromPoints(1, {0., 1.}, {1., -1.});
  CHECK_THROWS_WITH(ValidateQuasiMetric(bad), doctest::Contains("invalid measure"));
}

TEST_CASE("quasi-triangle constant") {
  // |x - y|^2 on {0, 1, 2}: 4 / (1 + 1).
  const FiniteHomSpace squared =
      FiniteHomSpace::FromPoints(1, {0., 1., 2.}, {1., 1., 1.}, 2.);
  const A0Estimate sq = EstimateQuasiTriangleConstant(squared);
  CHECK(sq.value == doctest::Approx(2.).epsilon(1e-12));
  CHECK(sq.exhaustive);
  CHECK(squared.dist(sq.witness[0], sq.witness[1]) == 4.);

  const A0Estimate pair =
      EstimateQuasiTriangleConstant(FiniteHomSpace::FromPoints(1, {0., 1.}, {1., 1.}));
  CHECK(pair.degenerate);
  CHECK(pair.value == 1.);

  CHECK(EstimateQuasiTriangleConstant(Line(20)).value == 1.);

  // The exhaustive estimate certifies every triple.
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    const FiniteHomSpace space = RandomSpace(25, seed);
    const A0Estimate est = EstimateQuasiTriangleConstant(space);
    CHECK(est.exhaustive);
    CHECK(Near(est.value, std::max(1., BruteA0(space))));
    FiniteHomSpace declared = space;
    declared.declared_a0 = est.value;
    CHECK(ValidateQuasiMetric(declared).ok);
  }
}

TEST_CASE("sampled quasi-triangle estimate stays below the truth") {
  const FiniteHomSpace space = RandomSpace(600, 4);
  const A0Estimate est = EstimateQuasiTriangleConstant(space);
  CHECK_FALSE(est.exhaustive);
  CHECK(est.triples > 0);
  CHECK(est.value >= 1.);
  CHECK(est.value <= std::pow(2., 0.5) + 1e-12);  // snowflake bound 2^(e-1)
}

TEST_CASE("doubling estimate matches the direct maximum") {
  const FiniteHomSpace grid = Line(64);
  const DoublingEstimate est = EstimateDoubling(grid, {2., 4., 8.});
  CHECK(est.c_doubling >= 1.5);
  CHECK(est.c_doubling <= 2.5);
  CHECK(est.omega == doctest::Approx(1.).epsilon(0.25));

  const FiniteHomSpace space = RandomSpace(50, 11);
  const std::vector<double> radii = {0.5, 1., 2., 3.};
  double brute = 1.;
  for (int x = 0; x < space.size(); ++x) {
    for (double r : radii) {
      brute = std::max(brute, BallMass(space, x, 2. * r) / BallMass(space, x, r));
    }
  }
  CHECK(Near(EstimateDoubling(space, radii).c_doubling, brute));

  const DoublingEstimate single =
      EstimateDoubling(FiniteHomSpace::FromPoints(1, {0.}, {1.}), {1.});
  CHECK(single.c_doubling == 1.);
  CHECK(single.omega == 0.);

  const FiniteHomSpace square = Square(16);
  CHECK(EstimateDoubling(square, DefaultEstimatorRadii(square)).omega ==
        doctest::Approx(2.).epsilon(0.25));
  CHECK_THROWS_AS(EstimateDoubling(grid, {}), Error);
}

TEST_CASE("doubling estimate is invariant under mass and distance scaling") {
  const FiniteHomSpace space = RandomSpace(40, 12);
  const std::vector<double> radii = {0.5, 1., 2.};
  const double base = EstimateDoubling(space, radii).c_doubling;
  std::vector<double> w = space.weights();
  for (double& x : w) x *= 3.;
  CHECK(Near(EstimateDoubling(FiniteHomSpace::FromPoints(2, space.coords(), w, 1.5),
                              radii).c_doubling, base));
  // Distances scale by 2^1.5 when coordinates double.
  std::vector<double> c = space.coords();
  for (double& x : c) x *= 2.;
  std::vector<double> scaled_radii;
  for (double r : radii) scaled_radii.push_back(r * std::pow(2., 1.5));
  CHECK(Near(EstimateDoubling(FiniteHomSpace::FromPoints(2, c, space.weights(), 1.5),
                              scaled_radii).c_doubling, base));
}

TEST_CASE("growth exponent of a Cantor set") {
  gallery::Spec spec;
  spec.kind = gallery::Kind::kCantor;
  spec.depth = 6;
  const FiniteHomSpace cantor = gallery::Build(spec);
  const double expected = std::log(2.) / std::log(3.);
  const GrowthExponent g =
      EstimateGrowthExponent(cantor, DefaultEstimatorRadii(cantor));
  CHECK(g.exponent == doctest::Approx(expected).epsilon(0.15));
  CHECK(g.min_exponent <= g.exponent);
  CHECK(g.max_exponent >= g.exponent);
}

TEST_CASE("lower bound on a uniform line") {
  const FiniteHomSpace grid = Line(64);
  const LowerBoundReport r = CheckLowerBound(grid, 1., 2., 16.);
  CHECK(r.verdict == Verdict::kPass);
  CHECK(r.c_est >= 1.);
  // Oracle: the minimum of mass / r over the same radii.
  double brute = INFINITY;
  for (double rad : r.radii) {
    for (int x = 0; x < grid.size(); ++x) {
      brute = std::min(brute, BallMass(grid, x, rad) / rad);
    }
  }
  CHECK(Near(r.c_est, brute));
  for (size_t i = 0; i < r.radii.size(); ++i) CHECK(r.c_by_radius[i] >= r.c_est);
}

TEST_CASE("lower bound constants are covariant under scaling") {
  const FiniteHomSpace grid = Line(40);
  const double base = CheckLowerBound(grid, 1., 2., 16.).c_est;
  std::vector<double> w(40, 3.);
  CHECK(Near(CheckLowerBound(FiniteHomSpace::FromPoints(1, grid.coords(), w), 1.,
                             2., 16.).c_est, 3. * base));
  std::vector<double> c = grid.coords();
  for (double& x : c) x *= 2.;
  const FiniteHomSpace wide = FiniteHomSpace::FromPoints(1, c, grid.weights());
  CHECK(Near(CheckLowerBound(wide, 1., 4., 32.).c_est, base / 2.));
}

TEST_CASE("lower bound detects a degenerate weight") {
  gallery::Spec spec;
  spec.kind = gallery::Kind::kWeightedGrid;
  spec.n = 256;
  spec.alpha = 2.;
  const FiniteHomSpace weighted = gallery::Build(spec);
  const LowerBoundReport r = CheckLocalLowerBound(weighted, 1., {});
  CHECK(r.local);
  CHECK(r.verdict == Verdict::kFail);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().direction == "small-r");
  CHECK(r.witnesses.front().decay < 0.1);
  // Witnesses sit near the origin where the density vanishes.
  CHECK(std::fabs(weighted.point(r.witnesses.front().x)[0]) < 0.5);
}

TEST_CASE("lower bound edge cases") {
  const FiniteHomSpace single = FiniteHomSpace::FromPoints(1, {0.}, {2.});
  const LowerBoundReport atomic = CheckLowerBound(single, 1., 0.5, 4.);
  CHECK(atomic.atomic);
  CHECK(atomic.verdict == Verdict::kPass);

  LowerBoundOptions unit;
  unit.rescale = 0.;
  const LowerBoundReport local = CheckLocalLowerBound(Line(128), 1., unit);
  CHECK(local.verdict == Verdict::kPass);
  CHECK(local.r_max == 1.);
  // At r = 1 after rescaling every ball holds most of the space.
  CHECK(local.c_by_radius.back() >= 64.);

  const LowerBoundReport narrow = CheckLowerBound(Line(8), 1., 0.01, 0.9);
  CHECK(narrow.verdict == Verdict::kInconclusive);
  CHECK(narrow.insufficient_data);
  CHECK_THROWS_AS(CheckLowerBound(Line(8), 0., 1., 2.), Error);
}

TEST_CASE("reverse doubling") {
  const ReverseDoublingReport line = CheckReverseDoubling(Line(256), 1.);
  CHECK(line.verdict == Verdict::kPass);
  CHECK(line.c > 0.25);
  CHECK(line.c <= 1.);
  CHECK(CheckReverseDoubling(Square(24), 2.).verdict == Verdict::kPass);
  const ReverseDoublingReport atom =
      CheckReverseDoubling(FiniteHomSpace::FromPoints(1, {0.}, {1.}), 1.);
  CHECK(atom.atomic_like);
  CHECK(atom.verdict == Verdict::kFail);
}

}  // TEST_SUITE
}  // namespace homtype
