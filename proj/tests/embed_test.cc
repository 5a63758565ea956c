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
#include <vector>

#include "doctest.h"
#include "homtype/embed.h"
#include "homtype/gallery.h"
#include "test_util.h"

namespace homtype {
namespace {

using testing::Constants;
using testing::Cubes;
using testing::Near;

EmbedParams Pair(double s2, double p2, double q2, double p1,
                 Variant variant = Variant::kHomogeneous,
                 Family family = Family::kBesov, double omega = 1.) {
  EmbedParams params;
  params.omega = omega;
  params.source.family = params.target.family = family;
  params.source.variant = params.target.variant = variant;
  params.source.s = s2;
  params.source.p = p2;
  params.source.q = q2;
  params.target.p = p1;
  params.target.q = q2;
  const double inv = std::isinf(p1) ? 0. : 1. / p1;
  params.target.s = s2 - omega / p2 + omega * inv;
  return params;
}

FiniteHomSpace UnitGrid(int n) {
  gallery::Spec spec;
  spec.n = n;
  return gallery::Build(spec);
}

FiniteHomSpace Weighted(int n, double alpha, double beta, double extent) {
  gallery::Spec spec;
  spec.kind = gallery::Kind::kWeightedGrid;
  spec.n = n;
  spec.alpha = alpha;
  spec.beta = beta;
  spec.extent = extent;
  return gallery::Build(spec);
}

const NetConstants kFine = Constants(1. / 16., 1., 1.);

}  // namespace

TEST_SUITE("embed") {

TEST_CASE("parameter validation") {
  EmbedParams ok = Pair(1., 1., 2., 2.);
  CHECK(ok.target.s == doctest::Approx(0.5));
  CHECK(ValidateEmbedParams(ok).empty());

  EmbedParams off = ok;
  off.target.s = 0.3;
  CHECK_THROWS_WITH(ValidateEmbedParams(off), doctest::Contains("trace line violated"));

  EmbedParams mixed = ok;
  mixed.target.family = Family::kTriebelLizorkin;
  CHECK_THROWS_WITH(ValidateEmbedParams(mixed), doctest::Contains("family mismatch"));

  EmbedParams variant = ok;
  variant.target.variant = Variant::kInhomogeneous;
  CHECK_THROWS_WITH(ValidateEmbedParams(variant), doctest::Contains("variant mismatch"));

  // On the trace line a target with p1 < p2 has more smoothness.
  CHECK_THROWS_WITH(ValidateEmbedParams(Pair(1., 2., 2., 1.)),
                    doctest::Contains("smoothness order violated"));

  EmbedParams eta = ok;
  eta.eta = 1.5;
  CHECK(ValidateEmbedParams(eta).size() == 1);
  CHECK(ValidateEmbedParams(Pair(3., 1., 2., 2.)).size() == 1);
}

TEST_CASE("exponent identities") {
  const EmbedParams params = Pair(1., 1., 2., 4.);
  CHECK(EmbedExponent(params) == doctest::Approx(-0.75));
  for (double c : {1e-3, 0.5, 1., 7.}) {
    CHECK(Near(ImpliedConstant(ProofConstant(c, params), params), c));
  }
  CHECK(EmbedExponent(Pair(1., 1., 2., INFINITY)) == -1.);
}

TEST_CASE("delta sequences reproduce the cube constants") {
  const FiniteHomSpace grid = UnitGrid(256);
  const CubeSystem cubes = Cubes(grid, kFine);
  const IndexSet index = MakeIndexSet(cubes, grid);
  for (double p1 : {2., 4., static_cast<double>(INFINITY)}) {
    const EmbedParams params = Pair(1., 1., 2., p1);
    const DeltaNecessityReport report = DeltaNecessityTest(cubes, grid, index, params);
    CHECK_FALSE(report.vacuous);
    for (const CubeConstant& c : report.constants) {
      CHECK(Near(c.constant, c.mass / std::pow(index.delta, c.k)));
      CHECK(Near(ImpliedConstant(c.ratio, params), c.constant, 1e-10));
      const CoefSequence seq = {{c.k, c.alpha, 1.}};
      CHECK(Near(SequenceNorm(index, seq, params.target) /
                     SequenceNorm(index, seq, params.source),
                 c.ratio));
      CHECK(c.constant >= report.c_min);
    }
  }
}

TEST_CASE("necessity verdicts") {
  const FiniteHomSpace grid = UnitGrid(256);
  const CubeSystem cubes = Cubes(grid, kFine);
  const IndexSet index = MakeIndexSet(cubes, grid);
  const DeltaNecessityReport uniform =
      DeltaNecessityTest(cubes, grid, index, Pair(1., 1., 2., 2.));
  CHECK(uniform.verdict == Verdict::kPass);
  CHECK(uniform.resolved_levels.size() >= 2);
  CHECK(uniform.witnesses.empty());

  const DeltaNecessityReport vacuous =
      DeltaNecessityTest(cubes, grid, index, Pair(1., 2., 2., 2.));
  CHECK(vacuous.vacuous);
  CHECK(vacuous.verdict == Verdict::kInconclusive);

  const FiniteHomSpace weighted = Weighted(1025, 2., 0., 1.);
  const CubeSystem wcubes = Cubes(weighted, kFine);
  const IndexSet windex = MakeIndexSet(wcubes, weighted);
  const DeltaNecessityReport fail = DeltaNecessityTest(
      wcubes, weighted, windex, Pair(1., 1., 2., 2., Variant::kInhomogeneous));
  CHECK(fail.verdict == Verdict::kFail);
  REQUIRE_FALSE(fail.witnesses.empty());
  CHECK(fail.witnesses.size() <= 16);
  CHECK(fail.witnesses.front().direction == "small-r");
  CHECK(fail.min_decay_ratio == fail.witnesses.front().decay);
  for (int k : fail.resolved_levels) CHECK(k >= 0);
}

TEST_CASE("batch generators") {
  const FiniteHomSpace grid = UnitGrid(128);
  const CubeSystem cubes = Cubes(grid, kFine);
  const IndexSet index = MakeIndexSet(cubes, grid);
  const NormParams scope = Pair(1., 1., 2., 2.).source;
  const auto batch = GenerateBatch(index, scope, 40, 17);
  REQUIRE(batch.size() == 40);
  int counts[4] = {0, 0, 0, 0};
  for (const GeneratedSequence& g : batch) {
    ++counts[static_cast<int>(g.generator)];
    CHECK_FALSE(g.seq.empty());
    CHECK_NOTHROW(ValidateSequence(index, g.seq));
    if (g.generator == Generator::kDelta) CHECK(g.seq.size() == 1);
  }
  for (int c : counts) CHECK(c == 10);
  const auto again = GenerateBatch(index, scope, 40, 17);
  for (size_t i = 0; i < batch.size(); ++i) {
    REQUIRE(again[i].seq.size() == batch[i].seq.size());
    for (size_t j = 0; j < batch[i].seq.size(); ++j) {
      CHECK(again[i].seq[j].value == batch[i].seq[j].value);
    }
  }
}

TEST_CASE("ratio scan") {
  const FiniteHomSpace grid = UnitGrid(256);
  const CubeSystem cubes = Cubes(grid, kFine);
  const IndexSet index = MakeIndexSet(cubes, grid);
  const EmbedParams params = Pair(1., 1., 2., 2.);
  const double c_min = DeltaNecessityTest(cubes, grid, index, params).c_min;
  auto batch = GenerateBatch(index, params.source, 64, 3);
  batch.push_back({Generator::kDelta, {{index.levels.front().k, 0, 0.}}});
  const EmbedReport one = EmbeddingRatioScan(index, params, batch, c_min, 1);
  const EmbedReport two = EmbeddingRatioScan(index, params, batch, c_min, 2);
  CHECK(one.tested == 65);
  CHECK(one.neutral == 1);
  CHECK(std::isnan(one.ratios.back()));
  CHECK(one.proof_checked);
  CHECK(one.proof_violations == 0);
  CHECK(Near(one.proof_constant, std::pow(c_min, -0.5)));
  CHECK(one.sup_ratio == two.sup_ratio);
  CHECK(one.witness_id == two.witness_id);
  for (double r : one.ratios) {
    if (!std::isnan(r)) CHECK(r <= one.sup_ratio);
  }
  CHECK(one.ratios[one.witness_id] == one.sup_ratio);

  const EmbedParams tl = Pair(1., 1., 2., 2., Variant::kHomogeneous,
                              Family::kTriebelLizorkin);
  CHECK_FALSE(EmbeddingRatioScan(index, tl, batch, c_min).proof_checked);
}

TEST_CASE("characterization") {
  const FiniteHomSpace grid = UnitGrid(512);
  const CubeSystem cubes = Cubes(grid, kFine);
  CharacterizeOptions options;
  options.batch_size = 64;
  const CharacterizeReport hom = Characterize(grid, cubes, Pair(1., 1., 2., 2.), options);
  CHECK(hom.verdict == "PASS");
  CHECK(hom.consistent);
  const CharacterizeReport inh = Characterize(
      grid, cubes, Pair(1., 1., 2., 2., Variant::kInhomogeneous), options);
  CHECK(inh.verdict == "PASS");
  options.threads = 2;
  const CharacterizeReport threaded =
      Characterize(grid, cubes, Pair(1., 1., 2., 2.), options);
  CHECK(threaded.scan.sup_ratio == hom.scan.sup_ratio);

  const FiniteHomSpace point = FiniteHomSpace::FromPoints(1, {0.}, {1.});
  const CharacterizeReport atomic =
      Characterize(point, Cubes(point, kFine), Pair(1., 1., 2., 2.));
  CHECK(atomic.atomic);
  CHECK(atomic.verdict == "NONE");
  CHECK(atomic.message.find("mu({x}) = 0") != std::string::npos);
}

TEST_CASE("weighted characterization fails where the density vanishes") {
  const FiniteHomSpace weighted = Weighted(1025, 2., 0., 1.);
  CharacterizeOptions options;
  options.batch_size = 64;
  const CharacterizeReport report =
      Characterize(weighted, Cubes(weighted, kFine),
                   Pair(1., 1., 2., 2., Variant::kInhomogeneous), options);
  CHECK(report.lower_bound.verdict == Verdict::kFail);
  CHECK(report.necessity.verdict == Verdict::kFail);
  CHECK(report.verdict == "FAIL");
}

TEST_CASE("A_p weights on dyadic cubes") {
  auto constant_for = [](int n, double alpha, double beta) {
    const FiniteHomSpace lattice = Weighted(n, 0., 0., 4.);
    const IndexSet dyadic =
        MakeStandardDyadicIndexSet(lattice, -2, static_cast<int>(std::log2(n / 8)));
    std::vector<double> w;
    for (int x = 0; x < lattice.size(); ++x) {
      w.push_back(gallery::PowerWeight(std::fabs(lattice.point(x)[0]), alpha, beta));
    }
    return ApWeightCheck(dyadic, w, 2.);
  };
  const ApWeightReport flat = constant_for(64, 0., 0.);
  CHECK(flat.constant == 1.);
  CHECK(flat.cubes_tested > 0);

  // Inside the admissible range the constant settles under refinement.
  const double coarse = constant_for(256, 0.5, -0.5).constant;
  const double fine = constant_for(2048, 0.5, -0.5).constant;
  CHECK(fine == doctest::Approx(coarse).epsilon(0.25));

  // |x|^-1 is not locally integrable and the constant keeps growing.
  const double a = constant_for(256, -1., -1.).constant;
  const double b = constant_for(4096, -1., -1.).constant;
  CHECK(b > 1.3 * a);

  const FiniteHomSpace lattice = Weighted(16, 0., 0., 1.);
  const IndexSet dyadic = MakeStandardDyadicIndexSet(lattice, 0, 2);
  CHECK_THROWS_AS(ApWeightCheck(dyadic, std::vector<double>(16, 1.), 1.), Error);
  CHECK_THROWS_AS(ApWeightCheck(dyadic, std::vector<double>(15, 1.), 2.), Error);
}

}  // TEST_SUITE
}  // namespace homtype
