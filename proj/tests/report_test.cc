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
#include <limits>
#include <string>

#include "doctest.h"
#include "homtype/gallery.h"
#include "homtype/report.h"
#include "test_util.h"

namespace homtype {
namespace {

using testing::Constants;
using testing::Cubes;
using testing::Line;

}  // namespace

TEST_SUITE("report") {

TEST_CASE("json layout") {
  Json doc;
  doc["a"] = 0.1;
  doc["n"] = 3;
  doc["bad"] = std::numeric_limits<double>::quiet_NaN();
  doc["list"] = {1.5, 2, "x"};
  doc["rows"] = Json::array({{{"k", 1}}});
  doc["empty"] = Json::object();
  CHECK(DumpJson(doc) ==
        "{\n"
        "  \"a\": 0.10000000000000001,\n"
        "  \"n\": 3,\n"
        "  \"bad\": null,\n"
        "  \"list\": [1.5, 2, \"x\"],\n"
        "  \"rows\": [\n"
        "    {\n"
        "      \"k\": 1\n"
        "    }\n"
        "  ],\n"
        "  \"empty\": {}\n"
        "}\n");
  // The output parses back to the same values.
  const Json back = Json::parse(DumpJson(doc));
  CHECK(back["a"].get<double>() == 0.1);
  CHECK(back["bad"].is_null());
}

TEST_CASE("csv rows and witness table") {
  Json doc;
  doc["verdict"] = "FAIL";
  doc["nested"] = {{"x", 1}, {"note", "a,b"}};
  doc["radii"] = {1., 2.};
  doc["witnesses"] = Json::array({{{"x", 4}, {"decay", 0.5}}, {{"x", 7}, {"decay", 0.25}}});
  CHECK(DumpCsv(doc) ==
        "field,value\n"
        "verdict,FAIL\n"
        "nested.x,1\n"
        "nested.note,\"a,b\"\n"
        "\n"
        "witness,x,decay\n"
        "0,4,0.5\n"
        "1,7,0.25\n");
  Json bare;
  bare["ok"] = true;
  CHECK(DumpCsv(bare) == "field,value\nok,true\n");
}

TEST_CASE("norm parameters write infinity as a string") {
  NormParams p;
  p.p = std::numeric_limits<double>::infinity();
  const Json j = ToJson(p);
  CHECK(j["p"] == "inf");
  CHECK(j["q"].get<double>() == 2.);
  CHECK(j["family"] == "besov");
}

TEST_CASE("cube systems round trip") {
  const FiniteHomSpace line = Line(128);
  const CubeSystem cubes = Cubes(line, Constants(1. / 16., 1., 1.));
  const Json j = Json::parse(DumpJson(ToJson(cubes)));
  const CubeSystem back = CubeSystemFromJson(j, line);
  REQUIRE(back.num_levels() == cubes.num_levels());
  for (int li = 0; li < cubes.num_levels(); ++li) {
    CHECK(back.levels[li].assignment == cubes.levels[li].assignment);
    CHECK(back.levels[li].mass == cubes.levels[li].mass);
    CHECK(back.levels[li].parent == cubes.levels[li].parent);
    CHECK(back.levels[li].inherited == cubes.levels[li].inherited);
  }
  CHECK(VerifyCubeAxioms(back, line).pass);

  Json broken = j;
  broken["levels"][0]["assignment"].erase(0);
  CHECK_THROWS_WITH(CubeSystemFromJson(broken, line),
                    doctest::Contains("assignment length"));
  Json gap = j;
  gap["levels"][1]["k"] = gap["levels"][1]["k"].get<int>() + 1;
  CHECK_THROWS_WITH(CubeSystemFromJson(gap, line), doctest::Contains("consecutive"));
  CHECK_THROWS_AS(CubeSystemFromJson(Json::object(), line), Error);
}

TEST_CASE("sequences round trip") {
  const CoefSequence seq = {{-1, 0, 0.5}, {2, 3, -1e-300}};
  const CoefSequence back = SequenceFromJson(Json::parse(DumpJson(ToJson(seq))));
  REQUIRE(back.size() == 2);
  CHECK(back[1].k == 2);
  CHECK(back[1].alpha == 3);
  CHECK(back[1].value == -1e-300);
  CHECK_THROWS_AS(SequenceFromJson(Json::object()), Error);
  CHECK_THROWS_AS(SequenceFromJson(Json::parse(R"([{"k": 1}])")), Error);
}

TEST_CASE("spaces round trip through the file form") {
  gallery::Spec spec;
  spec.kind = gallery::Kind::kSnowflake;
  spec.n = 6;
  spec.dim = 2;
  spec.exponent = 0.5;
  const FiniteHomSpace space = gallery::Build(spec);
  const FiniteHomSpace back = gallery::ParseSpace(DumpJson(SpaceToJson(space)));
  REQUIRE(back.size() == space.size());
  CHECK(back.metric_name() == space.metric_name());
  for (int i = 0; i < space.size(); ++i) {
    CHECK(back.weight(i) == space.weight(i));
    for (int j = 0; j < space.size(); ++j) CHECK(back.dist(i, j) == space.dist(i, j));
  }
  const FiniteHomSpace table =
      FiniteHomSpace::FromTable(3, {0., 1., 3., 1., 0., 1., 3., 1., 0.}, {1., 1., 1.});
  const FiniteHomSpace table_back = gallery::ParseSpace(DumpJson(SpaceToJson(table)));
  CHECK(table_back.dist(0, 2) == 3.);
}

TEST_CASE("report objects carry their verdicts") {
  const FiniteHomSpace line = Line(64);
  const Json lb = ToJson(CheckLowerBound(line, 1., 2., 16.));
  CHECK(lb["verdict"] == "PASS");
  CHECK(lb["radii"].size() == 16);
  const Json axioms = ToJson(VerifyCubeAxioms(Cubes(line, Constants(1. / 32.)), line));
  CHECK(axioms["verdict"] == "PASS");
  CHECK(axioms["violations"].empty());
}

}  // TEST_SUITE
}  // namespace homtype
