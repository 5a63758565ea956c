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

#ifndef HOMTYPE_REPORT_H_
#define HOMTYPE_REPORT_H_

#include <string>

#include "homtype/dyadic.h"
#include "homtype/embed.h"
#include "homtype/maximal.h"
#include "homtype/seqnorm.h"
#include "homtype/space.h"
#include "json.hpp"

namespace homtype {

using Json = nlohmann::ordered_json;

constexpr int kReportSchema = 1;

// Two-space indented JSON with every float printed as %.17g and
// non-finite values as null.
std::string DumpJson(const Json& value);

// Top-level scalars as field,value rows, then one row per entry of the
// top-level "witnesses" array.
std::string DumpCsv(const Json& report);

Json ToJson(const A0Estimate& estimate);
Json ToJson(const QuasiMetricVerdict& verdict);
Json ToJson(const DoublingEstimate& estimate);
Json ToJson(const GrowthExponent& growth);
Json ToJson(const LowerBoundReport& report);
Json ToJson(const ReverseDoublingReport& report);
Json ToJson(const AxiomReport& report);
Json ToJson(const ChainReport& report);
Json ToJson(const PropagationReport& report);
Json ToJson(const BallBoundReport& report);
Json ToJson(const CubeSystem& cubes);
Json ToJson(const NormParams& params);
Json ToJson(const EmbedParams& params);
Json ToJson(const DeltaNecessityReport& report);
Json ToJson(const EmbedReport& report);
Json ToJson(const CharacterizeReport& report, const EmbedParams& params);
Json ToJson(const ApWeightReport& report);
Json ToJson(const KernelParams& params);

// The space-file form: points with a metric name, or an explicit table.
Json SpaceToJson(const FiniteHomSpace& space);

// Rebuilds a cube system from its serialized levels; links and masses are
// recomputed from the space.
CubeSystem CubeSystemFromJson(const Json& value, const FiniteHomSpace& space);

// A list of {"k", "alpha", "value"} objects.
CoefSequence SequenceFromJson(const Json& value);
Json ToJson(const CoefSequence& seq);

}  // namespace homtype

#endif  // HOMTYPE_REPORT_H_
