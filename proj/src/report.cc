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

#include "homtype/report.h"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace homtype {

namespace {

std::string FormatDouble(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Scalar(const Json& v) {
  switch (v.type()) {
    case Json::value_t::number_float:
      return FormatDouble(v.get<double>());
    case Json::value_t::null:
      return "null";
    default:
      return v.dump();
  }
}

void Dump(const Json& v, int indent, std::ostringstream& out) {
  const std::string pad(indent + 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out << ",\n";
      first = false;
      out << pad << Json(it.key()).dump() << ": ";
      Dump(it.value(), indent + 2, out);
    }
    out << "\n" << std::string(indent, ' ') << "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      out << "[]";
      return;
    }
    bool flat = true;
    for (const Json& e : v) flat &= !e.is_structured();
    if (flat) {
      out << "[";
      for (size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << Scalar(v[i]);
      out << "]";
      return;
    }
    out << "[\n";
    for (size_t i = 0; i < v.size(); ++i) {
      out << pad;
      Dump(v[i], indent + 2, out);
      out << (i + 1 < v.size() ? ",\n" : "\n");
    }
    out << std::string(indent, ' ') << "]";
  } else {
    out << Scalar(v);
  }
}

std::string CsvCell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : Scalar(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

void FlattenScalars(const Json& v, const std::string& prefix,
                    std::vector<std::pair<std::string, Json>>& rows) {
  for (auto it = v.begin(); it != v.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it.value().is_object()) {
      FlattenScalars(it.value(), key, rows);
    } else if (!it.value().is_array()) {
      rows.emplace_back(key, it.value());
    }
  }
}

Json Witnesses(const std::vector<LowerBoundWitness>& witnesses) {
  Json out = Json::array();
  for (const LowerBoundWitness& w : witnesses) {
    out.push_back({{"x", w.x},
                   {"r", w.r},
                   {"mass", w.mass},
                   {"constant", w.constant},
                   {"fitted_exponent", w.fitted_exponent},
                   {"decay", w.decay},
                   {"direction", w.direction}});
  }
  return out;
}

// Infinite exponents are written as the string "inf".
Json ParamValue(double v) { return std::isinf(v) ? Json("inf") : Json(v); }

}  // namespace

std::string DumpJson(const Json& value) {
  std::ostringstream out;
  Dump(value, 0, out);
  out << "\n";
  return out.str();
}

std::string DumpCsv(const Json& report) {
  std::ostringstream out;
  std::vector<std::pair<std::string, Json>> rows;
  FlattenScalars(report, "", rows);
  out << "field,value\n";
  for (const auto& [key, value] : rows) out << CsvCell(key) << "," << CsvCell(value) << "\n";
  auto it = report.find("witnesses");
  if (it == report.end() || !it->is_array() || it->empty()) return out.str();
  std::vector<std::string> columns;
  std::set<std::string> seen;
  for (const Json& w : *it) {
    if (!w.is_object()) continue;
    for (auto c = w.begin(); c != w.end(); ++c) {
      if (seen.insert(c.key()).second) columns.push_back(c.key());
    }
  }
  out << "\nwitness";
  for (const std::string& c : columns) out << "," << CsvCell(c);
  out << "\n";
  for (size_t i = 0; i < it->size(); ++i) {
    out << i;
    const Json& w = (*it)[i];
    for (const std::string& c : columns) {
      out << ",";
      if (w.is_object() && w.contains(c) && !w[c].is_structured()) out << CsvCell(w[c]);
    }
    out << "\n";
  }
  return out.str();
}

Json ToJson(const A0Estimate& e) {
  return {{"a0", e.value},
          {"exhaustive", e.exhaustive},
          {"degenerate", e.degenerate},
          {"triples", e.triples},
          {"witness", {e.witness[0], e.witness[1], e.witness[2]}}};
}

Json ToJson(const QuasiMetricVerdict& v) {
  Json violations = Json::array();
  for (const MetricViolation& m : v.violations) {
    violations.push_back({{"kind", m.kind}, {"ids", m.ids}, {"lhs", m.lhs}, {"rhs", m.rhs}});
  }
  return {{"ok", v.ok},
          {"a0_used", v.a0_used},
          {"a0_declared", v.a0_declared},
          {"violation_count", v.violation_count},
          {"violations", violations}};
}

Json ToJson(const DoublingEstimate& e) {
  return {{"c_doubling", e.c_doubling},
          {"omega", e.omega},
          {"witness", {{"x", e.witness_x}, {"r", e.witness_r}}}};
}

Json ToJson(const GrowthExponent& g) {
  return {{"exponent", g.exponent},
          {"min_exponent", g.min_exponent},
          {"max_exponent", g.max_exponent},
          {"radii", g.radii}};
}

Json ToJson(const LowerBoundReport& r) {
  return {{"verdict", VerdictName(r.verdict)},
          {"local", r.local},
          {"atomic", r.atomic},
          {"insufficient_data", r.insufficient_data},
          {"omega", r.omega},
          {"r_min", r.r_min},
          {"r_max", r.r_max},
          {"rescale", r.rescale},
          {"r_floor", r.r_floor},
          {"exponent_tolerance", r.exponent_tolerance},
          {"decay_ratio", r.decay_ratio},
          {"c_est", r.c_est},
          {"c_witness", {{"x", r.c_witness_x}, {"r", r.c_witness_r}}},
          {"fitted_exponent", {{"min", r.min_fitted_exponent}, {"max", r.max_fitted_exponent}}},
          {"semantics",
           "FAIL: mass(B(x,r))/r^omega decays by the decay ratio across the resolved "
           "radii while the fitted exponent leaves omega +/- tolerance"},
          {"radii", r.radii},
          {"c_by_radius", r.c_by_radius},
          {"witnesses", Witnesses(r.witnesses)},
          {"warnings", r.warnings}};
}

Json ToJson(const ReverseDoublingReport& r) {
  return {{"verdict", VerdictName(r.verdict)},
          {"atomic_like", r.atomic_like},
          {"kappa", r.kappa},
          {"c", r.c},
          {"witness", {{"x", r.witness_x}, {"r", r.witness_r}, {"lambda", r.witness_lambda}}},
          {"radii", r.radii},
          {"c_by_radius", r.c_by_radius},
          {"warnings", r.warnings}};
}

Json ToJson(const AxiomReport& r) {
  Json violations = Json::array();
  for (const AxiomViolation& v : r.violations) {
    violations.push_back({{"axiom", v.axiom},
                          {"k", v.k},
                          {"cube", v.cube},
                          {"point", v.point},
                          {"other_level", v.other_level},
                          {"detail", v.detail}});
  }
  return {{"verdict", r.pass ? "PASS" : "FAIL"},
          {"violation_count", r.violation_count},
          {"interior_closure", r.interior_closure},
          {"violations", violations}};
}

Json ToJson(const ChainReport& r) {
  return {{"max_chain_len", r.max_chain_len},
          {"bound_n", r.bound_n},
          {"within_bound", r.within_bound},
          {"atomic", r.atomic},
          {"m_min", r.m_min},
          {"witness", {{"k", r.witness_k}, {"cube", r.witness_cube}}}};
}

Json ToJson(const PropagationReport& r) {
  return {{"verdict", VerdictName(r.verdict)},
          {"c", r.c},
          {"c_tilde", r.c_tilde},
          {"omega", r.omega},
          {"m_min", r.m_min},
          {"bound_n", r.bound_n},
          {"witness",
           {{"k", r.witness_k},
            {"cube", r.witness_cube},
            {"mass", r.witness_mass},
            {"required", r.witness_required}}}};
}

Json ToJson(const BallBoundReport& r) {
  return {{"verdict", VerdictName(r.verdict)},
          {"alpha", r.alpha},
          {"level", r.level},
          {"cubes_used", r.cubes_used},
          {"contained", r.contained},
          {"c_tilde", r.c_tilde},
          {"certified", r.certified},
          {"actual", r.actual}};
}

Json ToJson(const CubeSystem& cubes) {
  Json levels = Json::array();
  for (const CubeLevel& level : cubes.levels) {
    levels.push_back({{"k", level.k}, {"centers", level.centers}, {"assignment", level.assignment}});
  }
  return {{"delta", cubes.constants.delta},
          {"c0", cubes.constants.c0},
          {"C0", cubes.constants.C0},
          {"A0", cubes.constants.a0},
          {"c1", cubes.c1},
          {"C1", cubes.C1},
          {"levels", levels}};
}

Json ToJson(const NormParams& p) {
  return {{"family", FamilyName(p.family)},
          {"s", p.s},
          {"p", ParamValue(p.p)},
          {"q", ParamValue(p.q)},
          {"variant", VariantName(p.variant)},
          {"include_k0", p.include_k0}};
}

Json ToJson(const EmbedParams& p) {
  return {{"source", ToJson(p.source)},
          {"target", ToJson(p.target)},
          {"omega", p.omega},
          {"eta", p.eta}};
}

Json ToJson(const DeltaNecessityReport& r) {
  Json levels = Json::array();
  for (size_t i = 0; i < r.level_k.size(); ++i) {
    levels.push_back({{"k", r.level_k[i]}, {"min_constant", r.level_min_constant[i]}});
  }
  Json witnesses = Json::array();
  for (const ChainWitness& w : r.witnesses) {
    witnesses.push_back({{"point", w.point},
                         {"k_coarse", w.k_coarse},
                         {"k_fine", w.k_fine},
                         {"fitted_exponent", w.fitted_exponent},
                         {"decay", w.decay},
                         {"direction", w.direction}});
  }
  return {{"verdict", r.vacuous ? "vacuous" : VerdictName(r.verdict)},
          {"vacuous", r.vacuous},
          {"insufficient_data", r.insufficient_data},
          {"c_min", r.c_min},
          {"c_min_index", {{"k", r.c_min_k}, {"alpha", r.c_min_alpha}}},
          {"min_decay_ratio", r.min_decay_ratio},
          {"semantics",
           "FAIL: implied constants mass(Q)/delta^(k omega) along some cube chain decay "
           "by the decay ratio across the resolved levels"},
          {"resolved_levels", r.resolved_levels},
          {"levels", levels},
          {"witnesses", witnesses}};
}

Json ToJson(const EmbedReport& r) {
  Json out = {{"sup_ratio", r.sup_ratio},
              {"witness", {{"id", r.witness_id}, {"generator", r.witness_generator}}},
              {"tested", r.tested},
              {"neutral", r.neutral},
              {"proof_checked", r.proof_checked}};
  out["proof_constant"] = r.proof_checked ? Json(r.proof_constant) : Json(nullptr);
  out["proof_violations"] = r.proof_violations;
  return out;
}

Json ToJson(const CharacterizeReport& r, const EmbedParams& params) {
  Json out = {{"schema", kReportSchema}, {"command", "embed-test"}, {"params", ToJson(params)}};
  if (r.atomic) {
    out["verdict"] = r.verdict;
    out["message"] = r.message;
    out["warnings"] = r.warnings;
    return out;
  }
  out["sup_ratio"] = r.scan.sup_ratio;
  out["proof_constant"] = r.scan.proof_checked ? Json(r.scan.proof_constant) : Json(nullptr);
  out["verdict"] = r.verdict;
  out["consistent"] = r.consistent;
  out["lower_bound"] = ToJson(r.lower_bound);
  out["necessity"] = ToJson(r.necessity);
  out["scan"] = ToJson(r.scan);
  out["discrepancies"] = r.discrepancies;
  out["warnings"] = r.warnings;
  Json witnesses = Json::array();
  for (const LowerBoundWitness& w : r.lower_bound.witnesses) {
    witnesses.push_back({{"source", "lower_bound"},
                         {"x", w.x},
                         {"r", w.r},
                         {"decay", w.decay},
                         {"direction", w.direction}});
  }
  for (const ChainWitness& w : r.necessity.witnesses) {
    witnesses.push_back({{"source", "necessity"},
                         {"x", w.point},
                         {"k_coarse", w.k_coarse},
                         {"k_fine", w.k_fine},
                         {"decay", w.decay},
                         {"direction", w.direction}});
  }
  out["witnesses"] = witnesses;
  return out;
}

Json ToJson(const ApWeightReport& r) {
  return {{"constant", r.constant},
          {"cube", {{"k", r.k}, {"alpha", r.alpha}, {"corner", r.corner}}},
          {"cubes_tested", r.cubes_tested}};
}

Json ToJson(const KernelParams& p) {
  return {{"epsilon", p.epsilon},
          {"gamma", p.gamma},
          {"eta", p.eta},
          {"r", p.r_exp},
          {"omega", p.omega}};
}

Json SpaceToJson(const FiniteHomSpace& space) {
  Json out = Json::object();
  if (space.has_coords()) {
    Json points = Json::array();
    for (int i = 0; i < space.size(); ++i) {
      points.push_back(std::vector<double>(space.point(i), space.point(i) + space.dim()));
    }
    out["points"] = points;
  } else {
    Json rows = Json::array();
    for (int i = 0; i < space.size(); ++i) {
      std::vector<double> row(space.size());
      for (int j = 0; j < space.size(); ++j) row[j] = space.dist(i, j);
      rows.push_back(row);
    }
    out["dist"] = rows;
  }
  out["weights"] = space.weights();
  out["metric"] = space.metric_name();
  if (space.declared_a0) out["declared_A0"] = *space.declared_a0;
  if (space.declared_omega) out["declared_omega"] = *space.declared_omega;
  return out;
}

CubeSystem CubeSystemFromJson(const Json& value, const FiniteHomSpace& space) {
  try {
    CubeSystem cubes;
    cubes.constants.delta = value.at("delta").get<double>();
    cubes.constants.c0 = value.at("c0").get<double>();
    cubes.constants.C0 = value.at("C0").get<double>();
    cubes.constants.a0 = value.value("A0", 1.);
    cubes.c1 = value.at("c1").get<double>();
    cubes.C1 = value.at("C1").get<double>();
    cubes.total_mass = space.total_mass();
    const Json& levels = value.at("levels");
    if (!levels.is_array() || levels.empty()) throw Error(kExitUsage, "cube file: no levels");
    for (const Json& l : levels) {
      CubeLevel level;
      level.k = l.at("k").get<int>();
      level.centers = l.at("centers").get<std::vector<int>>();
      level.assignment = l.at("assignment").get<std::vector<int>>();
      if (static_cast<int>(level.assignment.size()) != space.size()) {
        throw Error(kExitUsage, "cube file: assignment length does not match the space");
      }
      for (int a : level.assignment) {
        if (a < 0 || a >= static_cast<int>(level.centers.size())) {
          throw Error(kExitUsage, "cube file: assignment out of range");
        }
      }
      if (!cubes.levels.empty() && level.k != cubes.levels.back().k + 1) {
        throw Error(kExitUsage, "cube file: levels must be consecutive");
      }
      cubes.levels.push_back(std::move(level));
    }
    cubes.window.k_min = cubes.levels.front().k;
    cubes.window.k_max = cubes.levels.back().k;
    RefreshCubeLinks(cubes, space);
    return cubes;
  } catch (const Json::exception& e) {
    throw Error(kExitUsage, std::string("cube file: ") + e.what());
  }
}

CoefSequence SequenceFromJson(const Json& value) {
  if (!value.is_array()) throw Error(kExitUsage, "sequence file: expected a list");
  CoefSequence seq;
  try {
    for (const Json& e : value) {
      seq.push_back({e.at("k").get<int>(), e.at("alpha").get<int>(), e.at("value").get<double>()});
    }
  } catch (const Json::exception& e) {
    throw Error(kExitUsage, std::string("sequence file: ") + e.what());
  }
  return seq;
}

Json ToJson(const CoefSequence& seq) {
  Json out = Json::array();
  for (const Coefficient& c : seq) out.push_back({{"k", c.k}, {"alpha", c.alpha}, {"value", c.value}});
  return out;
}

}  // namespace homtype
