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

#include "homtype/embed.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace homtype {

namespace {

double InvP(double p) { return std::isinf(p) ? 0. : 1. / p; }

std::string Num(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

std::vector<std::string> ValidateEmbedParams(const EmbedParams& params) {
  const NormParams& src = params.source;
  const NormParams& dst = params.target;
  if (src.family != dst.family) {
    throw Error(kExitUsage, "family mismatch: " + FamilyName(src.family) + " -> " +
                                FamilyName(dst.family));
  }
  if (src.variant != dst.variant || src.include_k0 != dst.include_k0) {
    throw Error(kExitUsage, "variant mismatch: " + VariantName(src.variant) + " -> " +
                                VariantName(dst.variant));
  }
  const double source_line = src.s - params.omega * InvP(src.p);
  const double target_line = dst.s - params.omega * InvP(dst.p);
  if (!(std::fabs(source_line - target_line) <= 1e-9)) {
    throw Error(kExitUsage, "trace line violated: s1 - omega/p1 = " + Num(target_line) +
                                " but s2 - omega/p2 = " + Num(source_line));
  }
  if (dst.s > src.s + 1e-12) {
    throw Error(kExitUsage, "smoothness order violated: s1 = " + Num(dst.s) +
                                " > s2 = " + Num(src.s));
  }
  std::vector<std::string> warnings;
  if (!(params.eta > 0. && params.eta <= 1.)) {
    warnings.push_back("eta = " + Num(params.eta) + " outside (0, 1]");
  }
  if (!(std::fabs(source_line) < params.eta)) {
    warnings.push_back("s - omega/p = " + Num(source_line) + " outside (-eta, eta)");
  }
  return warnings;
}

double EmbedExponent(const EmbedParams& params) {
  return InvP(params.target.p) - InvP(params.source.p);
}

double ProofConstant(double c_min, const EmbedParams& params) {
  return std::pow(c_min, EmbedExponent(params));
}

double ImpliedConstant(double ratio, const EmbedParams& params) {
  return std::pow(ratio, 1. / EmbedExponent(params));
}

DeltaNecessityReport DeltaNecessityTest(const CubeSystem& cubes,
                                        const FiniteHomSpace& space,
                                        const IndexSet& index,
                                        const EmbedParams& params,
                                        const TrendOptions& options) {
  DeltaNecessityReport report;
  report.vacuous = InvP(params.source.p) == InvP(params.target.p);
  const double delta = index.delta;
  const double omega = params.omega;

  report.c_min = std::numeric_limits<double>::infinity();
  for (int k : index.VariantLevels(params.source)) {
    const IndexLevel& level = *index.Find(k);
    double level_min = std::numeric_limits<double>::infinity();
    for (int a = 0; a < static_cast<int>(level.cubes.size()); ++a) {
      CubeConstant c;
      c.k = k;
      c.alpha = a;
      c.mass = level.cubes[a].mass;
      c.constant = c.mass / std::pow(delta, k * omega);
      c.target_norm = DeltaClosedForm(delta, k, params.target.s, params.target.p, c.mass);
      c.source_norm = DeltaClosedForm(delta, k, params.source.s, params.source.p, c.mass);
      c.ratio = c.target_norm / c.source_norm;
      level_min = std::min(level_min, c.constant);
      if (c.constant < report.c_min) {
        report.c_min = c.constant;
        report.c_min_k = k;
        report.c_min_alpha = a;
      }
      report.constants.push_back(c);
    }
    report.level_k.push_back(k);
    report.level_min_constant.push_back(level_min);
  }
  if (report.constants.empty()) {
    throw Error(kExitUsage, "no index cubes in scope for the " +
                                VariantName(params.source.variant) + " variant");
  }
  if (report.vacuous) {
    report.verdict = Verdict::kInconclusive;
    return report;
  }

  // Trend along the chain of partition cubes through each point, over the
  // levels the data resolves.
  const bool local = params.source.variant == Variant::kInhomogeneous;
  // Same window as the ball check: scales from r_floor to the diameter.
  for (const CubeLevel& level : cubes.levels) {
    const double scale = std::pow(delta, level.k);
    if (scale < space.r_floor() * (1. - 1e-12)) continue;
    if (scale > space.diameter() * (1. + 1e-12)) continue;
    if (local && level.k < 0) continue;
    report.resolved_levels.push_back(level.k);
  }
  if (report.resolved_levels.size() < 2) {
    report.insufficient_data = true;
    report.verdict = Verdict::kInconclusive;
    return report;
  }

  const int levels = static_cast<int>(report.resolved_levels.size());
  std::vector<double> log_r(levels);
  for (int i = 0; i < levels; ++i) {
    log_r[i] = report.resolved_levels[i] * std::log(delta);
  }
  const int k_coarse = report.resolved_levels.front();
  const int k_fine = report.resolved_levels.back();
  std::vector<ChainWitness> failing;
  for (int x = 0; x < space.size(); ++x) {
    std::vector<double> log_mass(levels);
    std::vector<double> constant(levels);
    for (int i = 0; i < levels; ++i) {
      const CubeLevel& level = cubes.Level(report.resolved_levels[i]);
      const double mass = level.mass[level.assignment[x]];
      log_mass[i] = std::log(mass);
      constant[i] = mass / std::pow(delta, level.k * omega);
    }
    const double slope = OlsSlope(log_r, log_mass);
    ChainWitness w;
    w.point = x;
    w.k_coarse = k_coarse;
    w.k_fine = k_fine;
    w.fitted_exponent = slope;
    if (slope > omega + options.exponent_tolerance &&
        constant.back() / constant.front() < options.decay_ratio) {
      w.decay = constant.back() / constant.front();
      w.direction = "small-r";
      failing.push_back(w);
    } else if (!local && slope < omega - options.exponent_tolerance &&
               constant.front() / constant.back() < options.decay_ratio) {
      w.decay = constant.front() / constant.back();
      w.direction = "large-r";
      failing.push_back(w);
    }
  }
  std::stable_sort(failing.begin(), failing.end(),
                   [](const ChainWitness& a, const ChainWitness& b) { return a.decay < b.decay; });
  if (!failing.empty()) {
    report.verdict = Verdict::kFail;
    report.min_decay_ratio = failing.front().decay;
  }
  if (failing.size() > 16) failing.resize(16);
  report.witnesses = failing;
  return report;
}

std::string GeneratorName(Generator generator) {
  switch (generator) {
    case Generator::kDelta:
      return "delta";
    case Generator::kSingleLevel:
      return "single_level";
    case Generator::kMultiLevel:
      return "multi_level";
    case Generator::kAdversarial:
      return "adversarial";
  }
  return "delta";
}

std::vector<GeneratedSequence> GenerateBatch(const IndexSet& index,
                                             const NormParams& scope,
                                             int batch_size, uint64_t seed) {
  const std::vector<int> ks = index.VariantLevels(scope);
  if (ks.empty()) throw Error(kExitUsage, "no index levels in scope");
  const int nk = static_cast<int>(ks.size());
  // Cubes of each level ordered by mass, lightest first.
  std::vector<std::vector<int>> by_mass(nk);
  for (int i = 0; i < nk; ++i) {
    const IndexLevel& level = *index.Find(ks[i]);
    for (int a = 0; a < static_cast<int>(level.cubes.size()); ++a) by_mass[i].push_back(a);
    std::stable_sort(by_mass[i].begin(), by_mass[i].end(), [&](int a, int b) {
      return level.cubes[a].mass < level.cubes[b].mass;
    });
  }

  Rng rng(seed);
  const int quarter = batch_size / 4;
  std::vector<GeneratedSequence> batch(batch_size);
  for (int id = 0; id < batch_size; ++id) {
    GeneratedSequence& out = batch[id];
    if (id < quarter) {
      out.generator = Generator::kDelta;
      const int i = rng.Index(nk);
      out.seq.push_back({ks[i], rng.Index(static_cast<int>(by_mass[i].size())), 1.});
    } else if (id < 2 * quarter) {
      out.generator = Generator::kSingleLevel;
      const int i = rng.Index(nk);
      for (int a = 0; a < static_cast<int>(by_mass[i].size()); ++a) {
        out.seq.push_back({ks[i], a, rng.Uniform(-1., 1.)});
      }
    } else if (id < batch_size - quarter) {
      out.generator = Generator::kMultiLevel;
      std::vector<bool> use(nk);
      bool any = false;
      for (int i = 0; i < nk; ++i) any |= (use[i] = rng.Uniform() < 0.5);
      if (!any) use[rng.Index(nk)] = true;
      for (int i = 0; i < nk; ++i) {
        if (!use[i]) continue;
        for (int a = 0; a < static_cast<int>(by_mass[i].size()); ++a) {
          out.seq.push_back({ks[i], a, rng.Uniform(-1., 1.)});
        }
      }
    } else {
      out.generator = Generator::kAdversarial;
      std::vector<bool> use(nk);
      bool any = false;
      for (int i = 0; i < nk; ++i) any |= (use[i] = rng.Uniform() < 0.5);
      if (!any) use[rng.Index(nk)] = true;
      for (int i = 0; i < nk; ++i) {
        if (!use[i]) continue;
        const int pick = rng.Index(std::min<int>(3, static_cast<int>(by_mass[i].size())));
        const double sign = rng.Uniform() < 0.5 ? -1. : 1.;
        out.seq.push_back({ks[i], by_mass[i][pick], sign * rng.Uniform(0.5, 1.)});
      }
    }
  }
  return batch;
}

EmbedReport EmbeddingRatioScan(const IndexSet& index,
                               const EmbedParams& params,
                               const std::vector<GeneratedSequence>& batch,
                               double c_min, int threads) {
  ValidateEmbedParams(params);
  const int n = static_cast<int>(batch.size());
  EmbedReport report;
  report.tested = n;
  report.ratios.assign(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<int> bad(n, 0);
  ParallelFor(n, threads, [&](int i) {
    const double target = SequenceNorm(index, batch[i].seq, params.target);
    const double source = SequenceNorm(index, batch[i].seq, params.source);
    if (source == 0.) {
      bad[i] = target > 0. ? 1 : 0;
      return;
    }
    report.ratios[i] = target / source;
  });
  for (int i = 0; i < n; ++i) {
    if (bad[i]) {
      throw Error(kExitInternal, "source norm vanished with a nonzero target norm");
    }
  }
  report.proof_checked = params.source.family == Family::kBesov && c_min > 0. &&
                         std::isfinite(c_min);
  if (report.proof_checked) report.proof_constant = ProofConstant(c_min, params);
  for (int i = 0; i < n; ++i) {
    report.generators.push_back(GeneratorName(batch[i].generator));
    const double r = report.ratios[i];
    if (std::isnan(r)) {
      ++report.neutral;
      continue;
    }
    if (r > report.sup_ratio) {
      report.sup_ratio = r;
      report.witness_id = i;
      report.witness_generator = report.generators.back();
    }
    if (report.proof_checked && r > report.proof_constant * (1. + 1e-12)) {
      ++report.proof_violations;
    }
  }
  return report;
}

CharacterizeReport Characterize(const FiniteHomSpace& space,
                                const CubeSystem& cubes,
                                const EmbedParams& params,
                                const CharacterizeOptions& options) {
  CharacterizeReport report;
  report.warnings = ValidateEmbedParams(params);
  if (space.size() == 1) {
    report.atomic = true;
    report.message = "atomic space: theorem hypotheses (mu({x}) = 0) unmet";
    report.verdict = "NONE";
    return report;
  }
  const bool local = params.source.variant == Variant::kInhomogeneous;
  LowerBoundOptions lb;
  lb.exponent_tolerance = options.trend.exponent_tolerance;
  lb.decay_ratio = options.trend.decay_ratio;
  lb.threads = options.threads;
  if (local) {
    report.lower_bound = CheckLocalLowerBound(space, params.omega, lb);
  } else {
    report.lower_bound =
        CheckLowerBound(space, params.omega, space.r_floor(), space.diameter(), lb);
  }

  const IndexSet index = MakeIndexSet(cubes, space);
  report.necessity = DeltaNecessityTest(cubes, space, index, params, options.trend);
  const auto batch = GenerateBatch(index, params.source, options.batch_size, options.seed);
  report.scan = EmbeddingRatioScan(index, params, batch, report.necessity.c_min, options.threads);

  const Verdict lower = report.lower_bound.verdict;
  const Verdict necessity = report.necessity.verdict;
  bool inconclusive = lower == Verdict::kInconclusive;
  if (report.necessity.vacuous) {
    report.warnings.push_back("delta necessity test vacuous for p1 = p2");
  } else if (necessity == Verdict::kInconclusive) {
    inconclusive = true;
    report.warnings.push_back("delta necessity test resolves fewer than 2 levels");
  } else if (lower != Verdict::kInconclusive && lower != necessity) {
    report.discrepancies.push_back("lower bound " + VerdictName(lower) +
                                   " but delta necessity " + VerdictName(necessity));
  }
  if (lower == Verdict::kPass && report.scan.proof_violations > 0) {
    report.discrepancies.push_back(
        "lower bound PASS but " + std::to_string(report.scan.proof_violations) +
        " ratios exceed the proof constant " + Num(report.scan.proof_constant));
  }
  report.consistent = report.discrepancies.empty();
  if (!report.consistent) {
    report.verdict = "DISCREPANCY";
  } else if (inconclusive) {
    report.verdict = "INCONCLUSIVE";
  } else {
    report.verdict = VerdictName(lower);
  }
  return report;
}

ApWeightReport ApWeightCheck(const IndexSet& dyadic,
                             const std::vector<double>& density, double p) {
  if (!(p > 1.)) throw Error(kExitUsage, "A_p check needs p > 1");
  if (static_cast<int>(density.size()) != dyadic.num_points()) {
    throw Error(kExitUsage, "weight length does not match the grid");
  }
  for (double w : density) {
    if (!(w > 0.) || !std::isfinite(w)) throw Error(kExitUsage, "A_p check needs a positive weight");
  }
  const double dual = -1. / (p - 1.);
  ApWeightReport report;
  report.constant = 0.;
  for (const IndexLevel& level : dyadic.levels) {
    for (int a = 0; a < static_cast<int>(level.cubes.size()); ++a) {
      const IndexCube& cube = level.cubes[a];
      std::vector<double> w;
      std::vector<double> w_dual;
      for (int x : cube.members) {
        w.push_back(density[x]);
        w_dual.push_back(std::pow(density[x], dual));
      }
      const double count = static_cast<double>(cube.members.size());
      const double value =
          SortedSum(w) / count * std::pow(SortedSum(w_dual) / count, p - 1.);
      ++report.cubes_tested;
      if (value > report.constant) {
        report.constant = value;
        report.k = level.k;
        report.alpha = a;
        report.corner = cube.corner;
      }
    }
  }
  return report;
}

}  // namespace homtype
