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

// Command-line front end: space -> statistics -> cubes -> norms ->
// characterization, with JSON or CSV reports.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "homtype/dyadic.h"
#include "homtype/embed.h"
#include "homtype/gallery.h"
#include "homtype/maximal.h"
#include "homtype/report.h"
#include "homtype/seqnorm.h"
#include "homtype/space.h"

namespace homtype {
namespace {

struct Globals {
  uint64_t seed = kDefaultSeed;
  int threads = 1;
  std::string out;
  std::string format = "json";
};

struct SpaceArgs {
  std::string path;
  std::string kind = "euclidean_grid";
  gallery::Spec spec;
};

struct CubeArgs {
  std::optional<double> delta;
  std::optional<double> c0;
  std::optional<double> C0;
  std::optional<double> a0;
};

struct NormArgs {
  std::string family = "besov";
  std::string variant = "homogeneous";
  bool exclude_k0 = false;
};

void AddSpaceOptions(CLI::App* cmd, SpaceArgs& args) {
  cmd->add_option("--space", args.path, "Space file (JSON)");
  cmd->add_option("--gallery", args.kind,
                  "euclidean_grid | weighted_grid | cantor | snowflake");
  cmd->add_option("--n", args.spec.n, "Points per axis");
  cmd->add_option("--dim", args.spec.dim, "Dimension (1-3)");
  cmd->add_option("--depth", args.spec.depth, "Cantor depth");
  cmd->add_option("--alpha", args.spec.alpha, "Weight exponent inside the unit ball");
  cmd->add_option("--beta", args.spec.beta, "Weight exponent outside the unit ball");
  cmd->add_option("--extent", args.spec.extent, "Half-width of the weighted grid box");
  cmd->add_option("--e", args.spec.exponent, "Snowflake exponent in (0, 1]");
}

void AddCubeOptions(CLI::App* cmd, CubeArgs& args) {
  cmd->add_option("--delta", args.delta, "Scale ratio delta");
  cmd->add_option("--c0", args.c0, "Net separation constant");
  cmd->add_option("--C0", args.C0, "Net covering constant");
  cmd->add_option("--A0", args.a0, "Quasi-triangle constant");
}

void AddNormOptions(CLI::App* cmd, NormArgs& args) {
  cmd->add_option("--family", args.family, "besov | triebel_lizorkin");
  cmd->add_option("--variant", args.variant, "homogeneous | inhomogeneous");
  cmd->add_flag("--exclude-k0", args.exclude_k0,
                "Start inhomogeneous sums at k = 1 instead of k = 0");
}

FiniteHomSpace LoadOrBuild(const SpaceArgs& args) {
  if (!args.path.empty()) return gallery::LoadSpace(args.path);
  gallery::Spec spec = args.spec;
  spec.kind = gallery::ParseKind(args.kind);
  return gallery::Build(spec);
}

Json SpaceSummary(const SpaceArgs& args, const FiniteHomSpace& space) {
  Json out = Json::object();
  if (!args.path.empty()) {
    out["source"] = args.path;
  } else {
    out["source"] = args.kind;
    const gallery::Spec& s = args.spec;
    switch (gallery::ParseKind(args.kind)) {
      case gallery::Kind::kEuclideanGrid:
        out["spec"] = {{"n", s.n}, {"dim", s.dim}};
        break;
      case gallery::Kind::kWeightedGrid:
        out["spec"] = {{"n", s.n}, {"dim", s.dim}, {"alpha", s.alpha},
                       {"beta", s.beta}, {"extent", s.extent}};
        break;
      case gallery::Kind::kCantor:
        out["spec"] = {{"depth", s.depth}};
        break;
      case gallery::Kind::kSnowflake:
        out["spec"] = {{"n", s.n}, {"dim", s.dim}, {"e", s.exponent}};
        break;
      case gallery::Kind::kFile:
        break;
    }
  }
  out["n"] = space.size();
  out["dim"] = space.dim();
  out["metric"] = space.metric_name();
  out["total_mass"] = space.total_mass();
  out["diameter"] = space.diameter();
  out["r_floor"] = space.r_floor();
  return out;
}

// Reference exponent for the lower-bound checks: explicit flag, then the
// space file, then the dimension of a lattice, then the measured growth.
std::pair<double, std::string> ReferenceExponent(const SpaceArgs& args,
                                                 const FiniteHomSpace& space,
                                                 std::optional<double> flag,
                                                 int threads) {
  if (flag) return {*flag, "flag"};
  if (space.declared_omega) return {*space.declared_omega, "declared"};
  if (args.path.empty()) {
    switch (gallery::ParseKind(args.kind)) {
      case gallery::Kind::kEuclideanGrid:
      case gallery::Kind::kWeightedGrid:
        return {static_cast<double>(space.dim()), "dimension"};
      case gallery::Kind::kSnowflake:
        return {space.dim() / args.spec.exponent, "dimension/e"};
      default:
        break;
    }
  }
  if (space.size() < 2) return {1., "default"};
  const GrowthExponent g = EstimateGrowthExponent(space, DefaultEstimatorRadii(space), threads);
  return {g.exponent, "growth_exponent"};
}

double ResolveA0(const CubeArgs& args, const FiniteHomSpace& space) {
  if (args.a0) return *args.a0;
  if (space.declared_a0) return *space.declared_a0;
  return EstimateQuasiTriangleConstant(space).value;
}

// `fine` selects the defaults of the characterization commands, which
// need more than one resolved level: delta = 1/16 with c0 = C0 = 1 when
// admissible.
NetConstants ResolveConstants(const CubeArgs& args, const FiniteHomSpace& space,
                              bool fine) {
  NetConstants c;
  c.a0 = ResolveA0(args, space);
  c.c0 = args.c0.value_or(1.);
  c.C0 = args.C0.value_or(fine ? 1. : 2.);
  if (args.delta) {
    c.delta = *args.delta;
  } else if (fine && 12. * c.a0 * c.a0 * c.a0 * c.C0 / 16. <= c.c0) {
    c.delta = 1. / 16.;
  } else {
    c.delta = DefaultDelta(c.a0, c.c0, c.C0);
  }
  CheckAdmissible(c);
  return c;
}

CubeSystem MakeCubes(const FiniteHomSpace& space, const NetConstants& c,
                     uint64_t seed) {
  const LevelWindow window = DefaultLevelWindow(space, c);
  return BuildCubes(BuildNets(space, c, window, seed), space);
}

Json ConstantsJson(const NetConstants& c) {
  return {{"delta", c.delta}, {"c0", c.c0}, {"C0", c.C0}, {"A0", c.a0}};
}

NormParams MakeNormParams(const NormArgs& args, double s, double p, double q) {
  NormParams params;
  params.family = ParseFamily(args.family);
  params.variant = ParseVariant(args.variant);
  params.include_k0 = !args.exclude_k0;
  params.s = s;
  params.p = p;
  params.q = q;
  return params;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(kExitUsage, "file not found: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(kExitUsage, path + ": " + e.what());
  }
}

void Emit(const Globals& g, const Json& report) {
  if (g.format != "json" && g.format != "csv") {
    throw Error(kExitUsage, "unknown format: " + g.format);
  }
  const std::string text = g.format == "json" ? DumpJson(report) : DumpCsv(report);
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw Error(kExitUsage, "cannot write " + g.out);
  out << text;
}

Json Header(const std::string& command, const Globals& g) {
  return {{"schema", kReportSchema}, {"command", command}, {"seed", g.seed}};
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  SpaceArgs space;
  std::optional<double> omega;
  std::optional<double> kappa;
  std::optional<double> r_min;
  std::optional<double> r_max;
  double rescale = 1.;
  bool local = false;
};

int RunAnalyze(const Globals& g, const AnalyzeArgs& a) {
  const FiniteHomSpace space = LoadOrBuild(a.space);
  SamplingOptions sampling;
  sampling.seed = g.seed;
  Json report = Header("analyze", g);
  report["space"] = SpaceSummary(a.space, space);
  const QuasiMetricVerdict validation = ValidateQuasiMetric(space, sampling);
  const A0Estimate a0 = EstimateQuasiTriangleConstant(space, sampling);
  const std::vector<double> radii = DefaultEstimatorRadii(space);
  const DoublingEstimate doubling = EstimateDoubling(space, radii);
  report["A0_est"] = a0.value;
  report["C_doubling_est"] = doubling.c_doubling;
  report["omega_est"] = doubling.omega;
  const auto [omega, omega_source] = ReferenceExponent(a.space, space, a.omega, g.threads);
  report["omega_used"] = omega;
  report["omega_source"] = omega_source;

  LowerBoundOptions options;
  options.rescale = a.rescale;
  options.threads = g.threads;
  const LowerBoundReport global =
      CheckLowerBound(space, omega, a.r_min.value_or(space.r_floor()),
                      a.r_max.value_or(space.diameter()), options);
  const LowerBoundReport* decisive = &global;
  LowerBoundReport local;
  if (a.local) {
    local = CheckLocalLowerBound(space, omega, options);
    decisive = &local;
  }
  report["verdict"] = VerdictName(decisive->verdict);
  if (a.kappa) {
    ReverseDoublingOptions rd;
    rd.threads = g.threads;
    const ReverseDoublingReport reverse = CheckReverseDoubling(space, *a.kappa, rd);
    report["kappa_est"] = reverse.verdict == Verdict::kPass ? Json(*a.kappa) : Json(nullptr);
    report["reverse_doubling"] = ToJson(reverse);
  }
  report["validation"] = ToJson(validation);
  report["a0"] = ToJson(a0);
  report["doubling"] = ToJson(doubling);
  if (space.size() >= 2) {
    report["growth"] = ToJson(EstimateGrowthExponent(space, radii, g.threads));
  }
  report["lower_bound"] = ToJson(global);
  if (a.local) report["local_lower_bound"] = ToJson(local);
  report["witnesses"] = ToJson(*decisive)["witnesses"];
  Emit(g, report);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CubesArgs {
  SpaceArgs space;
  CubeArgs cubes;
  std::string cubes_out;
};

int RunCubes(const Globals& g, const CubesArgs& a) {
  const FiniteHomSpace space = LoadOrBuild(a.space);
  const NetConstants constants = ResolveConstants(a.cubes, space, false);
  const CubeSystem cubes = MakeCubes(space, constants, g.seed);
  const AxiomReport axioms = VerifyCubeAxioms(cubes, space);
  const ChainReport chain = MaxSingleChildChain(cubes);
  Json report = Header("cubes", g);
  report["space"] = SpaceSummary(a.space, space);
  report["constants"] = ConstantsJson(constants);
  report["window"] = {{"k_min", cubes.window.k_min}, {"k_max", cubes.window.k_max}};
  report["c1"] = cubes.c1;
  report["C1"] = cubes.C1;
  report["verdict"] = axioms.pass && chain.within_bound ? "PASS" : "FAIL";
  report["atomic"] = space.size() == 1 || chain.atomic;
  report["axioms"] = ToJson(axioms);
  report["chain"] = ToJson(chain);
  Json levels = Json::array();
  for (const CubeLevel& level : cubes.levels) {
    levels.push_back({{"k", level.k}, {"cubes", level.centers.size()}});
  }
  report["levels"] = levels;
  Json witnesses = Json::array();
  for (const AxiomViolation& v : axioms.violations) {
    witnesses.push_back({{"axiom", v.axiom}, {"k", v.k}, {"cube", v.cube},
                         {"point", v.point}, {"detail", v.detail}});
  }
  report["witnesses"] = witnesses;
  if (!a.cubes_out.empty()) {
    std::ofstream out(a.cubes_out, std::ios::binary);
    if (!out) throw Error(kExitUsage, "cannot write " + a.cubes_out);
    out << DumpJson(ToJson(cubes));
  } else {
    report["cube_system"] = ToJson(cubes);
  }
  Emit(g, report);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct NormsArgs {
  SpaceArgs space;
  CubeArgs cubes;
  NormArgs norm;
  std::string cubes_in;
  std::string sequence;
  std::string index_mode = "new_centers";
  int j_min = 0;
  int j_max = 4;
  double s = 0.;
  double p = 2.;
  double q = 2.;
};

int RunNorms(const Globals& g, const NormsArgs& a) {
  const FiniteHomSpace space = LoadOrBuild(a.space);
  IndexSet index;
  Json constants_json = nullptr;
  if (a.index_mode == "standard_dyadic") {
    index = MakeStandardDyadicIndexSet(space, a.j_min, a.j_max);
  } else {
    const IndexMode mode = a.index_mode == "all_centers" ? IndexMode::kAllCenters
                                                         : IndexMode::kNewCenters;
    if (a.index_mode != "all_centers" && a.index_mode != "new_centers") {
      throw Error(kExitUsage, "unknown index mode: " + a.index_mode);
    }
    CubeSystem cubes;
    if (!a.cubes_in.empty()) {
      cubes = CubeSystemFromJson(ReadJsonFile(a.cubes_in), space);
    } else {
      cubes = MakeCubes(space, ResolveConstants(a.cubes, space, false), g.seed);
    }
    constants_json = ConstantsJson(cubes.constants);
    index = MakeIndexSet(cubes, space, mode);
  }
  const NormParams params = MakeNormParams(a.norm, a.s, a.p, a.q);

  CoefSequence seq;
  std::string source;
  if (!a.sequence.empty()) {
    seq = SequenceFromJson(ReadJsonFile(a.sequence));
    source = a.sequence;
  } else {
    // Random multi-level sequence keyed by the seed.
    const auto batch = GenerateBatch(index, params, 4, g.seed);
    seq = batch[2].seq;
    source = "random";
  }
  Json report = Header("norms", g);
  report["space"] = SpaceSummary(a.space, space);
  report["index_mode"] = IndexModeName(index.mode);
  report["delta"] = index.delta;
  report["constants"] = constants_json;
  report["sequence"] = source;
  report["coefficients"] = seq.size();
  report["family"] = FamilyName(params.family);
  report["s"] = params.s;
  report["p"] = std::isinf(params.p) ? Json("inf") : Json(params.p);
  report["q"] = std::isinf(params.q) ? Json("inf") : Json(params.q);
  report["variant"] = VariantName(params.variant);
  report["include_k0"] = params.include_k0;
  report["value"] = SequenceNorm(index, seq, params);
  if (params.family == Family::kTriebelLizorkin) {
    report["layer_cake_value"] = LayerCakeTlNorm(index, seq, params);
  }
  Emit(g, report);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EmbedArgs {
  SpaceArgs space;
  CubeArgs cubes;
  NormArgs norm;
  std::optional<double> omega;
  double eta = 1.;
  double s2 = 1.;
  double p2 = 1.;
  double q2 = 2.;
  std::optional<double> s1;
  double p1 = 2.;
  std::optional<double> q1;
  int batch = 256;
};

int RunEmbed(const Globals& g, const EmbedArgs& a) {
  const FiniteHomSpace space = LoadOrBuild(a.space);
  const auto [omega, omega_source] = ReferenceExponent(a.space, space, a.omega, g.threads);
  EmbedParams params;
  params.omega = omega;
  params.eta = a.eta;
  params.source = MakeNormParams(a.norm, a.s2, a.p2, a.q2);
  const double inv_p1 = std::isinf(a.p1) ? 0. : 1. / a.p1;
  const double inv_p2 = std::isinf(a.p2) ? 0. : 1. / a.p2;
  const double s1 = a.s1.value_or(a.s2 - omega * inv_p2 + omega * inv_p1);
  params.target = MakeNormParams(a.norm, s1, a.p1, a.q1.value_or(a.q2));
  ValidateEmbedParams(params);

  Json report;
  CharacterizeReport result;
  if (space.size() == 1) {
    CubeSystem none;
    result = Characterize(space, none, params);
  } else {
    const NetConstants constants = ResolveConstants(a.cubes, space, true);
    const CubeSystem cubes = MakeCubes(space, constants, g.seed);
    CharacterizeOptions options;
    options.batch_size = a.batch;
    options.seed = g.seed;
    options.threads = g.threads;
    result = Characterize(space, cubes, params, options);
  }
  report = ToJson(result, params);
  report["seed"] = g.seed;
  report["space"] = SpaceSummary(a.space, space);
  report["omega_source"] = omega_source;
  Emit(g, report);
  if (!result.consistent) {
    std::cerr << "characterization discrepancy: " << result.discrepancies.front() << "\n";
    return kExitDiscrepancy;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct KernelArgs {
  SpaceArgs space;
  CubeArgs cubes;
  std::optional<double> omega;
  double p2 = 2.;
  std::optional<double> r;
  double epsilon = 0.5;
  std::optional<double> gamma;
  double eta = 1.;
  int calibration = 100;
  int trials = 100;
};

int RunKernel(const Globals& g, const KernelArgs& a) {
  const FiniteHomSpace space = LoadOrBuild(a.space);
  const auto [omega, omega_source] = ReferenceExponent(a.space, space, a.omega, g.threads);
  KernelParams params;
  params.omega = omega;
  params.r_exp = a.r.value_or(DefaultKernelExponent(a.p2));
  params.epsilon = a.epsilon;
  params.eta = a.eta;
  params.gamma = a.gamma.value_or(omega + 1.);
  ValidateKernelParams(params);
  const NetConstants constants = ResolveConstants(a.cubes, space, true);
  const CubeSystem cubes = MakeCubes(space, constants, g.seed);
  const IndexSet index = MakeIndexSet(cubes, space);

  const KernelCalibration cal =
      CalibrateKernelConstant(index, space, params, a.calibration, g.seed, g.threads);
  const std::vector<KernelTrial> fresh = RandomKernelTrials(index, a.trials, g.seed + 1);
  std::vector<double> ratios(fresh.size());
  ParallelFor(a.trials, g.threads, [&](int i) {
    const KernelTrial& t = fresh[i];
    ratios[i] = KernelMaximalBoundCheck(index, space, t.seq, t.k, t.j, t.x, params,
                                        cal.constant)
                    .ratio;
  });
  int violations = 0;
  double max_ratio = 0.;
  Json witnesses = Json::array();
  for (int i = 0; i < a.trials; ++i) {
    max_ratio = std::max(max_ratio, ratios[i]);
    if (ratios[i] > 2. * cal.constant) {
      ++violations;
      witnesses.push_back({{"trial", i}, {"k", fresh[i].k}, {"j", fresh[i].j},
                           {"x", fresh[i].x}, {"ratio", ratios[i]}});
    }
  }
  Json report = Header("kernel-check", g);
  report["space"] = SpaceSummary(a.space, space);
  report["constants"] = ConstantsJson(constants);
  report["params"] = ToJson(params);
  report["omega_source"] = omega_source;
  report["kernel_constant_normalization"] = 1.;
  report["volume"] = "symmetrized: mass(B(x,d)) + mass(B(y,d))";
  report["calibration"] = {{"constant", cal.constant}, {"trials", cal.trials},
                           {"witness_trial", cal.witness_trial}};
  report["fresh_trials"] = a.trials;
  report["max_fresh_ratio"] = max_ratio;
  report["tolerance"] = 2.;
  report["violations"] = violations;
  report["verdict"] = violations == 0 ? "PASS" : "FAIL";
  report["witnesses"] = witnesses;
  Emit(g, report);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct MaximalArgs {
  SpaceArgs space;
  std::string function;
  int family = 4;
  double p = 2.;
  double q = 2.;
  std::optional<double> r;
};

int RunMaximal(const Globals& g, const MaximalArgs& a) {
  const FiniteHomSpace space = LoadOrBuild(a.space);
  Rng rng(g.seed);
  std::vector<double> f;
  if (!a.function.empty()) {
    f = ReadJsonFile(a.function).get<std::vector<double>>();
  } else {
    for (int i = 0; i < space.size(); ++i) f.push_back(rng.Uniform(-1., 1.));
  }
  const std::vector<double> mf = HlMaximal(space, f, g.threads);
  int dominated = 0;
  for (int i = 0; i < space.size(); ++i) dominated += mf[i] >= std::fabs(f[i]);

  std::vector<std::vector<double>> fam(a.family, std::vector<double>(space.size()));
  for (auto& fk : fam) {
    for (double& v : fk) v = rng.Uniform(-1., 1.);
  }
  const double r = a.r.value_or(0.5 * std::min(a.p, a.q));
  const FsResult fs = FsVectorMaximalCheck(space, fam, a.p, a.q, r, g.threads);

  Json report = Header("maximal", g);
  report["space"] = SpaceSummary(a.space, space);
  report["function"] = a.function.empty() ? "random" : a.function;
  report["domination_holds"] = dominated == space.size();
  report["radii"] = "all distinct distances plus the whole space";
  report["maximal"] = mf;
  report["vector_maximal"] = {{"family_size", a.family}, {"p", a.p}, {"q", a.q}, {"r", r},
                              {"lhs", fs.lhs}, {"rhs", fs.rhs}, {"ratio", fs.ratio}};
  Emit(g, report);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct GalleryArgs {
  SpaceArgs space;
  std::optional<double> ap;
  int j_min = 0;
  int j_max = 6;
};

int RunGallery(const Globals& g, const GalleryArgs& a) {
  const FiniteHomSpace space = LoadOrBuild(a.space);
  Json report = Header("gallery", g);
  report["space_summary"] = SpaceSummary(a.space, space);
  if (a.ap) {
    const IndexSet dyadic = MakeStandardDyadicIndexSet(space, a.j_min, a.j_max);
    report["ap_weight"] = ToJson(ApWeightCheck(dyadic, space.weights(), *a.ap));
    report["ap_weight"]["p"] = *a.ap;
  }
  report["space"] = SpaceToJson(space);
  Emit(g, report);
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Dyadic cubes, sequence norms and embedding checks on finite spaces"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker cap")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.fallthrough();

  AnalyzeArgs analyze;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Space statistics and lower-bound checks");
  AddSpaceOptions(analyze_cmd, analyze.space);
  analyze_cmd->add_option("--omega", analyze.omega, "Reference exponent");
  analyze_cmd->add_option("--kappa", analyze.kappa, "Run the reverse doubling check");
  analyze_cmd->add_option("--r-min", analyze.r_min, "Smallest radius");
  analyze_cmd->add_option("--r-max", analyze.r_max, "Largest radius");
  analyze_cmd->add_option("--rescale", analyze.rescale, "Distance factor, 0 for 1/diameter");
  analyze_cmd->add_flag("--check-local-lower-bound", analyze.local, "Also run the local check");

  CubesArgs cubes;
  CLI::App* cubes_cmd = app.add_subcommand("cubes", "Build and verify a dyadic cube system");
  AddSpaceOptions(cubes_cmd, cubes.space);
  AddCubeOptions(cubes_cmd, cubes.cubes);
  cubes_cmd->add_option("--cubes-out", cubes.cubes_out, "Write the cube system here");

  NormsArgs norms;
  CLI::App* norms_cmd = app.add_subcommand("norms", "Sequence norms");
  AddSpaceOptions(norms_cmd, norms.space);
  AddCubeOptions(norms_cmd, norms.cubes);
  AddNormOptions(norms_cmd, norms.norm);
  norms_cmd->add_option("--cubes", norms.cubes_in, "Cube system file");
  norms_cmd->add_option("--sequence", norms.sequence, "Coefficient file");
  norms_cmd->add_option("--index-mode", norms.index_mode,
                        "new_centers | all_centers | standard_dyadic");
  norms_cmd->add_option("--j-min", norms.j_min, "Coarsest standard dyadic level");
  norms_cmd->add_option("--j-max", norms.j_max, "Finest standard dyadic level");
  norms_cmd->add_option("--s", norms.s, "Smoothness");
  norms_cmd->add_option("--p", norms.p, "Integrability (inf allowed)");
  norms_cmd->add_option("--q", norms.q, "Summability (inf allowed)");

  EmbedArgs embed;
  CLI::App* embed_cmd = app.add_subcommand("embed-test", "Embedding characterization");
  AddSpaceOptions(embed_cmd, embed.space);
  AddCubeOptions(embed_cmd, embed.cubes);
  AddNormOptions(embed_cmd, embed.norm);
  embed_cmd->add_option("--omega", embed.omega, "Reference exponent");
  embed_cmd->add_option("--eta", embed.eta, "Wavelet regularity");
  embed_cmd->add_option("--s2", embed.s2, "Source smoothness");
  embed_cmd->add_option("--p2", embed.p2, "Source integrability");
  embed_cmd->add_option("--q2", embed.q2, "Source summability");
  embed_cmd->add_option("--s1", embed.s1, "Target smoothness (default: on the trace line)");
  embed_cmd->add_option("--p1", embed.p1, "Target integrability");
  embed_cmd->add_option("--q1", embed.q1, "Target summability (default: q2)");
  embed_cmd->add_option("--batch", embed.batch, "Sequences per scan")->check(CLI::PositiveNumber);

  KernelArgs kernel;
  CLI::App* kernel_cmd = app.add_subcommand("kernel-check", "Maximal kernel bound stability");
  AddSpaceOptions(kernel_cmd, kernel.space);
  AddCubeOptions(kernel_cmd, kernel.cubes);
  kernel_cmd->add_option("--omega", kernel.omega, "Reference exponent");
  kernel_cmd->add_option("--p2", kernel.p2, "Source integrability; r = p2/(1+p2)");
  kernel_cmd->add_option("--r", kernel.r, "Override r");
  kernel_cmd->add_option("--epsilon", kernel.epsilon, "Decay exponent");
  kernel_cmd->add_option("--gamma", kernel.gamma, "Distance exponent (default omega + 1)");
  kernel_cmd->add_option("--eta", kernel.eta, "Wavelet regularity");
  kernel_cmd->add_option("--calibration", kernel.calibration, "Calibration trials")
      ->check(CLI::PositiveNumber);
  kernel_cmd->add_option("--trials", kernel.trials, "Fresh trials")->check(CLI::PositiveNumber);

  MaximalArgs maximal;
  CLI::App* maximal_cmd = app.add_subcommand("maximal", "Maximal function");
  AddSpaceOptions(maximal_cmd, maximal.space);
  maximal_cmd->add_option("--function", maximal.function, "JSON list of point values");
  maximal_cmd->add_option("--family", maximal.family, "Functions in the vector check")
      ->check(CLI::PositiveNumber);
  maximal_cmd->add_option("--p", maximal.p, "Outer exponent");
  maximal_cmd->add_option("--q", maximal.q, "Inner exponent");
  maximal_cmd->add_option("--r", maximal.r, "Exponent below min(p, q)");

  GalleryArgs gal;
  CLI::App* gallery_cmd = app.add_subcommand("gallery", "Build a gallery space");
  AddSpaceOptions(gallery_cmd, gal.space);
  gallery_cmd->add_option("--ap", gal.ap, "Run the A_p check with this p");
  gallery_cmd->add_option("--j-min", gal.j_min, "Coarsest dyadic level for --ap");
  gallery_cmd->add_option("--j-max", gal.j_max, "Finest dyadic level for --ap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) return RunAnalyze(g, analyze);
    if (*cubes_cmd) return RunCubes(g, cubes);
    if (*norms_cmd) return RunNorms(g, norms);
    if (*embed_cmd) return RunEmbed(g, embed);
    if (*kernel_cmd) return RunKernel(g, kernel);
    if (*maximal_cmd) return RunMaximal(g, maximal);
    if (*gallery_cmd) return RunGallery(g, gal);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace homtype

int main(int argc, char** argv) { return homtype::Main(argc, argv); }
