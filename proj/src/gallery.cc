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

#include "homtype/gallery.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace homtype {
namespace gallery {

namespace {

using nlohmann::json;

int TotalPoints(int n, int dim) {
  if (n < 1 || dim < 1 || dim > 3) {
    throw Error(kExitUsage, "grid needs n >= 1 and dim in {1, 2, 3}");
  }
  int64_t total = 1;
  for (int d = 0; d < dim; ++d) {
    total *= n;
    if (total > kMaxPoints) throw Error(kExitUsage, "size limit exceeded");
  }
  return static_cast<int>(total);
}

// Lattice coordinates: axis value a(i) for each of the dim digits of the
// flat index, last axis fastest.
template <typename AxisFn>
std::vector<double> Lattice(int n, int dim, AxisFn axis) {
  const int total = TotalPoints(n, dim);
  std::vector<double> coords(static_cast<size_t>(total) * dim);
  for (int p = 0; p < total; ++p) {
    int rest = p;
    for (int d = dim - 1; d >= 0; --d) {
      coords[static_cast<size_t>(p) * dim + d] = axis(rest % n);
      rest /= n;
    }
  }
  return coords;
}

FiniteHomSpace EuclideanGrid(int n, int dim, double exponent) {
  std::vector<double> coords = Lattice(n, dim, [n](int i) {
    return n == 1 ? 0.5 : static_cast<double>(i) / (n - 1);
  });
  const size_t total = coords.size() / dim;
  std::vector<double> weights(total, 1. / static_cast<double>(total));
  return FiniteHomSpace::FromPoints(dim, std::move(coords), std::move(weights),
                                    exponent);
}

// Cell-centred lattice on [-extent, extent]^dim; each point carries the
// weight density times its cell volume.
FiniteHomSpace WeightedGrid(const Spec& spec) {
  if (!(spec.alpha > -spec.dim)) {
    throw Error(kExitUsage, "weighted_grid requires alpha > -dim");
  }
  if (!(spec.extent > 0.)) throw Error(kExitUsage, "extent must be > 0");
  const double h = 2. * spec.extent / spec.n;
  std::vector<double> lattice = Lattice(spec.n, spec.dim, [&](int i) {
    return -spec.extent + (i + 0.5) * h;
  });
  const double cell = std::pow(h, spec.dim);
  std::vector<double> coords;
  std::vector<double> weights;
  const size_t total = lattice.size() / spec.dim;
  for (size_t p = 0; p < total; ++p) {
    double sq = 0.;
    for (int d = 0; d < spec.dim; ++d) {
      sq += lattice[p * spec.dim + d] * lattice[p * spec.dim + d];
    }
    const double w = PowerWeight(std::sqrt(sq), spec.alpha, spec.beta);
    if (!(w > 0.)) continue;
    for (int d = 0; d < spec.dim; ++d) coords.push_back(lattice[p * spec.dim + d]);
    weights.push_back(w * cell);
  }
  return FiniteHomSpace::FromPoints(spec.dim, std::move(coords),
                                    std::move(weights));
}

FiniteHomSpace Cantor(int depth) {
  if (depth < 0 || depth > kMaxCantorDepth) {
    throw Error(kExitUsage, "cantor depth limit exceeded");
  }
  std::vector<double> left = {0.};
  double length = 1.;
  for (int level = 0; level < depth; ++level) {
    length /= 3.;
    std::vector<double> next;
    next.reserve(left.size() * 2);
    for (double a : left) {
      next.push_back(a);
      next.push_back(a + 2. * length);
    }
    left = std::move(next);
  }
  std::vector<double> coords;
  for (double a : left) coords.push_back(a + 0.5 * length);
  std::vector<double> weights(coords.size(),
                              1. / static_cast<double>(coords.size()));
  return FiniteHomSpace::FromPoints(1, std::move(coords), std::move(weights));
}

[[noreturn]] void SchemaError(const std::string& where,
                              const std::string& what) {
  throw Error(kExitUsage, "space file: " + where + ": " + what);
}

double ReadNumber(const json& node, const std::string& where) {
  if (!node.is_number()) SchemaError(where, "expected a number");
  return node.get<double>();
}

}  // namespace

Kind ParseKind(const std::string& name) {
  if (name == "euclidean_grid") return Kind::kEuclideanGrid;
  if (name == "weighted_grid") return Kind::kWeightedGrid;
  if (name == "cantor") return Kind::kCantor;
  if (name == "snowflake") return Kind::kSnowflake;
  if (name == "file") return Kind::kFile;
  throw Error(kExitUsage, "unknown gallery kind: " + name);
}

std::string KindName(Kind kind) {
  switch (kind) {
    case Kind::kEuclideanGrid:
      return "euclidean_grid";
    case Kind::kWeightedGrid:
      return "weighted_grid";
    case Kind::kCantor:
      return "cantor";
    case Kind::kSnowflake:
      return "snowflake";
    case Kind::kFile:
      return "file";
  }
  return "file";
}

double PowerWeight(double norm, double alpha, double beta) {
  if (norm == 0.) return alpha == 0. ? 1. : 0.;
  return std::pow(norm, norm <= 1. ? alpha : beta);
}

FiniteHomSpace Build(const Spec& spec) {
  switch (spec.kind) {
    case Kind::kEuclideanGrid:
      return EuclideanGrid(spec.n, spec.dim, 1.);
    case Kind::kWeightedGrid:
      return WeightedGrid(spec);
    case Kind::kCantor:
      return Cantor(spec.depth);
    case Kind::kSnowflake:
      if (!(spec.exponent > 0.) || spec.exponent > 1.) {
        throw Error(kExitUsage, "snowflake exponent must lie in (0, 1]");
      }
      return EuclideanGrid(spec.n, spec.dim, spec.exponent);
    case Kind::kFile:
      return LoadSpace(spec.path);
  }
  throw Error(kExitUsage, "unknown gallery kind");
}

FiniteHomSpace LoadSpace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(kExitUsage, "file not found: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSpace(buffer.str());
}

FiniteHomSpace ParseSpace(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(kExitUsage, std::string("space file: parse error: ") + e.what());
  }
  if (!doc.is_object()) SchemaError("root", "expected an object");
  if (!doc.contains("weights") || !doc["weights"].is_array()) {
    SchemaError("weights", "missing array");
  }
  std::vector<double> weights;
  for (size_t i = 0; i < doc["weights"].size(); ++i) {
    const std::string where = "weights[" + std::to_string(i) + "]";
    const double w = ReadNumber(doc["weights"][i], where);
    if (!(w > 0.)) throw Error(kExitUsage, "invalid measure at " + where);
    weights.push_back(w);
  }
  const int n = static_cast<int>(weights.size());
  if (n == 0) throw Error(kExitUsage, "empty space");
  if (n > kMaxPoints) throw Error(kExitUsage, "size limit exceeded");
  std::string metric = doc.value("metric", std::string());
  const bool has_points = doc.contains("points");
  const bool has_dist = doc.contains("dist");
  if (has_points == has_dist) {
    SchemaError("root", "exactly one of \"points\" and \"dist\" is required");
  }

  FiniteHomSpace space;
  if (has_dist) {
    if (metric.empty()) metric = "explicit";
    if (metric != "explicit") SchemaError("metric", "dist requires explicit");
    const json& rows = doc["dist"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
      SchemaError("dist", "expected " + std::to_string(n) + " rows");
    }
    std::vector<double> table;
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
        SchemaError("dist[" + std::to_string(i) + "]",
                    "expected " + std::to_string(n) + " entries");
      }
      for (int j = 0; j < n; ++j) {
        table.push_back(ReadNumber(
            rows[i][j], "dist[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
      }
    }
    space = FiniteHomSpace::FromTable(n, std::move(table), std::move(weights));
  } else {
    double exponent = 1.;
    if (metric.empty()) metric = "euclidean";
    if (metric.rfind("snowflake:", 0) == 0) {
      try {
        exponent = std::stod(metric.substr(10));
      } catch (const std::exception&) {
        SchemaError("metric", "bad snowflake exponent");
      }
    } else if (metric != "euclidean") {
      SchemaError("metric", "points require euclidean or snowflake:<e>");
    }
    const json& pts = doc["points"];
    if (!pts.is_array() || static_cast<int>(pts.size()) != n) {
      SchemaError("points", "expected " + std::to_string(n) + " points");
    }
    int dim = -1;
    std::vector<double> coords;
    for (int i = 0; i < n; ++i) {
      const std::string where = "points[" + std::to_string(i) + "]";
      if (!pts[i].is_array() || pts[i].empty()) SchemaError(where, "expected coordinates");
      if (dim < 0) dim = static_cast<int>(pts[i].size());
      if (static_cast<int>(pts[i].size()) != dim) SchemaError(where, "dimension mismatch");
      for (int c = 0; c < dim; ++c) {
        coords.push_back(ReadNumber(pts[i][c], where + "[" + std::to_string(c) + "]"));
      }
    }
    space = FiniteHomSpace::FromPoints(dim, std::move(coords),
                                       std::move(weights), exponent);
  }
  if (doc.contains("declared_A0")) {
    space.declared_a0 = ReadNumber(doc["declared_A0"], "declared_A0");
    if (*space.declared_a0 < 1.) SchemaError("declared_A0", "must be >= 1");
  }
  if (doc.contains("declared_omega")) {
    space.declared_omega = ReadNumber(doc["declared_omega"], "declared_omega");
    if (!(*space.declared_omega > 0.)) SchemaError("declared_omega", "must be > 0");
  }
  const QuasiMetricVerdict verdict = ValidateQuasiMetric(space);
  if (!verdict.ok) {
    const MetricViolation& v = verdict.violations.front();
    std::ostringstream msg;
    msg << "space file: " << v.kind << " violated at (";
    for (size_t i = 0; i < v.ids.size(); ++i) msg << (i ? "," : "") << v.ids[i];
    msg << ")";
    throw Error(kExitUsage, msg.str());
  }
  return space;
}

}  // namespace gallery
}  // namespace homtype
