#pragma once

// JSON encodings for domains, maps, evaluation results and reports.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypmetrics/analysis/constants.hpp"
#include "hypmetrics/analysis/report.hpp"
#include "hypmetrics/domain.hpp"
#include "hypmetrics/error.hpp"
#include "hypmetrics/metrics.hpp"
#include "hypmetrics/mobius.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics::io {

using nlohmann::json;

inline json to_json(const Point& p) {
  json a = json::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

inline Point point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, "point must be a nonempty array");
  std::vector<double> c;
  for (const json& v : j) {
    if (!v.is_number()) throw Error(ErrorCode::ParseError, "point coordinates must be numbers");
    c.push_back(v.get<double>());
  }
  return Point(std::move(c));
}

/// "1,0,-0.5" -> Point
inline Point parse_coords(const std::string& text) {
  std::vector<double> c;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      c.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad coordinate list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  try {
    return Point(std::move(c));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

template <typename T>
T require_field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "' has the wrong type");
  }
}

inline json to_json(const Domain& d) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UnitBall>) {
          return {{"kind", "unit_ball"}, {"dim", v.dim}};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return {{"kind", "ball"}, {"center", to_json(v.center)}, {"radius", v.radius}};
        } else if constexpr (std::is_same_v<T, PuncturedUnitBall>) {
          return {{"kind", "punctured_unit_ball"}, {"a", to_json(v.puncture)}};
        } else if constexpr (std::is_same_v<T, PuncturedSpace>) {
          return {{"kind", "punctured_space"}, {"p", to_json(v.puncture)}};
        } else {
          if (!v.polygon_vertices().empty()) {
            json verts = json::array();
            for (const Point& p : v.polygon_vertices()) verts.push_back(to_json(p));
            return {{"kind", "polygon"}, {"vertices", verts}, {"samples_per_edge", v.samples_per_edge()}};
          }
          return {{"kind", "sampled"}, {"label", v.label()}, {"boundary_samples", v.boundary().size()}};
        }
      },
      d.variant());
}

/// Parses {"kind": unit_ball|ball|punctured_unit_ball|punctured_space|polygon, ...}.
/// Structural problems raise ParseError; invalid geometry raises the
/// domain's own error codes.
inline Domain domain_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "domain must be a JSON object");
  const std::string kind = require_field<std::string>(j, "kind");
  if (kind == "unit_ball") {
    const auto dim = require_field<long long>(j, "dim");
    if (dim < 1) throw Error(ErrorCode::ParseError, "dim must be >= 1");
    return Domain::unit_ball(static_cast<std::size_t>(dim));
  }
  if (kind == "ball") {
    return Domain::ball(point_from_json(j.at("center")), require_field<double>(j, "radius"));
  }
  if (kind == "punctured_unit_ball") {
    if (!j.contains("a")) throw Error(ErrorCode::ParseError, "missing field 'a'");
    return Domain::punctured_unit_ball(point_from_json(j.at("a")));
  }
  if (kind == "punctured_space") {
    if (!j.contains("p")) throw Error(ErrorCode::ParseError, "missing field 'p'");
    return Domain::punctured_space(point_from_json(j.at("p")));
  }
  if (kind == "polygon") {
    if (!j.contains("vertices") || !j.at("vertices").is_array()) {
      throw Error(ErrorCode::ParseError, "polygon needs a 'vertices' array");
    }
    std::vector<Point> verts;
    for (const json& v : j.at("vertices")) verts.push_back(point_from_json(v));
    const std::size_t per_edge = j.contains("samples_per_edge") ? j.at("samples_per_edge").get<std::size_t>() : 1024;
    return polygon_domain(std::move(verts), per_edge);
  }
  throw Error(ErrorCode::ParseError, "unknown domain kind '" + kind + "'");
}

inline json to_json(const MobiusMap& m) {
  json chain = json::array();
  for (const MobiusAtom& atom : m.chain()) {
    chain.push_back(std::visit(
        [](const auto& a) -> json {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, SphereInversion>) {
            return {{"kind", "inversion"}, {"center", to_json(a.center)}, {"radius", a.radius}};
          } else if constexpr (std::is_same_v<T, Orthogonal>) {
            json rows = json::array();
            for (std::size_t r = 0; r < a.matrix.size(); ++r) {
              json row = json::array();
              for (std::size_t c = 0; c < a.matrix.size(); ++c) row.push_back(a.matrix(r, c));
              rows.push_back(row);
            }
            return {{"kind", "orthogonal"}, {"matrix", rows}};
          } else if constexpr (std::is_same_v<T, Translation>) {
            return {{"kind", "translation"}, {"offset", to_json(a.offset)}};
          } else {
            return {{"kind", "scaling"}, {"factor", a.factor}};
          }
        },
        atom));
  }
  return {{"chain", chain}};
}

inline Matrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw Error(ErrorCode::ParseError, "matrix must be an array of rows");
  const std::size_t n = rows.size();
  std::vector<double> d;
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != n) throw Error(ErrorCode::ParseError, "matrix must be square");
    for (const json& v : row) {
      if (!v.is_number()) throw Error(ErrorCode::ParseError, "matrix entries must be numbers");
      d.push_back(v.get<double>());
    }
  }
  return Matrix(n, std::move(d));
}

/// {"chain":[{"kind":"inversion","center":[..],"radius":r}, {"kind":"orthogonal","matrix":[[..]]},
///           {"kind":"translation","offset":[..]}, {"kind":"scaling","factor":s}]}
inline MobiusMap map_from_json(const json& j) {
  if (!j.is_object() || !j.contains("chain") || !j.at("chain").is_array()) {
    throw Error(ErrorCode::ParseError, "map must be an object with a 'chain' array");
  }
  std::vector<MobiusAtom> chain;
  for (const json& atom : j.at("chain")) {
    const std::string kind = require_field<std::string>(atom, "kind");
    if (kind == "inversion") {
      chain.push_back(make_inversion(point_from_json(atom.at("center")), require_field<double>(atom, "radius")));
    } else if (kind == "orthogonal") {
      if (!atom.contains("matrix")) throw Error(ErrorCode::ParseError, "missing field 'matrix'");
      chain.push_back(make_orthogonal(matrix_from_json(atom.at("matrix"))));
    } else if (kind == "translation") {
      if (!atom.contains("offset")) throw Error(ErrorCode::ParseError, "missing field 'offset'");
      chain.push_back(Translation{point_from_json(atom.at("offset"))});
    } else if (kind == "scaling") {
      chain.push_back(make_scaling(require_field<double>(atom, "factor")));
    } else {
      throw Error(ErrorCode::ParseError, "unknown atom kind '" + kind + "'");
    }
  }
  return MobiusMap(std::move(chain));
}

inline json to_json(const EvalResult& r) {
  return {{"value", r.value},
          {"witness", r.witness ? to_json(*r.witness) : json(nullptr)},
          {"method", to_string(r.method)},
          {"err_bound", r.err_bound}};
}

inline json to_json(const ConstantSolveResult& r) {
  return {{"c", r.c}, {"t_star", r.t_star}, {"residual", r.residual}, {"iterations", r.iterations}};
}

// JSON has no infinities; non-finite margins are written as strings.
inline json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline json to_json(const VerificationReport& r) {
  json witness = nullptr;
  if (r.witness) {
    witness = {{"x", to_json(r.witness->x)},
               {"y", to_json(r.witness->y)},
               {"domain", r.witness->domain ? to_json(*r.witness->domain) : json(nullptr)}};
  }
  json out = {{"check", r.check_name},       {"samples", r.samples},
              {"seed", r.seed},              {"passed", r.passed},
              {"worst_margin", number_or_string(r.worst_margin)}, {"witness", witness}};
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out;
}

}  // namespace hypmetrics::io
