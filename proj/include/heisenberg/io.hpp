#pragma once

// JSON and CSV encodings.
//
//   HPoint       {"n": int, "x": [...], "y": [...], "t": real}
//   GeodesicArc  {"kind": "arc", "base": HPoint, "W_re": [...], "W_im": [...],
//                 "chirality": +-1, "s_end": real}
//              | {"kind": "segment", "a": HPoint, "b": HPoint}
//   Polyline CSV header s,x1..xn,y1..yn,t
//
// CSV reals are written with 17 significant digits through std::to_chars, so
// output does not depend on the C locale.

#include <charconv>
#include <complex>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "heisenberg/convexity.hpp"
#include "heisenberg/errors.hpp"
#include "heisenberg/geodesic.hpp"
#include "heisenberg/hull.hpp"
#include "heisenberg/point.hpp"

namespace heis::io {

using nlohmann::json;

inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, res.ptr);
}

inline json to_json(const HPoint& p) {
  return json{{"n", p.dim()}, {"x", p.x()}, {"y", p.y()}, {"t", p.t()}};
}

inline HPoint hpoint_from_json(const json& j) {
  try {
    if (j.is_array()) return HPoint::from_flat(j.get<std::vector<double>>());
    auto x = j.at("x").get<std::vector<double>>();
    auto y = j.at("y").get<std::vector<double>>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != x.size()) {
      throw DimensionError("HPoint JSON: field n disagrees with length of x");
    }
    return HPoint(std::move(x), std::move(y), j.at("t").get<double>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("HPoint JSON: ") + e.what());
  }
}

// Accepts an HPoint JSON object, a JSON array, or a bare comma-separated list
// "x1,..,xn,y1,..,yn,t" (optionally wrapped in parentheses).
inline HPoint parse_hpoint(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("empty point");
  if (s[first] == '{' || s[first] == '[') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("point is not valid JSON: ") + e.what());
    }
    return hpoint_from_json(j);
  }
  for (char& c : s) {
    if (c == '(' || c == ')') c = ' ';
  }
  std::vector<double> flat;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty coordinate in '" + s + "'");
    const std::string_view tok(item.data() + b, e - b + 1);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("bad coordinate '" + std::string(tok) + "'");
    }
    flat.push_back(v);
  }
  return HPoint::from_flat(flat);
}

inline json to_json(const GeodesicArc& g) {
  if (const auto* arc = std::get_if<Arc>(&g)) {
    std::vector<double> re, im;
    for (const auto& c : arc->w) {
      re.push_back(c.real());
      im.push_back(c.imag());
    }
    return json{{"kind", "arc"},         {"base", to_json(arc->base)},
                {"W_re", re},            {"W_im", im},
                {"chirality", arc->chirality}, {"s_end", arc->s_end}};
  }
  const auto& seg = std::get<Segment>(g);
  return json{{"kind", "segment"}, {"a", to_json(seg.a)}, {"b", to_json(seg.b)}};
}

inline GeodesicArc geodesic_from_json(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "segment") return Segment(hpoint_from_json(j.at("a")), hpoint_from_json(j.at("b")));
    if (kind != "arc") throw std::invalid_argument("GeodesicArc JSON: unknown kind '" + kind + "'");
    const auto re = j.at("W_re").get<std::vector<double>>();
    const auto im = j.at("W_im").get<std::vector<double>>();
    if (re.size() != im.size()) throw DimensionError("GeodesicArc JSON: W_re/W_im length mismatch");
    std::vector<std::complex<double>> w(re.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = {re[i], im[i]};
    return Arc(hpoint_from_json(j.at("base")), std::move(w), j.at("chirality").get<int>(),
               j.at("s_end").get<double>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("GeodesicArc JSON: ") + e.what());
  }
}

inline json to_json(const ConvexityReport& rep) {
  json out{{"verdict", to_string(rep.verdict)}, {"geodesics_tested", rep.geodesics_tested}};
  if (rep.trial) out["trial"] = *rep.trial;
  if (rep.witness) {
    const auto& w = *rep.witness;
    out["witness"] = json{{"s1", w.s1},   {"s2", w.s2},   {"lambda", w.lambda},
                          {"lhs", w.lhs}, {"rhs", w.rhs}, {"geodesic", to_json(w.geodesic)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

inline ConvexityWitness witness_from_json(const json& j) {
  try {
    return ConvexityWitness{geodesic_from_json(j.at("geodesic")), j.at("s1").get<double>(),
                            j.at("s2").get<double>(),             j.at("lambda").get<double>(),
                            j.at("lhs").get<double>(),            j.at("rhs").get<double>()};
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("witness JSON: ") + e.what());
  }
}

inline std::string point_columns(std::size_t n) {
  std::string h;
  for (std::size_t i = 1; i <= n; ++i) h += ",x" + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) h += ",y" + std::to_string(i);
  h += ",t";
  return h;
}

inline void write_point_fields(std::ostream& os, const HPoint& p) {
  for (double v : p.x()) os << ',' << format_real(v);
  for (double v : p.y()) os << ',' << format_real(v);
  os << ',' << format_real(p.t());
}

inline void write_polyline_csv(std::ostream& os, const Polyline& line) {
  const std::size_t n = line.size() ? line.points().front().dim() : 1;
  os << 's' << point_columns(n) << '\n';
  for (std::size_t i = 0; i < line.size(); ++i) {
    os << format_real(line.params()[i]);
    write_point_fields(os, line.points()[i]);
    os << '\n';
  }
}

inline void write_growth_csv(std::ostream& os, const GrowthReport& rep) {
  os << "m,r_m,r_m_sq,ratio,eq01_margin,pass\n";
  for (const auto& row : rep.rows) {
    os << row.m << ',' << format_real(row.r) << ',' << format_real(row.r_sq) << ',';
    if (row.ratio) os << format_real(*row.ratio);
    os << ',';
    if (row.eq01_margin) os << format_real(*row.eq01_margin);
    os << ',';
    if (row.pass) os << (*row.pass ? "true" : "false");
    os << '\n';
  }
}

inline std::string bubble_header(std::size_t n) {
  std::string h;
  for (std::size_t i = 1; i <= n; ++i) h += "theta" + std::to_string(i) + ",";
  return h + "s" + point_columns(n);
}

inline void write_bubble_row(std::ostream& os, const TorusAngle& theta, double s,
                             const HPoint& p) {
  for (double a : theta.angles()) os << format_real(a) << ',';
  os << format_real(s);
  write_point_fields(os, p);
  os << '\n';
}

}  // namespace heis::io
