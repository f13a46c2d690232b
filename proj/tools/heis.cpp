// heis: command-line front end for the Heisenberg geometry library.
//
// Exit codes: 0 success, 1 usage or parse error, 2 domain error.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heisenberg.hpp"
#include "heisenberg/io.hpp"

namespace {

using heis::HPoint;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

double tolerance_from_env(double fallback) {
  const char* raw = std::getenv("HEIS_GEO_TOL");
  if (raw == nullptr || *raw == '\0') return fallback;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(raw).size() || !(v > 0.0)) {
    throw std::invalid_argument("HEIS_GEO_TOL must be a positive real, got '" +
                                std::string(raw) + "'");
  }
  return v;
}

// "origin" takes its dimension from the other endpoint (H^1 if both are "origin").
std::pair<HPoint, HPoint> parse_endpoints(const std::string& from, const std::string& to) {
  const bool from_origin = from == "origin";
  const bool to_origin = to == "origin";
  if (from_origin && to_origin) return {HPoint::origin(1), HPoint::origin(1)};
  if (from_origin) {
    HPoint q = heis::io::parse_hpoint(to);
    return {HPoint::origin(q.dim()), q};
  }
  HPoint p = heis::io::parse_hpoint(from);
  if (to_origin) return {p, HPoint::origin(p.dim())};
  return {p, heis::io::parse_hpoint(to)};
}

const char* kind_name(heis::TargetKind k) {
  switch (k) {
    case heis::TargetKind::Generic:
      return "generic";
    case heis::TargetKind::Planar:
      return "planar";
    case heis::TargetKind::Vertical:
      return "vertical";
  }
  return "unknown";
}

struct GeodesicArgs {
  std::string from;
  std::string to;
  std::size_t samples = 101;
  std::string format = "json";
};

int run_geodesic(const GeodesicArgs& a) {
  const auto [p, q] = parse_endpoints(a.from, a.to);
  const auto arcs = heis::connect(p, q);
  const auto& g = arcs.front();
  const auto line = heis::sample_arc(g, a.samples);
  const auto kind = heis::classify_target(heis::group_mul(heis::inverse(p), q));

  if (a.format == "csv") {
    heis::io::write_polyline_csv(std::cout, line);
    return 0;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < line.size(); ++i) {
    json row = json::array({line.params()[i]});
    const auto& pt = line.points()[i];
    for (double v : pt.x()) row.push_back(v);
    for (double v : pt.y()) row.push_back(v);
    row.push_back(pt.t());
    rows.push_back(std::move(row));
  }
  std::vector<std::string> columns{"s"};
  for (std::size_t i = 1; i <= p.dim(); ++i) columns.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= p.dim(); ++i) columns.push_back("y" + std::to_string(i));
  columns.push_back("t");

  json out{{"from", heis::io::to_json(p)},
           {"to", heis::io::to_json(q)},
           {"target_kind", kind_name(kind)},
           {"geodesic", heis::io::to_json(g)},
           {"length", heis::arc_length(g)},
           {"polyline", json{{"columns", columns}, {"rows", rows}}}};
  if (kind == heis::TargetKind::Vertical) {
    out["note"] = "canonical representative; every torus rotation about the t-axis is also a geodesic";
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

struct DistanceArgs {
  std::string from;
  std::string to;
};

int run_distance(const DistanceArgs& a) {
  const auto [p, q] = parse_endpoints(a.from, a.to);
  std::cout << heis::io::format_real(heis::cc_distance(p, q)) << '\n';
  return 0;
}

struct BubbleArgs {
  double T = 1.0;
  std::size_t n = 1;
  std::size_t grid_theta = 8;
  std::size_t grid_s = 33;
  bool check_symmetry = false;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
};

int run_bubble(const BubbleArgs& a) {
  heis::generating_geodesic(a.T, a.n);  // rejects T = 0 before any output
  std::cout << heis::io::bubble_header(a.n) << '\n';
  std::vector<std::size_t> idx(a.n, 0);
  for (;;) {
    std::vector<double> angles(a.n);
    for (std::size_t j = 0; j < a.n; ++j) {
      angles[j] = heis::kTwoPi * static_cast<double>(idx[j]) / static_cast<double>(a.grid_theta);
    }
    const heis::TorusAngle theta(angles);
    for (std::size_t i = 0; i < a.grid_s; ++i) {
      const double s = (i + 1 == a.grid_s)
                           ? heis::kTwoPi
                           : heis::kTwoPi * static_cast<double>(i) / (a.grid_s - 1);
      heis::io::write_bubble_row(std::cout, theta, s, heis::bubble_sample(a.T, a.n, theta, s));
    }
    std::size_t j = a.n;
    while (j > 0 && ++idx[j - 1] == a.grid_theta) idx[--j] = 0;
    if (j == 0) break;
  }
  if (a.check_symmetry) {
    const auto rep =
        heis::bubble_symmetry_check(a.T, a.n, a.samples, a.seed, tolerance_from_env(1e-9));
    std::cout << "# symmetry-check: " << (rep.passed() ? "pass" : "fail")
              << " samples=" << rep.samples << " conj=" << rep.conj_failures
              << " flip=" << rep.flip_failures << " rotation=" << rep.rotation_failures
              << " reflection=" << rep.reflection_failures << '\n';
    if (!rep.passed()) return kExitDomain;
  }
  return 0;
}

struct HullArgs {
  std::size_t depth = heis::kDefaultHullDepth;
  std::optional<double> threshold;
};

int run_hull_growth(const HullArgs& a) {
  const auto radii = heis::radius_recursion(a.depth);
  const auto rep = heis::growth_certificate(radii, a.threshold);
  heis::io::write_growth_csv(std::cout, rep);
  std::cout << "# summary: c=" << heis::io::format_real(rep.c_const)
            << " all_ratios_pass=" << (rep.all_ratios_pass ? "true" : "false")
            << " eq01_margins_positive=" << (rep.all_margins_positive ? "true" : "false");
  if (a.threshold) {
    std::cout << " threshold=" << heis::io::format_real(*a.threshold) << " first_m_exceeding=";
    if (rep.first_exceeding) {
      std::cout << *rep.first_exceeding;
    } else {
      std::cout << "none";
    }
  }
  std::cout << '\n';
  return 0;
}

struct ConvexityArgs {
  std::string function;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t n = 1;
  std::size_t grid = heis::kDefaultConvexityGrid;
};

int run_convexity_check(const ConvexityArgs& a) {
  const auto u = heis::builtin_field(a.function);
  heis::ScanOptions opt;
  opt.n = a.n;
  opt.grid = a.grid;
  const auto rep = heis::scan_for_witness(u, a.trials, a.seed, opt);
  json out = heis::io::to_json(rep);
  out["function"] = a.function;
  out["seed"] = a.seed;
  out["trials"] = a.trials;
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-Riemannian geometry on the Heisenberg group H^n"};
  app.require_subcommand(1);

  GeodesicArgs geo;
  auto* geo_cmd = app.add_subcommand("geodesic", "Geodesic between two points, sampled");
  geo_cmd->add_option("--from", geo.from, "Start point (JSON, x..,y..,t list, or 'origin')")
      ->required();
  geo_cmd->add_option("--to", geo.to, "End point")->required();
  geo_cmd->add_option("--samples", geo.samples, "Number of samples")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  geo_cmd->add_option("--format", geo.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  DistanceArgs dist;
  auto* dist_cmd = app.add_subcommand("distance", "Carnot-Caratheodory distance");
  dist_cmd->add_option("--from", dist.from)->required();
  dist_cmd->add_option("--to", dist.to)->required();

  BubbleArgs bub;
  auto* bub_cmd = app.add_subcommand("bubble", "Sample the Heisenberg bubble from o to (0, T)");
  bub_cmd->add_option("--T", bub.T, "Height of the bubble (nonzero)")->required();
  bub_cmd->add_option("--n", bub.n, "Dimension (1 or 2)")->check(CLI::Range(1, 2));
  bub_cmd->add_option("--grid-theta", bub.grid_theta, "Angles per torus factor")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  bub_cmd->add_option("--grid-s", bub.grid_s, "Samples along the generating geodesic")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  bub_cmd->add_flag("--check-symmetry", bub.check_symmetry, "Run the bubble symmetry checks");
  bub_cmd->add_option("--samples", bub.samples, "Random samples for --check-symmetry")
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
  bub_cmd->add_option("--seed", bub.seed, "Seed for --check-symmetry");

  HullArgs hull;
  auto* hull_cmd = app.add_subcommand("hull-growth", "Radius growth of the iterated hull");
  hull_cmd->add_option("--depth", hull.depth, "Number of radii")
      ->check(CLI::Range(std::size_t{4}, std::size_t{100000}));
  hull_cmd->add_option("--threshold", hull.threshold, "Report the first m with r_m above this");

  ConvexityArgs conv;
  auto* conv_cmd =
      app.add_subcommand("convexity-check", "Search random geodesics for a convexity violation");
  conv_cmd
      ->add_option("--function", conv.function,
                   "const [k] | t-coord | cc-dist-origin | example1-indicator")
      ->required();
  conv_cmd->add_option("--trials", conv.trials)->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  conv_cmd->add_option("--seed", conv.seed);
  conv_cmd->add_option("--n", conv.n)->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  conv_cmd->add_option("--grid", conv.grid)->check(CLI::Range(std::size_t{3}, std::size_t{4096}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*geo_cmd) return run_geodesic(geo);
    if (*dist_cmd) return run_distance(dist);
    if (*bub_cmd) return run_bubble(bub);
    if (*hull_cmd) return run_hull_growth(hull);
    if (*conv_cmd) return run_convexity_check(conv);
  } catch (const heis::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
