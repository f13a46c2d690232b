#pragma once

// Geodesic convexity testing of scalar functions u: H^n -> R.
//
// u is geodetically convex when u o gamma is convex on every geodesic gamma.
// Convexity along a sampled geodesic is tested with the three-point
// inequality
//
//   u(gamma(l s1 + (1 - l) s2)) <= l u(gamma(s1)) + (1 - l) u(gamma(s2)),
//
// which does not need u to be smooth.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "heisenberg/errors.hpp"
#include "heisenberg/geodesic.hpp"
#include "heisenberg/point.hpp"
#include "heisenberg/random.hpp"

namespace heis {

inline constexpr double kConvexitySlack = 1e-9;
inline constexpr double kExample1Tol = 1e-12;
inline constexpr std::size_t kDefaultConvexityGrid = 64;

struct ScalarField {
  std::string name;
  std::function<double(const HPoint&)> fn;
  std::optional<std::size_t> dim;  // nullopt: defined on every H^n

  double operator()(const HPoint& p) const {
    if (dim && p.dim() != *dim) {
      throw DimensionError("ScalarField '" + name + "' is only defined on H^" +
                           std::to_string(*dim));
    }
    return fn(p);
  }
};

inline ScalarField constant_field(double k) {
  return {"const " + std::to_string(k), [k](const HPoint&) { return k; }, std::nullopt};
}

inline ScalarField t_coord_field() {
  return {"t-coord", [](const HPoint& p) { return p.t(); }, std::nullopt};
}

inline ScalarField cc_dist_origin_field() {
  return {"cc-dist-origin",
          [](const HPoint& p) { return cc_distance(HPoint::origin(p.dim()), p); }, std::nullopt};
}

// L = {x = y, t = 0} in H^1, tested exactly up to 1e-12.
inline bool in_example1_line(const HPoint& p) {
  return std::abs(p.x()[0] - p.y()[0]) <= kExample1Tol && std::abs(p.t()) <= kExample1Tol;
}

// 0 on L, 1 elsewhere. Discontinuous, non-constant and still geodetically convex.
inline ScalarField example1_indicator() {
  return {"example1-indicator", [](const HPoint& p) { return in_example1_line(p) ? 0.0 : 1.0; },
          std::size_t{1}};
}

// a * u + b
inline ScalarField affine(const ScalarField& u, double a, double b) {
  return {u.name + " (affine)", [u, a, b](const HPoint& p) { return a * u(p) + b; }, u.dim};
}

// Resolves "const", "const <k>", "t-coord", "cc-dist-origin", "example1-indicator".
inline ScalarField builtin_field(std::string_view name) {
  if (name == "t-coord") return t_coord_field();
  if (name == "cc-dist-origin") return cc_dist_origin_field();
  if (name == "example1-indicator") return example1_indicator();
  if (name.substr(0, 5) == "const") {
    std::string_view rest = name.substr(5);
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == ':' || rest.front() == '=')) {
      rest.remove_prefix(1);
    }
    if (rest.empty()) return constant_field(0.0);
    std::size_t used = 0;
    double k = 0.0;
    try {
      k = std::stod(std::string(rest), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && std::isfinite(k)) return constant_field(k);
  }
  throw std::invalid_argument("unknown scalar field '" + std::string(name) + "'");
}

enum class Verdict { ConvexOnSamples, Violation };

inline const char* to_string(Verdict v) {
  return v == Verdict::Violation ? "violation" : "convex-on-samples";
}

struct ConvexityWitness {
  GeodesicArc geodesic;
  double s1 = 0.0;
  double s2 = 0.0;
  double lambda = 0.0;
  double lhs = 0.0;  // u(gamma(lambda s1 + (1 - lambda) s2))
  double rhs = 0.0;  // lambda u(gamma(s1)) + (1 - lambda) u(gamma(s2))
};

struct ConvexityReport {
  Verdict verdict = Verdict::ConvexOnSamples;
  std::optional<ConvexityWitness> witness;
  std::size_t geodesics_tested = 0;
  std::optional<std::size_t> trial;  // set by scan_for_witness
};

// Recomputes (lhs, rhs) of a witness from scratch.
inline std::pair<double, double> replay(const ScalarField& u, const ConvexityWitness& w) {
  const double mid = w.lambda * w.s1 + (1.0 - w.lambda) * w.s2;
  const double lhs = u(eval_arc(w.geodesic, mid));
  const double rhs =
      w.lambda * u(eval_arc(w.geodesic, w.s1)) + (1.0 - w.lambda) * u(eval_arc(w.geodesic, w.s2));
  return {lhs, rhs};
}

// Samples u o g on `grid` uniform parameters and checks the three-point
// inequality on every triple i < j < k. The first triple (in lexicographic
// (i, k, j) order) whose replayed values violate it by more than the slack is
// returned as a witness.
inline ConvexityReport convexity_along(const ScalarField& u, const GeodesicArc& g,
                                       std::size_t grid = kDefaultConvexityGrid) {
  if (grid < 3) throw DomainError("convexity_along: grid must be >= 3");
  const Polyline line = sample_arc(g, grid);
  const auto& s = line.params();
  std::vector<double> f(grid);
  for (std::size_t i = 0; i < grid; ++i) f[i] = u(line.points()[i]);

  ConvexityReport rep;
  rep.geodesics_tested = 1;
  for (std::size_t i = 0; i + 2 < grid; ++i) {
    for (std::size_t k = i + 2; k < grid; ++k) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const double lambda = (s[k] - s[j]) / (s[k] - s[i]);
        if (!(f[j] > lambda * f[i] + (1.0 - lambda) * f[k] + kConvexitySlack)) continue;
        ConvexityWitness w{g, s[i], s[k], lambda, 0.0, 0.0};
        std::tie(w.lhs, w.rhs) = replay(u, w);
        if (w.lhs > w.rhs + kConvexitySlack) {
          rep.verdict = Verdict::Violation;
          rep.witness = std::move(w);
          return rep;
        }
      }
    }
  }
  return rep;
}

struct ScanOptions {
  std::size_t n = 1;
  std::size_t grid = kDefaultConvexityGrid;
  double half_width = 2.0;  // endpoints drawn from [-w, w]^{2n} x [-w, w]
};

// Runs convexity_along on geodesics between random endpoint pairs. Trial i
// draws its endpoints from Sampler::for_trial(seed, i), so the outcome does not
// depend on how trials are scheduled.
inline ConvexityReport scan_for_witness(const ScalarField& u, std::size_t trials,
                                        std::uint64_t seed, const ScanOptions& opt = {}) {
  if (trials < 1) throw DomainError("scan_for_witness: trials must be >= 1");
  const std::size_t n = u.dim.value_or(opt.n);
  ConvexityReport rep;
  for (std::size_t i = 0; i < trials; ++i) {
    Sampler rng = Sampler::for_trial(seed, i);
    const HPoint a = rng.point_in_box(n, opt.half_width);
    const HPoint b = rng.point_in_box(n, opt.half_width);
    if (a == b) continue;
    const ConvexityReport one = convexity_along(u, connect(a, b).front(), opt.grid);
    ++rep.geodesics_tested;
    if (one.verdict == Verdict::Violation) {
      rep.verdict = Verdict::Violation;
      rep.witness = one.witness;
      rep.trial = i;
      return rep;
    }
  }
  return rep;
}

struct ExitCertificate {
  HPoint a;
  HPoint b;
  GeodesicArc geodesic;
  double s = 0.0;      // parameter where the geodesic leaves S
  double value = 0.0;  // u(geodesic(s)) >= level
};

struct SublevelReport {
  double level = 0.0;  // u(p0)
  std::size_t pairs_tested = 0;
  std::size_t pairs_skipped = 0;  // no two points of S found within the attempt budget
  std::size_t exit_events = 0;
  std::optional<ExitCertificate> first_exit;
};

struct ProbeOptions {
  std::size_t grid = kDefaultConvexityGrid;
  double half_width = 2.0;
  std::size_t attempts_per_point = 1000;
  // Candidate generator for points of S; defaults to the box sampler.
  std::function<HPoint(Sampler&)> candidate;
};

// Probes S = {p : u(p) < u(p0)}. If u is geodetically convex then S is
// geodetically convex, so a geodesic between two points of S that leaves S is
// a certificate that u is not geodetically convex.
inline SublevelReport sublevel_probe(const ScalarField& u, const HPoint& p0, std::size_t pairs,
                                     std::uint64_t seed, const ProbeOptions& opt = {}) {
  if (pairs < 1) throw DomainError("sublevel_probe: pairs must be >= 1");
  const std::size_t n = p0.dim();
  SublevelReport rep;
  rep.level = u(p0);

  auto draw = [&](Sampler& rng) -> std::optional<HPoint> {
    for (std::size_t a = 0; a < opt.attempts_per_point; ++a) {
      HPoint c = opt.candidate ? opt.candidate(rng) : rng.point_in_box(n, opt.half_width);
      if (u(c) < rep.level) return c;
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i < pairs; ++i) {
    Sampler rng = Sampler::for_trial(seed, i);
    const auto a = draw(rng);
    const auto b = a ? draw(rng) : std::nullopt;
    if (!a || !b || *a == *b) {
      ++rep.pairs_skipped;
      continue;
    }
    ++rep.pairs_tested;
    const GeodesicArc g = connect(*a, *b).front();
    const Polyline line = sample_arc(g, opt.grid);
    for (std::size_t k = 1; k + 1 < line.size(); ++k) {
      const double v = u(line.points()[k]);
      if (v >= rep.level) {
        ++rep.exit_events;
        if (!rep.first_exit) rep.first_exit = ExitCertificate{*a, *b, g, line.params()[k], v};
        break;
      }
    }
  }
  return rep;
}

}  // namespace heis
