#pragma once

// Iterated geodetic hull of two points on the t-axis, A = {o, (0, T0)}.
//
// The witness trajectory is built from the generating geodesic sigma_1 of A:
//
//   p_m = tau(sigma_{m-1}(pi/2)),  q_m = tau(sigma_{m-1}(3pi/2)),
//   sigma_m(s) = p_m * Gamma_m(s),
//
// where Gamma_m is the generating geodesic to the vertical gap p_m^-1 q_m and
// tau kills the y-coordinates. All R_m are positive multiples of the all-ones
// vector, so the whole construction reduces to the scalar radii r_m = |R_m|:
//
//   r_1^2 = T0 / (4 pi)
//   r_m^2 = r_{m-1}^2 (pi + 2) / (2 pi) + (r_1 + ... + r_{m-2}) r_{m-1} / pi.
//
// For m >= 3 this grows by at least a factor 1 + c, c = (10 - 3 pi) / (10 pi),
// so the radii (and with them the bubbles through p_m, q_m) are unbounded.
// The set-valued hulls G^m(A) are never materialized.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heisenberg/errors.hpp"
#include "heisenberg/geodesic.hpp"
#include "heisenberg/point.hpp"
#include "heisenberg/random.hpp"
#include "heisenberg/root_finding.hpp"

namespace heis {

inline constexpr double kGrowthConstant = (10.0 - 3.0 * kPi) / (10.0 * kPi);
inline constexpr std::size_t kDefaultHullDepth = 50;

// r_1, ..., r_depth for the hull of {o, (0, T0)}.
inline std::vector<double> radius_recursion(std::size_t depth, double T0 = 1.0) {
  if (depth < 1) throw DomainError("radius_recursion: depth must be >= 1");
  if (!(T0 > 0.0) || !std::isfinite(T0)) throw DomainError("radius_recursion: T0 must be > 0");

  std::vector<double> r;
  r.reserve(depth);
  r.push_back(std::sqrt(T0 / (4.0 * kPi)));
  double head_sum = 0.0;  // r_1 + ... + r_{m-2}
  for (std::size_t m = 2; m <= depth; ++m) {
    const double prev = r.back();
    const double r_sq = prev * prev * (kPi + 2.0) / (2.0 * kPi) + head_sum * prev / kPi;
    if (!std::isfinite(r_sq)) {
      throw DomainError("radius_recursion: r_" + std::to_string(m) + " overflows double range");
    }
    head_sum += prev;
    r.push_back(std::sqrt(r_sq));
  }
  return r;
}

struct HullSequence {
  std::size_t n = 1;
  std::size_t depth = 0;
  double T0 = 1.0;
  std::vector<double> r;   // r[m-1] = |R_m|
  std::vector<HPoint> p;   // p[m-1] = p_m; p_1 = o
  std::vector<HPoint> q;   // q[m-1] = q_m; q_1 = (0, T0)
  // Index k with p_m, q_m in G^k(A). Bookkeeping only; never used in computation.
  std::vector<int> hull_level;
  double c_const = kGrowthConstant;

  // R_m = (r_m / sqrt n) (1, ..., 1)
  std::vector<double> R(std::size_t m) const {
    return std::vector<double>(n, r.at(m - 1) / std::sqrt(static_cast<double>(n)));
  }
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline void check_sigma_args(const HullSequence& seq, std::size_t m, double s, const char* op) {
  if (m < 1 || m > seq.depth) {
    throw DomainError(std::string(op) + ": index m=" + std::to_string(m) + " outside [1, " +
                      std::to_string(seq.depth) + "]");
  }
  if (!(s >= 0.0 && s <= kTwoPi)) {
    throw DomainError(std::string(op) + ": parameter outside [0, 2pi]");
  }
}

}  // namespace detail

// Closed form of sigma_m(s):
//
//   x + iy = sum_{j<m} R_j + (1 - e^{-is}) R_m
//   t      = 2 (pi/2 - 1) sum_{j<m} |R_j|^2 + 2 (s - sin s) |R_m|^2
//            - 2 sum_{j=2}^{m-1} <R_1 + ... + R_{j-1}, R_j>
//            - 2 sin s <R_1 + ... + R_{m-1}, R_m>
//
// m = 1 gives the generating geodesic of A (all sums empty).
inline HPoint sigma_eval(const HullSequence& seq, std::size_t m, double s) {
  detail::check_sigma_args(seq, m, s, "sigma_eval");
  const std::size_t n = seq.n;

  std::vector<double> head(n, 0.0);  // R_1 + ... + R_{j-1}
  double sq_sum = 0.0;
  double cross = 0.0;
  for (std::size_t j = 1; j < m; ++j) {
    const auto Rj = seq.R(j);
    cross += detail::dot(head, Rj);
    sq_sum += detail::dot(Rj, Rj);
    for (std::size_t i = 0; i < n; ++i) head[i] += Rj[i];
  }
  const auto Rm = seq.R(m);
  const std::complex<double> d = detail::chord_factor(s, 1);

  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = head[i] + d.real() * Rm[i];
    y[i] = d.imag() * Rm[i];
  }
  const double t = 2.0 * (kPi / 2.0 - 1.0) * sq_sum + 2.0 * s_minus_sin(s) * detail::dot(Rm, Rm) -
                   2.0 * cross - 2.0 * std::sin(s) * detail::dot(head, Rm);
  return HPoint(std::move(x), std::move(y), t);
}

// sigma_m(s) recomputed from scratch with group operations only: the geodesic
// from p_m to q_m as produced by connect(), evaluated at s.
inline HPoint sigma_oracle(const HullSequence& seq, std::size_t m, double s) {
  detail::check_sigma_args(seq, m, s, "sigma_oracle");
  const auto arcs = connect(seq.p[m - 1], seq.q[m - 1]);
  return eval_arc(arcs.front(), s);
}

inline HullSequence hull_points(std::size_t depth, std::size_t n, double T0 = 1.0) {
  if (depth < 2) throw DomainError("hull_points: depth must be >= 2");
  if (n < 1) throw DimensionError("hull_points: n must be >= 1");

  HullSequence seq;
  seq.n = n;
  seq.depth = depth;
  seq.T0 = T0;
  seq.r = radius_recursion(depth, T0);
  seq.p.reserve(depth);
  seq.q.reserve(depth);
  seq.p.push_back(HPoint::origin(n));
  seq.q.push_back(HPoint(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), T0));
  seq.hull_level.push_back(0);
  for (std::size_t m = 2; m <= depth; ++m) {
    seq.p.push_back(tau_project(sigma_eval(seq, m - 1, kPi / 2.0)));
    seq.q.push_back(tau_project(sigma_eval(seq, m - 1, 3.0 * kPi / 2.0)));
    seq.hull_level.push_back(static_cast<int>(2 * m - 2));
  }
  return seq;
}

struct GrowthRow {
  std::size_t m = 0;
  double r = 0.0;
  double r_sq = 0.0;
  std::optional<double> ratio;        // r_m^2 / r_{m-1}^2, m >= 2
  std::optional<double> eq01_margin;  // 25 (r_1+...+r_{m-2})^2 - pi^2 r_{m-1}^2, m >= 3
  std::optional<bool> pass;           // ratio > 1 + c, m >= 3
};

struct GrowthReport {
  double c_const = kGrowthConstant;
  std::vector<GrowthRow> rows;
  bool all_ratios_pass = true;
  bool all_margins_positive = true;
  std::optional<double> threshold;
  std::optional<std::size_t> first_exceeding;  // min m with r_m > threshold
};

inline GrowthReport growth_certificate(std::span<const double> radii,
                                       std::optional<double> threshold = std::nullopt) {
  if (radii.size() < 4) throw DomainError("growth_certificate: depth must be >= 4");
  GrowthReport rep;
  rep.threshold = threshold;
  double head_sum = 0.0;  // r_1 + ... + r_{m-2}
  for (std::size_t m = 1; m <= radii.size(); ++m) {
    GrowthRow row;
    row.m = m;
    row.r = radii[m - 1];
    row.r_sq = row.r * row.r;
    if (m >= 2) {
      const double prev = radii[m - 2];
      row.ratio = row.r_sq / (prev * prev);
    }
    if (m >= 3) {
      head_sum += radii[m - 3];
      const double prev = radii[m - 2];
      row.eq01_margin = 25.0 * head_sum * head_sum - kPi * kPi * prev * prev;
      row.pass = *row.ratio > 1.0 + rep.c_const;
      rep.all_ratios_pass = rep.all_ratios_pass && *row.pass;
      rep.all_margins_positive = rep.all_margins_positive && *row.eq01_margin > 0.0;
    }
    if (threshold && !rep.first_exceeding && row.r > *threshold) rep.first_exceeding = m;
    rep.rows.push_back(row);
  }
  return rep;
}

inline GrowthReport growth_certificate(const HullSequence& seq,
                                       std::optional<double> threshold = std::nullopt) {
  return growth_certificate(std::span<const double>(seq.r), threshold);
}

// A point of the Heisenberg bubble G^1(A) for A = {o, (0, T)}: the generating
// geodesic at parameter s, rotated by theta about the t-axis.
inline HPoint bubble_sample(double T, std::size_t n, const TorusAngle& theta, double s) {
  if (!(s >= 0.0 && s <= kTwoPi)) throw DomainError("bubble_sample: s outside [0, 2pi]");
  return rotate(theta, eval_arc(generating_geodesic(T, n), s));
}

struct BubbleCoordinates {
  TorusAngle theta;
  double s;
};

// Recovers (theta, s) with bubble_sample(T, n, theta, s) within `tol` of
// `point` (max-norm), or nullopt if the point is not on the torus orbit of the
// generating geodesic.
inline std::optional<BubbleCoordinates> bubble_preimage(double T, const HPoint& point,
                                                        double tol = 1e-9) {
  const std::size_t n = point.dim();
  const auto gen = generating_geodesic(T, n);
  const double r_norm = gen.speed();

  // Height fixes s - sin s; it is well conditioned away from s = 0, 2pi.
  const double v = gen.chirality * point.t() * kTwoPi / std::abs(T);
  if (v < -tol * kTwoPi / std::abs(T) || v > kTwoPi + tol * kTwoPi / std::abs(T)) {
    return std::nullopt;
  }
  const double target = std::clamp(v, 0.0, kTwoPi);
  double s = newton_bisect([target](double u) { return s_minus_sin(u) - target; },
                           [](double u) { return one_minus_cos(u); }, 0.0, kTwoPi, 1e-15);

  // Near the poles |z| = 2 |R| sin(s/2) is the better conditioned equation.
  if (s < kPi / 2.0 || s > 3.0 * kPi / 2.0) {
    const double rho = std::min(1.0, point.z_norm() / (2.0 * r_norm));
    const double half = std::asin(rho);
    s = (s < kPi) ? 2.0 * half : kTwoPi - 2.0 * half;
  }

  const std::complex<double> d = detail::chord_factor(s, gen.chirality);
  std::vector<double> theta(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto zj = point.z(j);
    if (std::abs(zj) > 0.0 && std::abs(d) > 0.0) theta[j] = std::arg(zj) - std::arg(d);
  }
  BubbleCoordinates coords{TorusAngle(std::move(theta)), s};
  if (coord_distance(bubble_sample(T, n, coords.theta, coords.s), point) > tol) {
    return std::nullopt;
  }
  return coords;
}

inline bool on_bubble(double T, const HPoint& point, double tol = 1e-9) {
  return bubble_preimage(T, point, tol).has_value();
}

struct BubbleSymmetryReport {
  double T = 0.0;
  std::size_t n = 0;
  std::size_t samples = 0;
  double tol = 0.0;
  std::size_t conj_failures = 0;        // J-image on the T-bubble
  std::size_t flip_failures = 0;        // flip image on the (-T)-bubble
  std::size_t rotation_failures = 0;    // R_theta image on the T-bubble, R_-theta undoes it
  std::size_t reflection_failures = 0;  // (z, T - t) on the T-bubble
  double max_reflection_identity_error = 0.0;  // |(z, T - t)(Gamma(s)) - J(Gamma(2pi - s))|

  bool passed() const {
    return conj_failures == 0 && flip_failures == 0 && rotation_failures == 0 &&
           reflection_failures == 0 && max_reflection_identity_error <= tol;
  }
};

inline BubbleSymmetryReport bubble_symmetry_check(double T, std::size_t n, std::size_t samples,
                                                  std::uint64_t seed = 0, double tol = 1e-9) {
  if (samples < 1) throw DomainError("bubble_symmetry_check: need at least one sample");
  BubbleSymmetryReport rep;
  rep.T = T;
  rep.n = n;
  rep.samples = samples;
  rep.tol = tol;

  const auto gen = generating_geodesic(T, n);
  Sampler rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const TorusAngle theta = rng.torus_angle(n);
    const double s = rng.uniform(0.0, kTwoPi);
    const HPoint xi = bubble_sample(T, n, theta, s);

    if (!on_bubble(T, conj_J(xi), tol)) ++rep.conj_failures;
    if (!on_bubble(-T, flip(xi), tol)) ++rep.flip_failures;

    const TorusAngle phi = rng.torus_angle(n);
    const HPoint turned = rotate(phi, xi);
    if (!on_bubble(T, turned, tol) || coord_distance(rotate(phi.inverse(), turned), xi) > tol) {
      ++rep.rotation_failures;
    }

    const HPoint mirrored(xi.x(), xi.y(), T - xi.t());
    if (!on_bubble(T, mirrored, tol)) ++rep.reflection_failures;

    const HPoint g = eval_arc(gen, s);
    const HPoint g_reflected(g.x(), g.y(), T - g.t());
    rep.max_reflection_identity_error =
        std::max(rep.max_reflection_identity_error,
                 coord_distance(g_reflected, conj_J(eval_arc(gen, kTwoPi - s))));
  }
  return rep;
}

}  // namespace heis
