#pragma once

// Geodesics of H^n and the Carnot-Caratheodory distance.
//
// Every non-planar geodesic issuing from the origin has the form
//
//   s -> ((1 - e^{-i chi s}) W,  chi * 2 |W|^2 (s - sin s)),   s in [0, s_end],
//
// with W in C^n, chi = +-1 and s_end <= 2pi. It has constant speed |W|, and
// s_end = 2pi brings it back to the t-axis at height chi * 4pi |W|^2.
// Geodesics from other base points are left translates of these. Horizontal
// straight segments (t(a^-1 b) = 0) are kept as a separate variant.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "heisenberg/errors.hpp"
#include "heisenberg/point.hpp"
#include "heisenberg/root_finding.hpp"

namespace heis {

// Relative threshold on |t(p^-1 q)| / |z(p^-1 q)|^2 below which the target is
// treated as lying in the plane t = 0 and joined by a straight segment.
inline constexpr double kPlanarRelTol = 1e-14;
// Threshold on |z(p^-1 q)|^2 / |t(p^-1 q)| below which the target is treated
// as lying on the t-axis. The endpoint is then missed by at most 1e-12 sqrt|t|.
inline constexpr double kVerticalRelTol = 1e-24;
// Horizontality tolerance for straight segments (scaled by max(1, |dz|^2)).
inline constexpr double kSegmentTol = 1e-10;

namespace detail {

// 1 - e^{-i chi s}, written so that its modulus is exactly 2 |sin(s/2)| up to
// rounding. Keeping this form makes mu() and the arc evaluation agree.
inline std::complex<double> chord_factor(double s, int chirality) {
  // sin(s/2) = sin((2pi - s)/2); the second form is exactly 0 at s = 2pi.
  const double h = s <= kPi ? std::sin(0.5 * s) : std::sin(0.5 * (kTwoPi - s));
  const double c = std::cos(0.5 * s);
  return 2.0 * h * std::complex<double>(h, chirality * c);
}

inline double norm_sq(const std::vector<std::complex<double>>& w) {
  double acc = 0.0;
  for (const auto& c : w) acc += std::norm(c);
  return acc;
}

inline double translated_height(const HPoint& a, const HPoint& b) {
  return group_mul(inverse(a), b).t();
}

}  // namespace detail

struct Arc {
  HPoint base;
  std::vector<std::complex<double>> w;
  int chirality;
  double s_end;

  Arc(HPoint base_point, std::vector<std::complex<double>> center, int chi, double end)
      : base(std::move(base_point)), w(std::move(center)), chirality(chi), s_end(end) {
    detail::require_same_dim(base.dim(), w.size(), "Arc");
    if (chirality != 1 && chirality != -1) throw DomainError("Arc: chirality must be +1 or -1");
    if (!(s_end > 0.0 && s_end <= kTwoPi)) throw DomainError("Arc: s_end must lie in (0, 2pi]");
    if (!(detail::norm_sq(w) > 0.0)) throw DomainError("Arc: center parameter W must be nonzero");
    for (const auto& c : w) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw DimensionError("Arc: non-finite center parameter");
      }
    }
  }

  double speed() const { return std::sqrt(detail::norm_sq(w)); }
};

struct Segment {
  HPoint a;
  HPoint b;

  Segment(HPoint from, HPoint to) : a(std::move(from)), b(std::move(to)) {
    detail::require_same_dim(a.dim(), b.dim(), "Segment");
    double dz2 = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const double dx = b.x()[j] - a.x()[j];
      const double dy = b.y()[j] - a.y()[j];
      dz2 += dx * dx + dy * dy;
    }
    if (std::abs(detail::translated_height(a, b)) > kSegmentTol * std::max(1.0, dz2)) {
      throw DomainError("Segment: endpoints are not joined by a horizontal line");
    }
  }
};

using GeodesicArc = std::variant<Arc, Segment>;

inline std::size_t dim(const GeodesicArc& g) {
  return std::visit([](const auto& v) -> std::size_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Arc>) {
      return v.base.dim();
    } else {
      return v.a.dim();
    }
  }, g);
}

// Parameter interval is [0, parameter_end(g)]: s_end for arcs, 1 for segments.
inline double parameter_end(const GeodesicArc& g) {
  if (const auto* arc = std::get_if<Arc>(&g)) return arc->s_end;
  return 1.0;
}

inline HPoint eval_arc(const GeodesicArc& g, double s) {
  const double end = parameter_end(g);
  const double slack = 1e-12 * std::max(1.0, end);
  if (!(s >= -slack && s <= end + slack)) {
    throw DomainError("eval_arc: parameter " + std::to_string(s) + " outside [0, " +
                      std::to_string(end) + "]");
  }
  s = std::clamp(s, 0.0, end);

  if (const auto* arc = std::get_if<Arc>(&g)) {
    const std::complex<double> d = detail::chord_factor(s, arc->chirality);
    std::vector<std::complex<double>> z(arc->w.size());
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = d * arc->w[j];
    const double t = arc->chirality * 2.0 * detail::norm_sq(arc->w) * s_minus_sin(s);
    return group_mul(arc->base, HPoint::from_complex(z, t));
  }

  const auto& seg = std::get<Segment>(g);
  const std::size_t n = seg.a.dim();
  std::vector<double> x(n), y(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = (1.0 - s) * seg.a.x()[j] + s * seg.b.x()[j];
    y[j] = (1.0 - s) * seg.a.y()[j] + s * seg.b.y()[j];
  }
  return HPoint(std::move(x), std::move(y), (1.0 - s) * seg.a.t() + s * seg.b.t());
}

inline HPoint start_point(const GeodesicArc& g) { return eval_arc(g, 0.0); }
inline HPoint end_point(const GeodesicArc& g) { return eval_arc(g, parameter_end(g)); }

// Canonical geodesic from the origin to (0, T): W = R with all entries equal to
// sqrt(|T|) / (2 sqrt(n pi)), so |R|^2 = |T| / (4 pi).
inline Arc generating_geodesic(double T, std::size_t n) {
  if (T == 0.0 || !std::isfinite(T)) {
    throw DomainError("generating_geodesic: T must be nonzero and finite");
  }
  if (n == 0) throw DimensionError("generating_geodesic: n must be >= 1");
  const double r = std::sqrt(std::abs(T)) / (2.0 * std::sqrt(static_cast<double>(n) * kPi));
  return Arc(HPoint::origin(n), std::vector<std::complex<double>>(n, {r, 0.0}), T > 0 ? 1 : -1,
             kTwoPi);
}

enum class TargetKind {
  Generic,   // z != 0, t != 0: exactly one geodesic
  Planar,    // t == 0: straight segment
  Vertical,  // z == 0: a torus orbit of arcs; the canonical one is returned
};

inline TargetKind classify_target(const HPoint& q) {
  if (q.is_origin()) throw DomainError("classify_target: target is the origin");
  const double z2 = q.z_norm_sq();
  if (z2 <= kVerticalRelTol * std::abs(q.t())) return TargetKind::Vertical;
  if (std::abs(q.t()) <= kPlanarRelTol * z2) return TargetKind::Planar;
  return TargetKind::Generic;
}

// Geodesics from the origin to q.
//
// Generic targets have a unique arc with s_end = solve_mu(|t| / (2 |z|^2)).
// Planar targets get the straight segment. For targets on the t-axis every
// torus rotation of the generating geodesic is a geodesic; only the
// canonical representative is returned.
inline std::vector<GeodesicArc> connect_origin(const HPoint& q, double tol = 1e-14) {
  const std::size_t n = q.dim();
  switch (classify_target(q)) {
    case TargetKind::Vertical:
      return {generating_geodesic(q.t(), n)};
    case TargetKind::Planar:
      return {Segment(HPoint::origin(n), q)};
    case TargetKind::Generic:
      break;
  }
  const int chi = q.t() > 0.0 ? 1 : -1;
  const double k = std::abs(q.t()) / (2.0 * q.z_norm_sq());
  const double s1 = solve_mu(k, tol * std::max(1.0, k));
  const std::complex<double> d = detail::chord_factor(s1, chi);
  std::vector<std::complex<double>> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = q.z(j) / d;
  return {Arc(HPoint::origin(n), std::move(w), chi, s1)};
}

// Geodesics from p to q: left translates by p of the geodesics from the origin
// to p^-1 * q.
inline std::vector<GeodesicArc> connect(const HPoint& p, const HPoint& q, double tol = 1e-14) {
  detail::require_same_dim(p.dim(), q.dim(), "connect");
  if (p == q) throw DomainError("connect: endpoints coincide");
  auto arcs = connect_origin(group_mul(inverse(p), q), tol);
  for (auto& g : arcs) {
    if (auto* arc = std::get_if<Arc>(&g)) {
      arc->base = p;
    } else {
      g = Segment(p, q);
    }
  }
  return arcs;
}

// p * g
inline GeodesicArc translate(const HPoint& p, const GeodesicArc& g) {
  if (const auto* arc = std::get_if<Arc>(&g)) {
    return Arc(group_mul(p, arc->base), arc->w, arc->chirality, arc->s_end);
  }
  const auto& seg = std::get<Segment>(g);
  return Segment(group_mul(p, seg.a), group_mul(p, seg.b));
}

// R_theta applied to every point of g.
inline GeodesicArc rotate(const TorusAngle& theta, const GeodesicArc& g) {
  if (const auto* arc = std::get_if<Arc>(&g)) {
    std::vector<std::complex<double>> w(arc->w.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = std::polar(1.0, theta[j]) * arc->w[j];
    return Arc(rotate(theta, arc->base), std::move(w), arc->chirality, arc->s_end);
  }
  const auto& seg = std::get<Segment>(g);
  return Segment(rotate(theta, seg.a), rotate(theta, seg.b));
}

// Length of the xy-projection. Arcs have constant speed |W|.
inline double arc_length(const GeodesicArc& g) {
  if (const auto* arc = std::get_if<Arc>(&g)) return arc->s_end * arc->speed();
  const auto& seg = std::get<Segment>(g);
  double acc = 0.0;
  for (std::size_t j = 0; j < seg.a.dim(); ++j) {
    const double dx = seg.b.x()[j] - seg.a.x()[j];
    const double dy = seg.b.y()[j] - seg.a.y()[j];
    acc += dx * dx + dy * dy;
  }
  return std::sqrt(acc);
}

inline double cc_distance(const HPoint& p, const HPoint& q) {
  detail::require_same_dim(p.dim(), q.dim(), "cc_distance");
  if (p == q) return 0.0;
  return arc_length(connect(p, q).front());
}

inline bool is_horizontal_segment(const HPoint& a, const HPoint& b, double tol = kSegmentTol) {
  detail::require_same_dim(a.dim(), b.dim(), "is_horizontal_segment");
  return std::abs(detail::translated_height(a, b)) <= tol;
}

// A sampled curve in R^{2n+1}.
class Polyline {
 public:
  Polyline(std::vector<double> params, std::vector<HPoint> points)
      : params_(std::move(params)), points_(std::move(points)) {
    if (params_.size() != points_.size()) {
      throw DimensionError("Polyline: parameter and point counts differ");
    }
    for (std::size_t i = 1; i < params_.size(); ++i) {
      if (!(params_[i] > params_[i - 1])) {
        throw DomainError("Polyline: parameters must be strictly increasing");
      }
      detail::require_same_dim(points_[i].dim(), points_[0].dim(), "Polyline");
    }
  }

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<double>& params() const noexcept { return params_; }
  const std::vector<HPoint>& points() const noexcept { return points_; }

 private:
  std::vector<double> params_;
  std::vector<HPoint> points_;
};

// `samples` uniformly spaced parameter values covering the whole arc.
inline Polyline sample_arc(const GeodesicArc& g, std::size_t samples) {
  if (samples < 2) throw DomainError("sample_arc: need at least 2 samples");
  const double end = parameter_end(g);
  std::vector<double> params(samples);
  std::vector<HPoint> points;
  points.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    params[i] = (i + 1 == samples) ? end : end * static_cast<double>(i) / (samples - 1);
    points.push_back(eval_arc(g, params[i]));
  }
  return Polyline(std::move(params), std::move(points));
}

// max over interior samples of |t' - 2 sum_j (x_j' y_j - y_j' x_j)| with
// central differences. Horizontal curves give O(h^2).
inline double horizontality_residual(const Polyline& c) {
  if (c.size() < 3) throw DomainError("horizontality_residual: need at least 3 samples");
  const auto& s = c.params();
  const auto& pts = c.points();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    const double h = s[i + 1] - s[i - 1];
    const HPoint& prev = pts[i - 1];
    const HPoint& mid = pts[i];
    const HPoint& next = pts[i + 1];
    double sum = 0.0;
    for (std::size_t j = 0; j < mid.dim(); ++j) {
      const double dx = (next.x()[j] - prev.x()[j]) / h;
      const double dy = (next.y()[j] - prev.y()[j]) / h;
      sum += dx * mid.y()[j] - dy * mid.x()[j];
    }
    const double dt = (next.t() - prev.t()) / h;
    worst = std::max(worst, std::abs(dt - 2.0 * sum));
  }
  return worst;
}

}  // namespace heis
