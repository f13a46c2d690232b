#pragma once

// Group structure of the Heisenberg group H^n = R^n x R^n x R.
//
// A point is stored as (x, y, t) with the complex coordinate z = x + iy kept
// as a split real pair. The product is
//
//   (x, y, t) * (u, v, s) = (x + u, y + v, t + s + 2 sum_i (u_i y_i - x_i v_i)).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heisenberg/errors.hpp"

namespace heis {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace detail {

inline void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

inline void require_finite(std::span<const double> v, const char* what) {
  for (double e : v) {
    if (!std::isfinite(e)) throw DimensionError(std::string(what) + ": non-finite entry");
  }
}

}  // namespace detail

class HPoint {
 public:
  HPoint(std::vector<double> x, std::vector<double> y, double t)
      : x_(std::move(x)), y_(std::move(y)), t_(t) {
    if (x_.empty()) throw DimensionError("HPoint: dimension n must be >= 1");
    detail::require_same_dim(x_.size(), y_.size(), "HPoint");
    detail::require_finite(x_, "HPoint.x");
    detail::require_finite(y_, "HPoint.y");
    if (!std::isfinite(t_)) throw DimensionError("HPoint.t: non-finite entry");
  }

  static HPoint origin(std::size_t n) {
    return HPoint(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0);
  }

  // Builds (z, t) from complex coordinates.
  static HPoint from_complex(std::span<const std::complex<double>> z, double t) {
    std::vector<double> x(z.size()), y(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
      x[j] = z[j].real();
      y[j] = z[j].imag();
    }
    return HPoint(std::move(x), std::move(y), t);
  }

  // Parses the flat layout (x_1..x_n, y_1..y_n, t).
  static HPoint from_flat(std::span<const double> flat) {
    if (flat.size() < 3 || flat.size() % 2 == 0) {
      throw DimensionError("HPoint: flat coordinates must have odd length 2n+1 >= 3");
    }
    const std::size_t n = (flat.size() - 1) / 2;
    return HPoint(std::vector<double>(flat.begin(), flat.begin() + n),
                  std::vector<double>(flat.begin() + n, flat.begin() + 2 * n), flat.back());
  }

  std::size_t dim() const noexcept { return x_.size(); }
  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }
  double t() const noexcept { return t_; }

  std::complex<double> z(std::size_t j) const { return {x_[j], y_[j]}; }

  std::vector<std::complex<double>> z() const {
    std::vector<std::complex<double>> out(dim());
    for (std::size_t j = 0; j < dim(); ++j) out[j] = z(j);
    return out;
  }

  double z_norm_sq() const noexcept {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim(); ++j) acc += x_[j] * x_[j] + y_[j] * y_[j];
    return acc;
  }
  double z_norm() const noexcept { return std::sqrt(z_norm_sq()); }

  bool is_origin() const noexcept { return t_ == 0.0 && z_norm_sq() == 0.0; }

  friend bool operator==(const HPoint&, const HPoint&) = default;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  double t_;
};

// Max-norm distance in R^{2n+1}; used by tests and round-trip checks.
inline double coord_distance(const HPoint& p, const HPoint& q) {
  detail::require_same_dim(p.dim(), q.dim(), "coord_distance");
  double d = std::abs(p.t() - q.t());
  for (std::size_t j = 0; j < p.dim(); ++j) {
    d = std::max(d, std::abs(p.x()[j] - q.x()[j]));
    d = std::max(d, std::abs(p.y()[j] - q.y()[j]));
  }
  return d;
}

// Element of the torus T^n acting diagonally on C^n. Angles are reduced to [0, 2pi).
class TorusAngle {
 public:
  explicit TorusAngle(std::vector<double> theta) : theta_(std::move(theta)) {
    if (theta_.empty()) throw DimensionError("TorusAngle: dimension must be >= 1");
    detail::require_finite(theta_, "TorusAngle");
    for (double& a : theta_) {
      a = std::fmod(a, kTwoPi);
      if (a < 0.0) a += kTwoPi;
      if (a >= kTwoPi) a = 0.0;
    }
  }

  static TorusAngle zero(std::size_t n) { return TorusAngle(std::vector<double>(n, 0.0)); }

  std::size_t dim() const noexcept { return theta_.size(); }
  const std::vector<double>& angles() const noexcept { return theta_; }
  double operator[](std::size_t j) const { return theta_[j]; }

  TorusAngle inverse() const {
    std::vector<double> neg(theta_.size());
    for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -theta_[j];
    return TorusAngle(std::move(neg));
  }

 private:
  std::vector<double> theta_;
};

// Sum_i (u_i y_i - x_i v_i) for z = (x, y), w = (u, v), each stored as a flat
// vector of length 2n. Antisymmetric; vanishes on the diagonal.
inline double skew_form(std::span<const double> z, std::span<const double> w) {
  detail::require_same_dim(z.size(), w.size(), "skew_form");
  if (z.empty() || z.size() % 2 != 0) {
    throw DimensionError("skew_form: vectors must have even length 2n >= 2");
  }
  const std::size_t n = z.size() / 2;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * z[n + i] - z[i] * w[n + i];
  return acc;
}

inline std::vector<double> xy_project(const HPoint& p) {
  std::vector<double> out;
  out.reserve(2 * p.dim());
  out.insert(out.end(), p.x().begin(), p.x().end());
  out.insert(out.end(), p.y().begin(), p.y().end());
  return out;
}

inline HPoint group_mul(const HPoint& p, const HPoint& q) {
  detail::require_same_dim(p.dim(), q.dim(), "group_mul");
  const std::size_t n = p.dim();
  std::vector<double> x(n), y(n);
  double correction = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = p.x()[i] + q.x()[i];
    y[i] = p.y()[i] + q.y()[i];
    correction += q.x()[i] * p.y()[i] - p.x()[i] * q.y()[i];
  }
  return HPoint(std::move(x), std::move(y), p.t() + q.t() + 2.0 * correction);
}

inline HPoint inverse(const HPoint& p) {
  std::vector<double> x(p.dim()), y(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    x[i] = -p.x()[i];
    y[i] = -p.y()[i];
  }
  return HPoint(std::move(x), std::move(y), -p.t());
}

// tau_p(q) = p * q; left translations are isometries of the CC metric.
inline HPoint left_translate(const HPoint& p, const HPoint& q) { return group_mul(p, q); }

// (z, t) -> (e^{i theta_1} z_1, ..., e^{i theta_n} z_n, t)
inline HPoint rotate(const TorusAngle& theta, const HPoint& p) {
  detail::require_same_dim(theta.dim(), p.dim(), "rotate");
  std::vector<double> x(p.dim()), y(p.dim());
  for (std::size_t j = 0; j < p.dim(); ++j) {
    const std::complex<double> w = std::polar(1.0, theta[j]) * p.z(j);
    x[j] = w.real();
    y[j] = w.imag();
  }
  return HPoint(std::move(x), std::move(y), p.t());
}

// J: (z, t) -> (conj z, t)
inline HPoint conj_J(const HPoint& p) {
  std::vector<double> y(p.dim());
  for (std::size_t j = 0; j < p.dim(); ++j) y[j] = -p.y()[j];
  return HPoint(p.x(), std::move(y), p.t());
}

// (x, y, t) -> (x, -y, -t)
inline HPoint flip(const HPoint& p) {
  std::vector<double> y(p.dim());
  for (std::size_t j = 0; j < p.dim(); ++j) y[j] = -p.y()[j];
  return HPoint(p.x(), std::move(y), -p.t());
}

// Projection onto {y = 0}: (x + iy, t) -> (x, t).
inline HPoint tau_project(const HPoint& p) {
  return HPoint(p.x(), std::vector<double>(p.dim(), 0.0), p.t());
}

}  // namespace heis
