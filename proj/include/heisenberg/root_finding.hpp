#pragma once

// Scalar transcendental equations that show up in the geodesic family:
//
//   mu(s) = (s - sin s) / (2 (1 - cos s)),   s in (0, 2pi)
//
// and the safeguarded Newton/bisection hybrid used to invert it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "heisenberg/errors.hpp"
#include "heisenberg/point.hpp"

namespace heis {

// s - sin s without cancellation for small |s|.
inline double s_minus_sin(double s) {
  if (std::abs(s) < 0.5) {
    const double s2 = s * s;
    // Horner form of s^3/3! - s^5/5! + ... - s^13/13!
    double acc = -1.0 / 6227020800.0;
    acc = acc * s2 + 1.0 / 39916800.0;
    acc = acc * s2 - 1.0 / 362880.0;
    acc = acc * s2 + 1.0 / 5040.0;
    acc = acc * s2 - 1.0 / 120.0;
    acc = acc * s2 + 1.0 / 6.0;
    return acc * s2 * s;
  }
  return s - std::sin(s);
}

// 1 - cos s = 2 sin^2(s/2)
inline double one_minus_cos(double s) {
  const double h = std::sin(0.5 * s);
  return 2.0 * h * h;
}

namespace detail {

inline double mu_unchecked(double s) {
  const double h = std::sin(0.5 * s);
  return s_minus_sin(s) / (4.0 * h * h);
}

inline double mu_derivative(double s) {
  // d/ds mu = 1/2 - (s - sin s) sin s / (8 sin^4(s/2))
  const double h = std::sin(0.5 * s);
  const double h2 = h * h;
  return 0.5 - s_minus_sin(s) * std::sin(s) / (8.0 * h2 * h2);
}

}  // namespace detail

inline double mu(double s) {
  if (!(s > 0.0 && s < kTwoPi)) {
    throw DomainError("mu: argument must lie in (0, 2pi), got " + std::to_string(s));
  }
  return detail::mu_unchecked(s);
}

// Finds x in [lo, hi] with |f(x)| <= tol for an increasing f with
// f(lo) <= 0 <= f(hi). Newton steps are taken from the current iterate and
// rejected in favour of bisection whenever they leave the bracket. If the
// bracket shrinks to adjacent doubles first, the better endpoint is returned.
template <class F, class DF>
double newton_bisect(F&& f, DF&& df, double lo, double hi, double tol, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) throw DomainError("newton_bisect: root is not bracketed");
  if (std::abs(flo) <= tol) return lo;
  if (std::abs(fhi) <= tol) return hi;

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (std::abs(fx) <= tol) return x;
    if (fx < 0.0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (std::nextafter(lo, hi) >= hi) return std::abs(flo) <= std::abs(fhi) ? lo : hi;

    const double d = df(x);
    double next = (d > 0.0 && std::isfinite(d)) ? x - fx / d : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  throw ConvergenceError("newton_bisect: no convergence in " + std::to_string(max_iter) +
                         " iterations");
}

inline constexpr double kMuBracketLo = 1e-9;
inline constexpr double kMuBracketHi = kTwoPi - 1e-9;

// Inverse of mu: returns s in (0, 2pi) with |mu(s) - k| <= tol.
//
// The nominal bracket is (1e-9, 2pi - 1e-9). Targets below mu(1e-9) or above
// mu(2pi - 1e-9) are handled on a bracket built from the leading asymptotics
// mu(s) ~ s/6 near 0 and mu(2pi - d) ~ 2pi/d^2 near 2pi.
inline double solve_mu(double k, double tol = 1e-14) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("solve_mu: target must be positive and finite");
  }
  if (!(tol > 0.0)) throw DomainError("solve_mu: tolerance must be positive");

  auto f = [k](double s) { return detail::mu_unchecked(s) - k; };
  auto df = [](double s) { return detail::mu_derivative(s); };

  double lo = kMuBracketLo;
  double hi = kMuBracketHi;
  if (f(lo) > 0.0) {
    hi = lo;
    lo = std::max(k, std::numeric_limits<double>::min());
  } else if (f(hi) < 0.0) {
    const double d = std::sqrt(kTwoPi / k);
    lo = hi;
    hi = std::nextafter(kTwoPi, 0.0);
    if (kTwoPi - 0.25 * d < hi) hi = kTwoPi - 0.25 * d;
    if (f(hi) < 0.0) hi = std::nextafter(kTwoPi, 0.0);
    if (f(hi) < 0.0) throw DomainError("solve_mu: target exceeds representable range");
  }
  return newton_bisect(f, df, lo, hi, tol);
}

}  // namespace heis
