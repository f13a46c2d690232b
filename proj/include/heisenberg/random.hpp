#pragma once

// Deterministic sampling helpers. std::mt19937_64 is fully specified by the
// standard; the mapping to doubles is done here (top 53 bits scaled by 2^-53)
// rather than through std::uniform_real_distribution, whose algorithm is
// implementation-defined. Streams are therefore reproducible across standard
// libraries.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "heisenberg/point.hpp"

namespace heis {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for trial `index` of a run seeded with `seed`.
  static Sampler for_trial(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    Sampler s(0);
    s.engine_.seed(seq);
    return s;
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Point with every coordinate uniform in [-half_width, half_width].
  HPoint point_in_box(std::size_t n, double half_width) {
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = uniform(-half_width, half_width);
    for (auto& v : y) v = uniform(-half_width, half_width);
    const double t = uniform(-half_width, half_width);
    return HPoint(std::move(x), std::move(y), t);
  }

  TorusAngle torus_angle(std::size_t n) {
    std::vector<double> theta(n);
    for (auto& a : theta) a = uniform(0.0, kTwoPi);
    return TorusAngle(std::move(theta));
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace heis
