// Prints the first few witness points p_m, q_m of the iterated geodetic hull
// of {o, (0, 1)} in H^2, together with the radius of each generating bubble
// and the gap between the closed-form sigma_m and its group-law recomputation.

#include <cstdio>

#include "heisenberg.hpp"

int main() {
  constexpr std::size_t kDepth = 8;
  const auto seq = heis::hull_points(kDepth, 2);

  std::printf("%3s %12s %12s %14s %14s %10s\n", "m", "r_m", "x(p_m)", "t(p_m)", "t(q_m)", "oracle");
  for (std::size_t m = 1; m <= kDepth; ++m) {
    double gap = 0.0;
    for (int k = 0; k <= 8; ++k) {
      const double s = heis::kTwoPi * k / 8.0;
      gap = std::max(gap, heis::coord_distance(heis::sigma_eval(seq, m, s),
                                               heis::sigma_oracle(seq, m, s)));
    }
    const auto& p = seq.p[m - 1];
    const auto& q = seq.q[m - 1];
    std::printf("%3zu %12.6f %12.6f %14.6f %14.6f %10.2e\n", m, seq.r[m - 1], p.x()[0], p.t(),
                q.t(), gap);
  }
  return 0;
}
