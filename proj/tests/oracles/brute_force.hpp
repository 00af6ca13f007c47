#pragma once

// Exhaustive and closed-form references for the reduction and fiber tests.

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

/// For a fiber with self-intersections `square` and sibling pairings `meet`,
/// the largest value each multiplicity can take over all vectors v in
/// [0, cap]^c with v[start] <= bound and v_k (F_j.F_k) <= v_j (-F_j^2) for
/// every pair of meeting components.
inline std::vector<std::int64_t> max_multiplicities(const std::vector<std::int64_t>& square,
                                                    const std::vector<std::vector<std::int64_t>>& meet,
                                                    std::size_t start, std::int64_t bound, std::int64_t cap) {
  const std::size_t c = square.size();
  std::vector<std::int64_t> best(c, -1), v(c, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == c) {
      for (std::size_t j = 0; j < c; ++j)
        for (std::size_t k = 0; k < c; ++k)
          if (j != k && meet[j][k] > 0 && v[k] * meet[j][k] > v[j] * -square[j]) return;
      for (std::size_t j = 0; j < c; ++j) best[j] = std::max(best[j], v[j]);
      return;
    }
    const std::int64_t hi = i == start ? bound : cap;
    for (v[i] = 0; v[i] <= hi; ++v[i]) rec(i + 1);
    v[i] = 0;
  };
  rec(0);
  return best;
}

/// Coefficients (ascending in N) of both expressions for the canonical
/// product on the degree-N reduction, expanded by hand.
struct SweepClosedForm {
  std::vector<boost::multiprecision::cpp_int> way1, way2;
};

/// kf_sq = K_F^2, kf_k = K_F.K_S, kf_fib = sum over components of
/// non-reduced fibers of K_F.F, kf_fib_n = the same weighted by n.
inline SweepClosedForm sweep_closed_form(std::int64_t g, std::int64_t g_y, std::int64_t s,
                                         const boost::multiprecision::cpp_int& kf_sq,
                                         const boost::multiprecision::cpp_int& kf_k,
                                         const boost::multiprecision::cpp_int& kf_fib,
                                         const boost::multiprecision::cpp_int& kf_fib_n) {
  using I = boost::multiprecision::cpp_int;
  const I g1 = g - 1;
  SweepClosedForm out;
  // N K_F^2 + 4 (g-1) (N(N-1)/2 + N(g_Y-1))
  out.way1 = {I(0), kf_sq - 2 * g1 + 4 * g1 * (g_y - 1), 2 * g1, I(0)};
  // N K_F.K_S + sum (N/n - 1) n K_F.F + 2 (N-s)(N-1)(g-1)
  out.way2 = {-kf_fib_n + 2 * s * g1, kf_k + kf_fib - 2 * (s + 1) * g1, 2 * g1, I(0)};
  return out;
}

}  // namespace oracle
