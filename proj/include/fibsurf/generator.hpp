#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fibsurf/error.hpp"
#include "fibsurf/fibration.hpp"
#include "fibsurf/integer.hpp"
#include "fibsurf/lattice.hpp"

namespace fibsurf {

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool empty() const { return lo > hi; }
};

struct RandomModelSpec {
  std::uint64_t seed = 0;
  IntRange fibers{1, 4};
  IntRange components{1, 6};
  IntRange multiplicity{1, 9};
  bool nef = false;  // force K_F . F_ij >= 0 on every component
  std::int64_t min_genus = 0;
  std::int64_t base_genus = 0;
  int retry_budget = 500;
};

inline void check_spec(const RandomModelSpec& spec) {
  auto bad = [](const std::string& why) { throw Error(Errc::invalid_argument, why); };
  if (spec.fibers.empty() || spec.fibers.lo < 0) bad("fiber-count range must be nonempty and >= 0");
  if (spec.components.empty() || spec.components.lo < 1) bad("components range must be nonempty and >= 1");
  if (spec.components.hi > 20) bad("at most 20 components per fiber");
  if (spec.multiplicity.empty() || spec.multiplicity.lo < 1) bad("multiplicity range must be nonempty and >= 1");
  if (spec.min_genus < 0 || spec.base_genus < 0) bad("genus bounds must be >= 0");
  if (spec.retry_budget < 1) bad("retry budget must be positive");
}

/// Deterministic stream of valid fibration models. Each fiber is built
/// backwards: multiplicities and a connected dual graph first, then edge
/// weights chosen so that n_j divides sum_k n_k F_j.F_k, which fixes every
/// F_j^2 through F_j . (fiber) = 0. Component genera are then distributed so
/// that K_S . (fiber) = 2g - 2 with integral adjunction everywhere.
class ModelGenerator {
 public:
  explicit ModelGenerator(RandomModelSpec spec) : spec_(spec), rng_(spec.seed) { check_spec(spec_); }

  FibrationModel next() {
    for (int attempt = 0; attempt < spec_.retry_budget; ++attempt)
      if (auto m = try_model()) return std::move(*m);
    throw Error(Errc::infeasible_spec, "no valid model within " + std::to_string(spec_.retry_budget) + " attempts");
  }

  std::vector<FibrationModel> take(std::size_t count) {
    std::vector<FibrationModel> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next());
    return out;
  }

 private:
  struct Skeleton {
    std::vector<std::int64_t> mult;
    std::vector<std::vector<std::int64_t>> meet;  // symmetric, zero diagonal
    std::vector<std::int64_t> square;
    std::vector<std::int64_t> lower;  // least admissible genus per component
    std::int64_t half_weight = 0;     // (sum_j n_j (-F_j^2)) / 2
    std::int64_t mult_sum = 0;
  };

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  static std::int64_t modinv(std::int64_t a, std::int64_t m) {
    // a and m coprime, m >= 1
    std::int64_t t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
      const std::int64_t q = r / nr;
      t = std::exchange(nt, t - q * nt);
      r = std::exchange(nr, r - q * nr);
    }
    return ((t % m) + m) % m;
  }

  std::optional<Skeleton> try_skeleton() {
    const auto c = static_cast<std::size_t>(uniform(spec_.components.lo, spec_.components.hi));
    Skeleton s;
    s.mult.resize(c);
    for (auto& n : s.mult) n = uniform(spec_.multiplicity.lo, spec_.multiplicity.hi);
    // Root at the smallest multiplicity: its constraint is the one left to chance.
    std::iter_swap(s.mult.begin(), std::min_element(s.mult.begin(), s.mult.end()));
    s.meet.assign(c, std::vector<std::int64_t>(c, 0));
    std::vector<std::size_t> parent(c, 0);
    for (std::size_t j = 1; j < c; ++j) parent[j] = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(j) - 1));
    // A few extra edges so that dual graphs are not always trees.
    for (std::size_t j = 2; j < c; ++j) {
      if (uniform(0, 3) != 0) continue;
      const auto k = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(j) - 1));
      if (k == parent[j]) continue;
      s.meet[j][k] = s.meet[k][j] = 1;
    }
    for (std::size_t j = c; j-- > 1;) {
      const std::size_t p = parent[j];
      std::int64_t rest = 0;
      for (std::size_t k = 0; k < c; ++k)
        if (k != p) rest += s.mult[k] * s.meet[j][k];
      const std::int64_t nj = s.mult[j], np = s.mult[p];
      const std::int64_t g = std::gcd(np, nj);
      if (rest % g != 0) return std::nullopt;
      const std::int64_t mod = nj / g;
      const std::int64_t target = ((-(rest / g)) % mod + mod) % mod;
      std::int64_t a = (target * modinv((np / g) % mod, mod)) % mod;
      if (a == 0) a = mod;
      s.meet[j][p] = s.meet[p][j] = a;
    }
    s.square.resize(c);
    for (std::size_t j = 0; j < c; ++j) {
      std::int64_t rest = 0;
      for (std::size_t k = 0; k < c; ++k) rest += s.mult[k] * s.meet[j][k];
      if (rest % s.mult[j] != 0) return std::nullopt;
      s.square[j] = -rest / s.mult[j];
    }
    std::int64_t weight = 0;
    for (std::size_t j = 0; j < c; ++j) {
      weight += -s.mult[j] * s.square[j];
      s.mult_sum += s.mult[j];
    }
    if (weight % 2 != 0) return std::nullopt;
    s.half_weight = weight / 2;
    s.lower.assign(c, 0);
    if (spec_.nef) {
      // K_F . F_j = 2 g_j - 2 + sum_{k != j} F_j.F_k on every component.
      for (std::size_t j = 0; j < c; ++j) {
        const std::int64_t w = std::accumulate(s.meet[j].begin(), s.meet[j].end(), std::int64_t{0});
        s.lower[j] = std::max<std::int64_t>(0, (2 - w + 1) / 2);
      }
    }
    return s;
  }

  // sum_j n_j g_j that a fiber needs for fiber genus g.
  static std::int64_t genus_budget(const Skeleton& s, std::int64_t g) { return g - 1 + s.mult_sum - s.half_weight; }

  static std::int64_t floor_budget(const Skeleton& s) {
    std::int64_t total = 0;
    for (std::size_t j = 0; j < s.mult.size(); ++j) total += s.mult[j] * s.lower[j];
    return total;
  }

  // reach[j][r]: r is a nonnegative combination of mult[j..].
  static std::vector<std::vector<bool>> reach_table(const Skeleton& s, std::int64_t r) {
    const std::size_t c = s.mult.size();
    std::vector<std::vector<bool>> reach(c + 1, std::vector<bool>(static_cast<std::size_t>(r) + 1, false));
    reach[c][0] = true;
    for (std::size_t j = c; j-- > 0;)
      for (std::int64_t v = 0; v <= r; ++v)
        reach[j][v] = reach[j + 1][v] || (v >= s.mult[j] && reach[j][v - s.mult[j]]);
    return reach;
  }

  static bool feasible(const Skeleton& s, std::int64_t g) {
    const std::int64_t r = genus_budget(s, g) - floor_budget(s);
    if (r < 0) return false;
    return reach_table(s, r)[0][r];
  }

  std::vector<std::int64_t> distribute(const Skeleton& s, std::int64_t g) {
    const std::size_t c = s.mult.size();
    std::int64_t r = genus_budget(s, g) - floor_budget(s);
    const auto reach = reach_table(s, r);
    std::vector<std::int64_t> genus(s.lower);
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<std::int64_t> options;
      for (std::int64_t x = 0; x * s.mult[j] <= r; ++x)
        if (reach[j + 1][r - x * s.mult[j]]) options.push_back(x);
      const std::int64_t x = options[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(options.size()) - 1))];
      genus[j] += x;
      r -= x * s.mult[j];
    }
    return genus;
  }

  std::optional<FibrationModel> try_model() {
    const auto fiber_count = static_cast<std::size_t>(uniform(spec_.fibers.lo, spec_.fibers.hi));
    std::vector<Skeleton> skeletons;
    for (std::size_t i = 0; i < fiber_count; ++i) {
      std::optional<Skeleton> s;
      for (int attempt = 0; attempt < spec_.retry_budget && !s; ++attempt) s = try_skeleton();
      if (!s) return std::nullopt;
      skeletons.push_back(std::move(*s));
    }
    std::int64_t g_lo = spec_.min_genus;
    for (const auto& s : skeletons) g_lo = std::max(g_lo, 1 + s.half_weight - s.mult_sum + floor_budget(s));
    const std::int64_t start = g_lo + uniform(0, 3);
    std::optional<std::int64_t> genus;
    for (std::int64_t g = start; g < start + 120 && !genus; ++g)
      if (std::all_of(skeletons.begin(), skeletons.end(), [&](const Skeleton& s) { return feasible(s, g); })) genus = g;
    if (!genus) return std::nullopt;
    return build(skeletons, *genus);
  }

  FibrationModel build(const std::vector<Skeleton>& skeletons, std::int64_t g) {
    std::vector<CurveClass> classes{{"K", ClassKind::canonical, std::nullopt},
                                    {"C", ClassKind::generic_fiber, std::nullopt}};
    std::vector<Fiber> fibers;
    struct Slot {
      std::size_t fiber, comp;
    };
    std::vector<Slot> slots;
    std::vector<std::vector<std::int64_t>> genera;
    for (std::size_t i = 0; i < skeletons.size(); ++i) {
      const auto& s = skeletons[i];
      genera.push_back(distribute(s, g));
      Fiber f;
      f.index = static_cast<std::int64_t>(i + 1);
      for (std::size_t j = 0; j < s.mult.size(); ++j) {
        const std::string id = "F" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
        classes.push_back({id, ClassKind::vertical_component, Integer(genera[i][j])});
        f.components.push_back({id, s.mult[j]});
        slots.push_back({i, j});
      }
      fibers.push_back(std::move(f));
    }
    const std::size_t n = classes.size();
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n, Integer(0)));
    const std::int64_t k_self = uniform(-8, 9);
    m[0][0] = k_self;
    m[0][1] = m[1][0] = 2 * g - 2;
    for (std::size_t a = 0; a < slots.size(); ++a) {
      const auto [fa, ja] = slots[a];
      const auto& s = skeletons[fa];
      const std::int64_t kdot = 2 * genera[fa][ja] - 2 - s.square[ja];
      m[0][a + 2] = m[a + 2][0] = kdot;
      for (std::size_t b = 0; b < slots.size(); ++b) {
        const auto [fb, jb] = slots[b];
        if (fa != fb) continue;
        m[a + 2][b + 2] = ja == jb ? s.square[ja] : s.meet[ja][jb];
      }
    }
    FibrationModel model;
    model.base_genus = spec_.base_genus;
    model.genus = g;
    model.chi_O = uniform(-1, 3);
    model.canonical_self = k_self;
    model.lattice = IntersectionLattice(std::move(classes), std::move(m));
    model.fibers = std::move(fibers);
    return model;
  }

  RandomModelSpec spec_;
  std::mt19937_64 rng_;
};

inline std::vector<FibrationModel> generate_models(const RandomModelSpec& spec, std::size_t count) {
  return ModelGenerator(spec).take(count);
}

}  // namespace fibsurf
