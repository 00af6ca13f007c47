#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fibsurf/error.hpp"
#include "fibsurf/integer.hpp"
#include "fibsurf/lattice.hpp"

namespace fibsurf {

struct FiberComponent {
  std::string class_id;
  Integer multiplicity = 1;

  bool operator==(const FiberComponent&) const = default;
};

struct Fiber {
  std::int64_t index = 0;
  std::vector<FiberComponent> components;

  /// Reduced means every multiplicity is 1.
  bool is_reduced() const {
    return std::all_of(components.begin(), components.end(),
                       [](const FiberComponent& c) { return c.multiplicity == 1; });
  }

  Divisor divisor() const {
    Divisor d;
    for (const auto& c : components) d.add(c.class_id, c.multiplicity);
    return d;
  }

  Divisor reduced_divisor() const {
    Divisor d;
    for (const auto& c : components) d.add(c.class_id, 1);
    return d;
  }

  bool operator==(const Fiber&) const = default;
};

/// A fibration f: S -> Y described purely by intersection numbers.
struct FibrationModel {
  Integer base_genus = 0;
  Integer genus = 0;
  Integer chi_O = 0;
  Integer canonical_self = 0;  // declared K_S.K_S
  IntersectionLattice lattice;
  std::vector<Fiber> fibers;

  /// s, the number of fibers with some multiplicity >= 2.
  std::size_t nonreduced_fiber_count() const {
    return static_cast<std::size_t>(
        std::count_if(fibers.begin(), fibers.end(), [](const Fiber& f) { return !f.is_reduced(); }));
  }

  const Fiber& fiber(std::int64_t index) const {
    for (const auto& f : fibers)
      if (f.index == index) return f;
    throw Error(Errc::invalid_argument, "no fiber with index " + std::to_string(index));
  }

  /// The fiber component carrying the given class, if any.
  const FiberComponent* component(const std::string& class_id) const {
    for (const auto& f : fibers)
      for (const auto& c : f.components)
        if (c.class_id == class_id) return &c;
    return nullptr;
  }

  bool operator==(const FibrationModel&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool valid() const { return violations.empty(); }
};

// Components above this count are not checked for 1-connectedness.
inline constexpr std::size_t kOneConnectedCutoff = 12;

namespace detail {

inline bool fiber_graph_connected(const Fiber& fiber, const IntersectionLattice& lattice) {
  const std::size_t n = fiber.components.size();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < n; ++k) {
      if (seen[k]) continue;
      if (lattice.entry(fiber.components[j].class_id, fiber.components[k].class_id) > 0) {
        seen[k] = true;
        queue.push_back(k);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Every split of the component set into two nonempty parts must meet positively.
inline std::optional<std::string> one_connected_violation(const Fiber& fiber,
                                                          const IntersectionLattice& lattice) {
  const std::size_t n = fiber.components.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    if (mask & 1) continue;  // each split counted once: component 0 always in D2
    Divisor d1, d2;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& c = fiber.components[j];
      ((mask >> j) & 1 ? d1 : d2).add(c.class_id, c.multiplicity);
    }
    const Integer meet = lattice.pair(d1, d2);
    if (meet < 1) return "D1 = " + to_string(d1) + ", D2 = " + to_string(d2) + ", D1.D2 = " + to_string(meet);
  }
  return std::nullopt;
}

}  // namespace detail

/// Lists every violated model invariant. All other operations assume an
/// empty violation list.
inline ValidationReport validate(const FibrationModel& model) {
  ValidationReport report;
  auto violation = [&](std::string s) { report.violations.push_back(std::move(s)); };
  const auto& lat = model.lattice;
  const auto& K = lat.canonical_id();
  const auto& C = lat.fiber_id();

  if (model.base_genus < 0) violation("base genus " + to_string(model.base_genus) + " is negative");
  if (model.genus < 0) violation("fiber genus " + to_string(model.genus) + " is negative");
  if (lat.entry(K, K) != model.canonical_self)
    violation("K_S self-intersection " + to_string(lat.entry(K, K)) + " differs from declared " +
              to_string(model.canonical_self));
  if (lat.entry(C, C) != 0)
    violation("generic fiber self-intersection nonzero (C.C = " + to_string(lat.entry(C, C)) + ")");
  if (lat.entry(K, C) != 2 * model.genus - 2)
    violation("declared genus " + to_string(model.genus) + " disagrees with adjunction: K.C = " +
              to_string(lat.entry(K, C)) + ", expected " + to_string(2 * model.genus - 2));

  for (const auto& c : lat.classes()) {
    if (c.kind == ClassKind::vertical_component && lat.entry(C, c.id) != 0)
      violation("vertical class '" + c.id + "' meets the generic fiber (C." + c.id + " = " +
                to_string(lat.entry(C, c.id)) + ")");
    if (c.kind == ClassKind::vertical_component || c.kind == ClassKind::horizontal) {
      try {
        const Integer g = lat.adjunction_genus(c.id);
        if (c.genus && *c.genus != g)
          violation("class '" + c.id + "' declares genus " + to_string(*c.genus) + " but adjunction gives " +
                    to_string(g));
      } catch (const Error& e) {
        violation(e.what());
      }
    }
  }

  std::set<std::int64_t> indices;
  std::map<std::string, std::int64_t> owner;
  bool references_ok = true;
  for (const auto& f : model.fibers) {
    const std::string tag = "fiber " + std::to_string(f.index);
    if (!indices.insert(f.index).second) violation(tag + ": duplicate fiber index");
    if (f.components.empty()) {
      violation(tag + ": no components");
      references_ok = false;
    }
    for (const auto& comp : f.components) {
      if (comp.multiplicity < 1)
        violation(tag + ": component '" + comp.class_id + "' has multiplicity " + to_string(comp.multiplicity));
      if (!lat.contains(comp.class_id)) {
        violation(tag + ": unknown class '" + comp.class_id + "'");
        references_ok = false;
        continue;
      }
      if (lat.at(comp.class_id).kind != ClassKind::vertical_component) {
        violation(tag + ": component '" + comp.class_id + "' is not a vertical-component class");
        references_ok = false;
      }
      auto [it, fresh] = owner.emplace(comp.class_id, f.index);
      if (!fresh) {
        violation("class '" + comp.class_id + "' appears in fiber " + std::to_string(it->second) + " and " + tag);
        references_ok = false;
      }
    }
  }
  for (const auto& c : lat.classes())
    if (c.kind == ClassKind::vertical_component && !owner.contains(c.id))
      report.warnings.push_back("vertical class '" + c.id + "' belongs to no declared fiber");
  if (!references_ok) return report;

  for (const auto& f : model.fibers) {
    const std::string tag = "fiber " + std::to_string(f.index);
    const Divisor fd = f.divisor();
    for (const auto& c : lat.classes()) {
      const Divisor v = Divisor::of(c.id);
      const Integer lhs = lat.pair(fd, v);
      const Integer rhs = lat.pair(lat.generic_fiber(), v);
      if (lhs != rhs) {
        violation(tag + " not numerically equivalent to C: pairs " + to_string(lhs) + " with '" + c.id +
                  "', C pairs " + to_string(rhs));
        break;
      }
    }
    for (std::size_t j = 0; j < f.components.size(); ++j)
      for (std::size_t k = j + 1; k < f.components.size(); ++k) {
        const Integer& e = lat.entry(f.components[j].class_id, f.components[k].class_id);
        if (e < 0)
          violation(tag + ": negative pairing " + to_string(e) + " between components '" +
                    f.components[j].class_id + "' and '" + f.components[k].class_id + "'");
      }
    if (!detail::fiber_graph_connected(f, lat)) {
      violation(tag + ": dual graph is disconnected");
      continue;
    }
    if (f.components.size() > kOneConnectedCutoff) {
      report.warnings.push_back(tag + ": " + std::to_string(f.components.size()) +
                                " components, 1-connectedness not checked");
    } else if (auto bad = detail::one_connected_violation(f, lat)) {
      violation(tag + " is not 1-connected: " + *bad);
    }
  }
  return report;
}

/// K_f = K_S + (2 - 2 g_Y) C.
inline Divisor relative_canonical(const FibrationModel& model) {
  const auto& lat = model.lattice;
  return lat.canonical() + (2 - 2 * model.base_genus) * lat.generic_fiber();
}

struct DeltaDivisors {
  Divisor total;    // sum of the non-reduced fibers
  Divisor reduced;  // its reduction
  Divisor excess;   // total - reduced = sum (n_ij - 1) F_ij
};

inline DeltaDivisors delta_divisors(const FibrationModel& model) {
  DeltaDivisors out;
  for (const auto& f : model.fibers) {
    if (f.is_reduced()) continue;
    out.total += f.divisor();
    out.reduced += f.reduced_divisor();
  }
  out.excess = out.total - out.reduced;
  return out;
}

/// K_F = K_f - Delta_0.
inline Divisor foliation_canonical(const FibrationModel& model) {
  return relative_canonical(model) - delta_divisors(model).excess;
}

/// Sum over j < k of F_ij . F_ik for one fiber.
inline Integer sibling_intersections(const Fiber& fiber, const IntersectionLattice& lattice) {
  Integer total = 0;
  for (std::size_t j = 0; j < fiber.components.size(); ++j)
    for (std::size_t k = j + 1; k < fiber.components.size(); ++k) {
      const Integer& e = lattice.entry(fiber.components[j].class_id, fiber.components[k].class_id);
      if (e < 0)
        throw Error(Errc::negative_sibling_pairing,
                    "fiber " + std::to_string(fiber.index) + ": " + fiber.components[j].class_id + "." +
                        fiber.components[k].class_id + " = " + to_string(e));
      total += e;
    }
  return total;
}

/// Singular points of the foliation under normal crossings: pairwise
/// intersections of components, summed over all declared fibers.
inline Integer c2_count(const FibrationModel& model) {
  Integer total = 0;
  for (const auto& f : model.fibers) total += sibling_intersections(f, model.lattice);
  return total;
}

struct IdentityCheck {
  Integer lhs;
  Integer rhs;

  bool holds() const { return lhs == rhs; }
};

struct RecoveredSquare {
  std::int64_t fiber_index = 0;
  std::string class_id;
  Integer stored;     // F_ij0 . F_ij0 from the lattice
  Integer recovered;  // -(sum_{j != j0} n_ij F_ij0.F_ij) / n_ij0

  bool holds() const { return stored == recovered; }
};

struct FiberIdentityReport {
  /// Delta_0^2 against (K_F - K_S)^2.
  IdentityCheck excess_square;
  /// -sum F_ij^2 against 2 c2 - (K_F - K_S)^2, over the non-reduced fibers.
  IdentityCheck component_squares;
  Integer square_sum;     // sum F_ij^2 over non-reduced fibers
  Integer nonreduced_c2;  // sibling intersections over non-reduced fibers
  std::vector<RecoveredSquare> recovered_squares;
  /// Reduced fibers with two or more components; excluded from the sums above.
  std::size_t reduced_singular_fibers = 0;

  bool all_hold() const {
    return excess_square.holds() && component_squares.holds() &&
           std::all_of(recovered_squares.begin(), recovered_squares.end(),
                       [](const RecoveredSquare& r) { return r.holds(); });
  }
};

inline FiberIdentityReport check_fiber_identities(const FibrationModel& model) {
  const auto& lat = model.lattice;
  FiberIdentityReport report;
  const DeltaDivisors delta = delta_divisors(model);
  const Divisor gap = foliation_canonical(model) - lat.canonical();
  const Integer gap_square = lat.self_pair(gap);

  report.excess_square = {lat.self_pair(delta.excess), gap_square};

  for (const auto& f : model.fibers) {
    if (f.is_reduced()) {
      if (f.components.size() > 1) ++report.reduced_singular_fibers;
      continue;
    }
    for (const auto& c : f.components) report.square_sum += lat.entry(c.class_id, c.class_id);
    report.nonreduced_c2 += sibling_intersections(f, lat);
  }
  report.component_squares = {-report.square_sum, 2 * report.nonreduced_c2 - gap_square};

  for (const auto& f : model.fibers) {
    for (std::size_t j0 = 0; j0 < f.components.size(); ++j0) {
      const auto& pivot = f.components[j0];
      Integer rest = 0;
      for (std::size_t j = 0; j < f.components.size(); ++j)
        if (j != j0) rest += f.components[j].multiplicity * lat.entry(pivot.class_id, f.components[j].class_id);
      if (rest % pivot.multiplicity != 0)
        throw Error(Errc::divisibility_failure, "fiber " + std::to_string(f.index) + ", component '" +
                                                    pivot.class_id + "': " + to_string(rest) +
                                                    " not divisible by multiplicity " +
                                                    to_string(pivot.multiplicity));
      report.recovered_squares.push_back(
          {f.index, pivot.class_id, lat.entry(pivot.class_id, pivot.class_id), -rest / pivot.multiplicity});
    }
  }
  return report;
}

/// Starting from a bound on one multiplicity, walks the fiber dual graph and
/// bounds every other multiplicity through F_j . (sum_k n_k F_k) = 0, i.e.
/// n_k <= n_j (-F_j^2) / (F_j . F_k) for each neighbour k of j.
inline std::map<std::string, Integer> propagate_multiplicity_bounds(const FibrationModel& model,
                                                                    std::int64_t fiber_index,
                                                                    std::size_t start, const Integer& bound) {
  const auto& lat = model.lattice;
  const Fiber& f = model.fiber(fiber_index);
  const std::size_t n = f.components.size();
  if (start >= n)
    throw Error(Errc::invalid_argument, "fiber " + std::to_string(fiber_index) + " has no component " +
                                            std::to_string(start));
  if (bound < f.components[start].multiplicity)
    throw Error(Errc::invalid_argument, "bound " + to_string(bound) + " is below the multiplicity " +
                                            to_string(f.components[start].multiplicity));
  if (!detail::fiber_graph_connected(f, lat))
    throw Error(Errc::disconnected_fiber, "fiber " + std::to_string(fiber_index));

  std::vector<std::optional<Integer>> best(n);
  best[start] = bound;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop_front();
    const auto& cj = f.components[j].class_id;
    const Integer neg_square = -lat.entry(cj, cj);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const Integer& meet = lat.entry(cj, f.components[k].class_id);
      if (meet <= 0) continue;
      const Integer candidate = floor_div(*best[j] * neg_square, meet);
      if (!best[k] || candidate < *best[k]) {
        best[k] = candidate;
        queue.push_back(k);
      }
    }
  }
  std::map<std::string, Integer> out;
  for (std::size_t j = 0; j < n; ++j) out.emplace(f.components[j].class_id, *best[j]);
  return out;
}

struct ZeroPairingScan {
  bool applicable = true;
  std::vector<std::string> offenders;
  std::vector<std::string> warnings;
};

/// Vertical classes with K_F . v = 0 that are not rational (-2)-curves. In the
/// big-and-nef regime (genus >= 2) those are the only curves allowed to
/// pair to zero with K_F.
inline ZeroPairingScan zero_pairing_scan(const FibrationModel& model) {
  ZeroPairingScan scan;
  if (model.genus < 2) {
    scan.applicable = false;
    scan.warnings.push_back("fiber genus " + to_string(model.genus) +
                            " < 2: outside the big-and-nef regime, no verdict");
    return scan;
  }
  const auto& lat = model.lattice;
  const Divisor kf = foliation_canonical(model);
  for (const auto& c : lat.classes()) {
    if (c.kind != ClassKind::vertical_component) continue;
    if (lat.pair(kf, Divisor::of(c.id)) != 0) continue;
    if (!c.genus) throw Error(Errc::missing_genus, "class '" + c.id + "' pairs to zero with K_F but has no genus");
    if (!(*c.genus == 0 && lat.entry(c.id, c.id) == -2)) scan.offenders.push_back(c.id);
  }
  return scan;
}

}  // namespace fibsurf
