#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fibsurf/error.hpp"
#include "fibsurf/fibration.hpp"
#include "fibsurf/integer.hpp"
#include "fibsurf/lattice.hpp"

namespace fibsurf {

/// Genus of the base X of a degree-N cyclic cover of a genus g_Y curve that
/// is totally ramified over N points: g_X - 1 = N(N-1)/2 + N(g_Y - 1).
inline Integer base_genus(const Integer& degree, const Integer& base_genus_y) {
  if (degree < 1) throw Error(Errc::invalid_argument, "cover degree " + to_string(degree) + " < 1");
  return 1 + degree * (degree - 1) / 2 + degree * (base_genus_y - 1);
}

/// lcm of every component multiplicity of the model (1 when there are none).
inline Integer multiplicity_lcm(const FibrationModel& model) {
  Integer l = 1;
  for (const auto& f : model.fibers)
    for (const auto& c : f.components) l = lcm_of(l, c.multiplicity);
  return l;
}

/// Smallest admissible cover degree: a common multiple of all multiplicities
/// that leaves at least one generic ramification fiber (N > s).
inline Integer least_cover_degree(const FibrationModel& model) {
  const Integer l = multiplicity_lcm(model);
  const Integer s = model.nonreduced_fiber_count();
  return (s / l + 1) * l;
}

/// Numerical data of the unipotent reduction of degree N. Holds a pointer to
/// the model; it must not outlive it.
class ReductionContext {
 public:
  static ReductionContext make(const FibrationModel& model, const Integer& degree) {
    if (degree < 1) throw Error(Errc::invalid_argument, "N = " + to_string(degree) + " < 1");
    ReductionContext ctx;
    ctx.model_ = &model;
    ctx.degree_ = degree;
    for (const auto& f : model.fibers)
      for (const auto& c : f.components) {
        if (degree % c.multiplicity != 0)
          throw Error(Errc::not_common_multiple, "N not a common multiple: N = " + to_string(degree) +
                                                     " is not divisible by multiplicity " +
                                                     to_string(c.multiplicity) + " of '" + c.class_id + "'");
        ctx.ramification_.emplace(c.class_id, degree / c.multiplicity);
      }
    const Integer s = model.nonreduced_fiber_count();
    if (degree <= s)
      throw Error(Errc::invalid_argument, "N = " + to_string(degree) + " must exceed the " + to_string(s) +
                                              " non-reduced fibers");
    ctx.cover_genus_ = base_genus(degree, model.base_genus);
    return ctx;
  }

  const FibrationModel& model() const { return *model_; }
  const Integer& degree() const { return degree_; }
  const Integer& cover_base_genus() const { return cover_genus_; }
  const std::map<std::string, Integer>& ramification() const { return ramification_; }

  /// N / n_ij for a fiber component.
  const Integer& ramification(const std::string& class_id) const {
    auto it = ramification_.find(class_id);
    if (it == ramification_.end())
      throw Error(Errc::invalid_argument, "'" + class_id + "' is not a fiber component");
    return it->second;
  }

 private:
  ReductionContext() = default;

  const FibrationModel* model_ = nullptr;
  Integer degree_ = 1;
  Integer cover_genus_ = 0;
  std::map<std::string, Integer> ramification_;
};

/// Intersection of pullbacks on the cover: alpha^*D1 . alpha^*D2 = N (D1.D2).
inline Integer pullback_pair(const ReductionContext& ctx, const Divisor& d1, const Divisor& d2) {
  return ctx.degree() * ctx.model().lattice.pair(d1, d2);
}

/// Preimage of a fiber component against a pullback: alpha_* of the preimage
/// is n_ij F_ij, so the product is n_ij (F_ij . D).
inline Integer component_pull_pair(const ReductionContext& ctx, const std::string& class_id, const Divisor& d) {
  const FiberComponent* comp = ctx.model().component(class_id);
  if (!comp) throw Error(Errc::invalid_argument, "'" + class_id + "' is not a fiber component");
  if (ctx.degree() % comp->multiplicity != 0)
    throw Error(Errc::not_common_multiple, "N = " + to_string(ctx.degree()) + " not divisible by " +
                                               to_string(comp->multiplicity));
  return comp->multiplicity * ctx.model().lattice.pair(Divisor::of(class_id), d);
}

struct FiberHalfSum {
  std::int64_t fiber_index = 0;
  Integer canonical_degree;  // sum_j K_F . F_ij
  Rational half_sum;         // sum_j (n_ij K_F.F_ij) / (2 n_ij)
};

namespace detail {

inline std::vector<FiberHalfSum> nonreduced_half_sums(const FibrationModel& model, const Divisor& kf) {
  std::vector<FiberHalfSum> out;
  const auto& lat = model.lattice;
  for (const auto& f : model.fibers) {
    if (f.is_reduced()) continue;
    FiberHalfSum h{f.index, 0, 0};
    for (const auto& c : f.components) {
      const Integer pulled = c.multiplicity * lat.pair(kf, Divisor::of(c.class_id));
      h.canonical_degree += lat.pair(kf, Divisor::of(c.class_id));
      h.half_sum += Rational(pulled, 2 * c.multiplicity);
    }
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace detail

/// Both sides of (s - 2 + 2 g_Y)(g - 1) + chi(K_F) - chi(O_S)
///   = sum over non-reduced fibers of (preimage F_ij . K_fbar) / (2 n_ij).
/// For a base of genus 0 this is the classical form with (s - 2).
struct EulerBalance {
  std::size_t nonreduced_fibers = 0;
  Integer chi_foliation;
  Integer lhs;
  Integer rhs;
  std::vector<FiberHalfSum> fibers;

  bool holds() const { return lhs == rhs; }
};

inline EulerBalance euler_characteristic_balance(const FibrationModel& model) {
  const auto& lat = model.lattice;
  const Divisor kf = foliation_canonical(model);
  EulerBalance out;
  out.nonreduced_fibers = model.nonreduced_fiber_count();
  out.chi_foliation = lat.riemann_roch_chi(kf, model.chi_O);
  const Integer s = out.nonreduced_fibers;
  out.lhs = (s - 2 + 2 * model.base_genus) * (model.genus - 1) + out.chi_foliation - model.chi_O;
  out.fibers = detail::nonreduced_half_sums(model, kf);
  Rational total = 0;
  for (const auto& h : out.fibers) total += h.half_sum;
  if (denominator(total) != 1)
    throw Error(Errc::half_integer_sum, "right-hand side " + to_string(total) + " is not an integer");
  out.rhs = numerator(total);
  return out;
}

/// Exact interpolation through (x_i, y_i); coefficients in ascending degree.
inline std::vector<Rational> interpolate(const std::vector<Integer>& xs, const std::vector<Integer>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      if (xs[i] == xs[i - level]) throw Error(Errc::invalid_argument, "repeated sweep value " + to_string(xs[i]));
      dd[i] = (dd[i] - dd[i - 1]) / Rational(xs[i] - xs[i - level]);
    }
  // Horner expansion of the Newton form.
  std::vector<Rational> coeffs(n, Rational(0));
  for (std::size_t step = n; step-- > 0;) {
    std::vector<Rational> next(n, Rational(0));
    for (std::size_t k = 0; k + 1 < n; ++k) {
      next[k + 1] += coeffs[k];
      next[k] -= coeffs[k] * Rational(xs[step]);
    }
    next[0] += dd[step];
    coeffs = std::move(next);
  }
  return coeffs;
}

struct SweepPoint {
  Integer degree;
  Integer cover_base_genus;
  Integer way1;  // N K_F^2 + 4(g-1)(g_X-1)
  Integer way2;  // N K_F.K_S + sum (N/n_ij - 1) n_ij K_F.F_ij + 2(N-s)(N-1)(g-1)

  bool agree() const { return way1 == way2; }
};

/// K_fbar . K_Sbar on the degree-N reduction, computed two ways at several
/// N, and both interpolated as polynomials in N.
struct CanonicalProductSweep {
  std::vector<SweepPoint> points;
  std::vector<Rational> way1_coefficients;
  std::vector<Rational> way2_coefficients;
  Rational linear_gap;  // linear coefficient of way1 minus that of way2
  Integer balance_gap;  // 2 (lhs - rhs) of the Euler balance

  bool pointwise() const {
    return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.agree(); });
  }
  bool coefficients_agree() const { return way1_coefficients == way2_coefficients; }
  bool linear_term_consistent() const { return linear_gap == Rational(balance_gap); }
  bool all_hold() const { return pointwise() && coefficients_agree() && linear_term_consistent(); }
};

inline constexpr std::size_t kMinSweepLength = 4;

inline CanonicalProductSweep canonical_product_sweep(const FibrationModel& model,
                                                     const std::vector<Integer>& degrees) {
  if (degrees.size() < kMinSweepLength)
    throw Error(Errc::sweep_too_short, "need at least " + std::to_string(kMinSweepLength) + " values of N, got " +
                                           std::to_string(degrees.size()));
  const auto& lat = model.lattice;
  const Divisor kf = foliation_canonical(model);
  const Integer kf_square = lat.self_pair(kf);
  const Integer kf_dot_k = lat.pair(kf, lat.canonical());
  const Integer s = model.nonreduced_fiber_count();
  const Integer g1 = model.genus - 1;

  CanonicalProductSweep out;
  std::vector<Integer> w1, w2;
  for (const auto& degree : degrees) {
    const ReductionContext ctx = ReductionContext::make(model, degree);
    SweepPoint p;
    p.degree = degree;
    p.cover_base_genus = ctx.cover_base_genus();
    p.way1 = degree * kf_square + 4 * g1 * (p.cover_base_genus - 1);
    Integer ramified = 0;
    for (const auto& f : model.fibers) {
      if (f.is_reduced()) continue;
      for (const auto& c : f.components)
        ramified += (ctx.ramification(c.class_id) - 1) * component_pull_pair(ctx, c.class_id, kf);
    }
    p.way2 = degree * kf_dot_k + ramified + 2 * (degree - s) * (degree - 1) * g1;
    w1.push_back(p.way1);
    w2.push_back(p.way2);
    out.points.push_back(std::move(p));
  }
  out.way1_coefficients = interpolate(degrees, w1);
  out.way2_coefficients = interpolate(degrees, w2);
  out.linear_gap = out.way1_coefficients[1] - out.way2_coefficients[1];
  const EulerBalance balance = euler_characteristic_balance(model);
  out.balance_gap = 2 * (balance.lhs - balance.rhs);
  return out;
}

/// Either (a) at least s - 2 non-reduced fibers carry a multiplicity <= 3,
/// or (b) g - 1 <= 4 (chi(O_S) - chi(K_F)).
struct DichotomyReport {
  std::size_t nonreduced_fibers = 0;
  std::size_t small_multiplicity_fibers = 0;
  bool branch_a = false;
  bool branch_b = false;
  Integer genus_gap;  // g - 1
  Integer chi_gap;    // chi(O_S) - chi(K_F)
  std::vector<FiberHalfSum> half_sums;

  bool holds() const { return branch_a || branch_b; }
};

inline DichotomyReport multiplicity_genus_dichotomy(const FibrationModel& model) {
  if (model.genus < 2)
    throw Error(Errc::genus_too_small, "fiber genus " + to_string(model.genus) + " < 2");
  const auto& lat = model.lattice;
  const Divisor kf = foliation_canonical(model);
  DichotomyReport out;
  out.nonreduced_fibers = model.nonreduced_fiber_count();
  for (const auto& f : model.fibers) {
    if (f.is_reduced()) continue;
    if (std::any_of(f.components.begin(), f.components.end(),
                    [](const FiberComponent& c) { return c.multiplicity <= 3; }))
      ++out.small_multiplicity_fibers;
  }
  out.branch_a = static_cast<std::int64_t>(out.small_multiplicity_fibers) >=
                 static_cast<std::int64_t>(out.nonreduced_fibers) - 2;
  out.genus_gap = model.genus - 1;
  out.chi_gap = model.chi_O - lat.riemann_roch_chi(kf, model.chi_O);
  out.branch_b = out.genus_gap <= 4 * out.chi_gap;
  out.half_sums = detail::nonreduced_half_sums(model, kf);
  return out;
}

struct EigenvalueBound {
  bool applicable = false;
  bool holds = false;  // g - 1 <= 4 (chi(O_S) - chi(K_F))
  std::optional<DichotomyReport> dichotomy;
  std::vector<std::string> notes;
};

/// When every singular point has eigenvalues of absolute value at least
/// `eigenvalue_floor` > 3, all multiplicities on singular fibers exceed 3 and
/// the genus bound is read off the dichotomy.
inline EigenvalueBound eigenvalue_genus_bound(const FibrationModel& model, const Integer& eigenvalue_floor) {
  EigenvalueBound out;
  if (eigenvalue_floor <= 3) {
    out.notes.push_back("eigenvalue floor " + to_string(eigenvalue_floor) + " <= 3: not applicable");
    return out;
  }
  for (const auto& f : model.fibers) {
    if (f.is_reduced() && f.components.size() < 2) continue;
    for (const auto& c : f.components)
      if (c.multiplicity < eigenvalue_floor)
        throw Error(Errc::inconsistent_input, "component '" + c.class_id + "' of fiber " +
                                                  std::to_string(f.index) + " has multiplicity " +
                                                  to_string(c.multiplicity) + ", below the eigenvalue floor " +
                                                  to_string(eigenvalue_floor));
  }
  out.applicable = true;
  out.dichotomy = multiplicity_genus_dichotomy(model);
  out.holds = out.dichotomy->branch_b;
  if (out.dichotomy->nonreduced_fibers <= 2)
    out.notes.push_back("s = " + std::to_string(out.dichotomy->nonreduced_fibers) +
                        " <= 2: the dichotomy is met by its first branch, the genus bound is not forced");
  return out;
}

/// Least admissible N with N n (K_F . D) - C . D > 0 for every horizontal
/// class D. Empty when some horizontal class pairs negatively with K_F, so
/// no N works.
inline std::optional<Integer> minimal_cover_degree(const FibrationModel& model, const Integer& power) {
  if (power < 1) throw Error(Errc::invalid_argument, "power n = " + to_string(power) + " < 1");
  const auto& lat = model.lattice;
  const Divisor kf = foliation_canonical(model);
  const Integer l = multiplicity_lcm(model);
  Integer target = least_cover_degree(model);
  for (const auto& c : lat.classes()) {
    if (c.kind != ClassKind::horizontal) continue;
    const Divisor d = Divisor::of(c.id);
    const Integer kd = lat.pair(kf, d);
    const Integer cd = lat.pair(lat.generic_fiber(), d);
    if (kd == 0) throw Error(Errc::zero_pairing_horizontal, "K_F . " + c.id + " = 0");
    if (kd < 0) return std::nullopt;
    target = std::max(target, floor_div(cd, power * kd) + 1);
  }
  const Integer rem = target % l;
  return rem == 0 ? target : target + (l - rem);
}

struct SectionCounts {
  Integer h0_foliation;  // h0(K_F^n), supplied
  Integer h0_reduced;    // h0(K_fbar^n), supplied
  Integer power = 1;     // n
};

struct BoundPredicate {
  Integer lhs;
  Integer rhs;
  bool holds = false;
};

struct SectionReport {
  Integer kf_square;
  bool sections_exceed = false;    // h0(K_fbar^n) > h0(K_F^n)
  BoundPredicate growth;           // n K_F^2 >= 2(g-1), required when sections exceed
  bool growth_required_and_fails = false;
  BoundPredicate very_ample;       // n^2 K_F^2 >= 2(g-1)
  BoundPredicate generated_sections;  // (2n-1)(g-1) <= h0(K_F^n)
  BoundPredicate generated_degree;    // 2(g-1) <= n K_F^2
  bool lattice_nef = false;        // K_F pairs >= 0 with every declared curve class
  std::vector<std::string> notes;

  bool holds() const { return !growth_required_and_fails; }
};

inline SectionReport section_predicates(const FibrationModel& model, const SectionCounts& counts) {
  if (counts.power < 1) throw Error(Errc::invalid_argument, "power n = " + to_string(counts.power) + " < 1");
  if (counts.h0_foliation < 0 || counts.h0_reduced < 0)
    throw Error(Errc::invalid_argument, "section counts must be nonnegative");
  const auto& lat = model.lattice;
  const Divisor kf = foliation_canonical(model);
  const Integer& n = counts.power;
  const Integer two_g1 = 2 * (model.genus - 1);
  SectionReport out;
  out.kf_square = lat.self_pair(kf);
  out.sections_exceed = counts.h0_reduced > counts.h0_foliation;
  out.growth = {n * out.kf_square, two_g1, n * out.kf_square >= two_g1};
  out.growth_required_and_fails = out.sections_exceed && !out.growth.holds;
  out.very_ample = {n * n * out.kf_square, two_g1, n * n * out.kf_square >= two_g1};
  out.generated_sections = {(2 * n - 1) * (model.genus - 1), counts.h0_foliation,
                            (2 * n - 1) * (model.genus - 1) <= counts.h0_foliation};
  out.generated_degree = {two_g1, n * out.kf_square, two_g1 <= n * out.kf_square};
  out.lattice_nef = true;
  for (const auto& c : lat.classes())
    if ((c.kind == ClassKind::vertical_component || c.kind == ClassKind::horizontal) &&
        lat.pair(kf, Divisor::of(c.id)) < 0)
      out.lattice_nef = false;
  if (!out.sections_exceed)
    out.notes.push_back("h0(K_fbar^n) <= h0(K_F^n): growth predicate holds vacuously");
  if (out.growth_required_and_fails)
    out.notes.push_back("sections exceed but n K_F^2 < 2(g-1): the nef and section hypotheses cannot all hold");
  out.notes.push_back(
      "split direct image: if the direct image of K_fbar^n splits, some fiber C has h0(K_fbar^n(-C)) != 0; "
      "not computable from lattice data");
  return out;
}

}  // namespace fibsurf
