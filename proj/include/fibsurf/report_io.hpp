#pragma once

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fibsurf/fibration.hpp"
#include "fibsurf/integer.hpp"
#include "fibsurf/model_io.hpp"
#include "fibsurf/pencil.hpp"
#include "fibsurf/reduction.hpp"

namespace fibsurf {

/// Integral rationals go out as integers, the rest as "a/b".
inline json rational_to_json(const Rational& v) {
  if (denominator(v) == 1) return integer_to_json(numerator(v));
  return to_string(v);
}

inline json identity_to_json(const IdentityCheck& c) {
  return {{"lhs", integer_to_json(c.lhs)}, {"rhs", integer_to_json(c.rhs)}, {"holds", c.holds()}};
}

inline json predicate_to_json(const BoundPredicate& p) {
  return {{"lhs", integer_to_json(p.lhs)}, {"rhs", integer_to_json(p.rhs)}, {"holds", p.holds}};
}

inline json to_json(const ValidationReport& r) {
  return {{"valid", r.valid()}, {"violations", r.violations}, {"warnings", r.warnings}};
}

inline json to_json(const FiberIdentityReport& r) {
  json recovered = json::array();
  for (const auto& s : r.recovered_squares)
    recovered.push_back({{"fiber", s.fiber_index},
                         {"class", s.class_id},
                         {"stored", integer_to_json(s.stored)},
                         {"recovered", integer_to_json(s.recovered)},
                         {"holds", s.holds()}});
  return {{"excess_square", identity_to_json(r.excess_square)},
          {"component_squares", identity_to_json(r.component_squares)},
          {"square_sum", integer_to_json(r.square_sum)},
          {"nonreduced_c2", integer_to_json(r.nonreduced_c2)},
          {"reduced_singular_fibers", r.reduced_singular_fibers},
          {"recovered_squares", recovered},
          {"holds", r.all_hold()}};
}

inline json to_json(const std::vector<FiberHalfSum>& sums) {
  json out = json::array();
  for (const auto& h : sums)
    out.push_back({{"fiber", h.fiber_index},
                   {"canonical_degree", integer_to_json(h.canonical_degree)},
                   {"half_sum", rational_to_json(h.half_sum)}});
  return out;
}

inline json to_json(const EulerBalance& b) {
  return {{"nonreduced_fibers", b.nonreduced_fibers},
          {"chi_foliation", integer_to_json(b.chi_foliation)},
          {"lhs", integer_to_json(b.lhs)},
          {"rhs", integer_to_json(b.rhs)},
          {"fibers", to_json(b.fibers)},
          {"holds", b.holds()}};
}

inline json to_json(const DichotomyReport& d) {
  return {{"nonreduced_fibers", d.nonreduced_fibers},
          {"small_multiplicity_fibers", d.small_multiplicity_fibers},
          {"branch_a", d.branch_a},
          {"branch_b", d.branch_b},
          {"genus_gap", integer_to_json(d.genus_gap)},
          {"chi_gap", integer_to_json(d.chi_gap)},
          {"half_sums", to_json(d.half_sums)},
          {"holds", d.holds()}};
}

inline json to_json(const CanonicalProductSweep& s) {
  json points = json::array();
  for (const auto& p : s.points)
    points.push_back({{"N", integer_to_json(p.degree)},
                      {"cover_base_genus", integer_to_json(p.cover_base_genus)},
                      {"way1", integer_to_json(p.way1)},
                      {"way2", integer_to_json(p.way2)},
                      {"holds", p.agree()}});
  json c1 = json::array(), c2 = json::array();
  for (const auto& c : s.way1_coefficients) c1.push_back(rational_to_json(c));
  for (const auto& c : s.way2_coefficients) c2.push_back(rational_to_json(c));
  return {{"points", points},
          {"way1_coefficients", c1},
          {"way2_coefficients", c2},
          {"linear_gap", rational_to_json(s.linear_gap)},
          {"balance_gap", integer_to_json(s.balance_gap)},
          {"holds", s.all_hold()}};
}

inline json to_json(const EigenvalueBound& e) {
  json out{{"applicable", e.applicable}, {"holds", e.holds}, {"notes", e.notes}};
  if (e.dichotomy) out["dichotomy"] = to_json(*e.dichotomy);
  return out;
}

inline json to_json(const SectionReport& r) {
  return {{"kf_square", integer_to_json(r.kf_square)},
          {"sections_exceed", r.sections_exceed},
          {"growth", predicate_to_json(r.growth)},
          {"growth_required_and_fails", r.growth_required_and_fails},
          {"very_ample", predicate_to_json(r.very_ample)},
          {"generated_sections", predicate_to_json(r.generated_sections)},
          {"generated_degree", predicate_to_json(r.generated_degree)},
          {"lattice_nef", r.lattice_nef},
          {"notes", r.notes},
          {"holds", r.holds()}};
}

inline json to_json(const ZeroPairingScan& z) {
  return {{"applicable", z.applicable}, {"offenders", z.offenders}, {"warnings", z.warnings}};
}

inline json to_json(const PoincareReport& r) {
  return {{"degree", integer_to_json(r.degree)},
          {"foliation_degree", integer_to_json(r.foliation_degree)},
          {"foliation_degree_supplied", r.foliation_degree_supplied},
          {"multiple_sum", integer_to_json(r.multiple_sum)},
          {"degree_formula", identity_to_json(r.degree_formula)},
          {"genus_inequality", predicate_to_json(r.genus_inequality)},
          {"one_horizontal_per_base_point", r.one_horizontal_per_base_point},
          {"fibers_complete", r.fibers_complete},
          {"notes", r.notes},
          {"holds", r.all_hold()}};
}

inline json to_json(const ResolutionChain& chain) {
  json curves = json::array();
  for (std::size_t k = 0; k < chain.curves.size(); ++k) {
    const auto& e = chain.curves[k];
    curves.push_back({{"label", label(ChainNode::curve(k))},
                      {"valuation", {integer_to_json(e.vx), integer_to_json(e.vy)}},
                      {"status", std::string(name(e.status))},
                      {"multiplicity", integer_to_json(e.multiplicity)},
                      {"self_intersection", integer_to_json(e.self_intersection)},
                      {"total_multiplicity", integer_to_json(e.total_multiplicity)},
                      {"center", {label(e.center[0]), label(e.center[1])}}});
  }
  auto fiber = [](const std::vector<std::pair<ChainNode, Integer>>& parts) {
    json out = json::array();
    for (const auto& [node, n] : parts) out.push_back({{"curve", label(node)}, {"multiplicity", integer_to_json(n)}});
    return out;
  };
  json path = json::array();
  for (const auto& n : chain.path()) path.push_back(label(n));
  return {{"p", integer_to_json(chain.p)},
          {"q", integer_to_json(chain.q)},
          {"curves", curves},
          {"path", path},
          {"fiber_over_zero", fiber(chain.fiber_over_zero())},
          {"fiber_over_infinity", fiber(chain.fiber_over_infinity())}};
}

/// Indented "key: value" rendering of a report document. Scalars print the
/// same tokens as the structured form, so both carry identical numbers.
inline void render_text(std::ostream& out, const json& j, int depth = 0) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto simple = [](const json& v) {
    if (v.is_primitive()) return true;
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
  };
  auto inline_list = [&](const json& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
    return s + "]";
  };
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) {
      if (v.is_primitive()) out << pad << key << ": " << scalar(v) << "\n";
      else if (simple(v)) out << pad << key << ": " << inline_list(v) << "\n";
      else {
        out << pad << key << ":\n";
        render_text(out, v, depth + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive()) out << pad << "- " << scalar(v) << "\n";
      else {
        out << pad << "-\n";
        render_text(out, v, depth + 1);
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

inline std::string render_text(const json& j) {
  std::ostringstream out;
  render_text(out, j);
  return out.str();
}

/// The resolution graph drawn as a tree rooted at the horizontal curve.
inline std::string render_chain_tree(const ResolutionChain& chain) {
  std::ostringstream out;
  out << "base point x^" << chain.p << " - t y^" << chain.q << ": " << chain.curves.size() << " exceptional curve"
      << (chain.curves.size() == 1 ? "" : "s") << "\n";
  auto describe = [&](ChainNode n) {
    std::string s = label(n);
    if (!n.is_exceptional())
      return s + (n.kind == ChainNode::Kind::x_branch ? " (x = 0, over 0, mult " + to_string(chain.p) + ")"
                                                      : " (y = 0, over inf, mult " + to_string(chain.q) + ")");
    const auto& e = chain.curves[n.index];
    s += " v=(" + to_string(e.vx) + "," + to_string(e.vy) + ") " + std::string(name(e.status)) + " mult " +
         to_string(e.multiplicity) + " self " + to_string(e.self_intersection);
    return s;
  };
  const ChainNode root = ChainNode::curve(chain.horizontal_index());
  out << describe(root) << "\n";
  std::function<void(ChainNode, ChainNode, const std::string&)> walk = [&](ChainNode n, ChainNode from,
                                                                           const std::string& prefix) {
    std::vector<ChainNode> kids;
    for (auto c : chain.neighbors(n))
      if (c != from) kids.push_back(c);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const bool last = i + 1 == kids.size();
      out << prefix << (last ? "`-- " : "|-- ") << describe(kids[i]) << "\n";
      walk(kids[i], n, prefix + (last ? "    " : "|   "));
    }
  };
  walk(root, root, "");
  auto fiber = [](const std::vector<std::pair<ChainNode, Integer>>& parts) {
    std::string s;
    for (const auto& [node, n] : parts) s += (s.empty() ? "" : " + ") + (n == 1 ? "" : to_string(n)) + label(node);
    return s;
  };
  out << "fiber over 0:   " << fiber(chain.fiber_over_zero()) << "\n";
  out << "fiber over inf: " << fiber(chain.fiber_over_infinity()) << "\n";
  return out.str();
}

}  // namespace fibsurf
