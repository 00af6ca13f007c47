#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fibsurf/error.hpp"
#include "fibsurf/fibration.hpp"
#include "fibsurf/integer.hpp"
#include "fibsurf/lattice.hpp"
#include "fibsurf/reduction.hpp"

namespace fibsurf {

enum class SingularityKind { dicritical, saddle };

constexpr std::string_view name(SingularityKind k) {
  return k == SingularityKind::dicritical ? "dicritical" : "saddle";
}

/// Non-degenerate singular point of a pencil. Dicritical points have local
/// form x^p - t y^q (a base point), saddles x^p y^q = t.
struct LocalSingularity {
  SingularityKind kind = SingularityKind::dicritical;
  Integer p = 1;
  Integer q = 1;

  Integer gcd() const { return gcd_of(p, q); }
  Integer p_reduced() const { return p / gcd(); }
  Integer q_reduced() const { return q / gcd(); }

  bool operator==(const LocalSingularity&) const = default;
};

struct LinearPart {
  SingularityKind kind = SingularityKind::dicritical;
  Integer p_reduced = 1;
  Integer q_reduced = 1;
};

/// Eigenvalues of the same sign give a dicritical point, opposite signs a
/// saddle; the coprime pair (p', q') is read off the absolute values.
inline LinearPart classify(const Integer& first, const Integer& second) {
  if (first == 0 || second == 0)
    throw Error(Errc::degenerate_singularity,
                "linear part diag(" + to_string(first) + ", " + to_string(second) + ") has a zero eigenvalue");
  const Integer a = abs(first);
  const Integer b = abs(second);
  const Integer g = gcd_of(a, b);
  const bool same_sign = (first > 0) == (second > 0);
  return {same_sign ? SingularityKind::dicritical : SingularityKind::saddle, a / g, b / g};
}

/// A curve in the resolution graph of one base point: one of the two local
/// branches (strict transforms of x = 0 and y = 0) or an exceptional curve.
struct ChainNode {
  enum class Kind : std::uint8_t { x_branch, y_branch, exceptional };
  Kind kind = Kind::exceptional;
  std::size_t index = 0;

  static constexpr ChainNode x() { return {Kind::x_branch, 0}; }
  static constexpr ChainNode y() { return {Kind::y_branch, 0}; }
  static constexpr ChainNode curve(std::size_t i) { return {Kind::exceptional, i}; }

  bool is_exceptional() const { return kind == Kind::exceptional; }
  auto operator<=>(const ChainNode&) const = default;
};

inline std::string label(const ChainNode& n) {
  switch (n.kind) {
    case ChainNode::Kind::x_branch: return "X'";
    case ChainNode::Kind::y_branch: return "Y'";
    case ChainNode::Kind::exceptional: return "E" + std::to_string(n.index + 1);
  }
  return "?";
}

enum class CurveStatus { over_zero, over_infinity, horizontal };

constexpr std::string_view name(CurveStatus s) {
  switch (s) {
    case CurveStatus::over_zero: return "vertical-over-0";
    case CurveStatus::over_infinity: return "vertical-over-inf";
    case CurveStatus::horizontal: return "horizontal";
  }
  return "?";
}

struct ExceptionalCurve {
  Integer vx;  // order of x along the curve
  Integer vy;  // order of y along the curve
  CurveStatus status = CurveStatus::horizontal;
  Integer multiplicity;         // fiber multiplicity |p vx - q vy|; fiber degree gcd(p,q) if horizontal
  Integer self_intersection;    // final, after all later blow-ups
  Integer total_multiplicity;   // order of x^p - t y^q along the curve: min(p vx, q vy)
  Integer center_multiplicity;  // multiplicity of a general member at the blown-up point
  std::array<ChainNode, 2> center{};  // the two curves through the blown-up point
};

/// Resolution of one base point x^p - t y^q by successive point blow-ups.
struct ResolutionChain {
  Integer p = 1;
  Integer q = 1;
  std::vector<ExceptionalCurve> curves;
  std::set<std::pair<ChainNode, ChainNode>> edges;  // ordered pairs (min, max)
  Integer x_centers = 0;  // blow-up centers on the strict transform of x = 0
  Integer y_centers = 0;

  std::size_t horizontal_index() const { return curves.size() - 1; }

  bool adjacent(ChainNode a, ChainNode b) const {
    return edges.contains(a < b ? std::pair{a, b} : std::pair{b, a});
  }

  std::vector<ChainNode> neighbors(ChainNode n) const {
    std::vector<ChainNode> out;
    for (const auto& [a, b] : edges) {
      if (a == n) out.push_back(b);
      if (b == n) out.push_back(a);
    }
    return out;
  }

  /// The dual graph is a path from X' to Y'.
  std::vector<ChainNode> path() const {
    std::vector<ChainNode> out{ChainNode::x()};
    std::optional<ChainNode> prev;
    while (out.back() != ChainNode::y()) {
      const auto next = neighbors(out.back());
      const auto it = std::find_if(next.begin(), next.end(), [&](ChainNode c) { return !prev || c != *prev; });
      if (it == next.end() || out.size() > curves.size() + 2) break;
      prev = out.back();
      out.push_back(*it);
    }
    return out;
  }

  /// Components of the local fiber over 0: p X' plus the curves with p vx > q vy.
  std::vector<std::pair<ChainNode, Integer>> fiber_over_zero() const {
    std::vector<std::pair<ChainNode, Integer>> out{{ChainNode::x(), p}};
    for (std::size_t k = 0; k < curves.size(); ++k)
      if (curves[k].status == CurveStatus::over_zero) out.emplace_back(ChainNode::curve(k), curves[k].multiplicity);
    return out;
  }

  std::vector<std::pair<ChainNode, Integer>> fiber_over_infinity() const {
    std::vector<std::pair<ChainNode, Integer>> out{{ChainNode::y(), q}};
    for (std::size_t k = 0; k < curves.size(); ++k)
      if (curves[k].status == CurveStatus::over_infinity)
        out.emplace_back(ChainNode::curve(k), curves[k].multiplicity);
    return out;
  }
};

/// Valuation form of the blow-up resolution. Two parent curves bound the
/// indeterminacy point, one in the fiber over 0 and one over infinity; each
/// blow-up adds their valuations, and the new curve replaces the parent on
/// its side until p vx = q vy, which is the horizontal (dicritical) curve.
inline ResolutionChain resolve_base_point(const Integer& p, const Integer& q) {
  if (p < 1 || q < 1)
    throw Error(Errc::invalid_argument, "base point type (" + to_string(p) + ", " + to_string(q) + ") needs p, q >= 1");
  struct Side {
    ChainNode node;
    Integer vx, vy, total;
  };
  ResolutionChain chain;
  chain.p = p;
  chain.q = q;
  Side zero{ChainNode::x(), 1, 0, 0};
  Side inf{ChainNode::y(), 0, 1, 0};
  auto order = [](ChainNode a, ChainNode b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
  chain.edges.insert(order(zero.node, inf.node));
  auto bump = [&](ChainNode n) {
    switch (n.kind) {
      case ChainNode::Kind::x_branch: ++chain.x_centers; break;
      case ChainNode::Kind::y_branch: ++chain.y_centers; break;
      case ChainNode::Kind::exceptional: --chain.curves[n.index].self_intersection; break;
    }
  };
  const Integer a = gcd_of(p, q);
  for (;;) {
    ExceptionalCurve e;
    e.vx = zero.vx + inf.vx;
    e.vy = zero.vy + inf.vy;
    e.total_multiplicity = std::min(p * e.vx, q * e.vy);
    e.center_multiplicity = e.total_multiplicity - zero.total - inf.total;
    e.self_intersection = -1;
    e.center = {zero.node, inf.node};
    const ChainNode node = ChainNode::curve(chain.curves.size());
    bump(zero.node);
    bump(inf.node);
    chain.edges.erase(order(zero.node, inf.node));
    chain.edges.insert(order(zero.node, node));
    chain.edges.insert(order(inf.node, node));
    const Integer sigma = p * e.vx - q * e.vy;
    Side next{node, e.vx, e.vy, e.total_multiplicity};
    if (sigma == 0) {
      e.status = CurveStatus::horizontal;
      e.multiplicity = a;
      chain.curves.push_back(std::move(e));
      break;
    }
    e.status = sigma > 0 ? CurveStatus::over_zero : CurveStatus::over_infinity;
    e.multiplicity = abs(sigma);
    chain.curves.push_back(std::move(e));
    (sigma > 0 ? zero : inf) = next;
  }
  return chain;
}

struct MemberComponent {
  std::string id;
  Integer degree = 1;
  Integer multiplicity = 1;
};

struct SpecialMember {
  std::string label;
  std::vector<MemberComponent> components;
};

/// A singular point given by incidence: which member component carries the
/// local branch x = 0 and which carries y = 0.
struct IncidentSingularity {
  std::string label;
  LocalSingularity local;
  std::string x_branch;
  std::string y_branch;
};

/// A pencil of plane curves of degree d spanned by two special members,
/// with its singular points ingested as incidence data.
struct PencilDescriptor {
  Integer degree = 1;
  std::optional<Integer> foliation_degree;
  std::vector<SpecialMember> members;
  std::vector<IncidentSingularity> base_points;
  std::vector<IncidentSingularity> saddles;
};

inline constexpr const char* kCanonicalId = "K";
inline constexpr const char* kFiberId = "C";

namespace detail {

struct ComponentRef {
  std::size_t member;
  const MemberComponent* component;
};

inline std::map<std::string, ComponentRef> index_components(const PencilDescriptor& desc) {
  std::map<std::string, ComponentRef> out;
  for (std::size_t m = 0; m < desc.members.size(); ++m)
    for (const auto& c : desc.members[m].components) out.emplace(c.id, ComponentRef{m, &c});
  return out;
}

inline std::string point_label(const IncidentSingularity& s, std::size_t i, const char* prefix) {
  return s.label.empty() ? prefix + std::to_string(i + 1) : s.label;
}

}  // namespace detail

/// Throws invalid-descriptor on the first inconsistency.
inline void check_descriptor(const PencilDescriptor& desc) {
  auto fail = [](const std::string& why) { throw Error(Errc::invalid_descriptor, why); };
  if (desc.degree < 1) fail("pencil degree " + to_string(desc.degree) + " < 1");
  if (desc.members.size() != 2)
    fail("expected the two members spanning the pencil, got " + std::to_string(desc.members.size()));
  std::set<std::string> ids{kCanonicalId, kFiberId};
  for (const auto& m : desc.members) {
    if (m.components.empty()) fail("member '" + m.label + "' has no components");
    Integer total = 0;
    for (const auto& c : m.components) {
      if (c.id.empty() || c.id.find('.') != std::string::npos)
        fail("component id '" + c.id + "' must be nonempty and contain no '.'");
      if (!ids.insert(c.id).second) fail("component id '" + c.id + "' is reserved or repeated");
      if (c.degree < 1) fail("component '" + c.id + "' has degree " + to_string(c.degree));
      if (c.multiplicity < 1) fail("component '" + c.id + "' has multiplicity " + to_string(c.multiplicity));
      total += c.degree * c.multiplicity;
    }
    if (total != desc.degree)
      fail("member '" + m.label + "': sum of n_ij d_ij is " + to_string(total) + ", pencil degree is " +
           to_string(desc.degree));
  }
  const auto comps = detail::index_components(desc);
  auto lookup = [&](const std::string& id, const std::string& where) -> const detail::ComponentRef& {
    auto it = comps.find(id);
    if (it == comps.end()) fail(where + ": unknown component '" + id + "'");
    return it->second;
  };

  std::map<std::pair<std::string, std::string>, Integer> meets;
  std::set<std::string> labels;
  for (std::size_t i = 0; i < desc.base_points.size(); ++i) {
    const auto& bp = desc.base_points[i];
    const std::string where = "base point " + detail::point_label(bp, i, "P");
    if (!labels.insert(detail::point_label(bp, i, "P")).second) fail(where + ": repeated label");
    if (bp.local.kind != SingularityKind::dicritical) fail(where + ": base points are dicritical");
    if (bp.local.p < 1 || bp.local.q < 1) fail(where + ": p, q must be >= 1");
    const auto& x = lookup(bp.x_branch, where);
    const auto& y = lookup(bp.y_branch, where);
    if (x.member == y.member) fail(where + ": both branches lie on the same member");
    if (x.component->multiplicity != bp.local.p || y.component->multiplicity != bp.local.q)
      fail(where + ": local type (" + to_string(bp.local.p) + ", " + to_string(bp.local.q) +
           ") conflicts with branch multiplicities (" + to_string(x.component->multiplicity) + ", " +
           to_string(y.component->multiplicity) + ")");
    ++meets[std::minmax(bp.x_branch, bp.y_branch)];
  }
  // Members of a pencil meet only at base points, transversally branch by branch.
  for (const auto& a : desc.members[0].components)
    for (const auto& b : desc.members[1].components) {
      const auto it = meets.find(std::minmax(a.id, b.id));
      const Integer found = it == meets.end() ? Integer(0) : it->second;
      if (found != a.degree * b.degree)
        fail("components '" + a.id + "' and '" + b.id + "' meet in " + to_string(a.degree * b.degree) +
             " points but " + to_string(found) + " base points are declared");
    }
  for (std::size_t i = 0; i < desc.saddles.size(); ++i) {
    const auto& sp = desc.saddles[i];
    const std::string where = "saddle " + detail::point_label(sp, i, "S");
    if (sp.local.kind != SingularityKind::saddle) fail(where + ": not a saddle");
    const auto& x = lookup(sp.x_branch, where);
    const auto& y = lookup(sp.y_branch, where);
    if (x.member != y.member || sp.x_branch == sp.y_branch)
      fail(where + ": branches must be two components of one member");
    if (x.component->multiplicity != sp.local.p || y.component->multiplicity != sp.local.q)
      fail(where + ": local type conflicts with branch multiplicities");
  }
}

namespace detail {

// Classes in the orthogonal basis (H, e_1, ..., e_T) of the blown-up plane.
using BasisVector = std::vector<Integer>;

inline Integer dot(const BasisVector& u, const BasisVector& v) {
  Integer total = u[0] * v[0];
  for (std::size_t t = 1; t < u.size(); ++t) total -= u[t] * v[t];
  return total;
}

}  // namespace detail

/// Blows up every base point and assembles the resolved fibration over P^1:
/// strict transforms of the two members plus all exceptional curves, with
/// the intersection form and K_S computed from the blow-up basis.
inline FibrationModel assemble_fibration(const PencilDescriptor& desc) {
  check_descriptor(desc);
  std::vector<ResolutionChain> chains;
  std::size_t total_blowups = 0;
  for (const auto& bp : desc.base_points) {
    chains.push_back(resolve_base_point(bp.local.p, bp.local.q));
    total_blowups += chains.back().curves.size();
  }
  const std::size_t dim = total_blowups + 1;
  const auto comps = detail::index_components(desc);

  std::map<std::string, detail::BasisVector> vec;
  std::vector<CurveClass> classes{{kCanonicalId, ClassKind::canonical, std::nullopt},
                                  {kFiberId, ClassKind::generic_fiber, std::nullopt}};
  detail::BasisVector canonical(dim, Integer(1)), fiber(dim, Integer(0));
  canonical[0] = -3;
  fiber[0] = desc.degree;
  for (const auto& m : desc.members)
    for (const auto& c : m.components) {
      detail::BasisVector v(dim, Integer(0));
      v[0] = c.degree;
      vec.emplace(c.id, std::move(v));
      classes.push_back({c.id, ClassKind::vertical_component, std::nullopt});
    }

  std::vector<Fiber> fibers(2);
  for (std::size_t m = 0; m < 2; ++m) {
    fibers[m].index = static_cast<std::int64_t>(m);
    for (const auto& c : desc.members[m].components) fibers[m].components.push_back({c.id, c.multiplicity});
  }

  std::size_t offset = 1;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const auto& bp = desc.base_points[i];
    const auto& chain = chains[i];
    const std::string prefix = detail::point_label(bp, i, "P") + ".";
    auto id_of = [&](const ChainNode& n) {
      switch (n.kind) {
        case ChainNode::Kind::x_branch: return bp.x_branch;
        case ChainNode::Kind::y_branch: return bp.y_branch;
        case ChainNode::Kind::exceptional: break;
      }
      return prefix + label(n);
    };
    for (std::size_t k = 0; k < chain.curves.size(); ++k) {
      const auto& e = chain.curves[k];
      const std::size_t t = offset + k;
      detail::BasisVector v(dim, Integer(0));
      v[t] = 1;
      const std::string id = id_of(ChainNode::curve(k));
      vec.emplace(id, std::move(v));
      // The blown-up point lies on both curves of e.center.
      for (const auto& through : e.center) vec.at(id_of(through))[t] -= 1;
      fiber[t] = -e.center_multiplicity;
      const bool horizontal = e.status == CurveStatus::horizontal;
      classes.push_back({id, horizontal ? ClassKind::horizontal : ClassKind::vertical_component, Integer(0)});
      if (!horizontal) {
        const std::size_t member = e.status == CurveStatus::over_zero ? comps.at(bp.x_branch).member
                                                                      : comps.at(bp.y_branch).member;
        fibers[member].components.push_back({id, e.multiplicity});
      }
    }
    offset += chain.curves.size();
  }
  vec.emplace(kCanonicalId, canonical);
  vec.emplace(kFiberId, fiber);

  std::vector<std::vector<Integer>> matrix(classes.size(), std::vector<Integer>(classes.size()));
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < classes.size(); ++j)
      matrix[i][j] = detail::dot(vec.at(classes[i].id), vec.at(classes[j].id));

  FibrationModel model;
  model.base_genus = 0;
  model.chi_O = 1;
  model.canonical_self = 9 - static_cast<std::int64_t>(total_blowups);
  const Integer kc = detail::dot(canonical, fiber);
  if (kc % 2 != 0) throw Error(Errc::validation_failure, "K.C = " + to_string(kc) + " is odd");
  model.genus = (kc + 2) / 2;
  for (auto& c : classes)
    if (c.kind == ClassKind::vertical_component && !c.genus) {
      const auto& v = vec.at(c.id);
      c.genus = (detail::dot(v, v) + detail::dot(canonical, v) + 2) / 2;
    }
  model.lattice = IntersectionLattice(std::move(classes), std::move(matrix));
  model.fibers = std::move(fibers);

  const ValidationReport report = validate(model);
  if (!report.valid()) {
    std::string why = "assembled model is inconsistent:";
    for (const auto& v : report.violations) why += " [" + v + "]";
    throw Error(Errc::validation_failure, why);
  }
  return model;
}

struct PoincareReport {
  Integer degree;
  Integer multiple_sum;  // sum d_ij (n_ij - 1)
  Integer foliation_degree;
  bool foliation_degree_supplied = false;
  IdentityCheck degree_formula;  // 2d - 2 against m + sum d_ij (n_ij - 1)
  BoundPredicate genus_inequality;  // 4(g - 1) >= (m - 4) d
  bool one_horizontal_per_base_point = false;
  bool fibers_complete = false;
  std::vector<std::string> notes;

  bool all_hold() const {
    return degree_formula.holds() && foliation_degree >= 0 && genus_inequality.holds &&
           one_horizontal_per_base_point && fibers_complete;
  }
};

/// Degree formula 2d - 2 = m + sum d_ij (n_ij - 1), the genus inequality
/// (m - 4) d / 4 + 1 <= g, and structural completeness of the resolution.
inline PoincareReport poincare_checks(const PencilDescriptor& desc, const FibrationModel& model) {
  PoincareReport out;
  out.degree = desc.degree;
  for (const auto& m : desc.members)
    for (const auto& c : m.components) out.multiple_sum += c.degree * (c.multiplicity - 1);
  out.foliation_degree_supplied = desc.foliation_degree.has_value();
  out.foliation_degree =
      desc.foliation_degree ? *desc.foliation_degree : 2 * desc.degree - 2 - out.multiple_sum;
  out.degree_formula = {2 * desc.degree - 2, out.foliation_degree + out.multiple_sum};
  if (out.foliation_degree < 0) out.notes.push_back("derived foliation degree is negative");
  out.genus_inequality = {4 * (model.genus - 1), (out.foliation_degree - 4) * desc.degree,
                          4 * (model.genus - 1) >= (out.foliation_degree - 4) * desc.degree};

  out.one_horizontal_per_base_point = true;
  for (std::size_t i = 0; i < desc.base_points.size(); ++i) {
    const auto chain = resolve_base_point(desc.base_points[i].local.p, desc.base_points[i].local.q);
    const auto horizontal = std::count_if(chain.curves.begin(), chain.curves.end(), [](const ExceptionalCurve& e) {
      return e.status == CurveStatus::horizontal;
    });
    const std::string id = detail::point_label(desc.base_points[i], i, "P") + "." +
                           label(ChainNode::curve(chain.horizontal_index()));
    if (horizontal != 1 || chain.curves.back().status != CurveStatus::horizontal || !model.lattice.contains(id) ||
        model.lattice.at(id).kind != ClassKind::horizontal)
      out.one_horizontal_per_base_point = false;
  }
  const auto& lat = model.lattice;
  out.fibers_complete = validate(model).valid() && lat.entry(lat.fiber_id(), lat.fiber_id()) == 0;
  for (const auto& f : model.fibers)
    if (lat.self_pair(f.divisor()) != 0) out.fibers_complete = false;
  if (!desc.saddles.empty()) {
    std::map<std::pair<std::string, std::string>, Integer> declared;
    for (const auto& s : desc.saddles) ++declared[std::minmax(s.x_branch, s.y_branch)];
    for (const auto& [pair, count] : declared) {
      const Integer expected = lat.entry(pair.first, pair.second);
      if (count != expected)
        out.notes.push_back("saddles between '" + pair.first + "' and '" + pair.second + "': " + to_string(count) +
                            " declared, strict transforms meet " + to_string(expected) + " times");
    }
  }
  return out;
}

}  // namespace fibsurf
