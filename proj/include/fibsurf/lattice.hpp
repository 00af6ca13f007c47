#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fibsurf/error.hpp"
#include "fibsurf/integer.hpp"

namespace fibsurf {

enum class ClassKind { vertical_component, generic_fiber, horizontal, canonical };

constexpr std::string_view name(ClassKind kind) {
  switch (kind) {
    case ClassKind::vertical_component: return "vertical-component";
    case ClassKind::generic_fiber: return "generic-fiber";
    case ClassKind::horizontal: return "horizontal";
    case ClassKind::canonical: return "canonical";
  }
  return "unknown";
}

inline std::optional<ClassKind> parse_class_kind(std::string_view text) {
  for (auto k : {ClassKind::vertical_component, ClassKind::generic_fiber,
                 ClassKind::horizontal, ClassKind::canonical})
    if (name(k) == text) return k;
  return std::nullopt;
}

struct CurveClass {
  std::string id;
  ClassKind kind = ClassKind::vertical_component;
  std::optional<Integer> genus;

  bool operator==(const CurveClass&) const = default;
};

/// Finite integer combination of curve classes. Zero coefficients are never
/// stored, so structural equality is equality of divisors.
class Divisor {
 public:
  Divisor() = default;

  static Divisor of(const std::string& id, const Integer& coefficient = 1) {
    Divisor d;
    d.add(id, coefficient);
    return d;
  }

  void add(const std::string& id, const Integer& coefficient) {
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(id, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Integer coefficient(const std::string& id) const {
    auto it = terms_.find(id);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  const std::map<std::string, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Divisor& operator+=(const Divisor& other) {
    for (const auto& [id, c] : other.terms_) add(id, c);
    return *this;
  }
  Divisor& operator-=(const Divisor& other) {
    for (const auto& [id, c] : other.terms_) add(id, -c);
    return *this;
  }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator-(const Divisor& a) { return Integer(-1) * a; }
  friend Divisor operator*(const Integer& k, const Divisor& d) {
    Divisor out;
    if (k == 0) return out;
    for (const auto& [id, c] : d.terms_) out.terms_.emplace(id, k * c);
    return out;
  }

  bool operator==(const Divisor&) const = default;

 private:
  std::map<std::string, Integer> terms_;
};

inline std::string to_string(const Divisor& d) {
  if (d.is_zero()) return "0";
  std::string out;
  for (const auto& [id, c] : d.terms()) {
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    Integer mag = c < 0 ? Integer(-c) : c;
    if (mag != 1) out += to_string(mag) + "*";
    out += id;
  }
  return out;
}

/// A finite set of curve classes with a symmetric integer intersection form.
/// Exactly one class is the canonical class K_S and exactly one is the
/// generic fiber C; the canonical class is a formal row, never expanded.
class IntersectionLattice {
 public:
  IntersectionLattice() = default;

  IntersectionLattice(std::vector<CurveClass> classes, std::vector<std::vector<Integer>> matrix)
      : classes_(std::move(classes)), matrix_(std::move(matrix)) {
    const std::size_t n = classes_.size();
    if (matrix_.size() != n)
      throw Error(Errc::invalid_lattice, "pairing has " + std::to_string(matrix_.size()) +
                                             " rows for " + std::to_string(n) + " classes");
    std::optional<std::size_t> canonical, fiber;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = classes_[i];
      if (c.id.empty()) throw Error(Errc::invalid_lattice, "class " + std::to_string(i) + " has empty id");
      if (!index_.emplace(c.id, i).second)
        throw Error(Errc::invalid_lattice, "duplicate class id '" + c.id + "'");
      if (matrix_[i].size() != n)
        throw Error(Errc::invalid_lattice, "pairing row '" + c.id + "' has " +
                                               std::to_string(matrix_[i].size()) + " entries, expected " +
                                               std::to_string(n));
      if (c.genus && *c.genus < 0)
        throw Error(Errc::invalid_lattice, "class '" + c.id + "' declares negative genus");
      if (c.kind == ClassKind::canonical) {
        if (canonical) throw Error(Errc::invalid_lattice, "more than one canonical class");
        canonical = i;
      }
      if (c.kind == ClassKind::generic_fiber) {
        if (fiber) throw Error(Errc::invalid_lattice, "more than one generic-fiber class");
        fiber = i;
      }
    }
    if (!canonical) throw Error(Errc::invalid_lattice, "no canonical class");
    if (!fiber) throw Error(Errc::invalid_lattice, "no generic-fiber class");
    canonical_ = *canonical;
    fiber_ = *fiber;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (matrix_[i][j] != matrix_[j][i])
          throw Error(Errc::invalid_lattice, "pairing not symmetric at (" + classes_[i].id + ", " +
                                                 classes_[j].id + "): " + to_string(matrix_[i][j]) +
                                                 " vs " + to_string(matrix_[j][i]));
  }

  const std::vector<CurveClass>& classes() const { return classes_; }
  const std::vector<std::vector<Integer>>& matrix() const { return matrix_; }
  std::size_t size() const { return classes_.size(); }

  bool contains(const std::string& id) const { return index_.contains(id); }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error(Errc::unknown_class_id, "'" + id + "'");
    return it->second;
  }

  const CurveClass& at(const std::string& id) const { return classes_[index_of(id)]; }

  const std::string& canonical_id() const { return classes_[canonical_].id; }
  const std::string& fiber_id() const { return classes_[fiber_].id; }
  Divisor canonical() const { return Divisor::of(canonical_id()); }
  Divisor generic_fiber() const { return Divisor::of(fiber_id()); }

  const Integer& entry(const std::string& a, const std::string& b) const {
    return matrix_[index_of(a)][index_of(b)];
  }

  Integer pair(const Divisor& d1, const Divisor& d2) const {
    Integer total = 0;
    for (const auto& [a, ca] : d1.terms()) {
      const auto& row = matrix_[index_of(a)];
      for (const auto& [b, cb] : d2.terms()) total += ca * cb * row[index_of(b)];
    }
    return total;
  }

  Integer self_pair(const Divisor& d) const { return pair(d, d); }

  /// True when d1 and d2 pair identically with every class of the lattice.
  bool numerically_equivalent(const Divisor& d1, const Divisor& d2) const {
    const Divisor diff = d1 - d2;
    for (const auto& c : classes_)
      if (pair(diff, Divisor::of(c.id)) != 0) return false;
    return true;
  }

  /// Genus from 2g - 2 = v.v + K.v.
  Integer adjunction_genus(const std::string& id) const {
    const auto& c = at(id);
    if (c.kind != ClassKind::vertical_component && c.kind != ClassKind::horizontal)
      throw Error(Errc::invalid_argument, "adjunction genus needs a curve class, '" + id + "' is " +
                                              std::string(name(c.kind)));
    const Integer twice = entry(id, id) + entry(canonical_id(), id) + 2;
    if (twice % 2 != 0)
      throw Error(Errc::non_integral_genus, "'" + id + "': v.v + K.v = " + to_string(twice - 2) + " is odd");
    const Integer g = twice / 2;
    if (g < 0) throw Error(Errc::negative_genus, "'" + id + "': adjunction gives genus " + to_string(g));
    return g;
  }

  /// chi(O(d)) = chi(O_S) + (d.d - d.K) / 2.
  Integer riemann_roch_chi(const Divisor& d, const Integer& chi_O) const {
    const Integer twice = self_pair(d) - pair(d, canonical());
    if (twice % 2 != 0)
      throw Error(Errc::parity_violation, "d.(d - K) = " + to_string(twice) + " is odd for d = " + to_string(d));
    return chi_O + twice / 2;
  }

  bool operator==(const IntersectionLattice& o) const {
    return classes_ == o.classes_ && matrix_ == o.matrix_;
  }

 private:
  std::vector<CurveClass> classes_;
  std::vector<std::vector<Integer>> matrix_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t canonical_ = 0;
  std::size_t fiber_ = 0;
};

}  // namespace fibsurf
