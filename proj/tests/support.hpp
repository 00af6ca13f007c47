#pragma once

#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fibsurf/fibsurf.hpp"

namespace fibsurf::testing {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string data_path(const std::string& name) { return std::string(FIBSURF_DATA_DIR) + "/" + name; }
inline std::string fixture_path(const std::string& name) { return std::string(FIBSURF_FIXTURE_DIR) + "/" + name; }

inline FibrationModel load_model(const std::string& name) { return parse_model(slurp(data_path(name))); }
inline PencilDescriptor load_pencil(const std::string& name) { return parse_pencil(slurp(data_path(name))); }

/// Hand-built models: declare classes, set pairings, list fibers.
class ModelBuilder {
 public:
  ModelBuilder() {
    classes_.push_back({"K", ClassKind::canonical, std::nullopt});
    classes_.push_back({"C", ClassKind::generic_fiber, std::nullopt});
  }

  ModelBuilder& vertical(const std::string& id, std::optional<Integer> genus = std::nullopt) {
    classes_.push_back({id, ClassKind::vertical_component, std::move(genus)});
    return *this;
  }
  ModelBuilder& horizontal(const std::string& id, std::optional<Integer> genus = std::nullopt) {
    classes_.push_back({id, ClassKind::horizontal, std::move(genus)});
    return *this;
  }
  ModelBuilder& set(const std::string& a, const std::string& b, Integer v) {
    pairs_[{a, b}] = v;
    pairs_[{b, a}] = v;
    return *this;
  }
  ModelBuilder& fiber(std::int64_t index, std::vector<std::pair<std::string, int>> comps) {
    Fiber f;
    f.index = index;
    for (auto& [id, n] : comps) f.components.push_back({id, n});
    fibers_.push_back(std::move(f));
    return *this;
  }
  ModelBuilder& genus(Integer g, Integer base = 0) {
    genus_ = g;
    base_ = base;
    return *this;
  }
  ModelBuilder& chi(Integer c) {
    chi_ = c;
    return *this;
  }

  FibrationModel build() const {
    std::vector<std::vector<Integer>> m(classes_.size(), std::vector<Integer>(classes_.size(), Integer(0)));
    for (std::size_t i = 0; i < classes_.size(); ++i)
      for (std::size_t j = 0; j < classes_.size(); ++j) {
        auto it = pairs_.find({classes_[i].id, classes_[j].id});
        if (it != pairs_.end()) m[i][j] = it->second;
      }
    FibrationModel model;
    model.base_genus = base_;
    model.genus = genus_;
    model.chi_O = chi_;
    model.canonical_self = m[0][0];
    model.lattice = IntersectionLattice(classes_, m);
    model.fibers = fibers_;
    return model;
  }

 private:
  std::vector<CurveClass> classes_;
  std::map<std::pair<std::string, std::string>, Integer> pairs_;
  std::vector<Fiber> fibers_;
  Integer genus_ = 0, base_ = 0, chi_ = 1;
};

/// Genus-3 model with a double fiber 2A (A of genus 2) and a smooth fiber.
inline FibrationModel double_fiber_model() {
  return ModelBuilder()
      .vertical("A", 2)
      .vertical("F2", 3)
      .set("K", "K", 2)
      .set("K", "C", 4)
      .set("K", "A", 2)
      .set("K", "F2", 4)
      .fiber(1, {{"A", 2}})
      .fiber(2, {{"F2", 1}})
      .genus(3)
      .build();
}

/// Genus-2 model with the fiber 2A + B, A.B = 2, A^2 = -1, B^2 = -4.
inline FibrationModel two_component_model() {
  return ModelBuilder()
      .vertical("A", 0)
      .vertical("B", 1)
      .set("K", "K", 1)
      .set("K", "C", 2)
      .set("K", "A", -1)
      .set("K", "B", 4)
      .set("A", "A", -1)
      .set("A", "B", 2)
      .set("B", "B", -4)
      .fiber(1, {{"A", 2}, {"B", 1}})
      .genus(2)
      .build();
}

inline FibrationModel cusp_pencil_model() { return assemble_fibration(load_pencil("cusp_pencil.json")); }
inline FibrationModel cubic_pencil_model() { return assemble_fibration(load_pencil("cubic_pencil.json")); }

}  // namespace fibsurf::testing
