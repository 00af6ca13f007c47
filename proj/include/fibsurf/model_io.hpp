#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fibsurf/error.hpp"
#include "fibsurf/fibration.hpp"
#include "fibsurf/integer.hpp"
#include "fibsurf/lattice.hpp"
#include "fibsurf/pencil.hpp"

namespace fibsurf {

using json = nlohmann::json;

inline constexpr std::int64_t kFormatVersion = 1;

/// Integers are JSON integers when they fit in 64 bits and decimal strings
/// otherwise; floats are never written or accepted.
inline json integer_to_json(const Integer& v) {
  if (auto small = to_int64(v)) return *small;
  return v.str();
}

namespace io {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw Error(Errc::parse_error, (path.empty() ? std::string("/") : path) + ": " + what);
}

inline const json& field(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

inline void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(path + "/" + key, "unknown field");
  }
}

inline const json& expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline Integer read_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    bool digits = s.size() > start;
    for (std::size_t i = start; i < s.size(); ++i) digits = digits && s[i] >= '0' && s[i] <= '9';
    if (digits) return Integer(s);
    fail(path, "string '" + s + "' is not a decimal integer");
  }
  if (j.is_number_float()) fail(path, "expected an exact integer, got a non-integral or out-of-range number");
  fail(path, "expected an integer");
}

inline std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

inline void check_version(const json& doc) {
  const Integer v = read_integer(field(doc, "", "format_version"), "/format_version");
  if (v != kFormatVersion) fail("/format_version", "unsupported version " + to_string(v));
}

}  // namespace io

/// Structural decode of a model file. Schema errors raise parse-error; the
/// model invariants are not checked (see parse_model).
inline FibrationModel read_model(std::string_view text) {
  const json doc = io::parse_document(text);
  io::expect_object(doc, "",
                    {"format_version", "surface", "base", "declared_genus", "classes", "pairing", "fibers"});
  io::check_version(doc);
  FibrationModel model;

  const json& surface = io::field(doc, "", "surface");
  io::expect_object(surface, "/surface", {"chi_O", "K_self"});
  model.chi_O = io::read_integer(io::field(surface, "/surface", "chi_O"), "/surface/chi_O");
  model.canonical_self = io::read_integer(io::field(surface, "/surface", "K_self"), "/surface/K_self");
  const json& base = io::field(doc, "", "base");
  io::expect_object(base, "/base", {"genus"});
  model.base_genus = io::read_integer(io::field(base, "/base", "genus"), "/base/genus");
  model.genus = io::read_integer(io::field(doc, "", "declared_genus"), "/declared_genus");

  std::vector<CurveClass> classes;
  const json& cls = io::expect_array(io::field(doc, "", "classes"), "/classes");
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const std::string path = "/classes/" + std::to_string(i);
    io::expect_object(cls[i], path, {"id", "kind", "genus"});
    CurveClass c;
    c.id = io::read_string(io::field(cls[i], path, "id"), path + "/id");
    const std::string kind = io::read_string(io::field(cls[i], path, "kind"), path + "/kind");
    auto parsed = parse_class_kind(kind);
    if (!parsed) io::fail(path + "/kind", "unknown kind '" + kind + "'");
    c.kind = *parsed;
    if (cls[i].contains("genus")) c.genus = io::read_integer(cls[i]["genus"], path + "/genus");
    classes.push_back(std::move(c));
  }

  std::vector<std::vector<Integer>> matrix;
  const json& rows = io::expect_array(io::field(doc, "", "pairing"), "/pairing");
  if (rows.size() != classes.size())
    io::fail("/pairing", std::to_string(rows.size()) + " rows for " + std::to_string(classes.size()) + " classes");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string path = "/pairing/" + std::to_string(i);
    io::expect_array(rows[i], path);
    if (rows[i].size() != classes.size())
      io::fail(path, std::to_string(rows[i].size()) + " entries, expected " + std::to_string(classes.size()));
    std::vector<Integer> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      row.push_back(io::read_integer(rows[i][j], path + "/" + std::to_string(j)));
    matrix.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (std::size_t j = i + 1; j < matrix.size(); ++j)
      if (matrix[i][j] != matrix[j][i])
        io::fail("/pairing/" + std::to_string(i) + "/" + std::to_string(j),
                 "pairing not symmetric: (" + classes[i].id + ", " + classes[j].id + ") = " +
                     to_string(matrix[i][j]) + " but (" + classes[j].id + ", " + classes[i].id +
                     ") = " + to_string(matrix[j][i]));
  try {
    model.lattice = IntersectionLattice(std::move(classes), std::move(matrix));
  } catch (const Error& e) {
    io::fail("/classes", e.what());
  }

  const json& fibers = io::expect_array(io::field(doc, "", "fibers"), "/fibers");
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    const std::string path = "/fibers/" + std::to_string(i);
    io::expect_object(fibers[i], path, {"index", "components"});
    Fiber f;
    const Integer index = io::read_integer(io::field(fibers[i], path, "index"), path + "/index");
    auto small = to_int64(index);
    if (!small) io::fail(path + "/index", "fiber index out of range");
    f.index = *small;
    const json& comps = io::expect_array(io::field(fibers[i], path, "components"), path + "/components");
    for (std::size_t j = 0; j < comps.size(); ++j) {
      const std::string cpath = path + "/components/" + std::to_string(j);
      io::expect_object(comps[j], cpath, {"class", "multiplicity"});
      FiberComponent c;
      c.class_id = io::read_string(io::field(comps[j], cpath, "class"), cpath + "/class");
      if (!model.lattice.contains(c.class_id)) io::fail(cpath + "/class", "undeclared class '" + c.class_id + "'");
      c.multiplicity = io::read_integer(io::field(comps[j], cpath, "multiplicity"), cpath + "/multiplicity");
      f.components.push_back(std::move(c));
    }
    model.fibers.push_back(std::move(f));
  }
  return model;
}

/// Decode and validate. Invariant violations raise validation-failure.
inline FibrationModel parse_model(std::string_view text) {
  FibrationModel model = read_model(text);
  const ValidationReport report = validate(model);
  if (!report.valid()) {
    std::string why;
    for (const auto& v : report.violations) why += (why.empty() ? "" : "; ") + v;
    throw Error(Errc::validation_failure, why);
  }
  return model;
}

inline json model_to_json(const FibrationModel& model) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["surface"] = {{"chi_O", integer_to_json(model.chi_O)}, {"K_self", integer_to_json(model.canonical_self)}};
  doc["base"] = {{"genus", integer_to_json(model.base_genus)}};
  doc["declared_genus"] = integer_to_json(model.genus);
  json classes = json::array();
  for (const auto& c : model.lattice.classes()) {
    json entry = {{"id", c.id}, {"kind", std::string(name(c.kind))}};
    if (c.genus) entry["genus"] = integer_to_json(*c.genus);
    classes.push_back(std::move(entry));
  }
  doc["classes"] = std::move(classes);
  json rows = json::array();
  for (const auto& row : model.lattice.matrix()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(integer_to_json(v));
    rows.push_back(std::move(r));
  }
  doc["pairing"] = std::move(rows);
  json fibers = json::array();
  for (const auto& f : model.fibers) {
    json comps = json::array();
    for (const auto& c : f.components)
      comps.push_back({{"class", c.class_id}, {"multiplicity", integer_to_json(c.multiplicity)}});
    fibers.push_back({{"index", f.index}, {"components", std::move(comps)}});
  }
  doc["fibers"] = std::move(fibers);
  return doc;
}

inline std::string emit_model(const FibrationModel& model) { return model_to_json(model).dump(2) + "\n"; }

namespace io {

inline IncidentSingularity read_point(const json& j, const std::string& path, SingularityKind kind) {
  expect_object(j, path, {"label", "p", "q", "x_branch", "y_branch"});
  IncidentSingularity s;
  if (j.contains("label")) s.label = read_string(j["label"], path + "/label");
  s.local.kind = kind;
  s.local.p = read_integer(field(j, path, "p"), path + "/p");
  s.local.q = read_integer(field(j, path, "q"), path + "/q");
  s.x_branch = read_string(field(j, path, "x_branch"), path + "/x_branch");
  s.y_branch = read_string(field(j, path, "y_branch"), path + "/y_branch");
  return s;
}

}  // namespace io

inline PencilDescriptor parse_pencil(std::string_view text) {
  const json doc = io::parse_document(text);
  io::expect_object(doc, "", {"format_version", "degree", "foliation_degree", "members", "base_points", "saddles"});
  io::check_version(doc);
  PencilDescriptor desc;
  desc.degree = io::read_integer(io::field(doc, "", "degree"), "/degree");
  if (doc.contains("foliation_degree"))
    desc.foliation_degree = io::read_integer(doc["foliation_degree"], "/foliation_degree");
  const json& members = io::expect_array(io::field(doc, "", "members"), "/members");
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string path = "/members/" + std::to_string(i);
    io::expect_object(members[i], path, {"label", "components"});
    SpecialMember m;
    m.label = io::read_string(io::field(members[i], path, "label"), path + "/label");
    const json& comps = io::expect_array(io::field(members[i], path, "components"), path + "/components");
    for (std::size_t j = 0; j < comps.size(); ++j) {
      const std::string cpath = path + "/components/" + std::to_string(j);
      io::expect_object(comps[j], cpath, {"id", "degree", "multiplicity"});
      MemberComponent c;
      c.id = io::read_string(io::field(comps[j], cpath, "id"), cpath + "/id");
      c.degree = io::read_integer(io::field(comps[j], cpath, "degree"), cpath + "/degree");
      c.multiplicity = io::read_integer(io::field(comps[j], cpath, "multiplicity"), cpath + "/multiplicity");
      m.components.push_back(std::move(c));
    }
    desc.members.push_back(std::move(m));
  }
  const json& bps = io::expect_array(io::field(doc, "", "base_points"), "/base_points");
  for (std::size_t i = 0; i < bps.size(); ++i)
    desc.base_points.push_back(io::read_point(bps[i], "/base_points/" + std::to_string(i), SingularityKind::dicritical));
  if (doc.contains("saddles")) {
    const json& sps = io::expect_array(doc["saddles"], "/saddles");
    for (std::size_t i = 0; i < sps.size(); ++i)
      desc.saddles.push_back(io::read_point(sps[i], "/saddles/" + std::to_string(i), SingularityKind::saddle));
  }
  return desc;
}

}  // namespace fibsurf
