#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fibsurf/fibsurf.hpp"

namespace fibsurf::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::parse_error:
    case Errc::invalid_argument:
    case Errc::sweep_too_short: return kUsage;
    default: return kCheckFailed;
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, path + ": cannot open file");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<Integer> parse_integer_list(const std::string& text, const char* flag) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(io::read_integer(json(item), std::string(flag)));
    } catch (const Error&) {
      throw Error(Errc::invalid_argument, std::string(flag) + ": '" + item + "' is not an integer");
    }
  }
  return out;
}

inline IntRange parse_range(const std::string& text, const char* flag) {
  const auto values = parse_integer_list(text, flag);
  if (values.empty() || values.size() > 2)
    throw Error(Errc::invalid_argument, std::string(flag) + " takes LO,HI or a single value");
  const auto lo = to_int64(values.front()), hi = to_int64(values.back());
  if (!lo || !hi) throw Error(Errc::invalid_argument, std::string(flag) + " out of range");
  return {*lo, *hi};
}

struct Emitter {
  std::ostream& out;
  bool structured = false;

  void operator()(const json& doc) const {
    if (structured) out << doc.dump(2) << "\n";
    else out << render_text(doc);
  }
};

inline int finish(bool ok) { return ok ? kPass : kCheckFailed; }

inline json report_document(const FibrationModel& model) {
  json doc;
  const auto identities = check_fiber_identities(model);
  doc["fiber_identities"] = to_json(identities);
  doc["c2"] = integer_to_json(c2_count(model));
  const auto balance = euler_characteristic_balance(model);
  doc["euler_balance"] = to_json(balance);
  bool ok = identities.all_hold() && balance.holds();
  if (model.genus >= 2) {
    const auto d = multiplicity_genus_dichotomy(model);
    doc["dichotomy"] = to_json(d);
    ok = ok && d.holds();
  } else {
    doc["dichotomy"] = "skipped: fiber genus " + to_string(model.genus) + " < 2";
  }
  doc["holds"] = ok;
  return doc;
}

/// Runs one command line; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical invariants of fibered surfaces and foliations", "fibsurf"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file, format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a model file against every invariant");
  validate_cmd->add_option("file", file)->required();
  add_format(validate_cmd);

  auto* report_cmd = app.add_subcommand("report", "Fiber identities, c2, Euler balance and the dichotomy");
  report_cmd->add_option("file", file)->required();
  add_format(report_cmd);

  std::string degree_text, sweep_text;
  auto* reduce_cmd = app.add_subcommand("reduce", "Degree-N base change bookkeeping");
  reduce_cmd->add_option("file", file)->required();
  reduce_cmd->add_option("--N", degree_text, "Cover degree")->required();
  reduce_cmd->add_option("--sweep", sweep_text, "Comma-separated N values for the polynomial sweep");
  add_format(reduce_cmd);

  std::string p_text, q_text;
  auto* resolve_cmd = app.add_subcommand("resolve", "Resolve the base point x^p - t y^q");
  resolve_cmd->add_option("--p", p_text)->required();
  resolve_cmd->add_option("--q", q_text)->required();
  add_format(resolve_cmd);

  std::string power_text, h0_kf_text, h0_kbar_text, floor_text;
  bool cover = false, scan = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "Section-count predicates and cover-degree bounds");
  bounds_cmd->add_option("file", file)->required();
  bounds_cmd->add_option("--n", power_text, "Power n")->required();
  bounds_cmd->add_option("--h0-kf", h0_kf_text, "h0(K_F^n)")->required();
  bounds_cmd->add_option("--h0-kbar", h0_kbar_text, "h0(K_fbar^n)")->required();
  bounds_cmd->add_option("--eigenvalue-floor", floor_text, "Lower bound on eigenvalue absolute values");
  bounds_cmd->add_flag("--cover", cover, "Also compute the minimal cover degree");
  bounds_cmd->add_flag("--zero-pairing", scan, "Also list classes with K_F.D = 0 that are not (-2)-curves");
  add_format(bounds_cmd);

  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::string fibers_text = "1,4", components_text = "1,6", mult_text = "1,9";
  std::int64_t min_genus = 0, base_genus_y = 0;
  bool nef = false;
  auto* gen_cmd = app.add_subcommand("gen", "Emit random valid models, one JSON document per line");
  gen_cmd->add_option("--seed", seed)->required();
  gen_cmd->add_option("--count", count);
  gen_cmd->add_option("--fibers", fibers_text, "LO,HI fibers per model");
  gen_cmd->add_option("--components", components_text, "LO,HI components per fiber");
  gen_cmd->add_option("--multiplicity", mult_text, "LO,HI component multiplicity");
  gen_cmd->add_option("--min-genus", min_genus);
  gen_cmd->add_option("--base-genus", base_genus_y);
  gen_cmd->add_flag("--nef", nef, "Force K_F.F >= 0 on every fiber component");

  bool emit = false;
  auto* pencil_cmd = app.add_subcommand("pencil", "Assemble a pencil descriptor and run the degree checks");
  pencil_cmd->add_option("file", file)->required();
  pencil_cmd->add_flag("--emit", emit, "Print the assembled model file instead of the report");
  add_format(pencil_cmd);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const Emitter emit_doc{out, format == "structured"};
  auto integer_flag = [](const std::string& text, const char* flag) {
    auto values = parse_integer_list(text, flag);
    if (values.size() != 1) throw Error(Errc::invalid_argument, std::string(flag) + " takes one integer");
    return values.front();
  };

  try {
    if (*validate_cmd) {
      const FibrationModel model = read_model(read_file(file));
      const auto report = validate(model);
      emit_doc(to_json(report));
      return finish(report.valid());
    }

    if (*report_cmd) {
      const FibrationModel model = parse_model(read_file(file));
      const json doc = report_document(model);
      emit_doc(doc);
      return finish(doc["holds"].get<bool>());
    }

    if (*reduce_cmd) {
      const FibrationModel model = parse_model(read_file(file));
      const ReductionContext ctx = ReductionContext::make(model, integer_flag(degree_text, "--N"));
      json doc;
      doc["N"] = integer_to_json(ctx.degree());
      doc["cover_base_genus"] = integer_to_json(ctx.cover_base_genus());
      json ram = json::object();
      for (const auto& [id, r] : ctx.ramification()) ram[id] = integer_to_json(r);
      doc["ramification"] = ram;
      const auto& lat = model.lattice;
      const Divisor kf = foliation_canonical(model);
      doc["pullback"] = {{"K_F.K_F", integer_to_json(pullback_pair(ctx, kf, kf))},
                         {"K_F.C", integer_to_json(pullback_pair(ctx, kf, lat.generic_fiber()))},
                         {"K_F.K_S", integer_to_json(pullback_pair(ctx, kf, lat.canonical()))}};
      const auto balance = euler_characteristic_balance(model);
      doc["euler_balance"] = to_json(balance);
      bool ok = balance.holds();
      if (!sweep_text.empty()) {
        const auto sweep = canonical_product_sweep(model, parse_integer_list(sweep_text, "--sweep"));
        doc["sweep"] = to_json(sweep);
        ok = ok && sweep.all_hold();
      }
      doc["holds"] = ok;
      emit_doc(doc);
      return finish(ok);
    }

    if (*resolve_cmd) {
      const auto chain = resolve_base_point(integer_flag(p_text, "--p"), integer_flag(q_text, "--q"));
      if (emit_doc.structured) emit_doc(to_json(chain));
      else out << render_chain_tree(chain);
      return kPass;
    }

    if (*bounds_cmd) {
      const FibrationModel model = parse_model(read_file(file));
      SectionCounts counts;
      counts.power = integer_flag(power_text, "--n");
      counts.h0_foliation = integer_flag(h0_kf_text, "--h0-kf");
      counts.h0_reduced = integer_flag(h0_kbar_text, "--h0-kbar");
      const auto sections = section_predicates(model, counts);
      json doc;
      doc["sections"] = to_json(sections);
      bool ok = sections.holds();
      if (cover) {
        const auto degree = minimal_cover_degree(model, counts.power);
        doc["minimal_cover_degree"] = degree ? integer_to_json(*degree) : json("unbounded");
      }
      if (scan) {
        const auto z = zero_pairing_scan(model);
        doc["zero_pairing"] = to_json(z);
        ok = ok && z.offenders.empty();
      }
      if (!floor_text.empty()) {
        const auto e = eigenvalue_genus_bound(model, integer_flag(floor_text, "--eigenvalue-floor"));
        doc["eigenvalue_bound"] = to_json(e);
        ok = ok && (!e.applicable || e.holds || (e.dichotomy && e.dichotomy->holds()));
      }
      doc["holds"] = ok;
      emit_doc(doc);
      return finish(ok);
    }

    if (*gen_cmd) {
      RandomModelSpec spec;
      spec.seed = seed;
      spec.fibers = parse_range(fibers_text, "--fibers");
      spec.components = parse_range(components_text, "--components");
      spec.multiplicity = parse_range(mult_text, "--multiplicity");
      spec.nef = nef;
      spec.min_genus = min_genus;
      spec.base_genus = base_genus_y;
      ModelGenerator gen(spec);
      for (std::size_t i = 0; i < count; ++i) out << model_to_json(gen.next()).dump() << "\n";
      return kPass;
    }

    if (*pencil_cmd) {
      const PencilDescriptor desc = parse_pencil(read_file(file));
      const FibrationModel model = assemble_fibration(desc);
      if (emit) {
        out << emit_model(model);
        return kPass;
      }
      const auto report = poincare_checks(desc, model);
      json doc;
      doc["genus"] = integer_to_json(model.genus);
      doc["chi_O"] = integer_to_json(model.chi_O);
      doc["K_self"] = integer_to_json(model.canonical_self);
      doc["nonreduced_fibers"] = model.nonreduced_fiber_count();
      doc["poincare"] = to_json(report);
      const auto balance = euler_characteristic_balance(model);
      doc["euler_balance"] = to_json(balance);
      const bool ok = report.all_hold() && balance.holds();
      doc["holds"] = ok;
      emit_doc(doc);
      return finish(ok);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace fibsurf::cli
