// One line per acceptance criterion: PASS/FAIL, the measured quantity, the
// tolerance it was held to, and wall time. Exit status is the number of
// failed criteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles/brute_force.hpp"
#include "oracles/chart_blowup.hpp"
#include "oracles/plane_poly.hpp"
#include "support.hpp"

namespace fibsurf {
namespace {

constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr std::size_t kCorpusSize = 1000;
constexpr double kIdentitySeconds = 10.0;
constexpr double kSweepSeconds = 30.0;
constexpr std::size_t kDichotomyModels = 500;
constexpr std::size_t kRoundTripModels = 100;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<FibrationModel>& corpus() {
  static const std::vector<FibrationModel> models = [] {
    RandomModelSpec spec;
    spec.seed = kCorpusSeed;
    spec.fibers = {1, 4};
    spec.components = {1, 6};
    spec.multiplicity = {1, 9};
    return generate_models(spec, kCorpusSize);
  }();
  return models;
}

// K_F written out term by term, without going through the library helper.
Divisor spelled_out_kf(const FibrationModel& m) {
  const auto& lat = m.lattice;
  Divisor kf = lat.canonical() + Integer(2 - 2 * m.base_genus) * Divisor::of(lat.fiber_id());
  for (const auto& f : m.fibers)
    for (const auto& c : f.components)
      if (c.multiplicity > 1) kf = kf - Integer(c.multiplicity - 1) * Divisor::of(c.class_id);
  return kf;
}

Outcome identity_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto& models = corpus();
  std::size_t checked = 0;
  for (const auto& m : models) {
    const auto& lat = m.lattice;
    const auto r = check_fiber_identities(m);
    const std::string tag = "model " + std::to_string(checked);
    o.require(r.excess_square.holds(), tag + " excess square");
    o.require(r.component_squares.holds(), tag + " component squares");
    o.require(r.all_hold(), tag + " recovered squares");
    // independent: D0^2 by double sum, (K_F - K_S)^2 from the spelled-out K_F
    Integer d0sq = 0;
    Divisor d0;
    for (const auto& f : m.fibers)
      for (const auto& a : f.components) {
        if (a.multiplicity > 1) d0 = d0 + Integer(a.multiplicity - 1) * Divisor::of(a.class_id);
        for (const auto& b : f.components)
          d0sq += (a.multiplicity - 1) * (b.multiplicity - 1) * lat.entry(a.class_id, b.class_id);
      }
    const Divisor gap = spelled_out_kf(m) - lat.canonical();
    o.require(d0sq == lat.self_pair(gap), tag + " oracle D0^2 vs (K_F-K_S)^2");
    o.require(r.excess_square.rhs == d0sq, tag + " library D0^2 vs oracle");
    // every component square re-derived from F_j . fiber = 0
    for (const auto& f : m.fibers)
      for (const auto& a : f.components) {
        Integer rest = 0;
        for (const auto& b : f.components)
          if (b.class_id != a.class_id) rest += b.multiplicity * lat.entry(a.class_id, b.class_id);
        o.require(-rest == a.multiplicity * lat.entry(a.class_id, a.class_id), tag + " square of " + a.class_id);
      }
    ++checked;
  }
  const double dt = seconds_since(t0);
  o.require(dt < kIdentitySeconds, "runtime");
  o.detail << checked << " models, exact equality on every instance; " << dt << " s (limit " << kIdentitySeconds
           << " s)";
  return o;
}

Outcome sweep_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (const auto& m : corpus()) {
    const std::string tag = "model " + std::to_string(checked);
    const auto& lat = m.lattice;
    o.require(euler_characteristic_balance(m).holds(), tag + " Euler balance");
    const Integer l = multiplicity_lcm(m), first = least_cover_degree(m);
    const auto sweep = canonical_product_sweep(m, {first, first + l, first + 2 * l, first + 3 * l});
    o.require(sweep.pointwise(), tag + " way1 = way2 pointwise");
    o.require(sweep.coefficients_agree(), tag + " coefficient-wise agreement");
    o.require(sweep.linear_term_consistent(), tag + " linear term");
    const Divisor kf = spelled_out_kf(m);
    Integer kf_fib = 0, kf_fib_n = 0;
    for (const auto& f : m.fibers) {
      if (f.is_reduced()) continue;
      for (const auto& c : f.components) {
        const Integer v = lat.pair(kf, Divisor::of(c.class_id));
        kf_fib += v;
        kf_fib_n += c.multiplicity * v;
      }
    }
    const auto closed = oracle::sweep_closed_form(
        static_cast<std::int64_t>(m.genus), static_cast<std::int64_t>(m.base_genus),
        static_cast<std::int64_t>(m.nonreduced_fiber_count()), lat.self_pair(kf), lat.pair(kf, lat.canonical()),
        kf_fib, kf_fib_n);
    for (std::size_t i = 0; i < 4; ++i) {
      o.require(sweep.way1_coefficients[i] == Rational(closed.way1[i]), tag + " way1 closed form");
      o.require(sweep.way2_coefficients[i] == Rational(closed.way2[i]), tag + " way2 closed form");
    }
    ++checked;
  }
  const double dt = seconds_since(t0);
  o.require(dt < kSweepSeconds, "runtime");
  o.detail << checked << " models, balance exact, 4 N values each, polynomials agree; " << dt << " s (limit "
           << kSweepSeconds << " s)";
  return o;
}

Outcome cover_genus_values() {
  Outcome o;
  // Riemann-Hurwitz: 2 g_X - 2 = N (2 g_Y - 2) + N (N - 1)
  auto hurwitz = [](long n, long gy) { return (n * (2 * gy - 2) + n * (n - 1) + 2) / 2; };
  const std::vector<std::array<long, 3>> cases{{1, 0, 0}, {1, 1, 1}, {1, 2, 2}, {3, 0, 1}, {5, 0, 6}};
  for (const auto& [n, gy, want] : cases) {
    const Integer got = base_genus(n, gy);
    o.require(got == want, "base_genus(" + std::to_string(n) + ", " + std::to_string(gy) + ")");
    o.require(hurwitz(n, gy) == want, "Riemann-Hurwitz oracle");
    o.detail << "(" << n << "," << gy << ")->" << got << " ";
  }
  o.detail << "exact";
  return o;
}

Outcome cusp_resolution() {
  Outcome o;
  const auto chain = resolve_base_point(2, 3);
  const auto ref = oracle::chart_resolve(2, 3);
  o.require(chain.curves.size() == 3 && ref.curves.size() == 3, "three exceptional curves");
  const std::array<std::pair<int, int>, 3> valuations{{{1, 1}, {2, 1}, {3, 2}}};
  const std::array<int, 3> orders{2, 3, 6};
  for (std::size_t k = 0; k < 3 && k < chain.curves.size(); ++k) {
    const auto& e = chain.curves[k];
    const auto& r = ref.curves[k];
    o.require(e.vx == valuations[k].first && e.vy == valuations[k].second, "valuation of E" + std::to_string(k + 1));
    o.require(e.vx == r.vx && e.vy == r.vy && e.self_intersection == r.self, "chart oracle E" + std::to_string(k + 1));
    o.require(e.total_multiplicity == orders[k] && r.general_order == orders[k], "min(2v_x, 3v_y)");
  }
  const auto& h = chain.curves[chain.horizontal_index()];
  o.require(h.status == CurveStatus::horizontal && 2 * h.vx == 6 && 3 * h.vy == 6, "horizontal 2v_x = 3v_y = 6");
  using Part = std::vector<std::pair<ChainNode, Integer>>;
  o.require(chain.fiber_over_zero() == Part{{ChainNode::x(), 2}, {ChainNode::curve(1), 1}}, "fiber over 0");
  o.require(chain.fiber_over_infinity() == Part{{ChainNode::y(), 3}, {ChainNode::curve(0), 1}}, "fiber over inf");
  const auto model = testing::cusp_pencil_model();
  for (const auto& f : model.fibers) {
    o.require(model.lattice.self_pair(f.divisor()) == 0, "assembled fiber square");
    o.require(model.lattice.pair(f.divisor(), model.lattice.generic_fiber()) == 0, "fiber . C");
  }
  o.detail << "valuations (1,1),(2,1),(3,2); orders (2,3,6); 2X'+E2 / 3Y'+E1; assembled fiber squares 0; chart "
              "oracle agrees";
  return o;
}

Outcome cubic_pencil() {
  Outcome o;
  const auto desc = testing::load_pencil("cubic_pencil.json");
  const auto m = assemble_fibration(desc);
  const auto& lat = m.lattice;
  const Divisor kf = foliation_canonical(m);
  o.require(m.genus == 1, "g = 1");
  o.require(m.chi_O == 1, "chi(O_S) = 1");
  o.require(m.canonical_self == 0 && lat.self_pair(lat.canonical()) == 0, "K_S^2 = 0");
  o.require(lat.numerically_equivalent(kf, lat.generic_fiber()), "K_F = C");
  o.require(lat.pair(kf, lat.generic_fiber()) == 0 && 2 * m.genus - 2 == 0, "K_F . C = 0 = 2g - 2");
  const auto report = poincare_checks(desc, m);
  o.require(report.foliation_degree == 4 && report.all_hold(), "degree formula m = 4");
  using oracle::Poly;
  const Poly x = oracle::var(0), y = oracle::var(1), z = oracle::var(2);
  const Poly F = x * x * x + Poly::monomial(2, 0, 3, 0) - z * z * z + x * y * z + Poly::monomial(5, 1, 0, 2);
  const Poly G = Poly::monomial(3, 2, 1, 0) + y * y * z - x * z * z + Poly::monomial(7, 0, 0, 3) + x * x * x;
  o.require(oracle::pencil_foliation_degree(F, G) == 4, "polynomial oracle m = 4");
  const auto balance = euler_characteristic_balance(m);
  o.require(balance.lhs == 0 && balance.rhs == 0, "balance 0 = 0");
  o.detail << "g=" << m.genus << " chi=" << m.chi_O << " K^2=" << m.canonical_self << " K_F~C m="
           << report.foliation_degree << " balance " << balance.lhs << "=" << balance.rhs;
  return o;
}

Outcome dichotomy() {
  Outcome o;
  RandomModelSpec spec;
  spec.seed = kCorpusSeed + 6;
  spec.nef = true;
  spec.multiplicity = {4, 9};
  spec.min_genus = 2;
  spec.fibers = {3, 4};
  std::size_t forced = 0, vacuous = 0, counterexamples = 0;
  for (const auto& m : generate_models(spec, kDichotomyModels)) {
    const auto d = multiplicity_genus_dichotomy(m);
    // chi(O_S) - chi(K_F) = (K_F.K_S - K_F^2) / 2 by Riemann-Roch
    const Divisor kf = spelled_out_kf(m);
    const Integer twice_gap = m.lattice.pair(kf, m.lattice.canonical()) - m.lattice.self_pair(kf);
    o.require((2 * (m.genus - 1) <= 4 * twice_gap) == d.branch_b, "oracle branch (b)");
    o.require(m.genus >= 2 && d.nonreduced_fibers >= 3, "corpus shape");
    if (!d.branch_b) ++counterexamples;
    ++forced;
  }
  spec.seed += 1;
  spec.fibers = {0, 2};
  for (const auto& m : generate_models(spec, kDichotomyModels)) {
    const auto d = multiplicity_genus_dichotomy(m);
    o.require(d.branch_a, "s <= 2 gives branch (a)");
    if (!d.holds()) ++counterexamples;
    ++vacuous;
  }
  o.require(counterexamples == 0, "counterexamples");
  o.detail << forced << " models with s >= 3 all in branch (b); " << vacuous
           << " models with s <= 2 all in branch (a); counterexamples " << counterexamples << " (limit 0)";
  return o;
}

Outcome section_bounds() {
  Outcome o;
  const auto minimal = testing::load_model("minimal_model.json");
  const auto r = section_predicates(minimal, SectionCounts{1, 2, 1});
  o.require(minimal.genus == 2 && r.kf_square == 2, "boundary model K_F^2 = 2, g = 2");
  o.require(r.sections_exceed && r.growth.holds && r.growth.lhs == r.growth.rhs && r.holds(),
            "growth predicate true with equality");
  const auto worked = testing::load_model("horizontal_section.json");
  const auto degree = minimal_cover_degree(worked, 1);
  // scan: least even N > s with N (K_F.D) - C.D > 0
  const auto& lat = worked.lattice;
  const Integer kd = lat.pair(foliation_canonical(worked), Divisor::of("D"));
  const Integer cd = lat.pair(lat.generic_fiber(), Divisor::of("D"));
  Integer scan = 1;
  while (scan % 2 != 0 || scan <= Integer(worked.nonreduced_fiber_count()) || scan * kd - cd <= 0) ++scan;
  o.require(kd == 1 && cd == 7, "worked example K_F.D0 = 1, C.D0 = 7");
  o.require(degree && *degree == 8 && scan == 8, "minimal cover degree 8");
  o.detail << "n K_F^2 = " << r.growth.lhs << " vs 2(g-1) = " << r.growth.rhs << "; minimal N = "
           << (degree ? to_string(*degree) : std::string("none")) << " (scan " << scan << ")";
  return o;
}

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string(FIBSURF_CLI_PATH) + " " + args + " 2>&1";
  std::string text;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::array<char, 512> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) text += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), text};
}

Outcome round_trip() {
  Outcome o;
  RandomModelSpec spec;
  spec.seed = kCorpusSeed + 8;
  std::size_t same = 0;
  for (const auto& m : generate_models(spec, kRoundTripModels)) {
    const std::string text = emit_model(m);
    const auto back = parse_model(text);
    o.require(back == m, "parse(emit(m)) == m");
    o.require(emit_model(back) == text, "emit is stable");
    if (back == m) ++same;
  }
  const std::vector<std::pair<std::string, std::string>> malformed{
      {"asymmetric_pairing.json", "/pairing/0/2"}, {"unknown_field.json", "/surface/q"},
      {"float_entry.json", "/pairing/0/1"},        {"missing_field.json", "declared_genus"},
      {"wrong_version.json", "/format_version"},   {"undeclared_class.json", "/fibers/0/components/0/class"},
      {"truncated.json", "line 15"}};
  for (const auto& [file, where] : malformed) {
    const auto [code, text] = run_cli("validate " + testing::fixture_path(file));
    o.require(code == 2, file + " exit code " + std::to_string(code));
    o.require(text.find(where) != std::string::npos, file + " names " + where);
  }
  o.detail << same << "/" << kRoundTripModels << " round-trips identical; " << malformed.size()
           << " malformed fixtures exit 2 with a field path";
  return o;
}

}  // namespace
}  // namespace fibsurf

int main() {
  using namespace fibsurf;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 identity suite", identity_suite},
      {"2 Euler balance and N sweep", sweep_suite},
      {"3 cover genus values", cover_genus_values},
      {"4 cusp resolution (2,3)", cusp_resolution},
      {"5 generic cubic pencil", cubic_pencil},
      {"6 multiplicity/genus dichotomy", dichotomy},
      {"7 section predicates and cover degree", section_bounds},
      {"8 file round-trip and malformed input", round_trip},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "threw: " << e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail.str() << " ["
              << seconds_since(t0) << " s]" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed;
}
