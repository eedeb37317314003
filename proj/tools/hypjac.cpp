// hypjac: command-line front end. Every report is JSON with "schema": 1 unless
// --output csv|text is given. Exit codes: 0 pass, 1 check failure, 2
// inconclusive or window refusal, 64 usage error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypjac/derham.hpp"
#include "hypjac/errors.hpp"
#include "hypjac/flows.hpp"
#include "hypjac/mumford.hpp"
#include "hypjac/qseries.hpp"
#include "hypjac/reduce.hpp"
#include "hypjac/symplectic.hpp"
#include "hypjac/verify.hpp"
#include "json.hpp"

using namespace hypjac;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

const char* kGrammar =
    "Expressions: rationals (3, -1/2), generators aj = a_{j+1/2} (1<=j<=g), bj = b_j (1<=j<=g),\n"
    "cj = c_j (1<=j<=g+1), fj = f_j (1<=j<=2g+1); operators + - * ^ and parentheses.\n"
    "Degrees are doubled: deg2 aj = 2j+1, deg2 bj = deg2 cj = deg2 fj = 2j.\n"
    "Windows are lo:hi in doubled degrees; write --window=-2:2 when lo is negative.";

struct Common {
  std::string output = "json";
  std::uint64_t seed = 1;
};

/// Thrown for bad flag values that CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Window parse_window(const std::string& s) {
  const auto colon = s.find(':', s.empty() ? 0 : 1);
  if (colon == std::string::npos) throw UsageError("window must be lo:hi, got '" + s + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    Window w{std::stoi(a, &p1), std::stoi(b, &p2)};
    if (p1 != a.size() || p2 != b.size()) throw UsageError("bad window '" + s + "'");
    if (w.lo > w.hi) throw UsageError("window needs lo <= hi");
    return w;
  } catch (const std::logic_error&) {
    throw UsageError("bad window '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& piece : split(s, ',')) out.push_back(parse_rational(piece));
  return out;
}

// ----------------------------------------------------------------- output

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit(const Common& c, json report, const std::optional<std::string>& table_csv = std::nullopt) {
  report["schema"] = 1;
  if (c.output == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  if (c.output == "csv" && table_csv) {
    std::cout << *table_csv;
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  if (c.output == "csv") {
    std::cout << "key,value\n";
    for (const auto& [k, v] : rows) std::cout << csv_escape(k) << ',' << csv_escape(v) << "\n";
  } else {
    for (const auto& [k, v] : rows) std::cout << k << " = " << v << "\n";
  }
}

std::string series_csv(const std::vector<std::pair<std::string, const QSeries*>>& cols, int lo, int hi) {
  std::ostringstream os;
  os << "s_exponent";
  for (const auto& [name, s] : cols) os << ',' << name;
  os << "\n";
  for (int e = lo; e < hi; ++e) {
    os << e;
    for (const auto& [name, s] : cols) os << ',' << (e < s->trunc() ? to_string(s->coeff(e)) : "");
    os << "\n";
  }
  return os.str();
}

json series_json(const QSeries& s) {
  json j = s.to_json();
  j["text"] = s.to_text();
  return j;
}

// --------------------------------------------------------------- commands

int cmd_char(const Common& c, int g, int trunc) {
  const RingCharacters rc = ring_characters(g, trunc);
  json j{{"command", "char"}, {"g", g}, {"trunc", trunc}};
  j["ch_A"] = series_json(rc.ch_A);
  j["ch_F"] = series_json(rc.ch_F);
  j["ch_A0"] = series_json(rc.ch_A0);
  j["product_identity"] = rc.product_identity;
  bool ok = rc.product_identity;
  json complex = json::array();
  for (int k = 0; k <= g; ++k) {
    const ComplexCharacters cc = complex_characters(g, k, trunc);
    complex.push_back({{"k", k}, {"ch_Ck0", series_json(cc.ch_Ck0)}, {"R_k", series_json(cc.r_k)},
                       {"ch_Wk", series_json(cc.ch_Wk)}});
    ok = ok && cc.chi_agree && cc.telescoping;
    if (k == 0) {
      j["chi_q"] = series_json(cc.chi_q);
      j["chi_agree"] = cc.chi_agree;
      j["telescoping"] = cc.telescoping;
    }
  }
  j["complex"] = complex;
  j["euler_limit"] = to_string(euler_limit(g));
  j["euler_limit_from_product"] = to_string(euler_limit_from_product(g));
  ok = ok && Rational(euler_limit(g)) == euler_limit_from_product(g);
  j["passed"] = ok;
  emit(c, j, series_csv({{"ch_A", &rc.ch_A}, {"ch_F", &rc.ch_F}, {"ch_A0", &rc.ch_A0}}, 0, trunc));
  return ok ? kExitPass : kExitFail;
}

int cmd_basis(const Common& c, int g, int max_deg2) {
  if (max_deg2 < 0) throw UsageError("--max-deg2 must be nonnegative");
  const QSeries ch = ch_A0(g, max_deg2 + 1);
  json degrees = json::array();
  std::ostringstream csv;
  csv << "deg2,count,ch_A0\n";
  bool ok = true;
  for (int d = 0; d <= max_deg2; ++d) {
    const auto mons = basis_enum(g, d);
    json names = json::array();
    for (const auto& m : mons) names.push_back(m.to_string());
    const bool match = Integer(static_cast<unsigned long>(mons.size())) == ch.coeff(d);
    ok = ok && match;
    degrees.push_back({{"deg2", d}, {"count", mons.size()}, {"ch_A0", to_string(ch.coeff(d))},
                       {"match", match}, {"monomials", names}});
    csv << d << ',' << mons.size() << ',' << to_string(ch.coeff(d)) << "\n";
  }
  emit(c, {{"command", "basis"}, {"g", g}, {"max_deg2", max_deg2}, {"degrees", degrees}, {"all_match", ok}},
       csv.str());
  return ok ? kExitPass : kExitFail;
}

int cmd_nf(const Common& c, int g, const std::string& f0_text, const std::string& expr, bool trace) {
  std::vector<Rational> f0;
  if (!f0_text.empty()) f0 = parse_rationals(f0_text);
  const ReductionSystem sys = build_reduction_system(g, f0);
  const Poly x = parse_poly(expr, g);
  ReductionTrace tr;
  const Poly nf = normal_form(x, sys, trace ? &tr : nullptr);
  json j{{"command", "nf"}, {"g", g}, {"input", x.to_string()}, {"normal_form", nf.to_string()},
         {"terms", nf.to_json()}};
  json f0j = json::array();
  for (const auto& r : sys.f0) f0j.push_back(to_string(r));
  j["f0"] = f0j;
  if (trace) {
    json steps = json::array();
    for (const auto& s : tr.steps) steps.push_back({{"rewritten", s.rewritten.to_string()}, {"rule", s.rule}});
    j["trace"] = steps;
  }
  emit(c, j);
  return kExitPass;
}

Curve parse_curve(int g, const std::string& text) {
  Curve curve{g, text.empty() ? std::vector<Rational>(2 * g + 1, Rational(0)) : parse_rationals(text)};
  curve.validate();
  return curve;
}

int cmd_mumford(const Common& c, int g, const std::string& curve_text, const std::string& points_text,
                const std::string& triple_text, int random_cases, unsigned precision) {
  json j{{"command", "mumford"}, {"g", g}};
  const int modes = !points_text.empty() + !triple_text.empty() + (random_cases > 0);
  if (modes != 1) throw UsageError("give exactly one of --points, --triple, --random");
  if (random_cases > 0) {
    const RoundTripReport r = mumford_round_trip(g, random_cases, c.seed, precision);
    j["round_trip"] = r.to_json();
    j["passed"] = r.passed();
    emit(c, j);
    return r.passed() ? kExitPass : kExitFail;
  }
  const Curve curve = parse_curve(g, curve_text);
  j["curve"] = curve.to_json();
  if (!points_text.empty()) {
    std::vector<RationalPoint> pts;
    for (const auto& p : split(points_text, ';')) {
      const auto parts = split(p, ':');
      if (parts.size() != 2) throw UsageError("points are z:y separated by ';'");
      pts.push_back({parse_rational(parts[0]), parse_rational(parts[1])});
    }
    const MumfordTriple t = divisor_to_triple(pts, curve);
    j["triple"] = t.to_json();
    j["satisfies_determinant"] = t.lies_on(curve);
    emit(c, j);
    return t.lies_on(curve) ? kExitPass : kExitFail;
  }
  json tj;
  try {
    tj = json::parse(triple_text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("--triple is not valid JSON: ") + e.what());
  }
  const MumfordTriple t = MumfordTriple::from_json(g, tj);
  NumericOptions opts;
  opts.precision_bits = precision;
  PrecisionScope scope(precision);
  const DivisorResult d = triple_to_divisor(t, curve, opts);
  json pts = json::array();
  for (const auto& p : d.points)
    pts.push_back({{"z", {format_real(p.z.re), format_real(p.z.im)}},
                   {"y", {format_real(p.y.re), format_real(p.y.im)}},
                   {"repeated", p.repeated}});
  j["triple"] = t.to_json();
  j["points"] = pts;
  j["degenerate"] = d.degenerate;
  j["max_curve_residual"] = format_real(d.max_curve_residual, 6);
  if (d.degenerate) std::cerr << "warning: b has a repeated root; points are flagged\n";
  emit(c, j);
  return kExitPass;
}

int cmd_flows(const Common& c, int g, bool verify) {
  const auto flows = closed_form_flows(g);
  const ReductionSystem sys = build_reduction_system(g);
  json images = json::array();
  for (std::size_t i = 0; i < flows.size(); ++i) {
    json per = json::object();
    for (GenId x : generators(g, false)) {
      const Poly img = flows[i].apply(Poly::generator(g, x));
      per[x.token()] = {{"raw", img.to_string()}, {"nf", normal_form(img, sys).to_string()}};
    }
    images.push_back({{"flow", "D" + std::to_string(i + 1)}, {"deg2_shift", flows[i].doubled_degree_shift()},
                      {"images", per}});
  }
  json j{{"command", "flows"}, {"g", g}, {"flows", images}};
  int code = kExitPass;
  if (verify) {
    FlowOptions opts;
    opts.seed = c.seed;
    const FlowReport r = verify_flows(g, opts);
    j["verification"] = r.to_json();
    code = r.all_passed() ? kExitPass : kExitFail;
  }
  emit(c, j);
  return code;
}

int refusal(const Common& c, const std::string& command, int g, const WindowRefusal& w) {
  emit(c, {{"command", command}, {"g", g}, {"refused", true}, {"message", w.what()},
           {"need_window", {w.need_lo(), w.need_hi()}}});
  return kExitInconclusive;
}

int cmd_cohomology(const Common& c, int g, const std::string& window_text, bool allow_partial) {
  const Window w = window_text.empty() ? required_window(g) : parse_window(window_text);
  try {
    const CohomologyTable t = cohomology_dims(g, w, allow_partial);
    json j = t.to_json();
    j["command"] = "cohomology";
    j["euler_matches"] = euler_matches(t);
    j["euler_from_ranks"] = series_json(euler_from_ranks(t));
    j["evidence"] = t.restricted ? "restricted window: no conclusion about the full complex"
                                 : "finite window covering the predicted support and guard band";
    emit(c, j, t.to_csv());
    if (t.restricted) return kExitInconclusive;
    const bool ok = t.d_squared_zero && t.matches_prediction() && t.guard_band_clean() && euler_matches(t);
    return ok ? kExitPass : kExitFail;
  } catch (const WindowRefusal& e) {
    return refusal(c, "cohomology", g, e);
  }
}

int cmd_descend(const Common& c, int g, const std::string& expr) {
  DeRhamComplex cx(g);
  const Poly x = cx.normal_form(parse_poly(expr, g));
  const int deg = x.is_zero() ? 0 : x.max_doubled_degree().value_or(0);
  DescentSolver solver(cx, hg_representatives(cx, deg - g * g));
  const Descent d = solver.descend(x);
  json reps = json::array();
  for (const auto& r : solver.representatives())
    reps.push_back({{"coefficient", Poly::monomial(g, r.coefficient).to_string()}, {"deg2", r.deg2}});
  json j = d.to_json(solver.representatives());
  j["command"] = "descend";
  j["g"] = g;
  j["representatives"] = reps;
  emit(c, j);
  return d.residual_zero ? kExitPass : kExitFail;
}

int cmd_symplectic(const Common& c, int g, std::optional<int> only_k, int trunc) {
  std::vector<int> ks;
  if (only_k) {
    if (*only_k < 0 || *only_k > 2 * g) throw UsageError("--k must lie in 0..2g");
    ks.push_back(*only_k);
  } else {
    for (int k = 0; k <= g; ++k) ks.push_back(k);
  }
  bool ok = true, inconclusive = false;
  json rows = json::array();
  std::ostringstream csv;
  csv << "k,dim_W,dim_ker_phi,phi_surjective,omega_injective,isotropic_span,isotropic_target,isotropic\n";
  for (int k : ks) {
    const WkResult w = wk_dims_and_characters(g, k, trunc);
    const PhiReport p = phi_kernel(g, k);
    json row{{"k", k}, {"W", w.to_json()}, {"phi", p.to_json()}};
    ok = ok && w.dim_matches && w.character_matches;
    if (k <= g) ok = ok && p.kernel_matches && p.surjective;
    std::string inj = "";
    if (k <= g - 2) {
      const bool i = omega_injective(g, k);
      row["omega_injective"] = i;
      ok = ok && i;
      inj = i ? "true" : "false";
    }
    std::string iso_span, iso_target, iso_outcome;
    if (k >= 1 && k <= g) {
      const IsotropicReport r = isotropic_span_check(g, k, c.seed);
      row["isotropic"] = r.to_json();
      ok = ok && r.outcome != Tri::Fail;
      inconclusive = inconclusive || r.outcome == Tri::Inconclusive;
      iso_span = std::to_string(r.span_dim);
      iso_target = std::to_string(r.target);
      iso_outcome = to_string(r.outcome);
    }
    rows.push_back(row);
    csv << k << ',' << w.dim << ',' << p.kernel_dim << ',' << (p.surjective ? "true" : "false") << ',' << inj
        << ',' << iso_span << ',' << iso_target << ',' << iso_outcome << "\n";
  }
  json j{{"command", "symplectic"}, {"g", g}, {"rows", rows}, {"generic_abelian", generic_abelian_dims(g).to_json()}};
  j["passed"] = ok;
  emit(c, j, csv.str());
  if (!ok) return kExitFail;
  return inconclusive ? kExitInconclusive : kExitPass;
}

int cmd_resolution(const Common& c, int g, const std::string& window_text) {
  const Window w = window_text.empty() ? Window{-g * g, -g * g + 24} : parse_window(window_text);
  try {
    const KoszulReport r = koszul_check(g, w.lo, w.hi);
    json j = r.to_json();
    j["command"] = "resolution";
    std::ostringstream csv;
    csv << "k,deg2,dim,rank_out,rank_in,homology\n";
    for (const auto& cell : r.cells)
      csv << cell.k << ',' << cell.deg2 << ',' << cell.dim << ',' << cell.rank_out << ',' << cell.rank_in << ','
          << cell.homology << "\n";
    emit(c, j, csv.str());
    return r.passed() ? kExitPass : kExitFail;
  } catch (const WindowRefusal& e) {
    return refusal(c, "resolution", g, e);
  }
}

int cmd_verify_all(const Common& c, int g, bool timings) {
  json results = json::array();
  std::ostringstream csv;
  csv << "id,verdict,genera,title\n";
  bool fail = false, inconclusive = false;
  for (const auto& spec : criteria()) {
    const CriterionResult r = run_criterion(spec.id, {g}, c.seed);
    results.push_back(r.to_json(timings));
    fail = fail || r.verdict == Verdict::Fail;
    inconclusive = inconclusive || r.verdict == Verdict::Inconclusive;
    std::string gen;
    for (int x : r.genera) gen += (gen.empty() ? "" : " ") + std::to_string(x);
    csv << r.id << ',' << to_string(r.verdict) << ',' << gen << ',' << csv_escape(r.title) << "\n";
  }
  json j{{"command", "verify-all"}, {"g", g}, {"seed", c.seed}, {"criteria", results}};
  j["passed"] = !fail && !inconclusive;
  emit(c, j, csv.str());
  if (fail) return kExitFail;
  return inconclusive ? kExitInconclusive : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypjac: exact algebra of affine hyperelliptic Jacobians"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  Common common;
  int g = 1, trunc = 40, max_deg2 = 12, random_cases = 0;
  unsigned precision = 256;
  std::string f0, expr, window, curve, points, triple;
  bool trace = false, verify = false, allow_partial = false, timings = false;
  std::optional<int> k;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--g", g, "genus")->required()->check(CLI::Range(1, 12));
    sub->add_option("--output", common.output, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--seed", common.seed, "seed for randomized checks");
    sub->footer(kGrammar);
  };

  auto* s_char = app.add_subcommand("char", "ring and complex characters");
  add_common(s_char);
  s_char->add_option("--trunc", trunc, "s-exponent window")->check(CLI::Range(1, 400));

  auto* s_basis = app.add_subcommand("basis", "quotient basis per doubled degree");
  add_common(s_basis);
  s_basis->add_option("--max-deg2", max_deg2, "largest doubled degree");

  auto* s_nf = app.add_subcommand("nf", "normal form modulo f = f0");
  add_common(s_nf);
  s_nf->add_option("--f0", f0, "comma-separated f0_1..f0_{2g+1} (default zeros)");
  s_nf->add_option("expr", expr, "polynomial expression")->required();
  s_nf->add_flag("--trace", trace, "list rewriting steps");

  auto* s_mum = app.add_subcommand("mumford", "divisor <-> triple");
  add_common(s_mum);
  s_mum->add_option("--curve", curve, "comma-separated f_1..f_{2g+1} (default zeros)");
  s_mum->add_option("--points", points, "z:y;z:y;... exact points");
  s_mum->add_option("--triple", triple, R"(JSON {"a":[..],"b":[..],"c":[..]})");
  s_mum->add_option("--random", random_cases, "round-trip this many random divisors");
  s_mum->add_option("--precision", precision, "bits")->check(CLI::Range(64u, 4096u));

  auto* s_flows = app.add_subcommand("flows", "vector fields D_1..D_g");
  add_common(s_flows);
  s_flows->add_flag("--verify", verify, "run the verification suite");

  auto* s_coh = app.add_subcommand("cohomology", "cohomology of C*_0 per doubled degree");
  add_common(s_coh);
  s_coh->add_option("--window", window, "lo:hi (default: predicted support plus guard band)");
  s_coh->add_flag("--allow-partial", allow_partial, "compute on a narrower window (exit 2)");

  auto* s_desc = app.add_subcommand("descend", "write x as sum P(D) h over H^g representatives");
  add_common(s_desc);
  s_desc->add_option("expr", expr, "homogeneous element")->required();

  auto* s_symp = app.add_subcommand("symplectic", "W^k, phi_k, isotropic spans, generic abelian table");
  add_common(s_symp);
  s_symp->add_option("--k", k, "single wedge degree");
  s_symp->add_option("--trunc", trunc, "s-exponent window for characters");

  auto* s_res = app.add_subcommand("resolution", "Koszul complex D (x) W^*");
  add_common(s_res);
  s_res->add_option("--window", window, "lo:hi (default -g^2:-g^2+24)");

  auto* s_all = app.add_subcommand("verify-all", "all acceptance checks for one genus");
  add_common(s_all);
  s_all->add_flag("--timings", timings, "include wall-clock seconds (not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*s_char) return cmd_char(common, g, trunc);
    if (*s_basis) return cmd_basis(common, g, max_deg2);
    if (*s_nf) return cmd_nf(common, g, f0, expr, trace);
    if (*s_mum) return cmd_mumford(common, g, curve, points, triple, random_cases, precision);
    if (*s_flows) return cmd_flows(common, g, verify);
    if (*s_coh) return cmd_cohomology(common, g, window, allow_partial);
    if (*s_desc) return cmd_descend(common, g, expr);
    if (*s_symp) return cmd_symplectic(common, g, k, trunc);
    if (*s_res) return cmd_resolution(common, g, window);
    if (*s_all) return cmd_verify_all(common, g, timings);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << kGrammar << "\n";
    return kExitUsage;
  } catch (const hypjac::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n" << kGrammar << "\n";
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GenusMismatch& e) {
    std::cerr << "genus mismatch: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hypjac::Error& e) {
    emit(common, {{"error", e.what()}});
    return kExitFail;
  }
  return kExitUsage;
}
