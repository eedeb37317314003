#include "hypjac/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "hypjac/derham.hpp"
#include "hypjac/errors.hpp"
#include "hypjac/flows.hpp"
#include "hypjac/mumford.hpp"
#include "hypjac/qseries.hpp"
#include "hypjac/reduce.hpp"
#include "hypjac/symplectic.hpp"

namespace hypjac {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    default: return "SKIPPED";
  }
}

nlohmann::json CriterionResult::to_json(bool with_timing) const {
  nlohmann::json j{{"id", id}, {"title", title}, {"genera", genera}, {"verdict", to_string(verdict)},
                   {"detail", detail}, {"limit_seconds", limit_seconds}};
  if (with_timing) j["seconds"] = seconds;
  return j;
}

const std::vector<CriterionSpec>& criteria() {
  static const std::vector<CriterionSpec> specs{
      {1, "character identity ch(A0) ch(F) = ch(A), trunc 40", {1, 2, 3, 4, 5}, 1},
      {2, "basis counts match ch(A0) up to doubled degree 24", {1, 2, 3}, 30},
      {3, "three routes to chi_q agree; q -> 1 limit", {1, 2, 3, 4, 5}, 1},
      {4, "flow verification", {1, 2, 3}, 300},
      {5, "cohomology of C*_0 matches R_k - R_{k-2}, guard band clean", {1, 2}, 600},
      {6, "descendant completeness up to doubled degree 12", {1, 2}, 120},
      {7, "symplectic layer: Ker phi_k, isotropic spans, generic abelian table", {1, 2, 3, 4}, 60},
      {8, "Koszul exactness below g and cokernel character at g", {1, 2, 3}, 600},
      {9, "Mumford round trip, 100 cases, 256 bits", {1, 2, 3}, 60},
      {10, "graded compatibility for random f0, 50 pairs to degree 12", {1, 2}, 60},
  };
  return specs;
}

namespace {

struct Outcome {
  Verdict verdict = Verdict::Pass;
  std::ostringstream detail;
  void fail(const std::string& why) {
    verdict = Verdict::Fail;
    note(why);
  }
  void inconclusive(const std::string& why) {
    if (verdict == Verdict::Pass) verdict = Verdict::Inconclusive;
    note(why);
  }
  void note(const std::string& s) {
    if (detail.tellp() > 0) detail << "; ";
    detail << s;
  }
};

std::string gs(int g) { return "g=" + std::to_string(g); }

void c1(int g, std::uint64_t, Outcome& o) {
  if (!ring_characters(g, 40).product_identity) o.fail(gs(g) + ": ch(A0) ch(F) != ch(A)");
}

void c2(int g, std::uint64_t, Outcome& o) {
  const QSeries ch = ch_A0(g, 25);
  for (int d = 0; d <= 24; ++d) {
    const auto n = basis_enum(g, d).size();
    if (Integer(static_cast<unsigned long>(n)) != ch.coeff(d))
      o.fail(gs(g) + " deg2 " + std::to_string(d) + ": " + std::to_string(n) + " monomials vs " +
             to_string(ch.coeff(d)));
  }
}

void c3(int g, std::uint64_t, Outcome& o) {
  static const int expected[] = {-1, 2, -5, 14, -42};
  for (int k = 0; k <= g; ++k) {
    const ComplexCharacters cc = complex_characters(g, k, 40);
    if (!cc.chi_agree) o.fail(gs(g) + ": chi_q routes disagree");
    if (!cc.telescoping) o.fail(gs(g) + " k=" + std::to_string(k) + ": alternating W-sum mismatch");
  }
  const Integer lim = euler_limit(g);
  if (Rational(lim) != euler_limit_from_product(g)) o.fail(gs(g) + ": q -> 1 limits disagree");
  if (evaluate_at_one(complex_characters(g, 0, 40).chi_q) != lim) o.fail(gs(g) + ": chi_q(1) != limit");
  if (g <= 5 && lim != expected[g - 1]) o.fail(gs(g) + ": limit " + to_string(lim));
}

void c4(int g, std::uint64_t seed, Outcome& o) {
  FlowOptions opts;
  opts.seed = seed;
  const FlowReport r = verify_flows(g, opts);
  for (const auto& c : r.checks)
    if (c.asserted && !c.passed) o.fail(gs(g) + ": " + c.name + " " + c.detail);
  o.note(gs(g) + " epsilon=" + std::to_string(r.epsilon) + " sigma=" + std::to_string(r.sigma));
}

void c5(int g, std::uint64_t, Outcome& o) {
  const CohomologyTable t = cohomology_dims(g, required_window(g));
  if (!t.d_squared_zero) o.fail(gs(g) + ": d^2 != 0");
  if (!t.matches_prediction()) o.fail(gs(g) + ": characters differ from R_k - R_{k-2}");
  if (!t.guard_band_clean()) o.fail(gs(g) + ": extra classes in the guard band");
  if (!euler_matches(t)) o.fail(gs(g) + ": Euler characteristic from ranks differs from chi_q");
  const auto dims = t.total_dims();
  const std::vector<std::size_t> want = g == 1 ? std::vector<std::size_t>{1, 2} : std::vector<std::size_t>{1, 4, 5};
  if (g <= 2 && dims != want) o.fail(gs(g) + ": unexpected total dimensions");
  if (g == 1) {
    const int t1 = t.window.hi + 1;
    if (!(t.character(0) == QSeries::monomial(0, Integer(1), t1)) ||
        !(t.character(1) == QSeries::monomial(-1, Integer(1), t1) + QSeries::monomial(1, Integer(1), t1)))
      o.fail("g=1: characters are not (1, q^-1/2 + q^1/2)");
  }
  std::string d;
  for (auto x : dims) d += (d.empty() ? "" : ",") + std::to_string(x);
  o.note(gs(g) + " dims (" + d + ")");
}

void c6(int g, std::uint64_t, Outcome& o) {
  DeRhamComplex cx(g);
  DescentSolver solver(cx, hg_representatives(cx, 12 - g * g));
  std::size_t count = 0;
  for (int d = 0; d <= 12; ++d)
    for (const auto& m : basis_enum(g, d)) {
      ++count;
      if (!solver.descend(Poly::monomial(g, m)).residual_zero)
        o.fail(gs(g) + ": nonzero residual for " + m.to_string());
    }
  o.note(gs(g) + " " + std::to_string(count) + " monomials over " +
         std::to_string(solver.representatives().size()) + " representatives");
}

void c7(int g, std::uint64_t seed, Outcome& o) {
  for (int k = 0; k <= g; ++k) {
    const PhiReport p = phi_kernel(g, k);
    if (!p.kernel_matches) o.fail(gs(g) + " k=" + std::to_string(k) + ": dim Ker phi_k mismatch");
  }
  if (g <= 3)
    for (int k = 1; k <= g; ++k) {
      const IsotropicReport r = isotropic_span_check(g, k, seed);
      if (r.outcome == Tri::Fail) o.fail(gs(g) + " k=" + std::to_string(k) + ": isotropic span check failed");
      if (r.outcome == Tri::Inconclusive)
        o.inconclusive(gs(g) + " k=" + std::to_string(k) + ": isotropic span stopped at " +
                       std::to_string(r.span_dim) + "/" + std::to_string(r.target));
    }
  const AbelianTable t = generic_abelian_dims(g);
  if (g == 3 && t.defect != 1) o.fail("g=3: generic abelian defect is " + to_string(t.defect));
  for (const auto& row : t.rows)
    if (row.k < g && row.generic != row.hyperelliptic) o.fail(gs(g) + ": generic abelian table inconsistent");
}

void c8(int g, std::uint64_t, Outcome& o) {
  const KoszulReport r = koszul_check(g, -g * g, -g * g + 24);
  if (!r.well_defined) o.fail(gs(g) + ": differential not well defined on W-classes");
  if (!r.d_squared_zero) o.fail(gs(g) + ": d^2 != 0");
  if (!r.exact_below_g) o.fail(gs(g) + ": not exact below k = g");
  if (!r.cokernel_matches) o.fail(gs(g) + ": cokernel character differs from q^{-g^2/2} ch(A0)");
}

void c9(int g, std::uint64_t seed, Outcome& o) {
  const RoundTripReport r = mumford_round_trip(g, 100, seed, 256);
  if (!r.exact_ok) o.fail(gs(g) + ": exact divisor -> triple mismatch");
  if (!r.numeric_ok) o.fail(gs(g) + ": numeric error " + r.max_error);
  o.note(gs(g) + " max error " + r.max_error);
}

void c10(int g, std::uint64_t seed, Outcome& o) {
  std::mt19937_64 rng(seed + 1000 * g);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::vector<Rational> f0;
  bool nonzero = false;
  while (!nonzero) {
    f0.clear();
    for (int k = 0; k < 2 * g + 1; ++k) {
      f0.emplace_back(num(rng), den(rng));
      nonzero = nonzero || f0.back() != 0;
    }
  }
  const GrCompatibilityReport r = gr_compatibility_check(g, f0, 12, 50, seed);
  if (r.pairs.size() != 50) o.fail(gs(g) + ": only " + std::to_string(r.pairs.size()) + " pairs drawn");
  if (!r.all_passed()) o.fail(gs(g) + ": top-degree parts differ");
}

}  // namespace

CriterionResult run_criterion(int id, const std::vector<int>& genera, std::uint64_t seed) {
  const auto& specs = criteria();
  auto it = std::find_if(specs.begin(), specs.end(), [&](const CriterionSpec& s) { return s.id == id; });
  if (it == specs.end()) throw InvalidParameter("unknown criterion " + std::to_string(id));
  static const std::vector<std::function<void(int, std::uint64_t, Outcome&)>> body{
      c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};

  CriterionResult r;
  r.id = id;
  r.title = it->title;
  r.limit_seconds = it->limit_seconds;
  for (int g : genera)
    if (std::find(it->genera.begin(), it->genera.end(), g) != it->genera.end()) r.genera.push_back(g);
  if (r.genera.empty()) {
    r.verdict = Verdict::Skipped;
    r.detail = "outside the checked genus range";
    return r;
  }
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    for (int g : r.genera) body[id - 1](g, seed, o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > r.limit_seconds) o.fail("exceeded the time limit");
  r.verdict = o.verdict;
  r.detail = o.detail.str();
  return r;
}

}  // namespace hypjac
