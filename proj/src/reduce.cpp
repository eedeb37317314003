#include "hypjac/reduce.hpp"

#include <algorithm>
#include <random>

#include "hypjac/errors.hpp"
#include "hypjac/mumford.hpp"

namespace hypjac {

namespace {

// Exponents of u_{n/2}, slot n-2, for n = 2..2g+1.
using UExp = std::vector<int>;

std::vector<int> dense_key(const UExp& e, int g) {
  std::vector<int> key(2 + 2 * g, 0);
  for (int n = 2; n <= 2 * g + 1; ++n) {
    const int ei = e[n - 2];
    key[0] += n * ei;
    if (is_high_u(n, g)) {
      key[1] += n * ei;
      key[2 + (n - g - 2)] = -ei;
    } else {
      key[2 + g + (n - 2)] = ei;
    }
  }
  return key;
}

UExp to_uexp(const Monomial& m, int g) {
  UExp e(2 * g, 0);
  for (const auto& [x, p] : m.factors()) {
    const int n = u_index(x);
    if (n == 0) throw StructuralError("c or f generator left after substitution");
    e[n - 2] += static_cast<int>(p);
  }
  return e;
}

Monomial from_uexp(const UExp& e) {
  std::vector<Monomial::Factor> factors;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) factors.emplace_back(u_generator(static_cast<int>(i) + 2), e[i]);
  std::sort(factors.begin(), factors.end());
  return Monomial(std::move(factors));
}

int high_factor_count(const Monomial& m, int g) {
  int count = 0;
  for (const auto& [x, p] : m.factors()) {
    const int n = u_index(x);
    if (n != 0 && is_high_u(n, g)) count += static_cast<int>(p);
  }
  return count;
}

struct DenseRules {
  // rules[n] = list of (exponents, coefficient)
  std::map<int, std::vector<std::pair<UExp, Rational>>> rules;
};

DenseRules densify(const ReductionSystem& sys) {
  DenseRules out;
  for (const auto& [n, rhs] : sys.square_rules) {
    auto& list = out.rules[n];
    for (const auto& [m, c] : rhs.terms()) list.emplace_back(to_uexp(m, sys.g), c);
  }
  return out;
}

// Reduces a polynomial in a and b only.
Poly reduce_ab(const Poly& x, const ReductionSystem& sys, const DenseRules& rules,
               ReductionTrace* trace) {
  const int g = sys.g;
  std::map<std::vector<int>, std::pair<UExp, Rational>> pending;
  auto add = [&](const UExp& e, const Rational& c) {
    if (c == 0) return;
    auto key = dense_key(e, g);
    auto it = pending.find(key);
    if (it == pending.end()) {
      pending.emplace(std::move(key), std::make_pair(e, c));
    } else {
      it->second.second += c;
      if (it->second.second == 0) pending.erase(it);
    }
  };
  for (const auto& [m, c] : x.terms()) add(to_uexp(m, g), c);

  Poly out(g);
  while (!pending.empty()) {
    auto top = std::prev(pending.end());
    const std::vector<int> key = top->first;
    UExp e = std::move(top->second.first);
    Rational c = std::move(top->second.second);
    pending.erase(top);

    int square = 0;
    for (int n = g + 2; n <= 2 * g + 1; ++n) {
      if (e[n - 2] >= 2) {
        square = n;
        break;
      }
    }
    if (square == 0) {
      out.add_term(from_uexp(e), c);
      continue;
    }
    if (trace) trace->steps.push_back({from_uexp(e), square});
    UExp rest = e;
    rest[square - 2] -= 2;
    for (const auto& [t, tc] : rules.rules.at(square)) {
      UExp next = rest;
      for (std::size_t i = 0; i < next.size(); ++i) next[i] += t[i];
      if (!(dense_key(next, g) < key))
        throw StructuralError("rewrite step did not decrease the monomial order");
      add(next, c * tc);
    }
  }
  return out;
}

Poly eliminate_c_and_f(const Poly& x, const ReductionSystem& sys) {
  Poly y = x;
  if (y.uses_kind(GenKind::F)) {
    std::map<GenId, Poly> f_images;
    for (int k = 1; k <= 2 * sys.g + 1; ++k) f_images.emplace(gen_f(k), sys.det[k - 1]);
    y = substitute(y, f_images);
  }
  if (y.uses_kind(GenKind::C)) {
    std::map<GenId, Poly> c_images;
    for (int k = 1; k <= sys.g + 1; ++k) c_images.emplace(gen_c(k), sys.c_subst[k - 1]);
    y = substitute(y, c_images);
  }
  return y;
}

}  // namespace

ReductionSystem build_reduction_system(int g, std::vector<Rational> f0) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  if (f0.empty()) f0.assign(2 * g + 1, Rational(0));
  if (static_cast<int>(f0.size()) != 2 * g + 1)
    throw InvalidParameter("f0 needs 2g+1 entries, got " + std::to_string(f0.size()));

  ReductionSystem sys;
  sys.g = g;
  sys.f0 = std::move(f0);
  sys.det = det_coefficients(g);

  // c_k + (terms in b, a and c_j with j < k) = f0_k, solved for increasing k.
  std::map<GenId, Poly> solved;
  for (int k = 1; k <= g + 1; ++k) {
    const Poly ck = Poly::generator(g, gen_c(k));
    Poly rest = sys.det[k - 1] - ck;
    if (rest.partial(gen_c(k)) != Poly(g))
      throw StructuralError("c_" + std::to_string(k) + " does not enter linearly");
    Poly value = Poly::constant(g, sys.f0[k - 1]) - substitute(rest, solved);
    if (value.uses_kind(GenKind::C)) throw StructuralError("c elimination is not triangular");
    solved.emplace(gen_c(k), value);
    sys.c_subst.push_back(std::move(value));
  }

  // u_{k/2}^2 from the remaining equations, k = g+2..2g+1.
  for (int k = g + 2; k <= 2 * g + 1; ++k) {
    Poly eq = substitute(sys.det[k - 1], solved) - Poly::constant(g, sys.f0[k - 1]);
    const Monomial square = Monomial::of(u_generator(k), 2);
    const Rational lead = eq.coeff(square);
    if (lead == 0)
      throw StructuralError("equation " + std::to_string(k) + " does not contain the square of " +
                            u_generator(k).token());
    Poly rhs = eq - Poly::monomial(g, square, lead);
    rhs *= Rational(-1) / lead;
    const auto square_key = order_key(square, g);
    for (const auto& [m, c] : rhs.terms()) {
      if (!(order_key(m, g) < square_key))
        throw StructuralError("square rule for " + u_generator(k).token() +
                              " has a term not below its left side: " + m.to_string());
      sys.max_high_factors = std::max(sys.max_high_factors, high_factor_count(m, g));
    }
    sys.square_rules.emplace(k, std::move(rhs));
  }
  return sys;
}

bool is_basis_monomial(const Monomial& m, int g) {
  for (const auto& [x, p] : m.factors()) {
    const int n = u_index(x);
    if (n == 0) return false;
    if (is_high_u(n, g) && p > 1) return false;
  }
  return true;
}

bool is_normal(const Poly& x) {
  return std::all_of(x.terms().begin(), x.terms().end(),
                     [&](const auto& t) { return is_basis_monomial(t.first, x.genus()); });
}

Poly normal_form(const Poly& x, const ReductionSystem& sys, ReductionTrace* trace) {
  if (x.genus() != sys.g)
    throw GenusMismatch("polynomial of genus " + std::to_string(x.genus()) +
                        " reduced with a genus " + std::to_string(sys.g) + " system");
  const DenseRules rules = densify(sys);
  return reduce_ab(eliminate_c_and_f(x, sys), sys, rules, trace);
}

Poly Reducer::operator()(const Poly& x) {
  if (x.genus() != sys_.g) throw GenusMismatch("polynomial reduced with a system of another genus");
  Poly out(sys_.g);
  for (const auto& [m, c] : x.terms()) {
    auto it = cache_.find(m);
    if (it == cache_.end())
      it = cache_.emplace(m, normal_form(Poly::monomial(sys_.g, m), sys_)).first;
    for (const auto& [mm, cc] : it->second.terms()) out.add_term(mm, c * cc);
  }
  return out;
}

std::vector<Monomial> basis_enum(int g, int doubled_degree) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  std::vector<Monomial> out;
  if (doubled_degree < 0) return out;
  UExp e(2 * g, 0);
  // Depth-first over n = 2..2g+1; high n take exponent 0 or 1.
  auto rec = [&](auto&& self, int n, int remaining) -> void {
    if (n > 2 * g + 1) {
      if (remaining == 0) out.push_back(from_uexp(e));
      return;
    }
    const int cap = is_high_u(n, g) ? 1 : remaining / n;
    for (int p = 0; p <= cap && p * n <= remaining; ++p) {
      e[n - 2] = p;
      self(self, n + 1, remaining - p * n);
    }
    e[n - 2] = 0;
  };
  rec(rec, 2, doubled_degree);
  std::sort(out.begin(), out.end(), [g](const Monomial& l, const Monomial& r) {
    return order_key(l, g) < order_key(r, g);
  });
  return out;
}

bool GrCompatibilityReport::all_passed() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const auto& p) { return p.passed; });
}

nlohmann::json GrCompatibilityReport::to_json() const {
  nlohmann::json f = nlohmann::json::array();
  for (const auto& r : f0) f.push_back(to_string(r));
  nlohmann::json list = nlohmann::json::array();
  for (const auto& p : pairs)
    list.push_back({{"x", p.x.to_string()}, {"y", p.y.to_string()}, {"passed", p.passed}});
  return {{"g", g}, {"f0", f}, {"pairs", list}, {"all_passed", all_passed()}};
}

GrCompatibilityReport gr_compatibility_check(int g, const std::vector<Rational>& f0,
                                             int max_doubled_degree, int pair_count,
                                             std::uint64_t seed) {
  const ReductionSystem graded = build_reduction_system(g);
  const ReductionSystem filtered = build_reduction_system(g, f0);
  GrCompatibilityReport report;
  report.g = g;
  report.f0 = filtered.f0;
  std::mt19937_64 rng(seed);
  std::map<int, std::vector<Monomial>> bases;
  auto basis = [&](int d) -> const std::vector<Monomial>& {
    auto it = bases.find(d);
    if (it == bases.end()) it = bases.emplace(d, basis_enum(g, d)).first;
    return it->second;
  };
  while (static_cast<int>(report.pairs.size()) < pair_count) {
    const int total = std::uniform_int_distribution<int>(0, max_doubled_degree)(rng);
    const int dx = std::uniform_int_distribution<int>(0, total)(rng);
    const auto& bx = basis(dx);
    const auto& by = basis(total - dx);
    if (bx.empty() || by.empty()) continue;
    const Monomial& x = bx[std::uniform_int_distribution<std::size_t>(0, bx.size() - 1)(rng)];
    const Monomial& y = by[std::uniform_int_distribution<std::size_t>(0, by.size() - 1)(rng)];
    const Poly product = Poly::monomial(g, x * y);
    const Poly top = normal_form(product, filtered).homogeneous_part(total);
    report.pairs.push_back({x, y, top == normal_form(product, graded)});
  }
  return report;
}

}  // namespace hypjac
