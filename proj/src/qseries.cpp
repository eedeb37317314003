#include "hypjac/qseries.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "hypjac/errors.hpp"

namespace hypjac {

namespace {

using Poly1 = std::vector<Integer>;  // dense, ascending powers of q

Poly1 poly_mul(const Poly1& a, const Poly1& b) {
  if (a.empty() || b.empty()) return {};
  Poly1 r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

void strip(Poly1& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact long division; the divisor's leading coefficient must be +-1.
Poly1 poly_exact_div(Poly1 num, Poly1 den) {
  strip(num);
  strip(den);
  if (den.empty()) throw NotExact("division by the zero polynomial");
  const Integer lead = den.back();
  if (lead != 1 && lead != -1) throw NotExact("divisor is not monic up to sign");
  if (num.size() < den.size()) {
    if (!num.empty()) throw NotExact("nonzero remainder in polynomial division");
    return {};
  }
  Poly1 quot(num.size() - den.size() + 1, Integer(0));
  for (std::size_t i = quot.size(); i-- > 0;) {
    Integer c = num[i + den.size() - 1] * lead;
    quot[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  strip(num);
  if (!num.empty()) throw NotExact("nonzero remainder in polynomial division");
  return quot;
}

Poly1 q_factorial_poly(int k) {
  Poly1 r{Integer(1)};
  for (int i = 1; i <= k; ++i) {
    Poly1 factor(i + 1, Integer(0));
    factor[0] = 1;
    factor[i] = -1;
    r = poly_mul(r, factor);
  }
  return r;
}

int sign_of_power(int g) { return g % 2 == 0 ? 1 : -1; }

}  // namespace

QSeries::QSeries(int trunc, int floor) : trunc_(trunc), floor_(floor) {
  if (trunc < floor) throw InvalidParameter("series window lies below the exponent floor");
}

QSeries QSeries::monomial(int exponent, const Integer& coeff, int trunc, int floor) {
  QSeries r(trunc, floor);
  r.set(exponent, coeff);
  return r;
}

QSeries QSeries::from_coefficients(const std::vector<Integer>& coeffs, int shift, int step,
                                   int trunc, int floor) {
  QSeries r(trunc, floor);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    r.set(shift + step * static_cast<int>(i), coeffs[i]);
  return r;
}

void QSeries::check_floor(int exponent) const {
  if (exponent < floor_)
    throw InvalidParameter("exponent " + std::to_string(exponent) + " below floor " +
                           std::to_string(floor_));
}

void QSeries::set(int exponent, Integer value) {
  if (exponent >= trunc_) return;
  if (value == 0) {
    terms_.erase(exponent);
    return;
  }
  check_floor(exponent);
  terms_[exponent] = std::move(value);
}

int QSeries::valuation() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }

Integer QSeries::coeff(int n) const {
  if (n >= trunc_)
    throw InvalidParameter("coefficient of s^" + std::to_string(n) + " lies beyond the window s^" +
                           std::to_string(trunc_));
  auto it = terms_.find(n);
  return it == terms_.end() ? Integer(0) : it->second;
}

QSeries QSeries::truncated(int trunc) const {
  QSeries r(std::min(trunc, trunc_), floor_);
  for (const auto& [e, c] : terms_) {
    if (e >= r.trunc_) break;
    r.terms_.emplace(e, c);
  }
  return r;
}

QSeries QSeries::shifted(int n) const {
  QSeries r(trunc_ + n, floor_);
  for (const auto& [e, c] : terms_) {
    r.check_floor(e + n);
    r.terms_.emplace(e + n, c);
  }
  return r;
}

QSeries QSeries::scaled(const Integer& c) const {
  QSeries r(trunc_, floor_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  QSeries r(std::min(a.trunc_, b.trunc_), std::max(a.floor_, b.floor_));
  for (const auto& [e, c] : a.terms_)
    if (e < r.trunc_) r.set(e, c);
  for (const auto& [e, c] : b.terms_)
    if (e < r.trunc_) r.set(e, r.coeff(e) + c);
  return r;
}

QSeries operator-(const QSeries& a) { return a.scaled(Integer(-1)); }

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  const long long t1 = static_cast<long long>(a.trunc_) + b.valuation();
  const long long t2 = static_cast<long long>(b.trunc_) + a.valuation();
  const int trunc = static_cast<int>(std::min(t1, t2));
  QSeries r(trunc, std::max(a.floor_, b.floor_));
  std::map<int, Integer> acc;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      if (ea + eb >= trunc) break;
      acc[ea + eb] += ca * cb;
    }
  }
  for (auto& [e, c] : acc) r.set(e, std::move(c));
  return r;
}

QSeries QSeries::divided_by(const QSeries& d) const {
  if (d.is_zero()) throw NotExact("division by a zero series");
  const int vd = d.valuation();
  const Integer lead = d.terms_.begin()->second;
  if (lead != 1 && lead != -1) throw NotExact("lowest coefficient of the divisor is not a unit");
  const int va = valuation();
  const int trunc = std::min(trunc_ - vd, d.trunc_ - 2 * vd + va);
  QSeries r(trunc, std::max(floor_, d.floor_));
  if (is_zero()) return r;
  // Long division on the normalized divisor d / s^vd.
  std::vector<std::pair<int, Integer>> tail;
  for (const auto& [e, c] : d.terms_)
    if (e != vd) tail.emplace_back(e - vd, c);
  std::map<int, Integer> quot;
  for (int n = va - vd; n < trunc; ++n) {
    Integer acc = coeff(n + vd);
    for (const auto& [m, c] : tail) {
      auto it = quot.find(n - m);
      if (it != quot.end()) acc -= c * it->second;
    }
    acc *= lead;
    if (acc != 0) quot.emplace(n, std::move(acc));
  }
  for (auto& [e, c] : quot) r.set(e, std::move(c));
  return r;
}

bool QSeries::agrees_with(const QSeries& other) const {
  const int t = std::min(trunc_, other.trunc_);
  auto ia = terms_.begin();
  auto ib = other.terms_.begin();
  while (true) {
    const bool ea = ia == terms_.end() || ia->first >= t;
    const bool eb = ib == other.terms_.end() || ib->first >= t;
    if (ea || eb) return ea && eb;
    if (ia->first != ib->first || ia->second != ib->second) return false;
    ++ia;
    ++ib;
  }
}

namespace {

std::string q_power(int doubled) {
  if (doubled % 2 == 0) return "q^" + std::to_string(doubled / 2);
  return "q^" + std::to_string(doubled) + "/2";
}

}  // namespace

std::string QSeries::to_text() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    os << mag << "*s^" << e << " [" << q_power(e) << "]";
  }
  if (first) os << "0";
  os << " + O(s^" << trunc_ << ")";
  return os.str();
}

nlohmann::json QSeries::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : terms_) terms.push_back(nlohmann::json::array({e, c.str()}));
  return {{"trunc", trunc_}, {"terms", terms}};
}

QSeries QSeries::from_json(const nlohmann::json& j) {
  QSeries r(j.at("trunc").get<int>());
  for (const auto& t : j.at("terms")) {
    int e = t.at(0).get<int>();
    if (e >= r.trunc_) throw InvalidParameter("term beyond the series window");
    r.set(e, Integer(t.at(1).get<std::string>()));
  }
  return r;
}

Integer evaluate_at_one(const QSeries& x) {
  Integer s = 0;
  for (const auto& [e, c] : x.terms()) s += c;
  return s;
}

QSeries bracket(int doubled, int trunc) {
  QSeries r = QSeries::monomial(0, Integer(1), trunc);
  return r - QSeries::monomial(doubled, Integer(1), trunc);
}

QSeries q_factorial(int k, int trunc) {
  return QSeries::from_coefficients(q_factorial_poly(k), 0, 2, trunc);
}

QSeries half_factorial(int k, int trunc) {
  QSeries r = QSeries::monomial(0, Integer(1), trunc);
  for (int i = 0; i <= k; ++i) r = r * bracket(2 * i + 1, trunc);
  return r;
}

QSeries q_binomial(int n, int j, int trunc) {
  if (trunc < 1) throw InvalidParameter("trunc must be at least 1");
  if (j < 0 || n < 0 || j > n) return QSeries(trunc);
  Poly1 quot = poly_exact_div(q_factorial_poly(n),
                              poly_mul(q_factorial_poly(j), q_factorial_poly(n - j)));
  return QSeries::from_coefficients(quot, 0, 2, trunc);
}

QSeries ch_A0(int g, int trunc) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  QSeries r = QSeries::monomial(0, Integer(1), trunc);
  for (int k = 1; k <= g; ++k)
    r = r * (QSeries::monomial(0, Integer(1), trunc) +
             QSeries::monomial(g + 1 + k, Integer(1), trunc));
  for (int j = 1; j <= g; ++j) r = r.divided_by(bracket(1 + j, trunc));
  return r;
}

RingCharacters ring_characters(int g, int trunc) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  if (trunc < 1) throw InvalidParameter("trunc must be at least 1");
  QSeries one = QSeries::monomial(0, Integer(1), trunc);
  QSeries ch_a = bracket(1, trunc).divided_by(half_factorial(g, trunc) * q_factorial(g, trunc) *
                                              q_factorial(g + 1, trunc));
  QSeries ch_f = one.divided_by(q_factorial(2 * g + 1, trunc));
  QSeries ch_a0 = ch_A0(g, trunc);
  const bool ok = (ch_a0 * ch_f).truncated(trunc) == ch_a.truncated(trunc);
  return {ch_a.truncated(trunc), ch_f.truncated(trunc), ch_a0.truncated(trunc), ok};
}

QSeries r_series(int g, int k, int trunc) {
  if (k < 0 || k > 2 * g) return QSeries(trunc);
  // Computed on a wider window so the Laurent shift keeps s^trunc exact.
  const int wide = trunc + g * g + 1;
  return q_binomial(2 * g, k, wide).shifted(k * (k - 2 * g)).truncated(trunc);
}

ComplexCharacters complex_characters(int g, int k, int trunc) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  if (k < 0 || k > g) throw InvalidParameter("cochain degree k must satisfy 0 <= k <= g");
  if (trunc < 1) throw InvalidParameter("trunc must be at least 1");
  const int wide = trunc + g * g + 1;
  const QSeries a0 = ch_A0(g, wide);
  const Integer sign = sign_of_power(g);

  auto cochain = [&](int kk) {
    const int j = g - kk;
    return q_binomial(g, j, wide).shifted(j * j - g * g) * a0;
  };

  QSeries chi(wide);
  for (int kk = 0; kk <= g; ++kk) {
    QSeries c = cochain(kk);
    chi = kk % 2 == 0 ? chi + c : chi - c;
  }
  QSeries closed = (half_factorial(g - 1, wide) * a0).shifted(-g * g).scaled(sign);
  QSeries ratio = (q_factorial(2 * g + 1, wide) * bracket(1, wide))
                      .divided_by(bracket(2 * g + 1, wide) * q_factorial(g, wide) *
                                  q_factorial(g + 1, wide))
                      .shifted(-g * g)
                      .scaled(sign);

  auto w = [&](int kk) { return r_series(g, kk, trunc) - r_series(g, kk - 2, trunc); };
  QSeries alt(trunc);
  for (int kk = 0; kk <= g; ++kk) alt = kk % 2 == 0 ? alt + w(kk) : alt - w(kk);
  QSeries top = (r_series(g, g, trunc) - r_series(g, g - 1, trunc)).scaled(sign);

  ComplexCharacters out{cochain(k).truncated(trunc),
                        chi.truncated(trunc),
                        closed.truncated(trunc),
                        ratio.truncated(trunc),
                        r_series(g, k, trunc),
                        w(k),
                        alt,
                        false,
                        false};
  out.chi_agree = out.chi_q == out.chi_q_closed && out.chi_q == out.chi_q_ratio;
  out.telescoping = out.w_alternating == top && out.w_alternating == out.chi_q;
  return out;
}

Integer euler_limit(int g) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  Integer catalan = factorial(2 * g) / (factorial(g) * factorial(g + 1));
  return sign_of_power(g) * catalan;
}

Rational euler_limit_from_product(int g) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  // [2g+1]! [1/2] / ([g+1/2] [g]! [g+1]!) with every factor (1 - s^m) -> m.
  std::vector<int> num{1};
  std::vector<int> den{2 * g + 1};
  for (int i = 1; i <= 2 * g + 1; ++i) num.push_back(2 * i);
  for (int i = 1; i <= g; ++i) den.push_back(2 * i);
  for (int i = 1; i <= g + 1; ++i) den.push_back(2 * i);
  if (num.size() != den.size()) throw StructuralError("bracket counts differ; limit diverges");
  Rational r = sign_of_power(g);
  for (int m : num) r *= m;
  for (int m : den) r /= m;
  return r;
}

}  // namespace hypjac
