#include "hypjac/mumford.hpp"

#include <algorithm>
#include <cmath>

#include "hypjac/errors.hpp"

namespace hypjac {

// ------------------------------------------------------------ dense helpers

namespace {

template <class T>
using Dense = std::vector<T>;  // ascending powers of z

template <class T>
Dense<T> dense_mul(const Dense<T>& a, const Dense<T>& b, const T& zero) {
  if (a.empty() || b.empty()) return {};
  Dense<T> r(a.size() + b.size() - 1, zero);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

template <class T>
Dense<T> dense_sub(Dense<T> a, const Dense<T>& b, const T& zero) {
  if (a.size() < b.size()) a.resize(b.size(), zero);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
  return a;
}

template <class T>
T dense_eval(const Dense<T>& p, const T& z, const T& zero) {
  T acc = zero;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

/// Division by a monic polynomial; returns {quotient, remainder}.
template <class T>
std::pair<Dense<T>, Dense<T>> dense_divmod(Dense<T> num, const Dense<T>& monic, const T& zero) {
  const std::size_t n = monic.size() - 1;
  if (num.size() <= n) return {{}, num};
  Dense<T> quot(num.size() - n, zero);
  for (std::size_t i = quot.size(); i-- > 0;) {
    T c = num[i + n];
    quot[i] = c;
    for (std::size_t j = 0; j <= n; ++j) num[i + j] = num[i + j] - c * monic[j];
  }
  num.resize(n);
  return {quot, num};
}

Dense<Rational> with_leading(const std::vector<Rational>& coeffs, bool monic) {
  // coeffs are listed from the second-highest power downwards
  Dense<Rational> out;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out.push_back(*it);
  if (monic) out.push_back(Rational(1));
  return out;
}

std::vector<Rational> parse_list(const nlohmann::json& j) {
  std::vector<Rational> out;
  for (const auto& v : j) {
    if (v.is_string())
      out.push_back(parse_rational(v.get<std::string>()));
    else if (v.is_number_integer())
      out.push_back(Rational(v.get<long long>()));
    else
      throw InvalidParameter("coefficients must be strings or integers");
  }
  return out;
}

nlohmann::json write_list(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

}  // namespace

// -------------------------------------------------------------------- Curve

std::vector<Rational> Curve::dense() const { return with_leading(f, true); }

Rational Curve::operator()(const Rational& z) const {
  return dense_eval(dense(), z, Rational(0));
}

void Curve::validate() const {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  if (static_cast<int>(f.size()) != 2 * g + 1)
    throw InvalidParameter("curve needs 2g+1 coefficients, got " + std::to_string(f.size()));
}

nlohmann::json Curve::to_json() const { return {{"g", g}, {"f", write_list(f)}}; }

Curve Curve::from_json(const nlohmann::json& j) {
  Curve c{j.at("g").get<int>(), parse_list(j.at("f"))};
  c.validate();
  return c;
}

// ------------------------------------------------------------ MumfordTriple

std::vector<Rational> MumfordTriple::a_dense() const { return with_leading(a, false); }
std::vector<Rational> MumfordTriple::b_dense() const { return with_leading(b, true); }
std::vector<Rational> MumfordTriple::c_dense() const { return with_leading(c, true); }

std::vector<Rational> MumfordTriple::determinant() const {
  const Rational zero(0);
  auto aa = dense_mul(a_dense(), a_dense(), zero);
  auto bc = dense_mul(b_dense(), c_dense(), zero);
  auto r = dense_sub(bc, Dense<Rational>(), zero);
  if (r.size() < aa.size()) r.resize(aa.size(), zero);
  for (std::size_t i = 0; i < aa.size(); ++i) r[i] += aa[i];
  return r;
}

bool MumfordTriple::lies_on(const Curve& curve) const {
  return curve.g == g && determinant() == curve.dense();
}

nlohmann::json MumfordTriple::to_json() const {
  return {{"a", write_list(a)}, {"b", write_list(b)}, {"c", write_list(c)}};
}

MumfordTriple MumfordTriple::from_json(int g, const nlohmann::json& j) {
  MumfordTriple t{g, parse_list(j.at("a")), parse_list(j.at("b")), parse_list(j.at("c"))};
  if (static_cast<int>(t.a.size()) != g || static_cast<int>(t.b.size()) != g ||
      static_cast<int>(t.c.size()) != g + 1)
    throw InvalidParameter("triple needs g, g and g+1 coefficients for a, b, c");
  return t;
}

// ---------------------------------------------------------------- symbolic

std::vector<Poly> det_coefficients(int g) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  auto b = [g](int i) {
    return i == 0 ? Poly::constant(g, Rational(1)) : Poly::generator(g, gen_b(i));
  };
  auto c = [g](int i) {
    return i == 0 ? Poly::constant(g, Rational(1)) : Poly::generator(g, gen_c(i));
  };
  std::vector<Poly> out;
  for (int k = 1; k <= 2 * g + 1; ++k) {
    Poly fk(g);
    for (int i = 0; i <= std::min(k, g); ++i) {
      const int j = k - i;
      if (j <= g + 1) fk += b(i) * c(j);
    }
    for (int i = 1; i <= g; ++i) {
      const int j = k - 1 - i;
      if (j >= 1 && j <= g) fk += Poly::generator(g, gen_a(i)) * Poly::generator(g, gen_a(j));
    }
    out.push_back(std::move(fk));
  }
  return out;
}

// ----------------------------------------------------------- exact divisor

MumfordTriple divisor_to_triple(const std::vector<RationalPoint>& points, const Curve& curve) {
  curve.validate();
  const int g = curve.g;
  if (static_cast<int>(points.size()) != g)
    throw InvalidParameter("a divisor needs exactly g points");
  const Rational zero(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].z == points[j].z)
        throw DegenerateDivisor("repeated z = " + to_string(points[i].z));
    if (points[i].y * points[i].y != curve(points[i].z))
      throw OffCurve("point (" + to_string(points[i].z) + ", " + to_string(points[i].y) +
                     ") is not on the curve");
  }
  Dense<Rational> b{Rational(1)};
  for (const auto& p : points) b = dense_mul(b, Dense<Rational>{-p.z, Rational(1)}, zero);
  Dense<Rational> a(g, zero);
  for (std::size_t j = 0; j < points.size(); ++j) {
    Dense<Rational> basis{Rational(1)};
    Rational denom(1);
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (k == j) continue;
      basis = dense_mul(basis, Dense<Rational>{-points[k].z, Rational(1)}, zero);
      denom *= points[j].z - points[k].z;
    }
    for (std::size_t i = 0; i < basis.size(); ++i) a[i] += points[j].y * basis[i] / denom;
  }
  auto [c, rem] = dense_divmod(dense_sub(curve.dense(), dense_mul(a, a, zero), zero), b, zero);
  for (const auto& r : rem)
    if (r != 0) throw Inconsistency("f - a^2 is not divisible by b");

  MumfordTriple t;
  t.g = g;
  for (int i = 1; i <= g; ++i) t.a.push_back(a[g - i]);
  for (int i = 1; i <= g; ++i) t.b.push_back(b[g - i]);
  c.resize(g + 2, zero);
  if (c[g + 1] != 1) throw Inconsistency("c is not monic of degree g+1");
  for (int i = 1; i <= g + 1; ++i) t.c.push_back(c[g + 1 - i]);
  if (!t.lies_on(curve)) throw StructuralError("interpolated triple violates a^2 + bc = f");
  return t;
}

// ------------------------------------------------------------------ numeric

namespace {

Complex cx(const Real& re, const Real& im) { return {re, im}; }
Complex cx_zero() { return {Real(0), Real(0)}; }
Complex operator+(const Complex& x, const Complex& y) { return {x.re + y.re, x.im + y.im}; }
Complex operator-(const Complex& x, const Complex& y) { return {x.re - y.re, x.im - y.im}; }
Complex operator*(const Complex& x, const Complex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
Complex operator/(const Complex& x, const Complex& y) {
  Real d = y.re * y.re + y.im * y.im;
  return {(x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d};
}
Real cabs(const Complex& x) { return sqrt(x.re * x.re + x.im * x.im); }

Real to_real(const Rational& r) {
  return Real(numerator_of(r).str()) / Real(denominator_of(r).str());
}
Complex to_complex(const Rational& r) { return cx(to_real(r), Real(0)); }

Dense<Complex> to_complex(const Dense<Rational>& p) {
  Dense<Complex> out;
  for (const auto& r : p) out.push_back(to_complex(r));
  return out;
}

Complex eval_derivative(const Dense<Complex>& p, const Complex& z) {
  Complex acc = cx_zero();
  for (std::size_t i = p.size(); i-- > 1;) {
    Complex k = cx(Real(static_cast<long>(i)), Real(0));
    acc = acc * z + k * p[i];
  }
  return acc;
}

// Simultaneous (Aberth) iteration on a monic polynomial: the roots are the
// eigenvalues of its companion matrix.
std::vector<Complex> monic_roots(const Dense<Complex>& p, const Real& eps) {
  const std::size_t n = p.size() - 1;
  Real radius(1);
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, Real(1) + cabs(p[i]));
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    Real angle = Real(2) * acos(Real(-1)) * Real(static_cast<long>(k)) /
                     Real(static_cast<long>(n)) +
                 Real("0.4");
    z[k] = cx(radius * cos(angle) * Real("0.5"), radius * sin(angle) * Real("0.5"));
  }
  const Complex zero = cx_zero();
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst(0);
    for (std::size_t k = 0; k < n; ++k) {
      Complex pv = dense_eval(p, z[k], zero);
      Complex dv = eval_derivative(p, z[k]);
      if (cabs(dv) == 0) {
        z[k] = z[k] + cx(eps, eps);
        worst = Real(1);
        continue;
      }
      Complex w = pv / dv;
      Complex s = zero;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        Complex diff = z[k] - z[j];
        if (cabs(diff) == 0) diff = cx(eps, Real(0));
        s = s + cx(Real(1), Real(0)) / diff;
      }
      Complex step = w / (cx(Real(1), Real(0)) - w * s);
      z[k] = z[k] - step;
      worst = std::max(worst, cabs(step) / std::max(Real(1), cabs(z[k])));
    }
    if (worst < eps) break;
  }
  // Newton polish for simple roots.
  for (auto& r : z) {
    for (int i = 0; i < 8; ++i) {
      Complex dv = eval_derivative(p, r);
      if (cabs(dv) == 0) break;
      r = r - dense_eval(p, r, zero) / dv;
    }
  }
  return z;
}

Real relative_tolerance(const NumericOptions& opts) { return Real(opts.tolerance); }

}  // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits_(Real::default_precision()) {
  const unsigned digits = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
  Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits_); }

std::string format_real(const Real& x, int digits) {
  return x.str(digits, std::ios_base::scientific);
}

DivisorResult triple_to_divisor(const MumfordTriple& t, const Curve& curve,
                                const NumericOptions& opts) {
  curve.validate();
  if (t.g != curve.g) throw GenusMismatch("triple and curve have different genus");
  PrecisionScope scope(opts.precision_bits);
  const Real tol = relative_tolerance(opts);
  const Complex zero = cx_zero();

  // The triple should satisfy the determinant identity within tolerance.
  auto det = t.determinant();
  auto fd = curve.dense();
  for (std::size_t i = 0; i < std::max(det.size(), fd.size()); ++i) {
    Rational l = i < det.size() ? det[i] : Rational(0);
    Rational r = i < fd.size() ? fd[i] : Rational(0);
    if (abs(to_real(l - r)) > tol * std::max(Real(1), abs(to_real(r))))
      throw Inconsistency("triple does not satisfy a^2 + bc = f");
  }

  Dense<Complex> b = to_complex(t.b_dense());
  Dense<Complex> a = to_complex(t.a_dense());
  Dense<Complex> f = to_complex(fd);
  std::vector<Complex> roots = monic_roots(b, tol * tol);

  DivisorResult out;
  out.max_curve_residual = Real(0);
  const Real close = sqrt(tol);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    NumericPoint p{roots[i], dense_eval(a, roots[i], zero), false};
    for (std::size_t j = 0; j < roots.size(); ++j)
      if (j != i && cabs(roots[i] - roots[j]) < close * std::max(Real(1), cabs(roots[i])))
        p.repeated = true;
    out.degenerate = out.degenerate || p.repeated;
    Complex resid = p.y * p.y - dense_eval(f, p.z, zero);
    out.max_curve_residual = std::max(out.max_curve_residual, cabs(resid));
    out.points.push_back(std::move(p));
  }
  return out;
}

NumericTriple divisor_to_triple_numeric(const std::vector<NumericPoint>& points,
                                        const Curve& curve, const NumericOptions& opts) {
  curve.validate();
  const int g = curve.g;
  if (static_cast<int>(points.size()) != g)
    throw InvalidParameter("a divisor needs exactly g points");
  PrecisionScope scope(opts.precision_bits);
  const Real tol = relative_tolerance(opts);
  const Complex zero = cx_zero();
  const Complex one = cx(Real(1), Real(0));
  Dense<Complex> f = to_complex(curve.dense());

  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (cabs(points[i].z - points[j].z) < tol)
        throw DegenerateDivisor("repeated z within tolerance");
    Complex fz = dense_eval(f, points[i].z, zero);
    if (cabs(points[i].y * points[i].y - fz) > tol * std::max(Real(1), cabs(fz)))
      throw OffCurve("point is not on the curve within tolerance");
  }

  Dense<Complex> b{one};
  for (const auto& p : points) b = dense_mul(b, Dense<Complex>{zero - p.z, one}, zero);
  Dense<Complex> a(g, zero);
  for (std::size_t j = 0; j < points.size(); ++j) {
    Dense<Complex> basis{one};
    Complex denom = one;
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (k == j) continue;
      basis = dense_mul(basis, Dense<Complex>{zero - points[k].z, one}, zero);
      denom = denom * (points[j].z - points[k].z);
    }
    for (std::size_t i = 0; i < basis.size(); ++i) a[i] = a[i] + points[j].y * basis[i] / denom;
  }
  auto [c, rem] = dense_divmod(dense_sub(f, dense_mul(a, a, zero), zero), b, zero);
  NumericTriple t;
  t.division_residual = Real(0);
  Real scale(1);
  for (const auto& x : f) scale = std::max(scale, cabs(x));
  for (const auto& r : rem) t.division_residual = std::max(t.division_residual, cabs(r));
  if (t.division_residual > tol * scale) throw Inconsistency("f - a^2 is not divisible by b");
  c.resize(g + 2, zero);
  for (int i = 1; i <= g; ++i) t.a.push_back(a[g - i]);
  for (int i = 1; i <= g; ++i) t.b.push_back(b[g - i]);
  for (int i = 1; i <= g + 1; ++i) t.c.push_back(c[g + 1 - i]);
  return t;
}

Real triple_distance(const MumfordTriple& exact, const NumericTriple& numeric) {
  Real worst(0);
  auto cmp = [&](const std::vector<Rational>& e, const std::vector<Complex>& n) {
    if (e.size() != n.size()) throw InvalidParameter("triples of different shape");
    for (std::size_t i = 0; i < e.size(); ++i)
      worst = std::max(worst, cabs(n[i] - to_complex(e[i])));
  };
  cmp(exact.a, numeric.a);
  cmp(exact.b, numeric.b);
  cmp(exact.c, numeric.c);
  return worst;
}

}  // namespace hypjac

namespace hypjac {

RandomDivisor random_divisor(int g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  std::vector<Rational> roots;
  while (static_cast<int>(roots.size()) < g) {
    const Rational r(num(rng), den(rng));
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  MumfordTriple t{g, {}, {}, {}};
  for (int j = 0; j < g; ++j) t.a.emplace_back(num(rng), den(rng));
  std::vector<Rational> bd{Rational(1)};  // descending coefficients of prod (z - r)
  for (const auto& r : roots) {
    std::vector<Rational> next(bd.size() + 1);
    for (std::size_t i = 0; i < bd.size(); ++i) {
      next[i] += bd[i];
      next[i + 1] -= r * bd[i];
    }
    bd = next;
  }
  t.b.assign(bd.begin() + 1, bd.end());
  for (int j = 0; j <= g; ++j) t.c.emplace_back(num(rng), den(rng));
  const auto det = t.determinant();
  Curve curve{g, {}};
  for (int k = 1; k <= 2 * g + 1; ++k) curve.f.push_back(det[2 * g + 1 - k]);
  std::vector<RationalPoint> pts;
  const auto ad = t.a_dense();
  for (const auto& r : roots) {
    Rational y(0), p(1);
    for (const auto& c : ad) {
      y += c * p;
      p *= r;
    }
    pts.push_back({r, y});
  }
  return {curve, pts, t};
}

nlohmann::json RoundTripReport::to_json() const {
  return {{"g", g},
          {"cases", cases},
          {"precision_bits", precision_bits},
          {"exact_ok", exact_ok},
          {"max_error", max_error},
          {"numeric_ok", numeric_ok},
          {"passed", passed()}};
}

RoundTripReport mumford_round_trip(int g, int cases, std::uint64_t seed, unsigned precision_bits) {
  RoundTripReport rep;
  rep.g = g;
  rep.cases = cases;
  rep.precision_bits = precision_bits;
  std::mt19937_64 rng(seed);
  PrecisionScope scope(precision_bits);
  NumericOptions opts;
  opts.precision_bits = precision_bits;
  Real worst(0);
  for (int i = 0; i < cases; ++i) {
    const RandomDivisor rd = random_divisor(g, rng);
    const MumfordTriple t = divisor_to_triple(rd.points, rd.curve);
    if (!(t == rd.triple) || !t.lies_on(rd.curve)) rep.exact_ok = false;
    const DivisorResult d = triple_to_divisor(t, rd.curve, opts);
    if (d.degenerate) rep.exact_ok = false;
    const NumericTriple back = divisor_to_triple_numeric(d.points, rd.curve, opts);
    worst = std::max(worst, triple_distance(t, back));
    // each exact point is recovered by some numeric point
    for (const auto& p : rd.points) {
      Real best(-1);
      for (const auto& q : d.points) {
        const Real e = std::max(cabs(q.z - to_complex(p.z)), cabs(q.y - to_complex(p.y)));
        if (best < 0 || e < best) best = e;
      }
      worst = std::max(worst, best);
    }
  }
  rep.max_error = format_real(worst, 6);
  rep.numeric_ok = worst < Real("1e-20");
  return rep;
}

}  // namespace hypjac
