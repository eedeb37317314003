#include "hypjac/symplectic.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "hypjac/errors.hpp"

namespace hypjac {

// ------------------------------------------------------------------- space

SympSpace::SympSpace(int g) : g_(g) {
  if (g < 1 || g > 15) throw InvalidParameter("genus must be between 1 and 15");
}

int SympSpace::label_degree(int label) const {
  return label < g_ ? -(2 * label + 1) : 2 * (label - g_) + 1;
}

int SympSpace::pairing(int a, int b) const {
  if (a < g_ && b == a + g_) return 1;
  if (b < g_ && a == b + g_) return -1;
  return 0;
}

std::string SympSpace::label_name(int label) const {
  return label < g_ ? "v" + std::to_string(label + 1) : "xi" + std::to_string(label - g_ + 1);
}

int SympSpace::degree(WedgeMask m) const {
  int d = 0;
  for (int l = 0; l < dim(); ++l)
    if (m >> l & 1u) d += label_degree(l);
  return d;
}

std::vector<WedgeMask> SympSpace::monomials(int k) const {
  std::vector<WedgeMask> out;
  for (WedgeMask m = 0; m < (WedgeMask(1) << dim()); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

int wedge_sign(WedgeMask a, WedgeMask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (WedgeMask x = a; x; x &= x - 1) {
    const int l = std::countr_zero(x);
    inversions += std::popcount(b & ((WedgeMask(1) << l) - 1));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

Wedge wedge(const Wedge& x, const Wedge& y) {
  Wedge out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      const int s = wedge_sign(a, b);
      if (s == 0) continue;
      Rational& slot = out[a | b];
      slot += ca * cb * s;
      if (slot == 0) out.erase(a | b);
    }
  return out;
}

Wedge omega(const SympSpace& v) {
  Wedge out;
  for (int i = 0; i < v.genus(); ++i) out[(WedgeMask(1) << i) | (WedgeMask(1) << (i + v.genus()))] = 1;
  return out;
}

Wedge phi(const SympSpace& v, const Wedge& x) {
  Wedge out;
  for (const auto& [m, c] : x) {
    std::vector<int> labels;
    for (int l = 0; l < v.dim(); ++l)
      if (m >> l & 1u) labels.push_back(l);
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j) {
        const int p = v.pairing(labels[i], labels[j]);
        if (p == 0) continue;
        // 1-based positions i+1, j+1: sign (-1)^{(i+1)+(j+1)-1}
        const int sign = (i + j + 1) % 2 == 0 ? 1 : -1;
        const WedgeMask rest = m & ~(WedgeMask(1) << labels[i]) & ~(WedgeMask(1) << labels[j]);
        Rational& slot = out[rest];
        slot += c * (sign * p);
        if (slot == 0) out.erase(rest);
      }
  }
  return out;
}

std::string to_string(const SympSpace& v, const Wedge& x) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : x) {
    std::string mono;
    for (int l = 0; l < v.dim(); ++l)
      if (m >> l & 1u) mono += (mono.empty() ? "" : "^") + v.label_name(l);
    if (mono.empty()) mono = "1";
    const bool neg = c < 0;
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    const Rational a = neg ? Rational(-c) : c;
    out += a == 1 ? mono : to_string(a) + "*" + mono;
  }
  return out;
}

Matrix map_matrix(const SympSpace& v, int k, int m, const std::function<Wedge(WedgeMask)>& f) {
  const auto src = v.monomials(k), dst = v.monomials(m);
  std::map<WedgeMask, std::size_t> row;
  for (std::size_t i = 0; i < dst.size(); ++i) row.emplace(dst[i], i);
  Matrix out(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c)
    for (const auto& [mask, coef] : f(src[c])) out(row.at(mask), c) = coef;
  return out;
}

// ------------------------------------------------------------------ W^k

WQuotient::WQuotient(const SympSpace& v, int k) : v_(v), k_(k) {
  order_ = v.monomials(k);
  const WedgeMask pair = (WedgeMask(1) << (v.genus() - 1)) | (WedgeMask(1) << (2 * v.genus() - 1));
  std::stable_sort(order_.begin(), order_.end(), [&](WedgeMask a, WedgeMask b) {
    return (a & pair) == pair && (b & pair) != pair;
  });
  for (std::size_t i = 0; i < order_.size(); ++i) slot_.emplace(order_[i], i);
  const std::size_t n = order_.size();
  std::vector<bool> is_pivot(n, false);
  if (k >= 2) {
    const Wedge w = omega(v);
    for (WedgeMask u : v.monomials(k - 2)) {
      std::vector<Rational> row(n);
      for (const auto& [mask, c] : wedge(w, Wedge{{u, Rational(1)}})) row[slot_.at(mask)] = c;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational f = row[pivots_[r]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (rows_[r][j] != 0) row[j] -= f * rows_[r][j];
      }
      std::size_t p = 0;
      while (p < n && row[p] == 0) ++p;
      if (p == n) continue;
      const Rational inv = 1 / row[p];
      for (auto& x : row) x *= inv;
      for (auto& other : rows_) {
        const Rational f = other[p];
        if (f == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (row[j] != 0) other[j] -= f * row[j];
      }
      rows_.push_back(std::move(row));
      pivots_.push_back(p);
      is_pivot[p] = true;
    }
  }
  image_rank_ = rows_.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!is_pivot[i]) basis_.push_back(order_[i]);
  std::sort(basis_.begin(), basis_.end(), [&](WedgeMask a, WedgeMask b) {
    const int da = v.degree(a), db = v.degree(b);
    return da != db ? da < db : a < b;
  });
  for (std::size_t i = 0; i < basis_.size(); ++i) basis_index_.emplace(basis_[i], i);
}

std::vector<Rational> WQuotient::project(const Wedge& x) const {
  std::vector<Rational> full(order_.size());
  for (const auto& [mask, c] : x) full[slot_.at(mask)] += c;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational f = full[pivots_[r]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < full.size(); ++j)
      if (rows_[r][j] != 0) full[j] -= f * rows_[r][j];
  }
  std::vector<Rational> out(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) out[i] = full[slot_.at(basis_[i])];
  return out;
}

bool WQuotient::in_image(const Wedge& x) const {
  for (const auto& c : project(x))
    if (c != 0) return false;
  return true;
}

QSeries WQuotient::character(int trunc) const {
  QSeries out(trunc);
  for (WedgeMask m : basis_)
    if (v_.degree(m) < trunc) out = out + QSeries::monomial(v_.degree(m), Integer(1), trunc);
  return out;
}

nlohmann::json WkResult::to_json() const {
  return {{"g", g},
          {"k", k},
          {"dim", dim},
          {"character", character.to_json()},
          {"dim_matches", dim_matches},
          {"character_matches", character_matches}};
}

WkResult wk_dims_and_characters(int g, int k, int trunc) {
  if (k < 0 || k > 2 * g) throw InvalidParameter("k must lie in 0..2g");
  const SympSpace v(g);
  const WQuotient w(v, k);
  WkResult r;
  r.g = g;
  r.k = k;
  r.dim = w.basis().size();
  r.character = w.character(trunc);
  Integer expected = binomial(2 * g, k) - binomial(2 * g, k - 2);
  if (expected < 0) expected = 0;
  r.dim_matches = Integer(static_cast<unsigned long>(r.dim)) == expected;
  if (k <= g) {
    r.character_matches = r.character == complex_characters(g, k, trunc).ch_Wk.truncated(trunc);
  } else {
    r.character_matches = r.character.is_zero();
  }
  return r;
}

nlohmann::json PhiReport::to_json() const {
  return {{"g", g},           {"k", k},
          {"rank", rank},     {"kernel_dim", kernel_dim},
          {"surjective", surjective}, {"kernel_matches", kernel_matches}};
}

PhiReport phi_kernel(int g, int k) {
  const SympSpace v(g);
  PhiReport r;
  r.g = g;
  r.k = k;
  const std::size_t n = v.monomials(k).size();
  if (k >= 2) {
    r.rank = rank(map_matrix(v, k, k - 2, [&](WedgeMask m) { return phi(v, Wedge{{m, Rational(1)}}); }));
  }
  r.kernel_dim = n - r.rank;
  r.surjective = Integer(static_cast<unsigned long>(r.rank)) == binomial(2 * g, k - 2);
  r.kernel_matches = Integer(static_cast<unsigned long>(r.kernel_dim)) ==
                     binomial(2 * g, k) - binomial(2 * g, k - 2);
  return r;
}

bool omega_injective(int g, int k) {
  const SympSpace v(g);
  const Wedge w = omega(v);
  const Matrix m = map_matrix(v, k, k + 2, [&](WedgeMask u) { return wedge(w, Wedge{{u, Rational(1)}}); });
  return rank(m) == v.monomials(k).size();
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Pass: return "pass";
    case Tri::Fail: return "fail";
    default: return "inconclusive";
  }
}

// -------------------------------------------------------------- isotropic

nlohmann::json IsotropicReport::to_json() const {
  return {{"g", g},
          {"k", k},
          {"target", target},
          {"span_dim", span_dim},
          {"structured_frames", structured},
          {"random_frames", random_frames},
          {"inside_kernel", inside_kernel},
          {"outcome", to_string(outcome)}};
}

IsotropicReport isotropic_span_check(int g, int k, std::uint64_t seed) {
  if (k < 1 || k > g) throw InvalidParameter("isotropic frames need 1 <= k <= g");
  const SympSpace v(g);
  const int n = v.dim();
  IsotropicReport rep;
  rep.g = g;
  rep.k = k;
  rep.target = phi_kernel(g, k).kernel_dim;
  const auto mons = v.monomials(k);
  std::map<WedgeMask, std::size_t> col;
  for (std::size_t i = 0; i < mons.size(); ++i) col.emplace(mons[i], i);
  IncrementalSpan span(mons.size());

  auto offer = [&](const Wedge& w) {
    if (w.empty()) return;
    if (!phi(v, w).empty()) rep.inside_kernel = false;
    std::vector<Rational> vec(mons.size());
    for (const auto& [m, c] : w) vec[col.at(m)] = c;
    span.add(std::move(vec));
  };

  // Coordinate frames: label sets without a Darboux pair.
  for (WedgeMask m : mons) {
    bool isotropic = true;
    for (int p = 0; p < g; ++p)
      if ((m >> p & 1u) && (m >> (p + g) & 1u)) isotropic = false;
    if (!isotropic) continue;
    ++rep.structured;
    offer(Wedge{{m, Rational(1)}});
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  const std::size_t budget = 10 * rep.target;
  while (span.rank() < rep.target && rep.random_frames < budget) {
    ++rep.random_frames;
    std::vector<std::vector<Rational>> frame;
    for (int i = 0; i < k; ++i) {
      // vectors gamma with gamma o gamma_j = 0 for the earlier frame vectors
      Matrix constraints(frame.size(), n);
      for (std::size_t j = 0; j < frame.size(); ++j)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (v.pairing(a, b) != 0) constraints(j, a) += frame[j][b] * v.pairing(a, b);
      std::vector<std::vector<Rational>> free;
      if (frame.empty()) {
        for (int a = 0; a < n; ++a) {
          std::vector<Rational> e(n);
          e[a] = 1;
          free.push_back(std::move(e));
        }
      } else {
        free = nullspace(constraints);
      }
      std::vector<Rational> gamma(n);
      for (const auto& b : free) {
        const int c = coef(rng);
        for (int a = 0; a < n; ++a) gamma[a] += b[a] * c;
      }
      frame.push_back(std::move(gamma));
    }
    Wedge w{{0, Rational(1)}};
    for (const auto& gamma : frame) {
      Wedge one;
      for (int a = 0; a < n; ++a)
        if (gamma[a] != 0) one[WedgeMask(1) << a] = gamma[a];
      w = wedge(w, one);
    }
    offer(w);
  }
  rep.span_dim = span.rank();
  if (!rep.inside_kernel || rep.span_dim > rep.target) rep.outcome = Tri::Fail;
  else if (rep.span_dim == rep.target) rep.outcome = Tri::Pass;
  else rep.outcome = Tri::Inconclusive;
  return rep;
}

// ------------------------------------------------------------------ Koszul

namespace {

std::vector<std::vector<int>> delta_monomials(int g, int doubled_degree) {
  std::vector<std::vector<int>> out;
  if (doubled_degree < 0) return out;
  std::vector<int> e(g, 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == g) {
      if (left == 0) out.push_back(e);
      return;
    }
    for (int p = 0; p * (2 * j + 1) <= left; ++p) {
      e[j] = p;
      self(self, j + 1, left - p * (2 * j + 1));
    }
    e[j] = 0;
  };
  rec(rec, 0, doubled_degree);
  return out;
}

struct KoszulBasis {
  std::vector<std::pair<std::vector<int>, std::size_t>> elems;  // (Delta exponents, W index)
  std::map<std::pair<std::vector<int>, std::size_t>, std::size_t> index;
};

KoszulBasis koszul_basis(const SympSpace& v, const WQuotient& w, int g, int d) {
  KoszulBasis b;
  for (std::size_t i = 0; i < w.basis().size(); ++i)
    for (auto& mu : delta_monomials(g, d - v.degree(w.basis()[i]))) {
      b.index.emplace(std::make_pair(mu, i), b.elems.size());
      b.elems.emplace_back(std::move(mu), i);
    }
  return b;
}

}  // namespace

nlohmann::json KoszulReport::to_json() const {
  nlohmann::json j;
  j["g"] = g;
  j["window"] = {lo, hi};
  j["well_defined"] = well_defined;
  j["d_squared_zero"] = d_squared_zero;
  j["exact_below_g"] = exact_below_g;
  j["cokernel_matches"] = cokernel_matches;
  j["cokernel_character"] = cokernel_character.to_json();
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells)
    j["cells"].push_back({{"k", c.k},
                          {"deg2", c.deg2},
                          {"dim", c.dim},
                          {"rank_out", c.rank_out},
                          {"rank_in", c.rank_in},
                          {"homology", c.homology}});
  j["passed"] = passed();
  return j;
}

KoszulReport koszul_check(int g, int lo, int hi) {
  if (lo > hi) throw InvalidParameter("window must satisfy lo <= hi");
  if (lo > -g * g)
    throw WindowRefusal("window must start at or below " + std::to_string(-g * g), -g * g, hi);
  const SympSpace v(g);
  std::vector<WQuotient> w;
  for (int k = 0; k <= g + 1; ++k) w.emplace_back(v, k);
  KoszulReport rep;
  rep.g = g;
  rep.lo = lo;
  rep.hi = hi;
  rep.cokernel_character = QSeries(hi + 1);

  // W^{g+1} vanishes, and v_i ^ (omega ^ u) stays in the image of omega ^.
  if (!w[g + 1].basis().empty()) rep.well_defined = false;
  const Wedge om = omega(v);
  for (int k = 2; k <= g; ++k)
    for (WedgeMask u : v.monomials(k - 2))
      for (int i = 0; i < g; ++i) {
        const Wedge x = wedge(Wedge{{WedgeMask(1) << i, Rational(1)}}, wedge(om, Wedge{{u, Rational(1)}}));
        if (!w[k + 1].in_image(x)) rep.well_defined = false;
      }

  // proj(v_i ^ basis element) per k, computed once
  std::vector<std::vector<std::vector<std::vector<Rational>>>> step(g + 1);
  for (int k = 0; k <= g; ++k)
    for (WedgeMask b : w[k].basis()) {
      std::vector<std::vector<Rational>> per_i;
      for (int i = 0; i < g; ++i)
        per_i.push_back(w[k + 1].project(wedge(Wedge{{WedgeMask(1) << i, Rational(1)}}, Wedge{{b, Rational(1)}})));
      step[k].push_back(std::move(per_i));
    }

  const QSeries a0 = ch_A0(g, hi + g * g + 1);
  for (int d = lo; d <= hi; ++d) {
    std::vector<KoszulBasis> bases;
    for (int k = 0; k <= g + 1; ++k) bases.push_back(koszul_basis(v, w[k], g, d));
    std::vector<Matrix> dm;
    for (int k = 0; k <= g; ++k) {
      Matrix m(bases[k + 1].elems.size(), bases[k].elems.size());
      for (std::size_t c = 0; c < bases[k].elems.size(); ++c) {
        const auto& [mu, wi] = bases[k].elems[c];
        for (int i = 0; i < g; ++i) {
          std::vector<int> up = mu;
          ++up[i];
          const auto& coords = step[k][wi][i];
          for (std::size_t t = 0; t < coords.size(); ++t) {
            if (coords[t] == 0) continue;
            m(bases[k + 1].index.at({up, t}), c) += coords[t];
          }
        }
      }
      dm.push_back(std::move(m));
    }
    for (int k = 0; k + 1 <= g; ++k)
      if (!(dm[k + 1] * dm[k]).is_zero()) rep.d_squared_zero = false;
    std::vector<std::size_t> rk(g + 1);
    for (int k = 0; k <= g; ++k) rk[k] = rank(dm[k]);
    for (int k = 0; k <= g; ++k) {
      KoszulCell c;
      c.k = k;
      c.deg2 = d;
      c.dim = bases[k].elems.size();
      c.rank_out = rk[k];
      c.rank_in = k > 0 ? rk[k - 1] : 0;
      c.homology = c.dim - c.rank_out - c.rank_in;
      if (k < g && c.homology != 0) rep.exact_below_g = false;
      if (k == g) {
        if (c.homology > 0)
          rep.cokernel_character =
              rep.cokernel_character + QSeries::monomial(d, Integer(static_cast<unsigned long>(c.homology)), hi + 1);
        if (Integer(static_cast<unsigned long>(c.homology)) != a0.coeff(d + g * g)) rep.cokernel_matches = false;
      }
      rep.cells.push_back(c);
    }
  }
  return rep;
}

// ------------------------------------------- generic abelian subvariety table

nlohmann::json AbelianTable::to_json() const {
  nlohmann::json j;
  j["g"] = g;
  j["defect"] = to_string(defect);
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"k", r.k}, {"generic", to_string(r.generic)}, {"hyperelliptic", to_string(r.hyperelliptic)}});
  return j;
}

AbelianTable generic_abelian_dims(int g) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  AbelianTable t;
  t.g = g;
  const Integer catalan = factorial(2 * g) / (factorial(g) * factorial(g + 1));
  t.defect = factorial(g) - catalan;
  for (int k = 0; k <= 2 * g; ++k) {
    AbelianRow r;
    r.k = k;
    const Integer w = binomial(2 * g, k) - binomial(2 * g, k - 2);
    r.hyperelliptic = k <= g ? w : Integer(0);
    r.generic = k < g ? w : (k == g ? w + t.defect : Integer(0));
    t.rows.push_back(r);
  }
  return t;
}

}  // namespace hypjac
