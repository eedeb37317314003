#include "hypjac/derham.hpp"

#include <algorithm>
#include <sstream>

#include "hypjac/errors.hpp"
#include "hypjac/parallel.hpp"

namespace hypjac {

namespace {

std::vector<std::vector<int>> subsets(int g, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int j = start; j <= g; ++j) {
      cur.push_back(j);
      self(self, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

int wedge_degree(const std::vector<int>& wedge) {
  int d = 0;
  for (int j : wedge) d += 1 - 2 * j;
  return d;
}

// dtau_j ^ dtau_I = sign * dtau_J with J = I + {j} sorted.
int insert_sign(const std::vector<int>& wedge, int j, std::vector<int>& out) {
  int before = 0;
  for (int i : wedge) before += i < j;
  out = wedge;
  out.insert(out.begin() + before, j);
  return before % 2 == 0 ? 1 : -1;
}

std::map<Monomial, std::size_t> index_of(const std::vector<Monomial>& mons) {
  std::map<Monomial, std::size_t> out;
  for (std::size_t i = 0; i < mons.size(); ++i) out.emplace(mons[i], i);
  return out;
}

std::string d_monomial_text(const std::vector<int>& e) {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += "D" + std::to_string(j + 1);
    if (e[j] > 1) out += "^" + std::to_string(e[j]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

// ----------------------------------------------------------------- complex

DeRhamComplex::DeRhamComplex(int g)
    : g_(g), flows_(closed_form_flows(g)), reducer_(build_reduction_system(g)), cache_(g) {}

const Poly& DeRhamComplex::flow_image(int j, const Monomial& m) {
  auto& cache = cache_.at(j - 1);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  Poly img = reducer_(flows_[j - 1].apply(Poly::monomial(g_, m)));
  return cache.emplace(m, std::move(img)).first->second;
}

std::vector<CochainBasisElement> DeRhamComplex::basis(int k, int doubled_degree) const {
  std::vector<CochainBasisElement> out;
  for (const auto& wedge : subsets(g_, k)) {
    const int e = doubled_degree - wedge_degree(wedge);
    if (e < 0) continue;
    for (const auto& m : basis_enum(g_, e)) out.push_back({wedge, m});
  }
  return out;
}

Matrix DeRhamComplex::differential_matrix(int k, int doubled_degree) {
  const auto src = basis(k, doubled_degree), dst = basis(k + 1, doubled_degree);
  std::map<std::pair<std::vector<int>, Monomial>, std::size_t> row_of;
  for (std::size_t r = 0; r < dst.size(); ++r) row_of.emplace(std::make_pair(dst[r].wedge, dst[r].coefficient), r);
  Matrix m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    for (int j = 1; j <= g_; ++j) {
      if (std::find(src[c].wedge.begin(), src[c].wedge.end(), j) != src[c].wedge.end()) continue;
      std::vector<int> target;
      const int sign = insert_sign(src[c].wedge, j, target);
      for (const auto& [mono, coef] : flow_image(j, src[c].coefficient).terms()) {
        auto it = row_of.find({target, mono});
        if (it == row_of.end()) throw StructuralError("flow image left the graded piece");
        m(it->second, c) += coef * sign;
      }
    }
  }
  return m;
}

Cochain DeRhamComplex::differential(const Cochain& x) {
  if (x.g != g_) throw GenusMismatch("cochain genus differs from the complex");
  Cochain out{g_, {}};
  for (const auto& [wedge, coeff] : x.terms) {
    const Poly c = reducer_(coeff);
    for (int j = 1; j <= g_; ++j) {
      if (std::find(wedge.begin(), wedge.end(), j) != wedge.end()) continue;
      std::vector<int> target;
      const int sign = insert_sign(wedge, j, target);
      Poly img(g_);
      for (const auto& [mono, coef] : c.terms()) img += flow_image(j, mono) * (coef * sign);
      if (img.is_zero()) continue;
      auto [it, fresh] = out.terms.try_emplace(target, img);
      if (!fresh) {
        it->second += img;
        if (it->second.is_zero()) out.terms.erase(it);
      }
    }
  }
  return out;
}

// --------------------------------------------------------------- cohomology

Window required_window(int g) { return {-g * g, g * g + kGuardBand}; }

std::vector<std::size_t> CohomologyTable::total_dims() const {
  std::vector<std::size_t> out(g + 1, 0);
  for (const auto& c : cells) out[c.k] += c.dim_h;
  return out;
}

QSeries CohomologyTable::character(int k) const {
  QSeries out(window.hi + 1);
  for (const auto& c : cells)
    if (c.k == k && c.dim_h > 0)
      out = out + QSeries::monomial(c.deg2, Integer(static_cast<unsigned long>(c.dim_h)), window.hi + 1);
  return out;
}

bool CohomologyTable::matches_prediction() const {
  for (const auto& c : cells)
    if (Integer(static_cast<unsigned long>(c.dim_h)) != c.predicted) return false;
  return true;
}

bool CohomologyTable::guard_band_clean() const {
  for (const auto& c : cells)
    if (c.deg2 > g * g && c.dim_h != 0) return false;
  return true;
}

nlohmann::json CohomologyTable::to_json() const {
  nlohmann::json j;
  j["g"] = g;
  j["window"] = {window.lo, window.hi};
  j["restricted"] = restricted;
  j["d_squared_zero"] = d_squared_zero;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells)
    j["cells"].push_back({{"k", c.k},
                          {"deg2", c.deg2},
                          {"dimC", c.dim_c},
                          {"rank_out", c.rank_out},
                          {"rank_in", c.rank_in},
                          {"dimH", c.dim_h},
                          {"predicted", to_string(c.predicted)}});
  j["dims"] = total_dims();
  nlohmann::json chars = nlohmann::json::array();
  for (int k = 0; k <= g; ++k) chars.push_back(character(k).to_json());
  j["characters"] = chars;
  j["matches_prediction"] = matches_prediction();
  j["guard_band_clean"] = guard_band_clean();
  return j;
}

std::string CohomologyTable::to_csv() const {
  std::ostringstream os;
  os << "k,deg2,dimC,rank_out,rank_in,dimH,predicted\n";
  for (const auto& c : cells)
    os << c.k << ',' << c.deg2 << ',' << c.dim_c << ',' << c.rank_out << ',' << c.rank_in << ','
       << c.dim_h << ',' << to_string(c.predicted) << '\n';
  return os.str();
}

CohomologyTable cohomology_dims(int g, Window window, bool allow_partial) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  if (window.lo > window.hi) throw InvalidParameter("window must satisfy lo <= hi");
  const Window need = required_window(g);
  const bool covers = window.lo <= need.lo && window.hi >= need.hi;
  if (!covers && !allow_partial)
    throw WindowRefusal("window " + std::to_string(window.lo) + ":" + std::to_string(window.hi) +
                            " does not cover the predicted support plus guard band; need " +
                            std::to_string(need.lo) + ":" + std::to_string(need.hi),
                        need.lo, need.hi);
  CohomologyTable table;
  table.g = g;
  table.window = window;
  table.restricted = !covers;

  DeRhamComplex cx(g);
  const int nd = window.hi - window.lo + 1;
  // d_k at degree d for k = 0..g-1, assembled serially (the flow cache is shared).
  std::vector<Matrix> mats(static_cast<std::size_t>(g * nd));
  for (int k = 0; k < g; ++k)
    for (int i = 0; i < nd; ++i) mats[k * nd + i] = cx.differential_matrix(k, window.lo + i);
  std::vector<std::size_t> ranks(mats.size());
  std::vector<char> dd_zero(mats.size(), 1);
  parallel_for(mats.size(), [&](std::size_t idx) {
    ranks[idx] = rank(mats[idx]);
    const std::size_t k = idx / nd;
    if (k + 1 < static_cast<std::size_t>(g)) dd_zero[idx] = (mats[idx + nd] * mats[idx]).is_zero();
  });
  for (char z : dd_zero) table.d_squared_zero = table.d_squared_zero && z;

  for (int k = 0; k <= g; ++k) {
    const QSeries predicted = complex_characters(g, k, window.hi + 1).ch_Wk;
    for (int i = 0; i < nd; ++i) {
      const int d = window.lo + i;
      CohomologyCell c;
      c.k = k;
      c.deg2 = d;
      c.dim_c = cx.basis(k, d).size();
      c.rank_out = k < g ? ranks[k * nd + i] : 0;
      c.rank_in = k > 0 ? ranks[(k - 1) * nd + i] : 0;
      c.dim_h = c.dim_c - c.rank_out - c.rank_in;
      c.predicted = d >= QSeries::kDefaultFloor ? predicted.coeff(d) : Integer(0);
      table.cells.push_back(c);
    }
  }
  return table;
}

QSeries euler_from_ranks(const CohomologyTable& table) {
  QSeries out(table.window.hi + 1);
  for (int k = 0; k <= table.g; ++k) {
    const QSeries ch = table.character(k);
    out = k % 2 == 0 ? out + ch : out - ch;
  }
  return out;
}

bool euler_matches(const CohomologyTable& table) {
  const QSeries from_ranks = euler_from_ranks(table);
  const QSeries chi = complex_characters(table.g, 0, table.window.hi + 1).chi_q;
  std::map<int, long long> cochain_sum;
  for (const auto& c : table.cells)
    cochain_sum[c.deg2] += (c.k % 2 == 0 ? 1 : -1) * static_cast<long long>(c.dim_c);
  for (int d = table.window.lo; d <= table.window.hi; ++d) {
    if (from_ranks.coeff(d) != chi.coeff(d)) return false;
    if (from_ranks.coeff(d) != cochain_sum[d]) return false;
  }
  return true;
}

// ------------------------------------------------------------------- descent

std::vector<HgRepresentative> hg_representatives(DeRhamComplex& cx, int max_deg2) {
  const int g = cx.genus();
  std::vector<HgRepresentative> reps;
  for (int d = -g * g; d <= max_deg2; ++d) {
    const auto mons = basis_enum(g, d + g * g);
    if (mons.empty()) continue;
    const Matrix img = cx.differential_matrix(g - 1, d);
    IncrementalSpan span(mons.size());
    for (std::size_t c = 0; c < img.cols(); ++c) {
      std::vector<Rational> v(mons.size());
      for (std::size_t r = 0; r < mons.size(); ++r) v[r] = img(r, c);
      span.add(std::move(v));
    }
    for (std::size_t i = 0; i < mons.size(); ++i) {
      std::vector<Rational> e(mons.size());
      e[i] = 1;
      if (span.add(std::move(e))) reps.push_back({mons[i], d});
    }
  }
  return reps;
}

std::vector<std::vector<int>> d_monomials(int g, int doubled_degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(g, 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == g) {
      if (left == 0) out.push_back(e);
      return;
    }
    const int w = 2 * j + 1;
    for (int p = 0; p * w <= left; ++p) {
      e[j] = p;
      self(self, j + 1, left - p * w);
    }
    e[j] = 0;
  };
  if (doubled_degree >= 0) rec(rec, 0, doubled_degree);
  return out;
}

DescentSolver::DescentSolver(DeRhamComplex& cx, std::vector<HgRepresentative> reps)
    : cx_(cx), reps_(std::move(reps)) {}

const Poly& DescentSolver::descendant(std::size_t rep, const std::vector<int>& exponents) {
  auto key = std::make_pair(rep, exponents);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const int g = cx_.genus();
  Poly value(g);
  const auto first = std::find_if(exponents.begin(), exponents.end(), [](int e) { return e > 0; });
  if (first == exponents.end()) {
    value = Poly::monomial(g, reps_.at(rep).coefficient);
  } else {
    const int j = static_cast<int>(first - exponents.begin()) + 1;
    std::vector<int> prev = exponents;
    --prev[j - 1];
    const Poly inner = descendant(rep, prev);
    for (const auto& [m, c] : inner.terms()) value += cx_.flow_image(j, m) * c;
  }
  return cache_.emplace(std::move(key), std::move(value)).first->second;
}

Descent DescentSolver::descend(const Poly& x_in) {
  const int g = cx_.genus();
  Descent out;
  out.x = cx_.normal_form(x_in);
  if (out.x.is_zero()) {
    out.residual_zero = true;
    return out;
  }
  if (!out.x.is_homogeneous()) throw InvalidParameter("descend needs a homogeneous element");
  const int deg = *out.x.doubled_degree();
  const auto mons = basis_enum(g, deg);
  const auto row_of = index_of(mons);

  std::vector<std::pair<std::size_t, std::vector<int>>> columns;
  for (std::size_t a = 0; a < reps_.size(); ++a) {
    const int e = reps_[a].deg2 + g * g;
    if (e > deg) continue;
    for (auto& mu : d_monomials(g, deg - e)) columns.emplace_back(a, std::move(mu));
  }
  Matrix m(mons.size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [mono, coef] : descendant(columns[c].first, columns[c].second).terms())
      m(row_of.at(mono), c) = coef;
  std::vector<Rational> rhs(mons.size());
  for (const auto& [mono, coef] : out.x.terms()) rhs[row_of.at(mono)] = coef;
  const auto sol = solve(m, rhs);
  if (!sol) throw StructuralError("descendant system is inconsistent at doubled degree " + std::to_string(deg));

  Poly residual = out.x;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if ((*sol)[c] == 0) continue;
    out.terms.push_back({columns[c].first, columns[c].second, (*sol)[c]});
    residual -= descendant(columns[c].first, columns[c].second) * (*sol)[c];
  }
  out.residual_zero = residual.is_zero();
  return out;
}

nlohmann::json Descent::to_json(const std::vector<HgRepresentative>& reps) const {
  nlohmann::json j;
  j["x"] = x.to_string();
  j["terms"] = nlohmann::json::array();
  for (const auto& t : terms)
    j["terms"].push_back({{"rep", Poly::monomial(x.genus(), reps.at(t.rep).coefficient).to_string()},
                          {"rep_deg2", reps.at(t.rep).deg2},
                          {"operator", d_monomial_text(t.exponents)},
                          {"coeff", to_string(t.coeff)}});
  j["residual_zero"] = residual_zero;
  return j;
}

}  // namespace hypjac
