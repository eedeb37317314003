#include "hypjac/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hypjac/errors.hpp"

namespace hypjac {

namespace {

char kind_char(GenKind k) {
  switch (k) {
    case GenKind::A:
      return 'a';
    case GenKind::B:
      return 'b';
    case GenKind::C:
      return 'c';
    case GenKind::F:
      return 'f';
  }
  return '?';
}

std::optional<GenKind> kind_of(char ch) {
  switch (ch) {
    case 'a':
      return GenKind::A;
    case 'b':
      return GenKind::B;
    case 'c':
      return GenKind::C;
    case 'f':
      return GenKind::F;
    default:
      return std::nullopt;
  }
}

}  // namespace

std::string GenId::token() const { return kind_char(kind) + std::to_string(index); }

int generator_count(GenKind kind, int g) {
  switch (kind) {
    case GenKind::A:
    case GenKind::B:
      return g;
    case GenKind::C:
      return g + 1;
    case GenKind::F:
      return 2 * g + 1;
  }
  return 0;
}

bool in_range(GenId x, int g) { return x.index >= 1 && x.index <= generator_count(x.kind, g); }

std::vector<GenId> generators(int g, bool with_f) {
  std::vector<GenId> out;
  for (auto kind : {GenKind::A, GenKind::B, GenKind::C, GenKind::F}) {
    if (kind == GenKind::F && !with_f) continue;
    for (int j = 1; j <= generator_count(kind, g); ++j) out.push_back({kind, j});
  }
  return out;
}

int u_index(GenId x) {
  switch (x.kind) {
    case GenKind::A:
      return 2 * x.index + 1;
    case GenKind::B:
      return 2 * x.index;
    default:
      return 0;
  }
}

GenId u_generator(int n) { return n % 2 == 0 ? gen_b(n / 2) : gen_a((n - 1) / 2); }

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {}

Monomial Monomial::of(GenId x, unsigned exponent) {
  if (exponent == 0) return Monomial();
  return Monomial({{x, exponent}});
}

unsigned Monomial::exponent(GenId x) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), x,
                             [](const Factor& f, GenId id) { return f.first < id; });
  return it != factors_.end() && it->first == x ? it->second : 0;
}

int Monomial::doubled_degree() const {
  int d = 0;
  for (const auto& [x, e] : factors_) d += x.doubled_degree() * static_cast<int>(e);
  return d;
}

unsigned Monomial::total_exponent() const {
  unsigned t = 0;
  for (const auto& f : factors_) t += f.second;
  return t;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Factor> out;
  out.reserve(factors_.size() + other.factors_.size());
  auto i = factors_.begin();
  auto j = other.factors_.begin();
  while (i != factors_.end() || j != other.factors_.end()) {
    if (j == other.factors_.end() || (i != factors_.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == factors_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return Monomial(std::move(out));
}

Monomial Monomial::without_one(GenId x) const {
  std::vector<Factor> out = factors_;
  for (auto it = out.begin(); it != out.end(); ++it) {
    if (it->first == x) {
      if (--it->second == 0) out.erase(it);
      return Monomial(std::move(out));
    }
  }
  throw InvalidParameter("monomial does not contain " + x.token());
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [x, e] : factors_) {
    if (!s.empty()) s += '*';
    s += x.token();
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s;
}

std::vector<int> order_key(const Monomial& m, int g) {
  // [deg2, high deg2, -m_1..-m_g, low_1..low_g, c_1..c_{g+1}, f_1..f_{2g+1}]
  std::vector<int> key(2 + 2 * g + (g + 1) + (2 * g + 1), 0);
  int total = 0;
  int high = 0;
  for (const auto& [x, e] : m.factors()) {
    const int ei = static_cast<int>(e);
    total += x.doubled_degree() * ei;
    switch (x.kind) {
      case GenKind::A:
      case GenKind::B: {
        const int n = u_index(x);
        if (is_high_u(n, g)) {
          high += n * ei;
          key[2 + (n - g - 2)] = -ei;
        } else {
          key[2 + g + (n - 2)] = ei;
        }
        break;
      }
      case GenKind::C:
        key[2 + 2 * g + (x.index - 1)] = ei;
        break;
      case GenKind::F:
        key[2 + 2 * g + (g + 1) + (x.index - 1)] = ei;
        break;
    }
  }
  key[0] = total;
  key[1] = high;
  return key;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(int g) : genus_(g) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
}

Poly Poly::constant(int g, const Rational& c) {
  Poly p(g);
  p.add_term(Monomial(), c);
  return p;
}

Poly Poly::generator(int g, GenId x) {
  if (!in_range(x, g))
    throw InvalidParameter("generator " + x.token() + " out of range for genus " +
                           std::to_string(g));
  return monomial(g, Monomial::of(x));
}

Poly Poly::monomial(int g, const Monomial& m, const Rational& c) {
  Poly p(g);
  p.add_term(m, c);
  return p;
}

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {

void check_same_genus(const Poly& a, const Poly& b) {
  if (a.genus() != b.genus())
    throw GenusMismatch("polynomials of genus " + std::to_string(a.genus()) + " and " +
                        std::to_string(b.genus()));
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  check_same_genus(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_same_genus(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_genus(a, b);
  Poly r(a.genus_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
  Poly r(genus_);
  if (c == 0) return r;
  for (const auto& [mm, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, v * c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(genus_, Rational(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::partial(GenId x) const {
  Poly r(genus_);
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.exponent(x);
    if (e == 0) continue;
    r.add_term(m.without_one(x), c * static_cast<int>(e));
  }
  return r;
}

std::map<int, Poly> Poly::homogeneous_components() const {
  std::map<int, Poly> out;
  for (const auto& [m, c] : terms_) {
    auto it = out.try_emplace(m.doubled_degree(), genus_).first;
    it->second.add_term(m, c);
  }
  return out;
}

Poly Poly::homogeneous_part(int doubled_degree) const {
  Poly r(genus_);
  for (const auto& [m, c] : terms_)
    if (m.doubled_degree() == doubled_degree) r.add_term(m, c);
  return r;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.doubled_degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return t.first.doubled_degree() == d; });
}

std::optional<int> Poly::doubled_degree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return terms_.begin()->first.doubled_degree();
}

std::optional<int> Poly::max_doubled_degree() const {
  std::optional<int> best;
  for (const auto& [m, c] : terms_) best = std::max(best.value_or(0), m.doubled_degree());
  return best;
}

bool Poly::uses_kind(GenKind kind) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [x, e] : m.factors())
      if (x.kind == kind) return true;
  return false;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<std::vector<int>, const Terms::value_type*>> sorted;
  sorted.reserve(terms_.size());
  for (const auto& t : terms_) sorted.emplace_back(order_key(t.first, genus_), &t);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& l, const auto& r) { return l.first > r.first; });
  std::string out;
  bool first = true;
  for (const auto& [key, term] : sorted) {
    const Monomial& m = term->first;
    Rational c = term->second;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (m.is_one()) {
      out += hypjac::to_string(c);
    } else if (c == 1) {
      out += m.to_string();
    } else {
      out += hypjac::to_string(c) + "*" + m.to_string();
    }
  }
  return out;
}

nlohmann::json Poly::to_json() const {
  std::vector<std::pair<std::vector<int>, const Terms::value_type*>> sorted;
  for (const auto& t : terms_) sorted.emplace_back(order_key(t.first, genus_), &t);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& l, const auto& r) { return l.first > r.first; });
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, term] : sorted) {
    nlohmann::json mono = nlohmann::json::array();
    for (const auto& [x, e] : term->first.factors())
      mono.push_back({std::string(1, kind_char(x.kind)), x.index, e});
    terms.push_back({{"mono", mono}, {"coeff", hypjac::to_string(term->second)}});
  }
  return {{"g", genus_}, {"terms", terms}};
}

Poly Poly::from_json(const nlohmann::json& j) {
  const int g = j.at("g").get<int>();
  Poly p(g);
  for (const auto& t : j.at("terms")) {
    std::vector<Monomial::Factor> factors;
    for (const auto& f : t.at("mono")) {
      const std::string k = f.at(0).get<std::string>();
      auto kind = k.size() == 1 ? kind_of(k[0]) : std::nullopt;
      if (!kind) throw InvalidParameter("unknown generator kind '" + k + "'");
      GenId x{*kind, f.at(1).get<int>()};
      if (!in_range(x, g)) throw InvalidParameter("generator " + x.token() + " out of range");
      factors.emplace_back(x, f.at(2).get<unsigned>());
    }
    std::sort(factors.begin(), factors.end());
    p.add_term(Monomial(std::move(factors)), parse_rational(t.at("coeff").get<std::string>()));
  }
  return p;
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, int g) : text_(text), g_(g) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Integer integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Poly expr() {
    Poly acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      Integer e = integer();
      if (e > 1000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      Integer num = integer();
      Integer den = 1;
      if (accept('/')) {
        const std::size_t at = pos_;
        den = integer();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      return Poly::constant(g_, Rational(num, den));
    }
    if (auto kind = kind_of(ch)) {
      const std::size_t start = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError(std::string("unknown token '") + ch + "'", start);
      Integer idx = integer();
      if (idx > 1000) throw ParseError("generator index out of range", start);
      GenId x{*kind, static_cast<int>(idx)};
      if (!in_range(x, g_))
        throw ParseError("index out of range: " + x.token() + " (genus " + std::to_string(g_) +
                             ")",
                         start);
      return Poly::generator(g_, x);
    }
    fail(std::string("unknown token '") + ch + "'");
  }

  std::string_view text_;
  int g_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, int g) {
  if (g < 1) throw InvalidParameter("genus must be at least 1");
  return Parser(text, g).parse();
}

Poly substitute(const Poly& x, const std::map<GenId, Poly>& images) {
  const int g = x.genus();
  // Cache powers of each image as they are requested.
  std::map<GenId, std::vector<Poly>> powers;
  auto power_of = [&](GenId id, unsigned e) -> const Poly& {
    auto& list = powers[id];
    if (list.empty()) list.push_back(Poly::constant(g, Rational(1)));
    while (list.size() <= e) list.push_back(list.back() * images.at(id));
    return list[e];
  };
  Poly out(g);
  for (const auto& [m, c] : x.terms()) {
    std::vector<Monomial::Factor> kept;
    Poly factor = Poly::constant(g, c);
    for (const auto& [id, e] : m.factors()) {
      if (images.count(id))
        factor = factor * power_of(id, e);
      else
        kept.emplace_back(id, e);
    }
    out += factor.times_monomial(Monomial(std::move(kept)), Rational(1));
  }
  return out;
}

// -------------------------------------------------------------- Derivation

Derivation::Derivation(int g, std::string label, int doubled_degree_shift)
    : genus_(g), label_(std::move(label)), shift_(doubled_degree_shift) {}

void Derivation::set_image(GenId x, Poly image) {
  if (image.genus() != genus_) throw GenusMismatch("derivation image of the wrong genus");
  images_.insert_or_assign(x, std::move(image));
}

Poly Derivation::apply(const Poly& x) const {
  if (x.genus() != genus_) throw GenusMismatch("derivation applied across genera");
  Poly out(genus_);
  for (const auto& [m, c] : x.terms()) {
    for (const auto& [id, e] : m.factors()) {
      auto it = images_.find(id);
      if (it == images_.end()) {
        if (id.kind == GenKind::F) continue;
        throw UndefinedDerivation("derivation '" + label_ + "' has no image for " + id.token());
      }
      out += it->second.times_monomial(m.without_one(id), c * static_cast<int>(e));
    }
  }
  return out;
}

}  // namespace hypjac
