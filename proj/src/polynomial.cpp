#include "diffelim/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "diffelim/error.hpp"

namespace diffelim {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Symbol s, Exponent e) {
  if (e != 0) factors_.emplace_back(s.id(), e);
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [id, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == id) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(id, e);
    }
  }
  return m;
}

Exponent Monomial::degree() const noexcept {
  Exponent d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Exponent Monomial::exponent(SymbolId id) const noexcept {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), id,
                             [](const Factor& f, SymbolId v) { return f.first < v; });
  return it != factors_.end() && it->first == id ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin(), ae = factors_.end();
  auto b = other.factors_.begin(), be = other.factors_.end();
  while (a != ae && b != be) {
    if (a->first < b->first) {
      r.factors_.push_back(*a++);
    } else if (b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.factors_.insert(r.factors_.end(), a, ae);
  r.factors_.insert(r.factors_.end(), b, be);
  return r;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  auto b = other.factors_.begin(), be = other.factors_.end();
  for (const auto& [id, e] : factors_) {
    while (b != be && b->first < id) ++b;
    if (b == be || b->first != id || b->second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r;
  auto a = factors_.begin(), ae = factors_.end();
  for (const auto& [id, e] : other.factors_) {
    if (a != ae && a->first == id) {
      if (e > a->second) r.factors_.emplace_back(id, e - a->second);
      ++a;
    } else {
      r.factors_.emplace_back(id, e);
    }
  }
  return r;
}

Monomial Monomial::without(SymbolId id) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (f.first != id) r.factors_.push_back(f);
  }
  return r;
}

int compare(const Monomial& a, const Monomial& b) noexcept {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (fa[k].first != fb[k].first) return fa[k].first < fb[k].first ? 1 : -1;
    if (fa[k].second != fb[k].second) return fa[k].second > fb[k].second ? 1 : -1;
  }
  if (fa.size() == fb.size()) return 0;
  return fa.size() > fb.size() ? 1 : -1;
}

// -------------------------------------------------------------- Polynomial

namespace {

bool term_greater(const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; }

// Merges two sorted term lists; `sign` is applied to b.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (sign < 0) out.back().coeff = -out.back().coeff;
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) {
    terms_.push_back({Monomial(), c});
    terms_.back().coeff.canonicalize();
  }
}

Polynomial::Polynomial(Symbol s, Exponent e) { terms_.push_back({Monomial(s, e), Rational(1)}); }

Polynomial::Polynomial(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.push_back({m, c});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

Rational Polynomial::constant_term() const {
  // the monomial 1 is the smallest in the internal order
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& v) { return compare(t.mono, v) > 0; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

Exponent Polynomial::total_degree() const noexcept {
  Exponent d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

std::vector<SymbolId> Polynomial::symbols() const {
  std::vector<SymbolId> ids;
  for (const auto& t : terms_) {
    for (const auto& f : t.mono.factors()) ids.push_back(f.first);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool Polynomial::contains(SymbolId id) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [id](const Term& t) { return t.mono.contains(id); });
}

Exponent Polynomial::degree_in(SymbolId id) const noexcept {
  Exponent d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(id));
  return d;
}

std::vector<Polynomial> Polynomial::coefficients_in(SymbolId id) const {
  std::vector<std::vector<Term>> buckets(degree_in(id) + 1);
  for (const auto& t : terms_) {
    Exponent e = t.mono.exponent(id);
    buckets[e].push_back({e ? t.mono.without(id) : t.mono, t.coeff});
  }
  // terms sharing an exponent of `id` keep their relative order once it is
  // removed
  std::vector<Polynomial> out(buckets.size());
  for (std::size_t e = 0; e < buckets.size(); ++e) out[e].terms_ = std::move(buckets[e]);
  return out;
}

Polynomial Polynomial::from_coefficients(SymbolId id, const std::vector<Polynomial>& coeffs) {
  std::vector<Term> terms;
  Symbol s = Symbol::from_id(id);
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    Monomial m(s, static_cast<Exponent>(e));
    for (const auto& t : coeffs[e].terms_) terms.push_back({t.mono * m, t.coeff});
  }
  return from_terms(std::move(terms));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge(terms_, o.terms_, 1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1) return b.times(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.times(b.terms_[0].mono, b.terms_[0].coeff);
  // multiply the shorter list into the longer one row by row; each row stays
  // sorted because monomial multiplication is order preserving
  const Polynomial& small = a.terms_.size() <= b.terms_.size() ? a : b;
  const Polynomial& large = &small == &a ? b : a;
  std::vector<std::vector<Term>> rows;
  rows.reserve(small.terms_.size());
  for (const auto& t : small.terms_) rows.push_back(large.times(t.mono, t.coeff).terms_);
  // pairwise merge
  while (rows.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((rows.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) next.push_back(merge(rows[i], rows[i + 1], 1));
    if (rows.size() % 2) next.push_back(std::move(rows.back()));
    rows = std::move(next);
  }
  Polynomial r;
  r.terms_ = std::move(rows.front());
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::times(const Monomial& m, const Rational& c) const {
  if (c == 0) return {};
  Polynomial r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

Polynomial Polynomial::substitute(const std::function<std::optional<Polynomial>(Symbol)>& image) const {
  std::unordered_map<SymbolId, std::optional<Polynomial>> cache;
  auto lookup = [&](SymbolId id) -> const std::optional<Polynomial>& {
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, image(Symbol::from_id(id))).first;
    return it->second;
  };
  bool any = false;
  for (const auto& t : terms_) {
    for (const auto& f : t.mono.factors()) any = any || lookup(f.first).has_value();
  }
  if (!any) return *this;
  Polynomial sum;
  for (const auto& t : terms_) {
    Polynomial product(1);
    std::vector<Monomial::Factor> kept_factors;
    for (const auto& [id, e] : t.mono.factors()) {
      const auto& img = lookup(id);
      if (img) {
        product = product * img->pow(e);
      } else {
        kept_factors.emplace_back(id, e);
      }
    }
    sum += product.times(Monomial::from_factors(std::move(kept_factors)), t.coeff);
  }
  return sum;
}

Polynomial Polynomial::substitute(const std::map<SymbolId, Polynomial>& images) const {
  return substitute([&](Symbol s) -> std::optional<Polynomial> {
    auto it = images.find(s.id());
    if (it == images.end()) return std::nullopt;
    return it->second;
  });
}

Rational Polynomial::evaluate(const std::function<Rational(Symbol)>& value) const {
  std::unordered_map<SymbolId, Rational> cache;
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational prod = t.coeff;
    for (const auto& [id, e] : t.mono.factors()) {
      auto it = cache.find(id);
      if (it == cache.end()) it = cache.emplace(id, value(Symbol::from_id(id))).first;
      for (Exponent k = 0; k < e; ++k) prod *= it->second;
    }
    sum += prod;
  }
  return sum;
}

bool display_before(Symbol a, Symbol b) {
  if (a.order() != b.order()) return a.order() > b.order();
  if (a.is_constant() != b.is_constant()) return !a.is_constant();
  return natural_compare(a.name(), b.name()) < 0;
}

namespace {

struct Display {
  std::vector<std::pair<Symbol, Exponent>> factors;
  const Rational* coeff;
};

// terms with their factors sorted in display order, in display order
std::vector<Display> display_terms(const std::vector<Term>& terms) {
  std::vector<Display> shown;
  shown.reserve(terms.size());
  for (const auto& t : terms) {
    Display d{{}, &t.coeff};
    for (const auto& [id, e] : t.mono.factors()) d.factors.emplace_back(Symbol::from_id(id), e);
    std::sort(d.factors.begin(), d.factors.end(),
              [](const auto& x, const auto& y) { return display_before(x.first, y.first); });
    shown.push_back(std::move(d));
  }
  std::sort(shown.begin(), shown.end(), [](const Display& x, const Display& y) {
    std::size_t n = std::min(x.factors.size(), y.factors.size());
    for (std::size_t k = 0; k < n; ++k) {
      const auto& [sx, ex] = x.factors[k];
      const auto& [sy, ey] = y.factors[k];
      if (!(sx == sy)) return display_before(sx, sy);
      if (ex != ey) return ex > ey;
    }
    return x.factors.size() > y.factors.size();
  });
  return shown;
}

}  // namespace

Rational display_leading_coefficient(const Polynomial& f) {
  if (f.is_zero()) return 0;
  return *display_terms(f.terms()).front().coeff;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<Display> shown = display_terms(terms_);
  std::string out;
  bool first = true;
  for (const auto& d : shown) {
    Rational c = *d.coeff;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    Rational a = abs(c);
    std::string factors;
    for (const auto& [s, e] : d.factors) {
      if (!factors.empty()) factors += "*";
      factors += s.to_string();
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += factors;
    } else {
      out += a.get_str() + "*" + factors;
    }
  }
  return out;
}

// ---------------------------------------------------------- derivation

Polynomial derive(const Polynomial& f) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    const auto& fs = t.mono.factors();
    for (std::size_t k = 0; k < fs.size(); ++k) {
      auto d = Symbol::from_id(fs[k].first).derivative();
      if (!d) continue;
      std::vector<Monomial::Factor> factors = fs;
      Exponent e = factors[k].second;
      factors[k].second = e - 1;
      factors.emplace_back(d->id(), 1);
      out.push_back({Monomial::from_factors(std::move(factors)), t.coeff * e});
    }
  }
  return Polynomial::from_terms(std::move(out));
}

Polynomial derive(const Polynomial& f, unsigned times) {
  Polynomial r = f;
  for (unsigned k = 0; k < times && !r.is_zero(); ++k) r = derive(r);
  return r;
}

// ------------------------------------------------------------- division

std::optional<Polynomial> try_divide(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
  if (f.is_zero()) return Polynomial();
  if (g.term_count() == 1) {
    const Term& lt = g.leading_term();
    Rational inv = 1 / lt.coeff;
    std::vector<Term> q;
    q.reserve(f.term_count());
    for (const auto& t : f.terms()) {
      if (!lt.mono.divides(t.mono)) return std::nullopt;
      q.push_back({lt.mono.quotient_of(t.mono), t.coeff * inv});
    }
    // dividing by a monomial preserves the order
    return Polynomial::from_terms(std::move(q));
  }
  const Term& lg = g.leading_term();
  Rational inv = 1 / lg.coeff;
  Polynomial rest = f;
  std::vector<Term> quotient;
  while (!rest.is_zero()) {
    const Term& lr = rest.leading_term();
    if (!lg.mono.divides(lr.mono)) return std::nullopt;
    Monomial m = lg.mono.quotient_of(lr.mono);
    Rational c = lr.coeff * inv;
    rest -= g.times(m, c);
    quotient.push_back({std::move(m), std::move(c)});
  }
  return Polynomial::from_terms(std::move(quotient));
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
  auto q = try_divide(f, g);
  if (!q) throw Error(ErrorCode::NotDivisible, "polynomial division leaves a remainder");
  return *q;
}

// ------------------------------------------------------------------ gcd

Rational rational_content(const Polynomial& f) {
  if (f.is_zero()) return 1;
  Integer num = 0, den = 1;
  for (const auto& t : f.terms()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(num, den);
  c.canonicalize();
  return c;
}

namespace {

Polynomial monic(const Polynomial& f) {
  if (f.is_zero()) return f;
  return f.scaled(1 / f.leading_term().coeff);
}

Polynomial poly_gcd(const Polynomial& f, const Polynomial& g);

// gcd of the coefficients of f viewed as a polynomial in x
Polynomial content_in(const std::vector<Polynomial>& coeffs) {
  Polynomial c;
  for (const auto& a : coeffs) {
    if (a.is_zero()) continue;
    c = poly_gcd(c, a);
    if (c.is_constant()) return Polynomial(1);
  }
  return c;
}

std::vector<Polynomial> trim(std::vector<Polynomial> v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
  return v;
}

std::vector<Polynomial> divide_all(const std::vector<Polynomial>& v, const Polynomial& c) {
  if (c.is_constant()) {
    Rational inv = 1 / c.constant_term();
    std::vector<Polynomial> out;
    for (const auto& a : v) out.push_back(a.scaled(inv));
    return out;
  }
  std::vector<Polynomial> out;
  for (const auto& a : v) out.push_back(exact_divide(a, c));
  return out;
}

// pseudo-remainder of a by b as univariate polynomials (coefficient vectors)
std::vector<Polynomial> pseudo_remainder(std::vector<Polynomial> a, const std::vector<Polynomial>& b) {
  const std::size_t db = b.size() - 1;
  const Polynomial& lb = b.back();
  while (a.size() >= b.size()) {
    Polynomial la = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& x : a) x = x * lb;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
    a = trim(std::move(a));
  }
  return a;
}

Polynomial poly_gcd(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero()) return monic(g);
  if (g.is_zero()) return monic(f);
  if (f.is_constant() || g.is_constant()) return Polynomial(1);
  if (f.term_count() == 1 && g.term_count() == 1) {
    std::vector<Monomial::Factor> common;
    const Monomial& mg = g.leading_term().mono;
    for (const auto& [id, e] : f.leading_term().mono.factors()) {
      Exponent k = std::min(e, mg.exponent(id));
      if (k) common.emplace_back(id, k);
    }
    return Polynomial(Monomial::from_factors(std::move(common)), 1);
  }
  if (f == g) return monic(f);

  // a symbol of only one argument cannot divide the gcd
  auto sf = f.symbols(), sg = g.symbols();
  for (SymbolId y : sf) {
    if (!g.contains(y)) return poly_gcd(content_in(f.coefficients_in(y)), g);
  }
  for (SymbolId y : sg) {
    if (!f.contains(y)) return poly_gcd(f, content_in(g.coefficients_in(y)));
  }
  // main variable: the common symbol of least degree
  SymbolId x = sf.front();
  std::size_t best = SIZE_MAX;
  for (SymbolId y : sf) {
    std::size_t d = std::max(f.degree_in(y), g.degree_in(y));
    if (d < best) {
      best = d;
      x = y;
    }
  }
  auto cf = f.coefficients_in(x), cg = g.coefficients_in(x);

  Polynomial kf = content_in(cf), kg = content_in(cg);
  Polynomial k = poly_gcd(kf, kg);
  auto a = divide_all(cf, kf), b = divide_all(cg, kg);
  if (a.size() < b.size()) std::swap(a, b);
  while (true) {
    auto r = pseudo_remainder(a, b);
    if (r.empty()) break;
    if (r.size() == 1) {
      b = {Polynomial(1)};
      break;
    }
    a = std::move(b);
    b = divide_all(r, content_in(r));
  }
  return monic(k * Polynomial::from_coefficients(x, b));
}

}  // namespace

Polynomial gcd(const Polynomial& f, const Polynomial& g) { return poly_gcd(f, g); }

}  // namespace diffelim
