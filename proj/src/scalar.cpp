#include "diffax/scalar.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "diffax/error.hpp"

namespace diffax {

namespace {

int tdegree(const TMonomial& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

struct TMonomialGreater {
  bool operator()(const TMonomial& a, const TMonomial& b) const {
    return compare_tmonomials(a, b) > 0;
  }
};

using TermMap = std::map<TMonomial, Rational, TMonomialGreater>;

void accumulate(TermMap& acc, const TMonomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) acc.erase(it);
  }
}

}  // namespace

class TPolyBuilder {
 public:
  static TPoly from_map(TermMap&& acc) {
    TPoly p;
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) p.terms_.push_back({m, std::move(c)});
    return p;
  }
  static std::vector<TPoly::Term>& terms(TPoly& p) { return p.terms_; }
};

int compare_tmonomials(const TMonomial& a, const TMonomial& b) {
  int da = tdegree(a), db = tdegree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

TPoly::TPoly(const Rational& c) {
  if (sgn(c) != 0) {
    terms_.push_back({TMonomial{}, c});
    terms_.back().coef.canonicalize();
  }
}

TPoly TPoly::symbol(int index) {
  if (index < 1 || index > static_cast<int>(kMaxTSymbols)) {
    throw IndexError("t-symbol index " + std::to_string(index) + " out of range");
  }
  TMonomial m{};
  m[static_cast<std::size_t>(index - 1)] = 1;
  return monomial(m, Rational(1));
}

TPoly TPoly::monomial(const TMonomial& exps, const Rational& c) {
  TPoly p;
  if (sgn(c) != 0) {
    p.terms_.push_back({exps, c});
    p.terms_.back().coef.canonicalize();
  }
  return p;
}

bool TPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && tdegree(terms_[0].exps) == 0);
}

bool TPoly::is_one() const {
  return terms_.size() == 1 && tdegree(terms_[0].exps) == 0 && terms_[0].coef == 1;
}

Rational TPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  const Term& last = terms_.back();
  return tdegree(last.exps) == 0 ? last.coef : Rational(0);
}

int TPoly::total_degree() const {
  return terms_.empty() ? -1 : tdegree(terms_.front().exps);
}

int TPoly::degree_in(int var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.exps[static_cast<std::size_t>(var - 1)]);
  return d;
}

int TPoly::max_symbol() const {
  int mx = 0;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < kMaxTSymbols; ++i) {
      if (t.exps[i] != 0) mx = std::max(mx, static_cast<int>(i) + 1);
    }
  }
  return mx;
}

std::vector<TPoly> TPoly::coefficients_in(int var) const {
  auto v = static_cast<std::size_t>(var - 1);
  std::vector<TermMap> parts(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1);
  for (const auto& t : terms_) {
    TMonomial m = t.exps;
    auto k = m[v];
    m[v] = 0;
    accumulate(parts[k], m, t.coef);
  }
  std::vector<TPoly> out;
  out.reserve(parts.size());
  for (auto& p : parts) out.push_back(TPolyBuilder::from_map(std::move(p)));
  return out;
}

TPoly TPoly::operator-() const {
  TPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

TPoly operator+(const TPoly& a, const TPoly& b) {
  TPoly r;
  auto& out = TPolyBuilder::terms(r);
  out.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    int c;
    if (i == a.terms_.size()) c = -1;
    else if (j == b.terms_.size()) c = 1;
    else c = compare_tmonomials(a.terms_[i].exps, b.terms_[j].exps);
    if (c > 0) {
      out.push_back(a.terms_[i++]);
    } else if (c < 0) {
      out.push_back(b.terms_[j++]);
    } else {
      Rational s = a.terms_[i].coef + b.terms_[j].coef;
      if (sgn(s) != 0) out.push_back({a.terms_[i].exps, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }

TPoly operator*(const TPoly& a, const TPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.is_constant()) return a.scaled(b.constant_value());
  if (a.is_constant()) return b.scaled(a.constant_value());
  TermMap acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      TMonomial m;
      for (std::size_t k = 0; k < kMaxTSymbols; ++k) {
        m[k] = static_cast<std::uint16_t>(s.exps[k] + t.exps[k]);
      }
      accumulate(acc, m, s.coef * t.coef);
    }
  }
  return TPolyBuilder::from_map(std::move(acc));
}

TPoly TPoly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return {};
  TPoly r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

TPoly TPoly::shifted(int var, int k) const {
  TPoly r = *this;
  for (auto& t : r.terms_) t.exps[static_cast<std::size_t>(var - 1)] += static_cast<std::uint16_t>(k);
  // Multiplying by a monomial preserves the order.
  return r;
}

TPoly TPoly::pow(unsigned k) const {
  TPoly result(Rational(1));
  TPoly base = *this;
  while (k != 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k != 0) base = base * base;
  }
  return result;
}

TPoly TPoly::derivative(int var) const {
  auto v = static_cast<std::size_t>(var - 1);
  TermMap acc;
  for (const auto& t : terms_) {
    if (t.exps[v] == 0) continue;
    TMonomial m = t.exps;
    Rational c = t.coef * static_cast<long>(m[v]);
    --m[v];
    accumulate(acc, m, c);
  }
  return TPolyBuilder::from_map(std::move(acc));
}

bool operator==(const TPoly& a, const TPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

std::string TPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool constant = tdegree(t.exps) == 0;
    bool wrote = false;
    if (constant || c != 1) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < kMaxTSymbols; ++i) {
      if (t.exps[i] == 0) continue;
      if (wrote) os << "*";
      os << "t" << (i + 1);
      if (t.exps[i] > 1) os << "^" << t.exps[i];
      wrote = true;
    }
  }
  return os.str();
}

std::optional<TPoly> divide_exact(const TPoly& a, const TPoly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  TPoly q;
  TPoly r = a;
  const auto& lb = b.leading();
  while (!r.is_zero()) {
    const auto& lr = r.leading();
    TMonomial m;
    for (std::size_t k = 0; k < kMaxTSymbols; ++k) {
      if (lr.exps[k] < lb.exps[k]) return std::nullopt;
      m[k] = static_cast<std::uint16_t>(lr.exps[k] - lb.exps[k]);
    }
    TPoly step = TPoly::monomial(m, lr.coef / lb.coef);
    q = q + step;
    r = r - step * b;
  }
  return q;
}

TPoly make_monic(const TPoly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading().coef);
}

namespace {

TPoly content_in(const TPoly& p, int var) {
  TPoly g;
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

TPoly primitive_part_in(const TPoly& p, int var) {
  if (p.is_zero()) return p;
  TPoly c = content_in(p, var);
  return make_monic(*divide_exact(p, c));
}

TPoly pseudo_remainder(const TPoly& a, const TPoly& b, int var) {
  int db = b.degree_in(var);
  TPoly lcb = b.coefficients_in(var)[static_cast<std::size_t>(db)];
  TPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    int k = r.degree_in(var);
    TPoly lcr = r.coefficients_in(var)[static_cast<std::size_t>(k)];
    r = lcb * r - (lcr * b).shifted(var, k - db);
  }
  return r;
}

}  // namespace

namespace {

unsigned support(const TPoly& p) {
  unsigned mask = 0;
  for (const auto& t : p.terms())
    for (std::size_t k = 0; k < kMaxTSymbols; ++k)
      if (t.exps[k] != 0) mask |= 1U << k;
  return mask;
}

// gcd of a single term with p: the componentwise minimum exponent over p.
TPoly monomial_gcd(const TMonomial& m, const TPoly& p) {
  TMonomial g = m;
  for (const auto& t : p.terms())
    for (std::size_t k = 0; k < kMaxTSymbols; ++k) g[k] = std::min(g[k], t.exps[k]);
  return TPoly::monomial(g, Rational(1));
}

using UPoly = std::vector<Rational>;  // coefficient k multiplies t^k

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Image of p in Q[t_var] after substituting at[k] for every other symbol.
UPoly image(const TPoly& p, int var, const std::array<Rational, kMaxTSymbols>& at) {
  UPoly out(static_cast<std::size_t>(p.degree_in(var)) + 1);
  for (const auto& t : p.terms()) {
    Rational c = t.coef;
    for (std::size_t k = 0; k < kMaxTSymbols; ++k) {
      if (static_cast<int>(k) + 1 == var) continue;
      for (unsigned e = 0; e < t.exps[k]; ++e) c *= at[k];
    }
    out[t.exps[static_cast<std::size_t>(var - 1)]] += c;
  }
  trim(out);
  return out;
}

std::size_t udegree_of_gcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Rational q = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= q * b[k];
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Exact coprimality test. A common factor of positive degree in t_v keeps that
// degree in any image where the leading coefficient of a in t_v survives, so a
// constant image gcd for every shared symbol rules out all common factors.
bool coprime_by_images(const TPoly& a, const TPoly& b) {
  unsigned shared = support(a) & support(b);
  for (int v = 1; v <= static_cast<int>(kMaxTSymbols); ++v) {
    if ((shared & (1U << (v - 1))) == 0) continue;
    TPoly lc = a.coefficients_in(v).back();
    std::array<Rational, kMaxTSymbols> at;
    bool ok = false;
    for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
      for (std::size_t k = 0; k < kMaxTSymbols; ++k) at[k] = Rational(static_cast<long>(3 + 7 * k + 11 * attempt * (k + 1)) % 97 + 2);
      Rational lv = 0;
      for (const auto& t : lc.terms()) {
        Rational c = t.coef;
        for (std::size_t k = 0; k < kMaxTSymbols; ++k)
          for (unsigned e = 0; e < t.exps[k]; ++e) c *= at[k];
        lv += c;
      }
      ok = lv != 0;
    }
    if (!ok) return false;
    if (udegree_of_gcd(image(a, v, at), image(b, v, at)) > 0) return false;
  }
  return true;
}

}  // namespace

TPoly gcd(const TPoly& a, const TPoly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if ((support(a) & support(b)) == 0) return TPoly(Rational(1));
  if (a.terms().size() == 1) return monomial_gcd(a.leading().exps, b);
  if (b.terms().size() == 1) return monomial_gcd(b.leading().exps, a);
  if (a.total_degree() <= b.total_degree()) {
    if (divide_exact(b, a)) return make_monic(a);
  } else if (divide_exact(a, b)) {
    return make_monic(b);
  }
  if (coprime_by_images(a, b)) return TPoly(Rational(1));
  int va = a.max_symbol(), vb = b.max_symbol();
  int v = std::max(va, vb);
  if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);

  TPoly ca = content_in(a, v), cb = content_in(b, v);
  TPoly g = gcd(ca, cb);
  TPoly pa = make_monic(*divide_exact(a, ca));
  TPoly pb = make_monic(*divide_exact(b, cb));
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (true) {
    TPoly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = TPoly(Rational(1));
      break;
    }
    pa = std::move(pb);
    pb = primitive_part_in(r, v);
  }
  return make_monic(g * primitive_part_in(pb, v));
}

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::from_poly(const TPoly& p) {
  if (p.is_constant()) return Scalar(p.constant_value());
  Scalar s;
  s.fn_ = std::make_shared<const Fraction>(Fraction{p, TPoly(Rational(1))});
  return s;
}

Scalar Scalar::fraction(const TPoly& num, const TPoly& den) {
  if (den.is_zero()) throw DomainError("division by zero in base field");
  if (num.is_zero()) return Scalar();
  if (den.is_constant()) return from_poly(num.scaled(1 / den.constant_value()));
  if (num.is_constant()) {
    // gcd is trivially 1; only the denominator needs normalizing.
    Rational lc = den.leading().coef;
    Scalar s;
    s.fn_ = std::make_shared<const Fraction>(Fraction{num.scaled(1 / lc), make_monic(den)});
    return s;
  }
  TPoly g = gcd(num, den);
  TPoly n = *divide_exact(num, g);
  TPoly d = *divide_exact(den, g);
  Rational lc = d.leading().coef;
  n = n.scaled(1 / lc);
  d = d.scaled(1 / lc);
  if (d.is_one()) return from_poly(n);
  Scalar s;
  s.fn_ = std::make_shared<const Fraction>(Fraction{std::move(n), std::move(d)});
  return s;
}

bool Scalar::is_polynomial() const { return !fn_ || fn_->den.is_one(); }

TPoly Scalar::numerator() const { return fn_ ? fn_->num : TPoly(q_); }

TPoly Scalar::denominator() const { return fn_ ? fn_->den : TPoly(Rational(1)); }

Scalar Scalar::operator-() const {
  if (!fn_) return Scalar(Rational(-q_));
  Scalar s;
  s.fn_ = std::make_shared<const Fraction>(Fraction{-fn_->num, fn_->den});
  return s;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (!a.fn_ && !b.fn_) return Scalar(Rational(a.q_ + b.q_));
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  TPoly ad = a.denominator(), bd = b.denominator();
  if (ad == bd) {
    if (ad.is_one()) return Scalar::from_poly(a.numerator() + b.numerator());
    return Scalar::fraction(a.numerator() + b.numerator(), ad);
  }
  if (ad.is_one()) return Scalar::fraction(a.numerator() * bd + b.numerator(), bd);
  if (bd.is_one()) return Scalar::fraction(a.numerator() + b.numerator() * ad, ad);
  TPoly g = gcd(ad, bd);
  TPoly ac = *divide_exact(bd, g), bc = *divide_exact(ad, g);
  return Scalar::fraction(a.numerator() * ac + b.numerator() * bc, ad * ac);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (!a.fn_ && !b.fn_) return Scalar(Rational(a.q_ * b.q_));
  if (a.is_zero() || b.is_zero()) return Scalar();
  if (!a.fn_) {
    Scalar s;
    s.fn_ = std::make_shared<const Scalar::Fraction>(Scalar::Fraction{b.fn_->num.scaled(a.q_), b.fn_->den});
    return s;
  }
  if (!b.fn_) return b * a;
  if (a.is_polynomial() && b.is_polynomial()) return Scalar::from_poly(a.fn_->num * b.fn_->num);
  // Both inputs are reduced, so cross-cancelling leaves a reduced product.
  TPoly g1 = gcd(a.fn_->num, b.fn_->den), g2 = gcd(b.fn_->num, a.fn_->den);
  TPoly n = *divide_exact(a.fn_->num, g1) * *divide_exact(b.fn_->num, g2);
  TPoly d = *divide_exact(a.fn_->den, g2) * *divide_exact(b.fn_->den, g1);
  Rational lc = d.leading().coef;
  if (d.is_constant()) return Scalar::from_poly(n.scaled(1 / lc));
  Scalar s;
  s.fn_ = std::make_shared<const Scalar::Fraction>(Scalar::Fraction{n.scaled(1 / lc), d.scaled(1 / lc)});
  return s;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DomainError("division by zero in base field");
  if (!a.fn_ && !b.fn_) return Scalar(Rational(a.q_ / b.q_));
  if (!b.fn_) return a * Scalar(Rational(1 / b.q_));
  return Scalar::fraction(a.numerator() * b.denominator(), a.denominator() * b.numerator());
}

Scalar Scalar::pow(unsigned k) const {
  Scalar result(1L);
  Scalar base = *this;
  while (k != 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k != 0) base = base * base;
  }
  return result;
}

Scalar Scalar::derivative(int var) const {
  if (!fn_) return Scalar();
  if (fn_->den.is_one()) return from_poly(fn_->num.derivative(var));
  const TPoly& n = fn_->num;
  const TPoly& d = fn_->den;
  return fraction(n.derivative(var) * d - n * d.derivative(var), d * d);
}

int Scalar::max_symbol() const {
  if (!fn_) return 0;
  return std::max(fn_->num.max_symbol(), fn_->den.max_symbol());
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.fn_ && !b.fn_) return a.q_ == b.q_;
  if (!a.fn_ || !b.fn_) return false;
  return a.fn_->num == b.fn_->num && a.fn_->den == b.fn_->den;
}

std::string Scalar::to_string() const {
  if (!fn_) return q_.get_str();
  if (fn_->den.is_one()) return fn_->num.to_string();
  return "(" + fn_->num.to_string() + ")/(" + fn_->den.to_string() + ")";
}

}  // namespace diffax
