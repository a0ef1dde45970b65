#include "diffax/diffpoly.hpp"

#include <algorithm>
#include <sstream>

#include "diffax/error.hpp"

namespace diffax {

void Ring::validate() const {
  if (m < 0 || m > static_cast<int>(kMaxDerivations)) {
    throw IndexError("m must lie in 0.." + std::to_string(kMaxDerivations));
  }
  if (n < 1) throw IndexError("n must be at least 1");
}

// ---------------------------------------------------------------------------
// MultiIndex / DerivVar

int MultiIndex::order() const {
  int o = 0;
  for (auto v : e) o += v;
  return o;
}

MultiIndex MultiIndex::unit(int i) {
  if (i < 1 || i > static_cast<int>(kMaxDerivations)) {
    throw IndexError("derivation index " + std::to_string(i) + " out of range");
  }
  MultiIndex r;
  r.e[static_cast<std::size_t>(i - 1)] = 1;
  return r;
}

bool MultiIndex::divides(const MultiIndex& other) const {
  for (std::size_t i = 0; i < kMaxDerivations; ++i) {
    if (e[i] > other.e[i]) return false;
  }
  return true;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r;
  for (std::size_t i = 0; i < kMaxDerivations; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
  return r;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r;
  for (std::size_t i = 0; i < kMaxDerivations; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
  return r;
}

MultiIndex MultiIndex::max(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r;
  for (std::size_t i = 0; i < kMaxDerivations; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

bool DerivVar::is_derivative_of(const DerivVar& other) const {
  return family == other.family && index == other.index && other.theta.divides(theta);
}

bool DerivVar::is_proper_derivative_of(const DerivVar& other) const {
  return is_derivative_of(other) && theta != other.theta;
}

std::string DerivVar::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < kMaxDerivations; ++i) {
    for (int k = 0; k < theta.e[i]; ++k) s += "d" + std::to_string(i + 1);
  }
  s += family == Family::x ? "x" : "y";
  s += std::to_string(index);
  return s;
}

int canonical_compare(const DerivVar& a, const DerivVar& b) {
  if (a.family != b.family) return a.family < b.family ? -1 : 1;
  int oa = a.order(), ob = b.order();
  if (oa != ob) return oa < ob ? -1 : 1;
  if (a.index != b.index) return a.index < b.index ? -1 : 1;
  auto c = a.theta <=> b.theta;
  if (c < 0) return -1;
  if (c > 0) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Monomial

class MonomialAccess {
 public:
  static std::vector<Monomial::Factor>& factors(Monomial& m) { return m.factors_; }
};

Monomial::Monomial(const DerivVar& v, unsigned exp) {
  if (exp > 0) factors_.emplace_back(v, exp);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::degree_in(const DerivVar& v) const {
  for (const auto& f : factors_) {
    if (f.first == v) return f.second;
  }
  return 0;
}

Monomial Monomial::without(const DerivVar& v) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (!(f.first == v)) r.factors_.push_back(f);
  }
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& f : factors_) {
    if (other.degree_in(f.first) < f.second) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial r;
  for (const auto& f : factors_) {
    unsigned e = f.second - divisor.degree_in(f.first);
    if (e > 0) r.factors_.emplace_back(f.first, e);
  }
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto& out = MonomialAccess::factors(r);
  out.reserve(a.factors_.size() + b.factors_.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors_.size() || j < b.factors_.size()) {
    int c;
    if (i == a.factors_.size()) c = 1;
    else if (j == b.factors_.size()) c = -1;
    else c = canonical_compare(a.factors_[i].first, b.factors_[j].first);
    if (c < 0) {
      out.push_back(a.factors_[i++]);
    } else if (c > 0) {
      out.push_back(b.factors_[j++]);
    } else {
      out.emplace_back(a.factors_[i].first, a.factors_[i].second + b.factors_[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += "*";
    s += v.to_string();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

int compare_monomials(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto ia = fa.rbegin(), ib = fb.rbegin();
  for (; ia != fa.rend() && ib != fb.rend(); ++ia, ++ib) {
    int c = canonical_compare(ia->first, ib->first);
    if (c != 0) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia == fa.rend() && ib == fb.rend()) return 0;
  return ia == fa.rend() ? -1 : 1;
}

// ---------------------------------------------------------------------------
// DiffPoly

DiffPoly::DiffPoly(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(Monomial(), c);
}

DiffPoly DiffPoly::variable(const DerivVar& v) { return term(Monomial(v), Scalar(1L)); }

DiffPoly DiffPoly::term(const Monomial& m, const Scalar& c) {
  DiffPoly p;
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

bool DiffPoly::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar DiffPoly::scalar_value() const {
  if (terms_.empty()) return Scalar();
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Scalar() : it->second;
}

unsigned DiffPoly::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

unsigned DiffPoly::degree_in(const DerivVar& v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
  return d;
}

DiffPoly DiffPoly::coefficient(const DerivVar& v, unsigned k) const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    if (m.degree_in(v) == k) r.add_term(m.without(v), c);
  }
  return r;
}

std::set<DerivVar, CanonicalLess> DiffPoly::variables() const {
  std::set<DerivVar, CanonicalLess> vs;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) vs.insert(f.first);
  }
  return vs;
}

bool DiffPoly::has_family(Family f) const {
  for (const auto& [m, c] : terms_) {
    for (const auto& fac : m.factors()) {
      if (fac.first.family == f) return true;
    }
  }
  return false;
}

int DiffPoly::max_order() const {
  int o = 0;
  for (const auto& v : variables()) o = std::max(o, v.order());
  return o;
}

void DiffPoly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
  return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& b) {
  for (const auto& [m, c] : b.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& b) {
  for (const auto& [m, c] : b.terms_) add_term(m, -c);
  return *this;
}

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r = a;
  r += b;
  return r;
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r = a;
  r -= b;
  return r;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

DiffPoly DiffPoly::scaled(const Scalar& c) const {
  if (c.is_zero()) return {};
  DiffPoly r;
  for (const auto& [m, k] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, k * c);
  return r;
}

DiffPoly DiffPoly::times_monomial(const Monomial& mono, const Scalar& c) const {
  if (c.is_zero()) return {};
  DiffPoly r;
  // Multiplication by a monomial preserves the (monomial) order.
  for (const auto& [m, k] : terms_) r.terms_.emplace_hint(r.terms_.end(), m * mono, k * c);
  return r;
}

DiffPoly DiffPoly::pow(unsigned k) const {
  DiffPoly result(1L);
  DiffPoly base = *this;
  while (k != 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k != 0) base = base * base;
  }
  return result;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first) || ia->second != ib->second) return false;
  }
  return true;
}

namespace {

// Splits c into (negative?, text of |c|, |c| == 1) for printing c*m.
struct CoefText {
  bool negative = false;
  std::string text;
  bool unit = false;
};

CoefText coefficient_text(const Scalar& c) {
  CoefText out;
  if (c.is_rational()) {
    Rational q = c.rational();
    out.negative = sgn(q) < 0;
    if (out.negative) q = -q;
    out.text = q.get_str();
    out.unit = q == 1;
    return out;
  }
  if (c.is_polynomial()) {
    TPoly num = c.numerator();
    if (num.terms().size() == 1) {
      out.negative = sgn(num.leading().coef) < 0;
      out.text = (out.negative ? -num : num).to_string();
      return out;
    }
    out.text = "(" + num.to_string() + ")";
    return out;
  }
  out.text = c.to_string();
  return out;
}

}  // namespace

std::string DiffPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    CoefText ct = coefficient_text(c);
    if (first) {
      if (ct.negative) s += "-";
    } else {
      s += ct.negative ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += ct.text;
    } else if (ct.unit) {
      s += m.to_string();
    } else {
      s += ct.text + "*" + m.to_string();
    }
  }
  return s;
}

DiffPoly arith(ArithOp op, const DiffPoly& a, const DiffPoly& b, unsigned exponent) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::neg: return -a;
    case ArithOp::pow: return a.pow(exponent);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Derivations

DiffPoly derive(const Ring& ring, const DiffPoly& f, int i) {
  if (i < 1 || i > ring.m) {
    throw IndexError("derivation index " + std::to_string(i) + " outside 1.." + std::to_string(ring.m));
  }
  const MultiIndex step = MultiIndex::unit(i);
  DiffPoly r;
  for (const auto& [m, c] : f.terms()) {
    r.add_term(m, c.derivative(i));
    for (const auto& [v, e] : m.factors()) {
      DerivVar dv{v.family, v.index, v.theta + step};
      Monomial rest = m.without(v) * Monomial(v, e - 1) * Monomial(dv);
      r.add_term(rest, c * Scalar(static_cast<long>(e)));
    }
  }
  return r;
}

DiffPoly derive(const Ring& ring, const DiffPoly& f, const MultiIndex& theta) {
  DiffPoly r = f;
  for (int i = 1; i <= static_cast<int>(kMaxDerivations); ++i) {
    for (int k = 0; k < theta[static_cast<std::size_t>(i - 1)]; ++k) r = derive(ring, r, i);
  }
  return r;
}

DiffPoly formal_partial(const DiffPoly& f, const DerivVar& v) {
  DiffPoly r;
  for (const auto& [m, c] : f.terms()) {
    unsigned e = m.degree_in(v);
    if (e == 0) continue;
    r.add_term(m.without(v) * Monomial(v, e - 1), c * Scalar(static_cast<long>(e)));
  }
  return r;
}

DiffPoly coefficient_derivative(const DiffPoly& f, int var) {
  DiffPoly r;
  for (const auto& [m, c] : f.terms()) r.add_term(m, c.derivative(var));
  return r;
}

std::optional<DiffPoly> divide_exact(const DiffPoly& a, const DiffPoly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  const auto& [lm_b, lc_b] = *b.terms().begin();
  DiffPoly q;
  DiffPoly r = a;
  while (!r.is_zero()) {
    const auto& [lm_r, lc_r] = *r.terms().begin();
    if (!lm_b.divides(lm_r)) return std::nullopt;
    Monomial mq = lm_r.quotient(lm_b);
    Scalar cq = lc_r / lc_b;
    q.add_term(mq, cq);
    r -= b.times_monomial(mq, cq);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Model evaluation

std::string ModelPoint::to_string() const {
  std::string s;
  for (const auto& [i, p] : x) {
    if (!s.empty()) s += ", ";
    s += "x" + std::to_string(i) + " := " + p.to_string();
  }
  return s;
}

TPoly apply_theta(const TPoly& p, const MultiIndex& theta) {
  TPoly r = p;
  for (std::size_t i = 0; i < kMaxDerivations; ++i) {
    for (int k = 0; k < theta.e[i]; ++k) r = r.derivative(static_cast<int>(i) + 1);
  }
  return r;
}

namespace {

Scalar evaluate(const Ring& ring, const DiffPoly& f, const std::map<int, TPoly>& xs,
                const YAssignment* ys) {
  std::map<DerivVar, TPoly, CanonicalLess> cache;
  auto value_of = [&](const DerivVar& v) -> const TPoly& {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    const std::map<int, TPoly>* source = &xs;
    if (v.family == Family::y) {
      if (ys == nullptr) throw DomainError("y-variable " + v.to_string() + " in evaluation at a model point");
      source = ys;
    }
    auto found = source->find(v.index);
    if (found == source->end()) throw DomainError("unassigned variable " + v.to_string());
    for (std::size_t i = static_cast<std::size_t>(ring.m); i < kMaxDerivations; ++i) {
      if (v.theta.e[i] != 0) throw IndexError("derivation index out of range in " + v.to_string());
    }
    return cache.emplace(v, apply_theta(found->second, v.theta)).first->second;
  };
  Scalar total;
  for (const auto& [m, c] : f.terms()) {
    TPoly prod(Rational(1));
    for (const auto& [v, e] : m.factors()) prod = prod * value_of(v).pow(e);
    total += c * Scalar::from_poly(prod);
  }
  return total;
}

}  // namespace

Scalar eval_at_model_point(const Ring& ring, const DiffPoly& f, const ModelPoint& p) {
  return evaluate(ring, f, p.x, nullptr);
}

Scalar eval_at(const Ring& ring, const DiffPoly& f, const ModelPoint& a, const YAssignment& b) {
  return evaluate(ring, f, a.x, &b);
}

YAssignment d_of_point(const Ring& ring, const ModelPoint& p) {
  YAssignment out;
  for (const auto& [i, poly] : p.x) out.emplace(i, poly.derivative(ring.d_symbol()));
  return out;
}

void check_in_ring(const Ring& ring, const DiffPoly& f) {
  for (const auto& v : f.variables()) {
    if (v.index < 1 || v.index > ring.n) throw IndexError("variable index out of range in " + v.to_string());
    for (std::size_t i = static_cast<std::size_t>(ring.m); i < kMaxDerivations; ++i) {
      if (v.theta.e[i] != 0) throw IndexError("derivation index out of range in " + v.to_string());
    }
  }
  for (const auto& [m, c] : f.terms()) {
    int s = c.max_symbol();
    if (s > ring.t_count()) throw IndexError("t-symbol t" + std::to_string(s) + " out of range");
    if (s > 0 && ring.field == FieldMode::constants) {
      throw DomainError("t-symbols require field mode rational_t");
    }
  }
}

}  // namespace diffax
