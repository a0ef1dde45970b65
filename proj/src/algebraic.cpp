#include "diffax/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "diffax/error.hpp"

namespace diffax {

// ---------------------------------------------------------------------------
// Monomial orders

MonomialOrder MonomialOrder::parse(const std::string& text) {
  if (text == "grevlex") return grevlex();
  if (text == "lex") return lex();
  if (text.rfind("block:", 0) == 0) {
    try {
      return block(static_cast<std::size_t>(std::stoul(text.substr(6))));
    } catch (const std::exception&) {
    }
  }
  throw ParseError("monomial order must be grevlex, lex or block:<k>", 0);
}

std::string MonomialOrder::to_string() const {
  switch (kind) {
    case OrderKind::grevlex: return "grevlex";
    case OrderKind::lex: return "lex";
    case OrderKind::block: return "block:" + std::to_string(block_size);
  }
  return "?";
}

namespace {

using Exps = std::vector<std::uint32_t>;

int grevlex_range(const Exps& a, const Exps& b, std::size_t lo, std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Exps& a, const Exps& b) const {
  switch (kind) {
    case OrderKind::grevlex: return grevlex_range(a, b, 0, a.size());
    case OrderKind::lex:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
      return 0;
    case OrderKind::block: {
      std::size_t k = std::min(block_size, a.size());
      int c = grevlex_range(a, b, 0, k);
      return c != 0 ? c : grevlex_range(a, b, k, a.size());
    }
  }
  return 0;
}

namespace {

// ---------------------------------------------------------------------------
// Dense-exponent polynomials, terms in descending order.

struct Term {
  Exps e;
  Scalar c;
};
using Poly = std::vector<Term>;

unsigned degree_of(const Exps& e) { return std::accumulate(e.begin(), e.end(), 0U); }

unsigned total_degree(const Poly& p) {
  unsigned d = 0;
  for (const auto& t : p) d = std::max(d, degree_of(t.e));
  return d;
}

bool exps_divide(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Exps exps_sub(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Exps exps_add(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exps exps_lcm(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

// a + c * x^shift * b
Poly add_multiple(const Poly& a, const Poly& b, const Scalar& c, const Exps& shift, const MonomialOrder& ord) {
  Poly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Exps be;
  std::size_t be_for = b.size();
  while (i < a.size() || j < b.size()) {
    if (j < b.size() && be_for != j) {
      be = exps_add(b[j].e, shift);
      be_for = j;
    }
    int cmp;
    if (i == a.size()) cmp = -1;
    else if (j == b.size()) cmp = 1;
    else cmp = ord.compare(a[i].e, be);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({be, b[j].c * c});
      ++j;
    } else {
      Scalar s = a[i].c + b[j].c * c;
      if (!s.is_zero()) out.push_back({be, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly make_monic(const Poly& p) {
  if (p.empty() || p[0].c.is_one()) return p;
  Scalar inv = Scalar(1L) / p[0].c;
  Poly r = p;
  for (auto& t : r) t.c = t.c * inv;
  return r;
}

bool is_unit_poly(const Poly& p) { return p.size() == 1 && degree_of(p[0].e) == 0; }

Poly sort_terms(Poly p, const MonomialOrder& ord) {
  std::sort(p.begin(), p.end(), [&](const Term& a, const Term& b) { return ord.compare(a.e, b.e) > 0; });
  return p;
}

// Full reduction of p by G; quotients accumulated when q != nullptr.
Poly normal_form(Poly p, const std::vector<Poly>& g, const MonomialOrder& ord, std::vector<Poly>* q) {
  Poly r;
  while (!p.empty()) {
    const Term& lt = p.front();
    std::size_t i = 0;
    for (; i < g.size(); ++i) {
      if (exps_divide(g[i].front().e, lt.e)) break;
    }
    if (i == g.size()) {
      r.push_back(lt);
      p.erase(p.begin());
      continue;
    }
    Scalar c = lt.c / g[i].front().c;
    Exps m = exps_sub(lt.e, g[i].front().e);
    if (q != nullptr) (*q)[i].push_back({m, c});
    p = add_multiple(p, g[i], -c, m, ord);
  }
  return r;
}

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& ord) {
  Exps l = exps_lcm(f.front().e, g.front().e);
  Poly a = add_multiple({}, f, Scalar(1L) / f.front().c, exps_sub(l, f.front().e), ord);
  return add_multiple(a, g, -(Scalar(1L) / g.front().c), exps_sub(l, g.front().e), ord);
}

struct Pair {
  std::size_t i, j;
  Exps lcm;
};

std::vector<Poly> reduce_basis(std::vector<Poly> g, const MonomialOrder& ord) {
  // Drop elements whose leading monomial is divisible by another's.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (exps_divide(g[j].front().e, g[i].front().e)) {
        redundant = g[j].front().e != g[i].front().e || j < i;
      }
    }
    if (!redundant) minimal.push_back(make_monic(g[i]));
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    Poly head{minimal[i].front()};
    Poly tail(minimal[i].begin() + 1, minimal[i].end());
    Poly t = normal_form(tail, others, ord, nullptr);
    head.insert(head.end(), t.begin(), t.end());
    reduced.push_back(make_monic(head));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const Poly& a, const Poly& b) { return ord.compare(a.front().e, b.front().e) > 0; });
  return reduced;
}

std::vector<Poly> groebner(const std::vector<Poly>& gens, const MonomialOrder& ord) {
  std::vector<Poly> g;
  std::vector<Pair> pending;
  auto add_element = [&](Poly p) {
    std::size_t k = g.size();
    g.push_back(make_monic(p));
    for (std::size_t i = 0; i < k; ++i) pending.push_back({i, k, exps_lcm(g[i].front().e, g[k].front().e)});
  };
  for (const auto& p : gens) {
    if (p.empty()) continue;
    if (is_unit_poly(p)) return {Poly{{Exps(p[0].e.size(), 0), Scalar(1L)}}};
    add_element(p);
  }
  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::any_of(pending.begin(), pending.end(), [&](const Pair& q) { return q.i == a && q.j == b; });
  };
  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), [&](const Pair& a, const Pair& b) {
      int c = ord.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair pr = *best;
    pending.erase(best);
    const Exps& li = g[pr.i].front().e;
    const Exps& lj = g[pr.j].front().e;
    // Product criterion.
    if (exps_add(li, lj) == pr.lcm) continue;
    // Chain criterion.
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (exps_divide(g[k].front().e, pr.lcm) && !is_pending(pr.i, k) && !is_pending(pr.j, k)) chain = true;
    }
    if (chain) continue;
    Poly r = normal_form(s_polynomial(g[pr.i], g[pr.j], ord), g, ord, nullptr);
    if (r.empty()) continue;
    if (is_unit_poly(r)) return {Poly{{Exps(r[0].e.size(), 0), Scalar(1L)}}};
    add_element(std::move(r));
  }
  return reduce_basis(std::move(g), ord);
}

bool all_spolys_reduce(const std::vector<Poly>& g, const MonomialOrder& ord) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!normal_form(s_polynomial(g[i], g[j], ord), g, ord, nullptr).empty()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Conversions

class VarIndex {
 public:
  explicit VarIndex(const std::vector<DerivVar>& vars) : vars_(vars) {
    for (std::size_t i = 0; i < vars.size(); ++i) index_.emplace(vars[i], i);
  }

  Poly to_poly(const DiffPoly& f, const MonomialOrder& ord) const {
    Poly p;
    for (const auto& [m, c] : f.terms()) {
      Exps e(vars_.size(), 0);
      for (const auto& [v, k] : m.factors()) {
        auto it = index_.find(v);
        if (it == index_.end()) throw DomainError("variable " + v.to_string() + " is not among the ideal's variables");
        e[it->second] = k;
      }
      p.push_back({std::move(e), c});
    }
    return sort_terms(std::move(p), ord);
  }

  DiffPoly to_diff(const Poly& p) const {
    DiffPoly f;
    for (const auto& t : p) {
      Monomial m;
      for (std::size_t i = 0; i < t.e.size(); ++i) {
        if (t.e[i] > 0) m = m * Monomial(vars_[i], t.e[i]);
      }
      f.add_term(m, t.c);
    }
    return f;
  }

 private:
  std::vector<DerivVar> vars_;
  std::map<DerivVar, std::size_t, CanonicalLess> index_;
};

std::vector<Poly> to_polys(const std::vector<DiffPoly>& fs, const VarIndex& vi, const MonomialOrder& ord) {
  std::vector<Poly> out;
  for (const auto& f : fs) {
    Poly p = vi.to_poly(f, ord);
    if (!p.empty()) out.push_back(std::move(p));
  }
  return out;
}

std::vector<DiffPoly> basis_of(const AlgIdeal& ideal) {
  if (ideal.basis) return *ideal.basis;
  return *buchberger(ideal).basis;
}

}  // namespace

// ---------------------------------------------------------------------------
// AlgIdeal operations

AlgIdeal AlgIdeal::over_occurring(std::vector<DiffPoly> gens, MonomialOrder order) {
  std::set<DerivVar, CanonicalLess> vars;
  for (const auto& g : gens) {
    auto vs = g.variables();
    vars.insert(vs.begin(), vs.end());
  }
  AlgIdeal ideal;
  ideal.variables.assign(vars.rbegin(), vars.rend());
  ideal.generators = std::move(gens);
  ideal.order = order;
  return ideal;
}

bool AlgIdeal::is_unit() const {
  auto b = basis_of(*this);
  return b.size() == 1 && b[0].is_scalar();
}

bool AlgIdeal::is_zero() const { return basis_of(*this).empty(); }

void check_variables(const AlgIdeal& ideal, const DiffPoly& f) {
  for (const auto& v : f.variables()) {
    if (std::find(ideal.variables.begin(), ideal.variables.end(), v) == ideal.variables.end()) {
      throw DomainError("variable " + v.to_string() + " is not among the ideal's variables");
    }
  }
}

AlgIdeal buchberger(const AlgIdeal& ideal) {
  VarIndex vi(ideal.variables);
  std::vector<Poly> g = groebner(to_polys(ideal.generators, vi, ideal.order), ideal.order);
  if (!all_spolys_reduce(g, ideal.order)) throw std::logic_error("Groebner basis self-check failed");
  AlgIdeal out = ideal;
  std::vector<DiffPoly> basis;
  for (const auto& p : g) basis.push_back(vi.to_diff(p));
  out.basis = std::move(basis);
  return out;
}

bool verify_groebner(const AlgIdeal& ideal) {
  if (!ideal.basis) return false;
  VarIndex vi(ideal.variables);
  return all_spolys_reduce(to_polys(*ideal.basis, vi, ideal.order), ideal.order);
}

MembershipResult ideal_member(const DiffPoly& f, const AlgIdeal& ideal) {
  check_variables(ideal, f);
  VarIndex vi(ideal.variables);
  MembershipResult res;
  res.basis = basis_of(ideal);
  std::vector<Poly> g = to_polys(res.basis, vi, ideal.order);
  std::vector<Poly> q(g.size());
  Poly r = normal_form(vi.to_poly(f, ideal.order), g, ideal.order, &q);
  res.member = r.empty();
  res.remainder = vi.to_diff(r);
  DiffPoly recombined = res.remainder;
  for (std::size_t i = 0; i < q.size(); ++i) {
    res.quotients.push_back(vi.to_diff(q[i]));
    recombined += res.quotients.back() * res.basis[i];
  }
  res.certificate_verified = recombined == f;
  if (!res.certificate_verified) throw std::logic_error("division certificate failed to verify");
  return res;
}

DiffPoly normal_form(const DiffPoly& f, const AlgIdeal& ideal) {
  check_variables(ideal, f);
  VarIndex vi(ideal.variables);
  std::vector<Poly> g = to_polys(basis_of(ideal), vi, ideal.order);
  return vi.to_diff(normal_form(vi.to_poly(f, ideal.order), g, ideal.order, nullptr));
}

AlgIdeal eliminate(const AlgIdeal& ideal, const std::vector<DerivVar>& drop) {
  std::vector<DerivVar> dropped, kept;
  for (const auto& v : ideal.variables) {
    bool d = std::find(drop.begin(), drop.end(), v) != drop.end();
    (d ? dropped : kept).push_back(v);
  }
  for (const auto& v : drop) {
    if (std::find(ideal.variables.begin(), ideal.variables.end(), v) == ideal.variables.end()) {
      throw DomainError("cannot eliminate " + v.to_string() + ": not among the ideal's variables");
    }
  }
  std::vector<DerivVar> all = dropped;
  all.insert(all.end(), kept.begin(), kept.end());
  MonomialOrder ord = MonomialOrder::block(dropped.size());
  VarIndex vi(all);
  std::vector<Poly> g = groebner(to_polys(ideal.generators, vi, ord), ord);
  AlgIdeal out;
  out.variables = kept;
  out.order = ideal.order;
  for (const auto& p : g) {
    bool free = std::all_of(p.begin(), p.end(), [&](const Term& t) {
      for (std::size_t i = 0; i < dropped.size(); ++i) {
        if (t.e[i] != 0) return false;
      }
      return true;
    });
    if (free) out.generators.push_back(vi.to_diff(p));
  }
  return out;
}

AlgIdeal saturate(const AlgIdeal& ideal, const DiffPoly& h) {
  check_variables(ideal, h);
  // z is slot 0; the remaining slots follow ideal.variables.
  std::size_t k = ideal.variables.size();
  VarIndex vi(ideal.variables);
  MonomialOrder ord = MonomialOrder::block(1);
  auto lift = [&](const DiffPoly& f) {
    Poly p = vi.to_poly(f, MonomialOrder::grevlex());
    for (auto& t : p) t.e.insert(t.e.begin(), 0);
    return sort_terms(std::move(p), ord);
  };
  std::vector<Poly> gens;
  for (const auto& f : ideal.generators) {
    Poly p = lift(f);
    if (!p.empty()) gens.push_back(std::move(p));
  }
  Poly zh = lift(h);
  for (auto& t : zh) {
    t.e[0] += 1;
    t.c = -t.c;
  }
  Poly one{{Exps(k + 1, 0), Scalar(1L)}};
  gens.push_back(sort_terms(add_multiple(one, zh, Scalar(1L), Exps(k + 1, 0), ord), ord));
  std::vector<Poly> g = groebner(gens, ord);
  AlgIdeal out;
  out.variables = ideal.variables;
  out.order = ideal.order;
  for (const auto& p : g) {
    if (std::any_of(p.begin(), p.end(), [](const Term& t) { return t.e[0] != 0; })) continue;
    Poly q;
    for (const auto& t : p) q.push_back({Exps(t.e.begin() + 1, t.e.end()), t.c});
    out.generators.push_back(vi.to_diff(q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Macaulay matrix oracle

std::string to_string(MacaulayResult r) {
  switch (r) {
    case MacaulayResult::member: return "member";
    case MacaulayResult::not_member_at_bound: return "not_member_at_bound";
    case MacaulayResult::indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

void monomials_up_to(std::size_t nvars, unsigned max_degree, Exps& cur, std::size_t pos, unsigned used,
                     std::vector<Exps>& out) {
  if (pos == nvars) {
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; used + e <= max_degree; ++e) {
    cur[pos] = e;
    monomials_up_to(nvars, max_degree, cur, pos + 1, used + e, out);
  }
  cur[pos] = 0;
}

std::vector<Exps> monomials_up_to(std::size_t nvars, unsigned max_degree) {
  std::vector<Exps> out;
  Exps cur(nvars, 0);
  monomials_up_to(nvars, max_degree, cur, 0, 0, out);
  return out;
}

}  // namespace

MacaulayResult macaulay_member(const DiffPoly& f, const AlgIdeal& ideal, unsigned bound) {
  check_variables(ideal, f);
  if (f.is_zero()) return MacaulayResult::member;
  if (f.total_degree() > bound) return MacaulayResult::indeterminate;
  const MonomialOrder ord = MonomialOrder::grevlex();
  VarIndex vi(ideal.variables);
  std::map<Exps, Poly> pivots;
  auto reduce_row = [&](Poly row) {
    while (!row.empty()) {
      auto it = pivots.find(row.front().e);
      if (it == pivots.end()) break;
      row = add_multiple(row, it->second, -row.front().c, Exps(row.front().e.size(), 0), ord);
    }
    return row;
  };
  for (const auto& g : to_polys(ideal.generators, vi, ord)) {
    unsigned dg = total_degree(g);
    if (dg > bound) continue;
    for (const auto& m : monomials_up_to(ideal.variables.size(), bound - dg)) {
      Poly row = reduce_row(add_multiple({}, g, Scalar(1L), m, ord));
      if (row.empty()) continue;
      row = make_monic(row);
      pivots.emplace(row.front().e, std::move(row));
    }
  }
  return reduce_row(vi.to_poly(f, ord)).empty() ? MacaulayResult::member : MacaulayResult::not_member_at_bound;
}

// ---------------------------------------------------------------------------
// Primality

std::string to_string(PrimalityStatus s) {
  switch (s) {
    case PrimalityStatus::prime: return "prime";
    case PrimalityStatus::not_prime: return "not_prime";
    case PrimalityStatus::unknown: return "unknown";
  }
  return "?";
}

std::string to_string(PrimalityMethod m) {
  switch (m) {
    case PrimalityMethod::none: return "none";
    case PrimalityMethod::linear: return "linear";
    case PrimalityMethod::principal_irreducible: return "principal-irreducible";
    case PrimalityMethod::certificate: return "certificate";
    case PrimalityMethod::counterexample: return "counterexample";
  }
  return "?";
}

namespace {

bool verified_zero_divisor(const AlgIdeal& ideal, const DiffPoly& a, const DiffPoly& b) {
  return ideal_member(a * b, ideal).member && !ideal_member(a, ideal).member && !ideal_member(b, ideal).member;
}

mpz_class eval_int(const std::vector<std::pair<Exps, mpz_class>>& p, const std::vector<mpz_class>& pt) {
  mpz_class total = 0;
  for (const auto& [e, c] : p) {
    mpz_class term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= pt[i];
    }
    total += term;
  }
  return total;
}

struct FactorSearch {
  bool complete = false;  // the whole degree range was searched
  std::size_t examined = 0;
  unsigned degree_reached = 0;
  std::optional<std::pair<Poly, Poly>> factors;
};

// Trial factors g with integer coefficients in [-h, h], 1 <= deg g <= bound.
FactorSearch search_factors(const Poly& f, const MonomialOrder& ord, const PrimalityConfig& cfg) {
  FactorSearch out;
  std::size_t nv = f.front().e.size();
  // Integer, primitive copy of f.
  mpz_class den = 1;
  for (const auto& t : f) den = lcm(den, t.c.rational().get_den());
  std::vector<std::pair<Exps, mpz_class>> fi;
  mpz_class content = 0;
  for (const auto& t : f) {
    mpz_class c = mpz_class(t.c.rational() * den);
    content = gcd(content, c);
    fi.push_back({t.e, c});
  }
  for (auto& [e, c] : fi) c /= content;
  Exps max_deg(nv, 0);
  for (const auto& t : f) {
    for (std::size_t i = 0; i < nv; ++i) max_deg[i] = std::max(max_deg[i], t.e[i]);
  }
  const std::vector<std::vector<mpz_class>> points = {
      {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}, {-3, 4, -7, 9, -10, 12, -15, 16, -18, 21, -22, 25}};
  std::vector<mpz_class> f_at;
  for (const auto& pt : points) f_at.push_back(eval_int(fi, pt));

  unsigned fdeg = total_degree(f);
  unsigned target = fdeg / 2;
  unsigned upto = std::min(target, cfg.degree_bound);
  long h = static_cast<long>(cfg.height_bound);
  for (unsigned dg = 1; dg <= upto; ++dg) {
    std::vector<Exps> support;
    for (auto& m : monomials_up_to(nv, dg)) {
      bool ok = true;
      for (std::size_t i = 0; i < nv; ++i) ok = ok && m[i] <= max_deg[i];
      if (ok) support.push_back(std::move(m));
    }
    std::sort(support.begin(), support.end(), [&](const Exps& a, const Exps& b) { return ord.compare(a, b) > 0; });
    double space = std::pow(static_cast<double>(2 * h + 1), static_cast<double>(support.size()));
    if (space > static_cast<double>(cfg.max_candidates)) return out;
    std::vector<long> coefs(support.size(), -h);
    while (true) {
      ++out.examined;
      // Leading nonzero coefficient positive, some term of degree dg, primitive.
      std::size_t lead = 0;
      while (lead < coefs.size() && coefs[lead] == 0) ++lead;
      bool candidate = lead < coefs.size() && coefs[lead] > 0 && degree_of(support[lead]) == dg;
      if (candidate) {
        long g = 0;
        for (long c : coefs) g = std::gcd(g, c);
        candidate = g == 1;
      }
      if (candidate) {
        std::vector<std::pair<Exps, mpz_class>> gi;
        for (std::size_t i = 0; i < coefs.size(); ++i) {
          if (coefs[i] != 0) gi.push_back({support[i], mpz_class(coefs[i])});
        }
        for (std::size_t k = 0; k < points.size() && candidate; ++k) {
          mpz_class gv = eval_int(gi, points[k]);
          if (gv != 0 && f_at[k] % gv != 0) candidate = false;
        }
        if (candidate) {
          Poly g;
          for (const auto& [e, c] : gi) g.push_back({e, Scalar(Rational(c))});
          std::vector<Poly> q(1);
          Poly r = normal_form(f, {g}, ord, &q);
          if (r.empty()) {
            out.factors = std::make_pair(g, q[0]);
            out.degree_reached = dg;
            return out;
          }
        }
      }
      std::size_t pos = 0;
      while (pos < coefs.size() && coefs[pos] == h) coefs[pos++] = -h;
      if (pos == coefs.size()) break;
      ++coefs[pos];
    }
    out.degree_reached = dg;
  }
  out.complete = upto == target;
  return out;
}

bool all_rational(const Poly& p) {
  return std::all_of(p.begin(), p.end(), [](const Term& t) { return t.c.is_rational(); });
}

}  // namespace

PrimalityVerdict primality_oracle(const AlgIdeal& ideal, const PrimalityConfig& cfg) {
  PrimalityVerdict v;
  if (cfg.assume_prime) {
    v.status = PrimalityStatus::prime;
    v.method = PrimalityMethod::certificate;
    v.note = "primality asserted by the user";
    return v;
  }
  AlgIdeal gb = ideal.basis ? ideal : buchberger(ideal);
  const auto& basis = *gb.basis;
  if (basis.size() == 1 && basis[0].is_scalar()) {
    v.status = PrimalityStatus::not_prime;
    v.method = PrimalityMethod::counterexample;
    v.note = "unit ideal";
    return v;
  }
  if (std::all_of(basis.begin(), basis.end(), [](const DiffPoly& p) { return p.total_degree() <= 1; })) {
    v.status = PrimalityStatus::prime;
    v.method = PrimalityMethod::linear;
    v.note = "generated by affine-linear polynomials";
    return v;
  }
  VarIndex vi(gb.variables);
  if (basis.size() == 1) {
    Poly f = vi.to_poly(basis[0], gb.order);
    if (all_rational(f)) {
      FactorSearch fs = search_factors(f, gb.order, cfg);
      v.candidates_examined += fs.examined;
      if (fs.factors) {
        DiffPoly a = vi.to_diff(fs.factors->first), b = vi.to_diff(fs.factors->second);
        if (verified_zero_divisor(gb, a, b)) {
          v.status = PrimalityStatus::not_prime;
          v.method = PrimalityMethod::counterexample;
          v.witness = std::make_pair(a, b);
          v.note = "factorization of the principal generator";
          return v;
        }
      } else if (fs.complete) {
        v.status = PrimalityStatus::prime;
        v.method = PrimalityMethod::principal_irreducible;
        v.exhausted_degree = fs.degree_reached;
        v.exhausted_height = cfg.height_bound;
        v.note = "no integer factor of degree <= " + std::to_string(fs.degree_reached) + " and height <= " +
                 std::to_string(cfg.height_bound);
        return v;
      }
    }
  }
  // Zero-divisor probe over low-degree monomials and seeded random combinations.
  std::vector<DiffPoly> probes;
  for (const auto& e : monomials_up_to(gb.variables.size(), cfg.probe_degree)) {
    if (degree_of(e) == 0) continue;
    probes.push_back(vi.to_diff(Poly{{e, Scalar(1L)}}));
  }
  std::mt19937_64 rng(cfg.seed);
  std::size_t nmono = probes.size();
  if (nmono > 0) {
    std::uniform_int_distribution<std::size_t> pick(0, nmono - 1);
    std::uniform_int_distribution<long> coef(-static_cast<long>(cfg.height_bound), static_cast<long>(cfg.height_bound));
    for (unsigned s = 0; s < cfg.probe_samples; ++s) {
      DiffPoly p;
      for (int k = 0; k < 3; ++k) p += probes[pick(rng)].scaled(Scalar(coef(rng)));
      p += DiffPoly(Scalar(coef(rng)));
      if (!p.is_scalar()) probes.push_back(std::move(p));
    }
  }
  std::vector<DiffPoly> residues;
  for (const auto& p : probes) {
    if (!normal_form(p, gb).is_zero()) residues.push_back(p);
  }
  for (std::size_t i = 0; i < residues.size(); ++i) {
    for (std::size_t j = i; j < residues.size(); ++j) {
      ++v.candidates_examined;
      if (normal_form(residues[i] * residues[j], gb).is_zero() && verified_zero_divisor(gb, residues[i], residues[j])) {
        v.status = PrimalityStatus::not_prime;
        v.method = PrimalityMethod::counterexample;
        v.witness = std::make_pair(residues[i], residues[j]);
        v.note = "zero divisor found by probing";
        return v;
      }
    }
  }
  v.status = PrimalityStatus::unknown;
  v.note = "no decision within the configured bounds";
  return v;
}

}  // namespace diffax
