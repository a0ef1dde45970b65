#pragma once

// Random generators and independent oracles shared by the unit and
// acceptance tests. The oracles deliberately avoid the library's algebra:
// numeric evaluation of t-polynomials and a dense Gaussian-elimination span
// test written from scratch.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "diffax/diffpoly.hpp"
#include "diffax/parse.hpp"
#include "diffax/ranking.hpp"

namespace testsupport {

using namespace diffax;

/// a/b in lowest terms (mpq_class(a, b) is not canonicalized by GMP).
inline Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  long nonzero(int h) {
    int v = uniform(1, h);
    return coin() ? v : -v;
  }

  TPoly tpoly(const Ring& ring, int degree, int height, int terms) {
    TPoly p;
    for (int i = 0; i < terms; ++i) {
      TMonomial e{};
      int left = uniform(0, degree);
      for (int k = 0; k < ring.t_count() && left > 0; ++k) {
        int take = uniform(0, left);
        e[k] = static_cast<std::uint16_t>(take);
        left -= take;
      }
      p = p + TPoly::monomial(e, Rational(nonzero(height)));
    }
    return p;
  }

  Scalar scalar(const Ring& ring, int height) {
    if (ring.field == FieldMode::constants || coin(0.5)) return Scalar(frac(nonzero(height), uniform(1, 3)));
    TPoly num = tpoly(ring, 2, height, uniform(1, 2));
    if (num.is_zero()) num = TPoly(Rational(1));
    if (coin(0.2)) {
      TPoly den = TPoly::symbol(uniform(1, ring.t_count())) + TPoly(Rational(uniform(1, 3)));
      return Scalar::fraction(num, den);
    }
    return Scalar::from_poly(num);
  }

  DerivVar var(const Ring& ring, int max_order, Family fam = Family::x) {
    MultiIndex th;
    int ord = uniform(0, max_order);
    for (int k = 0; k < ord && ring.m > 0; ++k) th[uniform(0, ring.m - 1)] += 1;
    return {fam, uniform(1, ring.n), th};
  }

  DiffPoly poly(const Ring& ring, int terms, int degree, int max_order, int height) {
    DiffPoly p;
    for (int i = 0; i < terms; ++i) {
      Monomial m;
      int d = uniform(0, degree);
      for (int k = 0; k < d; ++k) m = m * Monomial(var(ring, max_order));
      p.add_term(m, scalar(ring, height));
    }
    return p;
  }

  ModelPoint point(const Ring& ring, int degree, int height) {
    ModelPoint p;
    for (int j = 1; j <= ring.n; ++j) p.x[j] = tpoly(ring, degree, height, uniform(1, 3));
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

/// p(values) computed term by term.
inline Rational tpoly_at(const TPoly& p, const std::vector<Rational>& values) {
  Rational s = 0;
  for (const auto& t : p.terms()) {
    Rational term = t.coef;
    for (std::size_t k = 0; k < values.size(); ++k) {
      for (unsigned e = 0; e < t.exps[k]; ++e) term *= values[k];
    }
    s += term;
  }
  return s;
}

/// True when f is a Q-linear combination of {mono * g : deg(mono * g) <= bound}
/// over the variables of gens and f. Dense Gaussian elimination; small inputs
/// only. Coefficients must be rational.
inline bool dense_span_member(const DiffPoly& f, const std::vector<DiffPoly>& gens, unsigned bound) {
  std::set<DerivVar, CanonicalLess> vs = f.variables();
  for (const auto& g : gens) {
    auto gv = g.variables();
    vs.insert(gv.begin(), gv.end());
  }
  std::vector<DerivVar> vars(vs.begin(), vs.end());
  // All monomials of degree <= k.
  auto monos = [&](unsigned k) {
    std::vector<Monomial> out{Monomial()};
    for (unsigned d = 0; d < k; ++d) {
      std::vector<Monomial> next = out;
      for (const auto& m : out) {
        if (m.degree() != d) continue;
        for (const auto& v : vars) {
          Monomial nm = m * Monomial(v);
          bool seen = false;
          for (const auto& x : next) seen = seen || x == nm;
          if (!seen) next.push_back(nm);
        }
      }
      out = std::move(next);
    }
    return out;
  };
  std::vector<DiffPoly> rows;
  for (const auto& g : gens) {
    if (g.is_zero() || g.total_degree() > bound) continue;
    for (const auto& m : monos(bound - g.total_degree())) rows.push_back(g.times_monomial(m, Scalar(1L)));
  }
  std::map<std::string, std::size_t> col;
  auto index_of = [&](const Monomial& m) {
    auto key = m.to_string();
    auto it = col.find(key);
    if (it != col.end()) return it->second;
    std::size_t i = col.size();
    col.emplace(key, i);
    return i;
  };
  auto dense = [&](const DiffPoly& p) {
    std::map<std::size_t, Rational> r;
    for (const auto& [m, c] : p.terms()) r[index_of(m)] = c.rational();
    return r;
  };
  std::vector<std::map<std::size_t, Rational>> mat;
  for (const auto& r : rows) mat.push_back(dense(r));
  auto target = dense(f);
  std::size_t ncols = col.size();
  std::vector<std::vector<Rational>> a;
  for (const auto& r : mat) {
    std::vector<Rational> row(ncols, 0);
    for (const auto& [i, c] : r) row[i] = c;
    a.push_back(std::move(row));
  }
  std::vector<Rational> t(ncols, 0);
  for (const auto& [i, c] : target) t[i] = c;
  // Row-reduce a, reducing t alongside.
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Rational q = a[r][c] / a[rank][c];
      for (std::size_t k = 0; k < ncols; ++k) a[r][k] -= q * a[rank][k];
    }
    if (t[c] != 0) {
      Rational q = t[c] / a[rank][c];
      for (std::size_t k = 0; k < ncols; ++k) t[k] -= q * a[rank][k];
    }
    ++rank;
  }
  for (const auto& v : t) {
    if (v != 0) return false;
  }
  return true;
}

}  // namespace testsupport
