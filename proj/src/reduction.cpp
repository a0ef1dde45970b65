#include "diffax/reduction.hpp"

#include <algorithm>

#include "diffax/error.hpp"

namespace diffax {

struct RankedSystemBuilder {
  static RankedSystem make(const Ring& ring, const Ranking& r, std::vector<RankedElement> elements) {
    RankedSystem s;
    s.ring_ = ring;
    s.ranking_ = r;
    s.elements_ = std::move(elements);
    DiffPoly h(1L);
    for (const auto& e : s.elements_) h = h * e.initial * e.separant;
    s.h_ = std::move(h);
    return s;
  }
};

std::vector<DiffPoly> RankedSystem::polys() const {
  std::vector<DiffPoly> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.poly);
  return out;
}

AutoreduceResult autoreduced_check(const Ring& ring, std::span<const DiffPoly> s, const Ranking& r) {
  r.validate(ring);
  std::vector<RankedElement> elems;
  elems.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].is_scalar()) {
      throw DomainError("element " + std::to_string(i + 1) + " is a constant; constants are not allowed in a ranked system");
    }
    if (s[i].has_family(Family::y)) throw DomainError("ranked systems contain x-variables only");
    check_in_ring(ring, s[i]);
    LeaderData d = leader_initial_separant(s[i], r);
    elems.push_back({s[i], d.leader, d.degree, d.initial, d.separant});
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (i == j) continue;
      const auto& u = elems[i].leader;
      for (const auto& v : elems[j].poly.variables()) {
        if (v.is_proper_derivative_of(u)) {
          return AutoreduceRejection{i, j,
                                     "element " + std::to_string(j + 1) + " contains " + v.to_string() +
                                         ", a proper derivative of the leader " + u.to_string() + " of element " +
                                         std::to_string(i + 1)};
        }
      }
      unsigned d = elems[j].poly.degree_in(u);
      if (d >= elems[i].leader_degree) {
        return AutoreduceRejection{i, j,
                                   "element " + std::to_string(j + 1) + " contains the leader " + u.to_string() +
                                       " of element " + std::to_string(i + 1) + " at degree " + std::to_string(d) +
                                       " >= " + std::to_string(elems[i].leader_degree)};
      }
    }
  }
  std::stable_sort(elems.begin(), elems.end(),
                   [&](const RankedElement& a, const RankedElement& b) { return r.less(a.leader, b.leader); });
  return RankedSystemBuilder::make(ring, r, std::move(elems));
}

RankedSystem require_autoreduced(const Ring& ring, std::span<const DiffPoly> s, const Ranking& r) {
  auto res = autoreduced_check(ring, s, r);
  if (auto* rej = std::get_if<AutoreduceRejection>(&res)) throw DomainError("not autoreduced: " + rej->reason);
  return std::get<RankedSystem>(std::move(res));
}

DiffPoly h_product(const RankedSystem& sys) {
  DiffPoly h(1L);
  for (const auto& e : sys.elements()) h = h * e.initial * e.separant;
  return h;
}

unsigned ReductionCertificate::h_exponent() const {
  unsigned k = 0;
  for (auto p : initial_powers) k = std::max(k, p);
  for (auto p : separant_powers) k = std::max(k, p);
  return k;
}

namespace {

enum class StepKind { none, separant, initial };

struct Step {
  StepKind kind = StepKind::none;
  DerivVar var;
  std::size_t element = 0;
};

// Highest-ranked offending variable of r; ties between elements go to the
// element whose leader ranks highest.
Step choose_step(const DiffPoly& r, const RankedSystem& sys, bool full) {
  Step best;
  const Ranking& rk = sys.ranking();
  for (const auto& v : r.variables()) {
    if (v.family != Family::x) continue;
    if (best.kind != StepKind::none && rk.compare(v, best.var) <= 0) continue;
    const auto& elems = sys.elements();
    for (std::size_t k = elems.size(); k-- > 0;) {
      const auto& e = elems[k];
      if (v.is_proper_derivative_of(e.leader)) {
        best = {StepKind::separant, v, k};
        break;
      }
      // A leader of degree one has initial == separant, so dividing it out is
      // still a separant step.
      if (!full && v == e.leader && e.leader_degree == 1) {
        best = {StepKind::separant, v, k};
        break;
      }
      if (full && v == e.leader && r.degree_in(v) >= e.leader_degree) {
        best = {StepKind::initial, v, k};
        break;
      }
    }
  }
  return best;
}

ReductionCertificate reduce(const DiffPoly& f, const RankedSystem& sys, bool full) {
  ReductionCertificate cert;
  cert.input = f;
  cert.premultiplier = DiffPoly(1L);
  cert.initial_powers.assign(sys.size(), 0);
  cert.separant_powers.assign(sys.size(), 0);
  std::map<CofactorKey, DiffPoly> derived;
  DiffPoly r = f;

  auto derived_element = [&](const CofactorKey& key) -> const DiffPoly& {
    auto it = derived.find(key);
    if (it != derived.end()) return it->second;
    DiffPoly d = derive(sys.ring(), sys.elements()[key.element].poly, key.theta);
    return derived.emplace(key, std::move(d)).first->second;
  };

  auto premultiply = [&](const DiffPoly& m) {
    if (m == DiffPoly(1L)) return;
    r = m * r;
    for (auto& [k, c] : cert.cofactors) c = m * c;
    cert.premultiplier = m * cert.premultiplier;
  };

  while (true) {
    Step step = choose_step(r, sys, full);
    if (step.kind == StepKind::none) break;
    const auto& e = sys.elements()[step.element];
    unsigned k = r.degree_in(step.var);
    DiffPoly c = r.coefficient(step.var, k);
    CofactorKey key{step.element, MultiIndex{}};
    DiffPoly quotient;
    if (step.kind == StepKind::separant) {
      key.theta = step.var.theta - e.leader.theta;
      quotient = c * DiffPoly::term(Monomial(step.var, k - 1), Scalar(1L));
      premultiply(e.separant);
      cert.separant_powers[step.element]++;
    } else {
      quotient = c * DiffPoly::term(Monomial(step.var, k - e.leader_degree), Scalar(1L));
      premultiply(e.initial);
      cert.initial_powers[step.element]++;
    }
    r -= quotient * derived_element(key);
    cert.cofactors[key] += quotient;
    ++cert.steps;
  }
  for (auto it = cert.cofactors.begin(); it != cert.cofactors.end();) {
    it = it->second.is_zero() ? cert.cofactors.erase(it) : std::next(it);
  }
  cert.remainder = std::move(r);
  return cert;
}

}  // namespace

ReductionCertificate partial_reduce(const DiffPoly& f, const RankedSystem& sys) { return reduce(f, sys, false); }

ReductionCertificate full_reduce(const DiffPoly& f, const RankedSystem& sys) { return reduce(f, sys, true); }

bool verify_certificate(const ReductionCertificate& cert, const RankedSystem& sys) {
  if (cert.initial_powers.size() != sys.size() || cert.separant_powers.size() != sys.size()) return false;
  DiffPoly expected(1L);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    expected *= sys.elements()[i].initial.pow(cert.initial_powers[i]);
    expected *= sys.elements()[i].separant.pow(cert.separant_powers[i]);
  }
  if (expected != cert.premultiplier) return false;
  DiffPoly rhs;
  for (const auto& [key, c] : cert.cofactors) {
    if (key.element >= sys.size()) return false;
    rhs += c * derive(sys.ring(), sys.elements()[key.element].poly, key.theta);
  }
  return (cert.premultiplier * cert.input - cert.remainder - rhs).is_zero();
}

bool is_partially_reduced(const DiffPoly& f, const RankedSystem& sys) {
  for (const auto& v : f.variables()) {
    for (const auto& e : sys.elements()) {
      if (v.is_proper_derivative_of(e.leader)) return false;
    }
  }
  return true;
}

bool is_reduced(const DiffPoly& f, const RankedSystem& sys) {
  if (!is_partially_reduced(f, sys)) return false;
  for (const auto& e : sys.elements()) {
    if (f.degree_in(e.leader) >= e.leader_degree) return false;
  }
  return true;
}

bool premultiplier_divides_h_power(const ReductionCertificate& cert, const RankedSystem& sys, unsigned k) {
  return divide_exact(sys.h().pow(k), cert.premultiplier).has_value();
}

CoherenceVerdict coherence_check(const RankedSystem& sys) {
  CoherenceVerdict verdict;
  const auto& elems = sys.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const auto& lo = elems[i];
      const auto& hi = elems[j];
      if (lo.leader.family != hi.leader.family || lo.leader.index != hi.leader.index) continue;
      MultiIndex theta = MultiIndex::max(lo.leader.theta, hi.leader.theta);
      DiffPoly value = lo.separant * derive(sys.ring(), hi.poly, theta - hi.leader.theta) -
                       hi.separant * derive(sys.ring(), lo.poly, theta - lo.leader.theta);
      ReductionCertificate red = full_reduce(value, sys);
      if (!red.remainder.is_zero()) verdict.coherent = false;
      verdict.pairs.push_back({j, i, theta, std::move(value), std::move(red)});
    }
  }
  return verdict;
}

}  // namespace diffax
