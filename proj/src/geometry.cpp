#include "diffax/geometry.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "diffax/error.hpp"

namespace diffax {

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::certified: return "certified";
    case CertStatus::rejected: return "rejected";
    case CertStatus::conditional: return "conditional";
  }
  return "?";
}

std::string to_string(CertStage s) {
  switch (s) {
    case CertStage::none: return "none";
    case CertStage::autoreduce: return "autoreduce";
    case CertStage::coherence: return "coherence";
    case CertStage::primality: return "primality";
  }
  return "?";
}

std::string to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::found: return "found";
    case WitnessStatus::exhausted: return "exhausted";
    case WitnessStatus::invalid_instance: return "invalid_instance";
  }
  return "?";
}

namespace {

// Multi-indices of order <= k over m derivations, by order then lex.
std::vector<MultiIndex> thetas_up_to(int m, unsigned k) {
  std::vector<MultiIndex> out;
  std::vector<MultiIndex> layer{MultiIndex{}};
  out.push_back(MultiIndex{});
  for (unsigned ord = 1; ord <= k; ++ord) {
    std::set<MultiIndex> next;
    for (const auto& t : layer) {
      for (int i = 1; i <= m; ++i) next.insert(t + MultiIndex::unit(i));
    }
    layer.assign(next.begin(), next.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

bool vanishes_all(const Ring& ring, std::span<const DiffPoly> fs, const ModelPoint& a) {
  for (const auto& f : fs) {
    if (!eval_at_model_point(ring, f, a).is_zero()) return false;
  }
  return true;
}

bool nonzero_all(const Ring& ring, std::span<const DiffPoly> fs, const ModelPoint& a) {
  for (const auto& f : fs) {
    if (eval_at_model_point(ring, f, a).is_zero()) return false;
  }
  return true;
}

void push_unique(std::vector<DiffPoly>& v, DiffPoly p) {
  if (p.is_zero()) return;
  if (std::find(v.begin(), v.end(), p) != v.end()) return;
  v.push_back(std::move(p));
}

std::vector<DiffPoly> taus_of(const Ring& ring, std::span<const DiffPoly> fs) {
  std::vector<DiffPoly> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(tau(ring, f).value());
  return out;
}

// Rank of an integer value: 0 < 1 < -1 < 2 < -2 < ...
long value_of_rank(unsigned r) { return r % 2 == 1 ? static_cast<long>((r + 1) / 2) : -static_cast<long>(r / 2); }

}  // namespace

// ---------------------------------------------------------------------------
// Certification

CharSetCertificate charset_certify(const Ring& ring, std::span<const DiffPoly> s, const Ranking& r,
                                   const PrimalityConfig& config) {
  CharSetCertificate cert;
  cert.ring = ring;
  cert.ranking = r;
  cert.input.assign(s.begin(), s.end());

  AutoreduceResult ar;
  try {
    ar = autoreduced_check(ring, s, r);
  } catch (const DomainError& e) {
    cert.status = CertStatus::rejected;
    cert.stage = CertStage::autoreduce;
    cert.reason = e.what();
    return cert;
  }
  if (auto* rej = std::get_if<AutoreduceRejection>(&ar)) {
    cert.autoreduce_rejection = *rej;
    cert.status = CertStatus::rejected;
    cert.stage = CertStage::autoreduce;
    cert.reason = rej->reason;
    return cert;
  }
  cert.system = std::get<RankedSystem>(std::move(ar));

  cert.coherence = coherence_check(*cert.system);
  if (!cert.coherence->coherent) {
    cert.status = CertStatus::rejected;
    cert.stage = CertStage::coherence;
    for (const auto& p : cert.coherence->pairs) {
      if (!p.reduction.remainder.is_zero()) {
        cert.reason = "Delta-pair (" + std::to_string(p.first + 1) + ", " + std::to_string(p.second + 1) +
                      ") reduces to " + p.reduction.remainder.to_string();
        break;
      }
    }
    return cert;
  }

  cert.algebraic_ideal = buchberger(AlgIdeal::over_occurring(cert.system->polys()));
  cert.primality = primality_oracle(*cert.algebraic_ideal, config);
  cert.stage = CertStage::primality;
  const auto& pv = *cert.primality;
  if (pv.status == PrimalityStatus::not_prime) {
    cert.status = CertStatus::rejected;
    cert.reason = "algebraic ideal is not prime" + (pv.note.empty() ? std::string() : " (" + pv.note + ")");
  } else if (pv.status == PrimalityStatus::prime && pv.method != PrimalityMethod::certificate) {
    cert.status = CertStatus::certified;
    cert.stage = CertStage::none;
    cert.reason = "autoreduced, coherent, prime (" + to_string(pv.method) + ")";
  } else {
    cert.status = CertStatus::conditional;
    cert.reason = pv.status == PrimalityStatus::prime ? "primality asserted, not decided"
                                                      : "primality undecided within bounds";
  }
  return cert;
}

bool reverify(const CharSetCertificate& cert) {
  CharSetCertificate fresh;
  try {
    PrimalityConfig cfg;
    if (cert.primality && cert.primality->method == PrimalityMethod::certificate) cfg.assume_prime = true;
    fresh = charset_certify(cert.ring, cert.input, cert.ranking, cfg);
  } catch (const std::exception&) {
    return false;
  }
  if (fresh.status != cert.status || fresh.stage != cert.stage) return false;
  if (cert.system.has_value() != fresh.system.has_value()) return false;
  if (cert.system && cert.system->polys() != fresh.system->polys()) return false;
  if (cert.coherence) {
    for (const auto& p : cert.coherence->pairs) {
      if (!verify_certificate(p.reduction, *cert.system)) return false;
      if (p.reduction.input != p.value) return false;
    }
  }
  if (cert.primality && cert.primality->witness) {
    const auto& [f, g] = *cert.primality->witness;
    const auto& I = *cert.algebraic_ideal;
    if (!ideal_member(f * g, I).member || ideal_member(f, I).member || ideal_member(g, I).member) return false;
  }
  return true;
}

SatMembership sat_ideal_member(const DiffPoly& f, const CharSetCertificate& cert) {
  if (cert.status == CertStatus::rejected || !cert.system) {
    throw DomainError("membership needs a certified or conditional characteristic set");
  }
  SatMembership out;
  out.reduction = full_reduce(f, *cert.system);
  out.member = out.reduction.remainder.is_zero();
  return out;
}

std::vector<DiffPoly> saturation_members(const CharSetCertificate& cert, std::size_t count) {
  if (!cert.system) throw DomainError("membership needs a certified or conditional characteristic set");
  const Ring& ring = cert.ring;
  std::vector<DiffPoly> base;
  for (const auto& f : cert.system->polys()) {
    for (const auto& th : thetas_up_to(ring.m, 3)) push_unique(base, derive(ring, f, th));
  }
  std::vector<DiffPoly> mult;
  for (int j = 1; j <= ring.n; ++j) mult.push_back(DiffPoly::variable(DerivVar::x(j)));
  for (int j = 1; j <= ring.n; ++j) {
    for (int i = 1; i <= ring.m; ++i) mult.push_back(DiffPoly::variable(DerivVar::x(j, MultiIndex::unit(i))));
  }
  if (ring.field == FieldMode::rational_t) {
    for (int k = 1; k <= ring.t_count(); ++k) mult.push_back(DiffPoly(Scalar::symbol(k)));
  }
  if (!base.empty()) mult.push_back(base.front());

  std::vector<DiffPoly> cands = base;
  for (const auto& q : mult) {
    for (std::size_t i = 0; i < std::min<std::size_t>(2, base.size()); ++i) push_unique(cands, q * base[i]);
  }
  for (const auto& q : mult) {
    for (const auto& q2 : mult) push_unique(cands, q * q2 * base.front());
  }

  std::vector<DiffPoly> out;
  for (const auto& c : cands) {
    if (out.size() >= count) break;
    if (sat_ideal_member(c, cert).member) out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model search

std::vector<TPoly> candidate_polys(const Ring& ring, unsigned degree, unsigned height, std::size_t max_candidates) {
  const int k = ring.t_count();
  // Monomials of degree <= d, ascending graded.
  std::vector<TMonomial> mons;
  TMonomial cur{};
  auto rec = [&](auto&& self, int var, unsigned left) -> void {
    if (var > k) {
      mons.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[var - 1] = static_cast<std::uint16_t>(e);
      self(self, var + 1, left - e);
    }
    cur[var - 1] = 0;
  };
  rec(rec, 1, degree);
  std::sort(mons.begin(), mons.end(), [](const TMonomial& a, const TMonomial& b) {
    return compare_tmonomials(a, b) < 0;
  });

  const unsigned base = 2 * height + 1;
  long double total = 1;
  for (std::size_t i = 0; i < mons.size(); ++i) total *= base;
  if (total > static_cast<long double>(max_candidates)) {
    throw DomainError("candidate grid too large: " + std::to_string(static_cast<unsigned long long>(total)) +
                      " polynomials per variable");
  }

  struct Entry {
    unsigned deg;
    std::vector<unsigned> ranks;
    TPoly p;
  };
  std::vector<Entry> all;
  std::vector<unsigned> ranks(mons.size(), 0);
  while (true) {
    TPoly p;
    unsigned deg = 0;
    for (std::size_t i = 0; i < mons.size(); ++i) {
      if (ranks[i] == 0) continue;
      p = p + TPoly::monomial(mons[i], Rational(value_of_rank(ranks[i])));
      unsigned d = 0;
      for (auto e : mons[i]) d += e;
      deg = std::max(deg, d);
    }
    all.push_back({deg, ranks, std::move(p)});
    std::size_t i = mons.size();
    while (i > 0 && ++ranks[i - 1] == base) ranks[--i] = 0;
    if (i == 0) break;
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.ranks < b.ranks;
  });
  std::vector<TPoly> out;
  out.reserve(all.size());
  for (auto& e : all) out.push_back(std::move(e.p));
  return out;
}

EnumerationStats enumerate_points(const Ring& ring, const SearchBounds& bounds,
                                  const std::function<bool(const ModelPoint&)>& visit) {
  EnumerationStats st;
  auto cands = candidate_polys(ring, bounds.degree, bounds.height);
  std::vector<unsigned> degs;
  degs.reserve(cands.size());
  for (const auto& c : cands) degs.push_back(c.is_zero() ? 0u : static_cast<unsigned>(c.total_degree()));
  const int n = ring.n;

  for (unsigned D = 0; D <= bounds.degree; ++D) {
    std::size_t upto = 0;
    while (upto < cands.size() && degs[upto] <= D) ++upto;
    if (upto == 0) continue;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      bool has_top = false;
      for (auto i : idx) has_top = has_top || degs[i] == D;
      if (has_top) {
        if (st.visited >= bounds.max_candidates) {
          st.truncated = true;
          return st;
        }
        ModelPoint p;
        for (int j = 0; j < n; ++j) p.x[j + 1] = cands[idx[j]];
        ++st.visited;
        if (visit(p)) {
          st.stopped = true;
          return st;
        }
      }
      int j = n;
      while (j > 0 && ++idx[j - 1] == upto) idx[--j] = 0;
      if (j == 0) break;
    }
  }
  return st;
}

std::vector<DiffPoly> naive_prolongation_gens(const Ring& ring, std::span<const DiffPoly> s) {
  std::vector<DiffPoly> out;
  for (const auto& [f, tf] : tau_set(ring, s)) {
    out.push_back(f);
    out.push_back(tf);
  }
  return out;
}

namespace {

// Every b over the grid with tau f(a, b) = 0 for f in taus.
std::vector<YAssignment> y_solutions(const Ring& ring, const ModelPoint& a, std::span<const DiffPoly> taus,
                                     const SearchBounds& bounds, std::size_t cap) {
  std::vector<YAssignment> out;
  enumerate_points(ring, bounds, [&](const ModelPoint& b) {
    for (const auto& t : taus) {
      if (!eval_at(ring, t, a, b.x).is_zero()) return false;
    }
    out.push_back(b.x);
    return out.size() >= cap;
  });
  return out;
}

}  // namespace

std::vector<SamplePoint> sample_open_points(const CharSetCertificate& cert, std::span<const DiffPoly> extra,
                                            const SearchBounds& bounds, std::size_t count, std::uint64_t seed) {
  if (!cert.system) throw DomainError("sampling needs a certified or conditional characteristic set");
  const Ring& ring = cert.ring;
  auto lam = cert.system->polys();
  auto taus = taus_of(ring, lam);
  std::vector<DiffPoly> nonzero(extra.begin(), extra.end());
  nonzero.push_back(cert.system->h());

  constexpr std::size_t kMaxPairs = 50000;
  std::vector<SamplePoint> pool;
  enumerate_points(ring, bounds, [&](const ModelPoint& a) {
    if (!vanishes_all(ring, lam, a) || !nonzero_all(ring, nonzero, a)) return false;
    for (auto& b : y_solutions(ring, a, taus, bounds, kMaxPairs)) {
      pool.push_back({a, std::move(b)});
      if (pool.size() >= kMaxPairs) return true;
    }
    return false;
  });
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > count) pool.resize(count);
  return pool;
}

NaiveVsTauReport naive_vs_tau_demo(std::span<const DiffPoly> s, const CharSetCertificate& cert,
                                   const NaiveVsTauConfig& config) {
  const Ring& ring = cert.ring;
  NaiveVsTauReport rep;
  rep.naive_gens = naive_prolongation_gens(ring, s);
  rep.tested_members = saturation_members(cert, config.members);
  auto tested_taus = taus_of(ring, rep.tested_members);
  auto s_taus = taus_of(ring, s);

  // (a) points of V(f, tau f : f in S) that leave tau(V).
  auto st = enumerate_points(ring, config.bounds, [&](const ModelPoint& a) {
    if (!vanishes_all(ring, s, a)) return false;
    bool found = false;
    enumerate_points(ring, config.bounds, [&](const ModelPoint& bp) {
      ++rep.points_examined;
      for (const auto& t : s_taus) {
        if (!eval_at(ring, t, a, bp.x).is_zero()) return false;
      }
      for (std::size_t i = 0; i < tested_taus.size(); ++i) {
        if (!eval_at_model_point(ring, rep.tested_members[i], a).is_zero()) continue;
        Scalar v = eval_at(ring, tested_taus[i], a, bp.x);
        if (!v.is_zero()) {
          rep.discrepancy = Discrepancy{{a, bp.x}, rep.tested_members[i], tested_taus[i], v};
          found = true;
          return true;
        }
      }
      return false;
    });
    return found;
  });
  (void)st;

  // (b) sampled points of O stay inside every tested tau g.
  auto samples = sample_open_points(cert, {}, config.bounds, config.samples, config.seed);
  for (const auto& sp : samples) {
    ++rep.samples_checked;
    for (std::size_t i = 0; i < tested_taus.size(); ++i) {
      if (!eval_at(ring, tested_taus[i], sp.a, sp.b).is_zero()) {
        ++rep.sample_violations;
        break;
      }
    }
  }
  return rep;
}

OpenSetCheck open_set_equality_check(const CharSetCertificate& cert, const DiffPoly& g,
                                     std::span<const SamplePoint> samples) {
  OpenSetCheck out;
  auto mem = sat_ideal_member(g, cert);
  if (!mem.member) {
    out.precondition_failure = "g is not in the saturation ideal (remainder " + mem.reduction.remainder.to_string() + ")";
    return out;
  }
  const Ring& ring = cert.ring;
  out.ell = mem.reduction.h_exponent();
  const DiffPoly& h = cert.system->h();
  DiffPoly hl = h.pow(out.ell);
  DiffPoly tg = tau(ring, g).value();
  out.product_rule_identity = tau(ring, hl * g).value() == hl * tg + g * tau(ring, hl).value();

  auto lam = cert.system->polys();
  auto taus = taus_of(ring, lam);
  DiffPoly tpg = tau(ring, mem.reduction.premultiplier * g).value();
  bool all_zero = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& sp = samples[i];
    std::string why;
    if (!vanishes_all(ring, lam, sp.a)) {
      why = "L does not vanish at the sample";
    } else if (eval_at_model_point(ring, h, sp.a).is_zero()) {
      why = "H vanishes at the sample";
    } else {
      for (const auto& t : taus) {
        if (!eval_at(ring, t, sp.a, sp.b).is_zero()) why = "tau L does not vanish at the sample";
      }
    }
    if (!why.empty()) {
      out.failing_sample = i;
      out.precondition_failure = why;
      return out;
    }
    Scalar v = eval_at(ring, tg, sp.a, sp.b);
    if (!v.is_zero() || !eval_at(ring, tpg, sp.a, sp.b).is_zero()) all_zero = false;
    out.tau_values.push_back(std::move(v));
  }
  out.passed = out.product_rule_identity && all_zero;
  return out;
}

// ---------------------------------------------------------------------------
// Axiom instances

std::vector<DiffPoly> truncated_w_generators(const AxiomInstance& inst) {
  std::vector<DiffPoly> out;
  for (const auto& th : thetas_up_to(inst.ring.m, inst.order_bound)) {
    for (const auto& w : inst.w_gens) push_unique(out, derive(inst.ring, w, th));
  }
  return out;
}

namespace {

AlgIdeal w_ideal(const AxiomInstance& inst, std::span<const DiffPoly> also) {
  auto gens = truncated_w_generators(inst);
  std::set<DerivVar, CanonicalLess> vars;
  for (const auto& g : gens) {
    auto vs = g.variables();
    vars.insert(vs.begin(), vs.end());
  }
  for (const auto& g : also) {
    auto vs = g.variables();
    vars.insert(vs.begin(), vs.end());
  }
  AlgIdeal I;
  I.variables.assign(vars.rbegin(), vars.rend());
  I.generators = std::move(gens);
  return buchberger(I);
}

}  // namespace

InstanceValidation instance_validate(const AxiomInstance& inst) {
  InstanceValidation out;
  const Ring& ring = inst.ring;
  for (const auto& f : inst.lambda) {
    check_in_ring(ring, f);
    if (f.has_family(Family::y)) throw DomainError("L may only use x-variables");
  }
  for (const auto& f : inst.open_extra) {
    check_in_ring(ring, f);
    if (f.has_family(Family::y)) throw DomainError("open-set inequations may only use x-variables");
  }
  for (const auto& w : inst.w_gens) check_in_ring(ring, w);

  out.certificate = charset_certify(ring, inst.lambda, inst.ranking, inst.primality);
  if (out.certificate.status != CertStatus::certified) {
    out.failed_hypothesis = "characteristic set";
    out.detail = to_string(out.certificate.status) + ": " + out.certificate.reason;
    return out;
  }

  auto pairs = tau_set(ring, inst.lambda);
  std::vector<DiffPoly> flat;
  for (const auto& [f, tf] : pairs) {
    flat.push_back(f);
    flat.push_back(tf);
  }
  AlgIdeal I = w_ideal(inst, flat);
  bool contained = true;
  for (const auto& p : flat) {
    bool mem = ideal_member(p, I).member;
    out.containment.emplace_back(p, mem);
    if (!mem && contained) {
      contained = false;
      out.detail = p.to_string() + " is not in the ideal of W truncated at order " + std::to_string(inst.order_bound);
    }
  }
  if (!contained) {
    out.failed_hypothesis = "W inside V(f, tau f)";
    return out;
  }

  std::vector<DiffPoly> nonzero = inst.open_extra;
  nonzero.push_back(out.certificate.system->h());
  auto st = enumerate_points(ring, inst.bounds, [&](const ModelPoint& a) {
    if (vanishes_all(ring, inst.lambda, a) && nonzero_all(ring, nonzero, a)) {
      out.open_point = a;
      return true;
    }
    return false;
  });
  out.points_examined = st.visited;
  if (!out.open_point) {
    out.failed_hypothesis = "O nonempty";
    out.detail = "no point of O found on the grid (degree " + std::to_string(inst.bounds.degree) + ", height " +
                 std::to_string(inst.bounds.height) + ")";
    return out;
  }
  out.valid = true;
  return out;
}

ProjectionVerdict projection_closure_check(const AxiomInstance& inst, const InstanceValidation& validated) {
  if (!validated.valid) throw DomainError("projection check needs a validated instance");
  ProjectionVerdict out;
  out.order_bound = inst.order_bound;
  AlgIdeal I = w_ideal(inst, inst.lambda);
  std::vector<DerivVar> ys;
  for (const auto& v : I.variables) {
    if (v.family == Family::y) ys.push_back(v);
  }
  AlgIdeal E = eliminate(I, ys);
  const auto& sys = *validated.certificate.system;
  out.contains_open = true;
  for (const auto& e : E.generators) {
    auto red = full_reduce(e, sys);
    if (!red.remainder.is_zero()) out.contains_open = false;
    out.eliminants.emplace_back(e, red.remainder);
  }
  out.note = out.contains_open
                 ? "every x-eliminant of W (truncated at order " + std::to_string(inst.order_bound) +
                       ") lies in the saturation ideal"
                 : "some x-eliminant of W is not in the saturation ideal; the projection misses a dense part of O "
                   "at this truncation";
  return out;
}

std::vector<CheckEntry> witness_checks(const AxiomInstance& inst, const ModelPoint& a) {
  const Ring& ring = inst.ring;
  auto sys = require_autoreduced(ring, inst.lambda, inst.ranking);
  std::vector<CheckEntry> out;
  auto add = [&](std::string label, const DiffPoly& p, Scalar v, bool expect_zero) {
    bool ok = v.is_zero() == expect_zero;
    out.push_back({std::move(label), p, std::move(v), expect_zero, ok});
  };
  for (std::size_t i = 0; i < inst.lambda.size(); ++i) {
    add("L[" + std::to_string(i + 1) + "]", inst.lambda[i], eval_at_model_point(ring, inst.lambda[i], a), true);
  }
  add("H", sys.h(), eval_at_model_point(ring, sys.h(), a), false);
  for (std::size_t i = 0; i < inst.open_extra.size(); ++i) {
    add("O[" + std::to_string(i + 1) + "]", inst.open_extra[i], eval_at_model_point(ring, inst.open_extra[i], a),
        false);
  }
  YAssignment da = d_of_point(ring, a);
  for (std::size_t i = 0; i < inst.w_gens.size(); ++i) {
    add("W[" + std::to_string(i + 1) + "]", inst.w_gens[i], eval_at(ring, inst.w_gens[i], a, da), true);
  }
  return out;
}

WitnessReport witness_search(const AxiomInstance& inst, const InstanceValidation& validated) {
  WitnessReport rep;
  rep.bounds = inst.bounds;
  if (!validated.valid) {
    rep.status = WitnessStatus::invalid_instance;
    rep.detail = validated.failed_hypothesis + ": " + validated.detail;
    return rep;
  }
  const Ring& ring = inst.ring;
  const DiffPoly& h = validated.certificate.system->h();

  // Same order as witness_checks; stops at the first failure.
  auto first_failure = [&](const ModelPoint& a) -> std::string {
    for (std::size_t i = 0; i < inst.lambda.size(); ++i) {
      if (!eval_at_model_point(ring, inst.lambda[i], a).is_zero()) return "L[" + std::to_string(i + 1) + "]";
    }
    if (eval_at_model_point(ring, h, a).is_zero()) return "H";
    for (std::size_t i = 0; i < inst.open_extra.size(); ++i) {
      if (eval_at_model_point(ring, inst.open_extra[i], a).is_zero()) return "O[" + std::to_string(i + 1) + "]";
    }
    YAssignment da = d_of_point(ring, a);
    for (std::size_t i = 0; i < inst.w_gens.size(); ++i) {
      if (!eval_at(ring, inst.w_gens[i], a, da).is_zero()) return "W[" + std::to_string(i + 1) + "]";
    }
    return {};
  };

  constexpr std::size_t kMaxRecorded = 100000;
  auto st = enumerate_points(ring, inst.bounds, [&](const ModelPoint& a) {
    std::string fail = first_failure(a);
    if (fail.empty()) {
      rep.witness = a;
      return true;
    }
    if (rep.rejected.size() < kMaxRecorded) rep.rejected.push_back({a, std::move(fail)});
    return false;
  });
  rep.candidates_examined = st.visited;
  rep.truncated = st.truncated;

  if (rep.witness) {
    rep.checks = witness_checks(inst, *rep.witness);
    bool ok = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CheckEntry& c) { return c.passed; });
    if (!ok) throw std::logic_error("witness failed re-verification");
    rep.status = WitnessStatus::found;
    rep.detail = "witness found after " + std::to_string(rep.candidates_examined) + " candidates";
  } else {
    rep.status = WitnessStatus::exhausted;
    rep.detail = std::string(rep.truncated ? "candidate limit reached" : "grid exhausted") + " at degree " +
                 std::to_string(inst.bounds.degree) + ", height " + std::to_string(inst.bounds.height) +
                 "; no witness on this grid";
    if (rep.rejected.size() < rep.candidates_examined) rep.detail += " (rejection list capped)";
  }
  return rep;
}

}  // namespace diffax
