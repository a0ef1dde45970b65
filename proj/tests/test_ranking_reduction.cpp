#include <doctest.h>

#include "diffax/error.hpp"
#include "diffax/reduction.hpp"
#include "support.hpp"

using namespace diffax;

namespace {

DiffPoly P(const char* s, const Ring& r) { return parse_poly(s, r); }

RankedSystem sys_of(const Ring& r, std::vector<DiffPoly> s, const Ranking& rk = Ranking::orderly()) {
  return require_autoreduced(r, s, rk);
}

// Independent expansion of premultiplier * f - remainder - sum cofactor * theta g.
DiffPoly certificate_defect(const Ring& r, const ReductionCertificate& c, const RankedSystem& sys) {
  DiffPoly d = c.premultiplier * c.input - c.remainder;
  for (const auto& [k, v] : c.cofactors) d -= v * derive(r, sys.elements()[k.element].poly, k.theta);
  return d;
}

}  // namespace

TEST_CASE("orderly ranking examples") {
  Ring r{2, 2};
  Ranking o = Ranking::orderly();
  CHECK(o.less(parse_var("d2x1", r), parse_var("d1x1", r)));
  CHECK(o.less(parse_var("x2", r), parse_var("d1x1", r)));
  CHECK(o.less(parse_var("x1", r), parse_var("x2", r)));
  CHECK(o.less(parse_var("d1d1x2", r), parse_var("y1", r)));
}

TEST_CASE("elimination ranking") {
  Ring r{1, 2};
  Ranking e = Ranking::parse("elimination:2,1");
  CHECK(e.less(parse_var("d1d1x2", r), parse_var("x1", r)));
  CHECK(e.to_string() == "elimination:2,1");
  CHECK_THROWS_AS(Ranking::parse("elimination:1").validate(r), IndexError);
  CHECK_THROWS(Ranking::parse("bogus"));
}

TEST_CASE("property: rankings are total orders compatible with derivation") {
  testsupport::Gen g(4242);
  Ring r{2, 3};
  for (const Ranking& rk : {Ranking::orderly(), Ranking::elimination({3, 1, 2})}) {
    for (int iter = 0; iter < 10000; ++iter) {
      DerivVar u = g.var(r, 3), v = g.var(r, 3), w = g.var(r, 3);
      int uv = rk.compare(u, v);
      CHECK(uv == -rk.compare(v, u));
      CHECK((uv == 0) == (u == v));
      if (rk.less(u, v) && rk.less(v, w)) CHECK(rk.less(u, w));
      int i = g.uniform(1, 2);
      DerivVar du{u.family, u.index, u.theta + MultiIndex::unit(i)};
      DerivVar dv{v.family, v.index, v.theta + MultiIndex::unit(i)};
      CHECK(rk.less(u, du));
      if (rk.less(u, v)) CHECK(rk.less(du, dv));
    }
  }
}

TEST_CASE("leader, initial, separant examples") {
  Ring r{2, 2};
  auto a = leader_initial_separant(P("x1*d1x1^2 + d2x1", r), Ranking::orderly());
  CHECK(a.leader == parse_var("d1x1", r));
  CHECK(a.initial == P("x1", r));
  CHECK(a.separant == P("2*x1*d1x1", r));
  auto b = leader_initial_separant(P("d1d2x1 + x1^3", r), Ranking::orderly());
  CHECK(b.leader == parse_var("d1d2x1", r));
  CHECK(b.initial == P("1", r));
  CHECK(b.separant == P("1", r));
  auto c = leader_initial_separant(P("x1*x2", r), Ranking::orderly());
  CHECK(c.leader == parse_var("x2", r));
  CHECK(c.initial == P("x1", r));
  CHECK(c.separant == P("x1", r));
  CHECK_THROWS_AS(leader_initial_separant(P("3", r), Ranking::orderly()), DomainError);
}

TEST_CASE("autoreduced_check examples") {
  Ring r{2, 1};
  std::vector<DiffPoly> ok{P("d1x1 - 1", r), P("d2x1", r)};
  auto res = autoreduced_check(r, ok, Ranking::orderly());
  REQUIRE(std::holds_alternative<RankedSystem>(res));
  CHECK(std::get<RankedSystem>(res).h() == DiffPoly(1L));

  std::vector<DiffPoly> bad1{P("x1", r), P("x1^2", r)};
  CHECK(std::holds_alternative<AutoreduceRejection>(autoreduced_check(r, bad1, Ranking::orderly())));
  std::vector<DiffPoly> bad2{P("x1", r), P("d1x1", r)};
  auto rej = autoreduced_check(r, bad2, Ranking::orderly());
  REQUIRE(std::holds_alternative<AutoreduceRejection>(rej));
  CHECK(std::get<AutoreduceRejection>(rej).second == 1);

  std::vector<DiffPoly> constant{P("x1", r), P("2", r)};
  CHECK_THROWS_AS(autoreduced_check(r, constant, Ranking::orderly()), DomainError);
  std::vector<DiffPoly> ys{P("y1", r)};
  CHECK_THROWS_AS(autoreduced_check(r, ys, Ranking::orderly()), DomainError);
}

TEST_CASE("partial_reduce examples") {
  Ring r{1, 1, FieldMode::rational_t};
  auto s = sys_of(r, {P("d1x1 - x1", r)});
  auto c = partial_reduce(P("d1d1x1", r), s);
  CHECK(c.remainder == P("x1", r));
  CHECK(c.premultiplier == DiffPoly(1L));
  CHECK(c.steps == 2);
  CHECK(c.cofactors.size() == 2);
  CHECK(verify_certificate(c, s));
  CHECK(certificate_defect(r, c, s).is_zero());

  auto s2 = sys_of(r, {P("d1x1", r)});
  auto c2 = partial_reduce(P("x1^5", r), s2);
  CHECK(c2.remainder == P("x1^5", r));
  CHECK(c2.steps == 0);

  auto s3 = sys_of(r, {P("x1^2 - t1", r)});
  auto c3 = partial_reduce(P("d1x1", r), s3);
  CHECK(c3.remainder == DiffPoly(1L));
  CHECK(c3.premultiplier == P("2*x1", r));
  CHECK(certificate_defect(r, c3, s3).is_zero());
}

TEST_CASE("full_reduce examples") {
  Ring r{1, 1, FieldMode::rational_t};
  auto s = sys_of(r, {P("x1", r)});
  auto c = full_reduce(P("x1", r), s);
  CHECK(c.remainder.is_zero());
  CHECK(c.premultiplier == DiffPoly(1L));

  auto s2 = sys_of(r, {P("x1^2 - t1", r)});
  CHECK(full_reduce(P("x1^2 - t1 + 1", r), s2).remainder == DiffPoly(1L));

  // delta_1^2 x_1 against {x_1 d1x1 - 1}: d1(x1 d1x1 - 1) = d1x1^2 + x1 d1d1x1, so
  // x1 d1d1x1 = -d1x1^2 mod the system, and x1^2 d1x1^2 = 1; the remainder is -1
  // with premultiplier x1^3.
  auto s3 = sys_of(r, {P("x1*d1x1 - 1", r)});
  auto c3 = full_reduce(P("d1d1x1", r), s3);
  CHECK(c3.remainder == DiffPoly(-1L));
  CHECK(c3.premultiplier == P("x1^3", r));
  CHECK(verify_certificate(c3, s3));
  CHECK(certificate_defect(r, c3, s3).is_zero());
  CHECK(is_reduced(c3.remainder, s3));
}

TEST_CASE("h_product examples") {
  Ring r{2, 1, FieldMode::rational_t};
  CHECK(h_product(sys_of(r, {P("d1x1 - 1", r)})) == DiffPoly(1L));
  CHECK(h_product(sys_of(r, {P("x1*d1x1^2 + d2x1", r)})) == P("2*x1^2*d1x1", r));
  CHECK(h_product(sys_of(r, {P("x1^2 - t1", r)})) == P("2*x1", r));
}

TEST_CASE("coherence examples") {
  Ring r{2, 1, FieldMode::rational_t};
  auto v = coherence_check(sys_of(r, {P("d1x1 - 1", r), P("d2x1", r)}));
  CHECK(v.coherent);
  REQUIRE(v.pairs.size() == 1);
  CHECK(v.pairs[0].value.is_zero());

  auto w = coherence_check(sys_of(r, {P("d1x1 - t2", r), P("d2x1", r)}));
  CHECK_FALSE(w.coherent);
  REQUIRE(w.pairs.size() == 1);
  CHECK(w.pairs[0].reduction.remainder == DiffPoly(-1L));

  CHECK(coherence_check(sys_of(r, {P("x1", r)})).coherent);
  CHECK(coherence_check(sys_of(r, {P("x1", r)})).pairs.empty());
}

TEST_CASE("property: reduction certificates are sound, remainders reduced, reduction idempotent") {
  testsupport::Gen g(31337);
  int systems = 0;
  for (int iter = 0; iter < 400 && systems < 120; ++iter) {
    Ring r{g.uniform(1, 2), g.uniform(1, 2), FieldMode::rational_t};
    std::vector<DiffPoly> s;
    int k = g.uniform(1, 2);
    for (int i = 0; i < k; ++i) s.push_back(g.poly(r, g.uniform(1, 3), 2, 1, 3));
    AutoreduceResult res;
    try {
      res = autoreduced_check(r, s, Ranking::orderly());
    } catch (const DomainError&) {
      continue;
    }
    if (!std::holds_alternative<RankedSystem>(res)) continue;
    ++systems;
    const auto& sys = std::get<RankedSystem>(res);
    DiffPoly f = g.poly(r, g.uniform(1, 4), 2, 2, 4);
    auto c = full_reduce(f, sys);
    CHECK(verify_certificate(c, sys));
    CHECK(certificate_defect(r, c, sys).is_zero());
    CHECK(is_reduced(c.remainder, sys));
    CHECK(premultiplier_divides_h_power(c, sys, c.h_exponent()));
    auto again = full_reduce(c.remainder, sys);
    CHECK(again.remainder == c.remainder);
    CHECK(again.steps == 0);

    auto pc = partial_reduce(f, sys);
    CHECK(certificate_defect(r, pc, sys).is_zero());
    CHECK(is_partially_reduced(pc.remainder, sys));
  }
  CHECK(systems >= 50);
}
