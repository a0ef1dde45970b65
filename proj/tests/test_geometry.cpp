#include <doctest.h>

#include "diffax/error.hpp"
#include "diffax/geometry.hpp"
#include "diffax/instance_file.hpp"
#include "support.hpp"

using namespace diffax;

namespace {

DiffPoly P(const char* s, const Ring& r) { return parse_poly(s, r); }

std::vector<DiffPoly> Ps(std::initializer_list<const char*> ss, const Ring& r) {
  std::vector<DiffPoly> out;
  for (auto s : ss) out.push_back(P(s, r));
  return out;
}

AxiomInstance basic_instance() {
  AxiomInstance inst;
  inst.ring = Ring{1, 1};
  inst.lambda = Ps({"d1x1"}, inst.ring);
  inst.w_gens = Ps({"d1x1", "d1y1", "y1 - 1"}, inst.ring);
  inst.bounds = {1, 1};
  return inst;
}

}  // namespace

TEST_CASE("charset_certify examples") {
  Ring r2{2, 1, FieldMode::rational_t};
  auto ok = charset_certify(r2, Ps({"d1x1 - 1", "d2x1"}, r2), Ranking::orderly());
  CHECK(ok.status == CertStatus::certified);
  CHECK(reverify(ok));

  auto inc = charset_certify(r2, Ps({"d1x1 - t2", "d2x1"}, r2), Ranking::orderly());
  CHECK(inc.status == CertStatus::rejected);
  CHECK(inc.stage == CertStage::coherence);
  REQUIRE(inc.coherence);
  CHECK(inc.coherence->pairs.at(0).reduction.remainder == DiffPoly(-1L));
  CHECK(reverify(inc));

  Ring r1{1, 1};
  auto sq = charset_certify(r1, Ps({"x1^2"}, r1), Ranking::orderly());
  CHECK(sq.status == CertStatus::rejected);
  CHECK(sq.stage == CertStage::primality);
  REQUIRE(sq.primality->witness);
  CHECK(sq.primality->witness->first == P("x1", r1));

  auto notred = charset_certify(r1, Ps({"x1", "x1^2"}, r1), Ranking::orderly());
  CHECK(notred.stage == CertStage::autoreduce);
  auto constant = charset_certify(r1, Ps({"3"}, r1), Ranking::orderly());
  CHECK(constant.status == CertStatus::rejected);

  auto asserted = charset_certify(r1, Ps({"x1^2"}, r1), Ranking::orderly(), PrimalityConfig{.assume_prime = true});
  CHECK(asserted.status == CertStatus::conditional);
}

TEST_CASE("sat_ideal_member examples") {
  Ring r{1, 1};
  auto c = charset_certify(r, Ps({"d1x1 - 1"}, r), Ranking::orderly());
  CHECK(sat_ideal_member(P("d1d1x1", r), c).member);
  CHECK_FALSE(sat_ideal_member(P("1", r), c).member);
  auto cx = charset_certify(r, Ps({"x1"}, r), Ranking::orderly());
  CHECK(sat_ideal_member(P("x1^2", r), cx).member);
  auto bad = charset_certify(r, Ps({"x1^2"}, r), Ranking::orderly());
  CHECK_THROWS_AS(sat_ideal_member(P("x1", r), bad), DomainError);

  auto ms = saturation_members(c, 10);
  CHECK(ms.size() == 10);
  for (const auto& g : ms) CHECK(sat_ideal_member(g, c).member);
}

TEST_CASE("candidate enumeration order") {
  Ring r{1, 1};
  auto c = candidate_polys(r, 1, 1);
  REQUIRE(c.size() == 27);
  CHECK(c[0].is_zero());
  CHECK(c[1] == TPoly(Rational(1)));
  CHECK(c[2] == TPoly(Rational(-1)));
  CHECK(c[3] == TPoly::symbol(1));
  CHECK(c[4] == -TPoly::symbol(1));
  CHECK(c[5] == TPoly::symbol(2));
  CHECK_THROWS_AS(candidate_polys(r, 6, 5, 1000), DomainError);

  Ring r2{1, 2};
  std::vector<std::string> seen;
  auto st = enumerate_points(r2, {0, 1}, [&](const ModelPoint& p) {
    seen.push_back(p.to_string());
    return false;
  });
  CHECK(st.visited == 9);
  CHECK_FALSE(st.truncated);
  CHECK(seen.front() == ModelPoint{{{1, TPoly()}, {2, TPoly()}}}.to_string());

  auto capped = enumerate_points(r2, {1, 1, 10}, [](const ModelPoint&) { return false; });
  CHECK(capped.visited == 10);
  CHECK(capped.truncated);
}

TEST_CASE("naive_prolongation_gens examples") {
  Ring r{1, 1};
  CHECK(naive_prolongation_gens(r, Ps({"x1^2"}, r)) == Ps({"x1^2", "2*x1*y1"}, r));
  CHECK(naive_prolongation_gens(r, Ps({"x1"}, r)) == Ps({"x1", "y1"}, r));
  CHECK(naive_prolongation_gens(r, Ps({"d1x1 - 1"}, r)) == Ps({"d1x1 - 1", "d1y1"}, r));
}

TEST_CASE("naive_vs_tau finds (0, 1) for x1^2") {
  Ring r{1, 1};
  auto cert = charset_certify(r, Ps({"x1"}, r), Ranking::orderly());
  NaiveVsTauConfig cfg;
  cfg.samples = 5;
  cfg.members = 4;
  auto rep = naive_vs_tau_demo(Ps({"x1^2"}, r), cert, cfg);
  REQUIRE(rep.discrepancy);
  CHECK(rep.discrepancy->point.a.x.at(1).is_zero());
  CHECK(rep.discrepancy->point.b.at(1) == TPoly(Rational(1)));
  // Replay: on V(naive gens), off tau V.
  for (const auto& g : rep.naive_gens) CHECK(eval_at(r, g, rep.discrepancy->point.a, rep.discrepancy->point.b).is_zero());
  CHECK_FALSE(rep.discrepancy->value.is_zero());
  CHECK(rep.sample_violations == 0);
}

TEST_CASE("open_set_equality_check examples") {
  Ring r{1, 1};
  auto cert = charset_certify(r, Ps({"d1x1 - 1"}, r), Ranking::orderly());
  SamplePoint sp;
  sp.a.x[1] = TPoly::symbol(1);
  sp.b[1] = TPoly(Rational(1));
  std::vector<SamplePoint> one{sp};
  auto chk = open_set_equality_check(cert, P("d1d1x1", r), one);
  CHECK(chk.passed);
  CHECK(chk.product_rule_identity);

  auto cx = charset_certify(r, Ps({"x1"}, r), Ranking::orderly());
  SamplePoint z;
  z.a.x[1] = TPoly();
  z.b[1] = TPoly();
  std::vector<SamplePoint> zs{z};
  CHECK(open_set_equality_check(cx, P("x1^3", r), zs).passed);

  // A sample off V(L) is a precondition failure, not a pass.
  SamplePoint off;
  off.a.x[1] = TPoly(Rational(1));
  off.b[1] = TPoly();
  std::vector<SamplePoint> offs{off};
  auto bad = open_set_equality_check(cx, P("x1^3", r), offs);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.failing_sample);
  CHECK(*bad.failing_sample == 0);

  auto notmember = open_set_equality_check(cx, P("x1 + 1", r), zs);
  CHECK_FALSE(notmember.passed);
  CHECK_FALSE(notmember.precondition_failure.empty());

  auto samples = sample_open_points(cert, {}, {2, 1}, 20, 3);
  CHECK(samples.size() == 20);
  for (const auto& g : saturation_members(cert, 5)) CHECK(open_set_equality_check(cert, g, samples).passed);
}

TEST_CASE("instance_validate examples") {
  auto inst = basic_instance();
  auto v = instance_validate(inst);
  CHECK(v.valid);
  REQUIRE(v.open_point);

  AxiomInstance empty_o;
  empty_o.ring = Ring{1, 1};
  empty_o.lambda = Ps({"x1"}, empty_o.ring);
  empty_o.open_extra = Ps({"x1"}, empty_o.ring);
  empty_o.w_gens = Ps({"x1", "y1"}, empty_o.ring);
  auto e = instance_validate(empty_o);
  CHECK_FALSE(e.valid);
  CHECK(e.failed_hypothesis == "O nonempty");

  AxiomInstance not_in;
  not_in.ring = Ring{1, 1};
  not_in.lambda = Ps({"x1"}, not_in.ring);
  not_in.w_gens = Ps({"y1"}, not_in.ring);
  auto n = instance_validate(not_in);
  CHECK_FALSE(n.valid);
  CHECK(n.failed_hypothesis == "W inside V(f, tau f)");

  AxiomInstance bad_lambda = basic_instance();
  bad_lambda.lambda = Ps({"x1^2"}, bad_lambda.ring);
  CHECK(instance_validate(bad_lambda).failed_hypothesis == "characteristic set");
}

TEST_CASE("projection_closure_check examples") {
  auto inst = basic_instance();
  auto pv = projection_closure_check(inst, instance_validate(inst));
  CHECK(pv.contains_open);
  bool saw = false;
  for (const auto& [e, rem] : pv.eliminants) {
    saw = saw || e == P("d1x1", inst.ring);
    CHECK(rem.is_zero());
  }
  CHECK(saw);

  auto more = basic_instance();
  more.w_gens.push_back(P("x1", more.ring));
  auto mv = instance_validate(more);
  REQUIRE(mv.valid);
  CHECK_FALSE(projection_closure_check(more, mv).contains_open);

  auto bare = basic_instance();
  bare.w_gens = Ps({"d1x1", "d1y1"}, bare.ring);
  CHECK(projection_closure_check(bare, instance_validate(bare)).contains_open);
}

TEST_CASE("witness_search examples") {
  auto inst = basic_instance();
  auto w = witness_search(inst, instance_validate(inst));
  REQUIRE(w.status == WitnessStatus::found);
  CHECK(w.witness->x.at(1) == TPoly::symbol(2));
  for (const auto& c : w.checks) CHECK(c.passed);
  CHECK(w.rejected.size() + 1 == w.candidates_examined);

  auto ex = basic_instance();
  ex.w_gens = Ps({"d1x1", "d1y1", "y1^2 + 1"}, ex.ring);
  auto we = witness_search(ex, instance_validate(ex));
  CHECK(we.status == WitnessStatus::exhausted);
  CHECK(we.candidates_examined == 27);
  CHECK(we.rejected.size() == 27);
  for (const auto& rc : we.rejected) {
    auto checks = witness_checks(ex, rc.point);
    bool any_fail = false;
    for (const auto& c : checks) {
      if (!c.passed) {
        CHECK(c.label == rc.failed_check);
        any_fail = true;
        break;
      }
    }
    CHECK(any_fail);
  }

  AxiomInstance invalid = basic_instance();
  invalid.lambda = Ps({"x1^2"}, invalid.ring);
  CHECK(witness_search(invalid, instance_validate(invalid)).status == WitnessStatus::invalid_instance);
}

TEST_CASE("instance file parsing") {
  auto f = parse_instance(R"(# comment
[ring]
m=1 n=2 field=rational_t ranking=elimination:2,1
[lambda]
d1x1 - t2   # trailing comment
[open]
x2
[W]
d1y1
[bounds]
order=2 degree=1 height=2 samples=7
)");
  CHECK(f.ring.m == 1);
  CHECK(f.ring.n == 2);
  CHECK(f.ring.field == FieldMode::rational_t);
  CHECK(f.ranking.kind() == Ranking::Kind::elimination);
  CHECK(f.lambda.size() == 1);
  CHECK(f.open.size() == 1);
  CHECK(f.w.size() == 1);
  CHECK(f.order == 2);
  CHECK(f.bounds.height == 2);
  CHECK(f.samples == 7);

  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_instance(text);
    } catch (const InstanceError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("[lambda]\nx1\n") == 2);
  CHECK(line_of("[ring]\nm=1 n=1\n[lambda]\nx1 +\n") == 4);
  CHECK(line_of("[ring]\nm=1 n=1\n[lambda]\ny1\n") == 4);
  CHECK(line_of("[ring]\nm=1 q=1\n") == 2);
  CHECK(line_of("[ring]\nm=1 n=1\n[bogus]\n") == 3);
  CHECK(line_of("[ring]\nm=1 n=1\n[bounds]\ndegree=-1\n") == 4);
  CHECK(line_of("x1\n") == 1);
  CHECK(line_of("") == 1);
  CHECK_THROWS_AS(load_instance("/nonexistent/file.axiom"), Error);
}
