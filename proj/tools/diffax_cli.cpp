// diffax: command-line front end for the differential-algebra kernel.
//
// Every command prints "key: value" lines followed by a JSON trailer between
// "--- trailer ---" and "--- end ---". With --machine only the trailer is
// printed. Exit codes: 0 success/found, 2 rejected/exhausted, 1 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "diffax/algebraic.hpp"
#include "diffax/error.hpp"
#include "diffax/geometry.hpp"
#include "diffax/instance_file.hpp"
#include "diffax/parse.hpp"
#include "diffax/prolongation.hpp"
#include "diffax/reduction.hpp"

using namespace diffax;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNegative = 2;

struct Options {
  int m = 1;
  int n = 1;
  std::string field = "constants";
  std::string ranking = "orderly";
  std::string order = "grevlex";
  std::uint64_t seed = 1;
  bool machine = false;
  unsigned degree_bound = 2;
  unsigned height_bound = 5;
  bool assume_prime = false;
};

class Report {
 public:
  explicit Report(std::string command) { trailer_["command"] = std::move(command); }

  void line(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  json& trailer() { return trailer_; }

  // Human line plus the same value in the trailer.
  void both(const std::string& key, const std::string& value) {
    line(key, value);
    trailer_[key] = value;
  }

  void print(bool machine) const {
    if (!machine) {
      for (const auto& [k, v] : lines_) std::cout << k << ": " << v << "\n";
    }
    std::cout << "--- trailer ---\n" << trailer_.dump(2) << "\n--- end ---\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
  json trailer_;
};

Ring ring_of(const Options& o) {
  Ring r;
  r.m = o.m;
  r.n = o.n;
  if (o.field == "constants") r.field = FieldMode::constants;
  else if (o.field == "rational_t") r.field = FieldMode::rational_t;
  else throw CLI::ValidationError("--field", "must be constants or rational_t");
  r.validate();
  return r;
}

std::vector<DiffPoly> parse_all(const std::vector<std::string>& texts, const Ring& ring) {
  std::vector<DiffPoly> out;
  for (const auto& t : texts) out.push_back(parse_poly(t, ring));
  return out;
}

json poly_list(const std::vector<DiffPoly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

std::string joined(const std::vector<DiffPoly>& ps) {
  std::string s = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].to_string();
  return s + "}";
}

// "x1=t2; x2=t1^2" (separators ';' or ',').
ModelPoint parse_point(const std::string& text, const Ring& ring) {
  ModelPoint p;
  std::string item;
  std::istringstream in(text);
  auto take = [&](std::string s) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("point", "expected x<i>=<poly>, got '" + s + "'");
    std::string lhs = s.substr(0, eq);
    lhs.erase(0, lhs.find_first_not_of(' '));
    lhs.erase(lhs.find_last_not_of(' ') + 1);
    DerivVar v = parse_var(lhs, ring);
    if (v.family != Family::x || !v.theta.is_zero()) throw CLI::ValidationError("point", "assign x<i> only");
    p.x[v.index] = parse_tpoly(s.substr(eq + 1), ring);
  };
  while (std::getline(in, item, ';')) {
    std::string piece;
    std::istringstream in2(item);
    while (std::getline(in2, piece, ',')) {
      if (piece.find_first_not_of(' ') != std::string::npos) take(piece);
    }
  }
  for (int j = 1; j <= ring.n; ++j) {
    if (!p.x.count(j)) throw CLI::ValidationError("point", "x" + std::to_string(j) + " is unassigned");
  }
  return p;
}

std::string point_text(const ModelPoint& p) { return p.to_string(); }

std::string y_text(const YAssignment& b) {
  std::string s;
  for (const auto& [j, v] : b) s += (s.empty() ? "" : ", ") + ("y" + std::to_string(j) + " := " + v.to_string());
  return s;
}

PrimalityConfig primality_config(const Options& o) {
  PrimalityConfig c;
  c.degree_bound = o.degree_bound;
  c.height_bound = o.height_bound;
  c.assume_prime = o.assume_prime;
  c.seed = o.seed;
  return c;
}

AlgIdeal ideal_of(const std::vector<DiffPoly>& gens, const std::vector<DiffPoly>& also, const Options& o) {
  std::vector<DiffPoly> all = gens;
  all.insert(all.end(), also.begin(), also.end());
  AlgIdeal tmpl = AlgIdeal::over_occurring(all, MonomialOrder::parse(o.order));
  tmpl.generators = gens;
  return tmpl;
}

void add_certificate(Report& rep, const ReductionCertificate& c, const RankedSystem& sys, const std::string& prefix) {
  rep.both(prefix + "remainder", c.remainder.to_string());
  rep.both(prefix + "premultiplier", c.premultiplier.to_string());
  rep.both(prefix + "h_exponent", std::to_string(c.h_exponent()));
  rep.both(prefix + "steps", std::to_string(c.steps));
  json cof = json::array();
  for (const auto& [k, v] : c.cofactors) {
    std::string th;
    for (int i = 0; i < sys.ring().m; ++i) th += std::string(k.theta[i], 'd') + (k.theta[i] ? std::to_string(i + 1) : "");
    if (th.empty()) th = "1";
    cof.push_back({{"element", k.element + 1}, {"theta", th}, {"cofactor", v.to_string()}});
    rep.line(prefix + "cofactor[" + std::to_string(k.element + 1) + "," + th + "]", v.to_string());
  }
  rep.trailer()[prefix + "cofactors"] = cof;
  bool ok = verify_certificate(c, sys);
  rep.both(prefix + "certificate_verified", ok ? "true" : "false");
  if (!ok) throw std::logic_error("reduction certificate failed re-verification");
}

json cert_json(const CharSetCertificate& c) {
  json j;
  j["status"] = to_string(c.status);
  j["stage"] = to_string(c.stage);
  j["reason"] = c.reason;
  j["input"] = poly_list(c.input);
  if (c.system) {
    j["h"] = c.system->h().to_string();
    json els = json::array();
    for (const auto& e : c.system->elements()) {
      els.push_back({{"poly", e.poly.to_string()},
                     {"leader", e.leader.to_string()},
                     {"initial", e.initial.to_string()},
                     {"separant", e.separant.to_string()}});
    }
    j["elements"] = els;
  }
  if (c.coherence) {
    json ps = json::array();
    for (const auto& p : c.coherence->pairs) {
      ps.push_back({{"first", p.first + 1},
                    {"second", p.second + 1},
                    {"value", p.value.to_string()},
                    {"remainder", p.reduction.remainder.to_string()}});
    }
    j["delta_pairs"] = ps;
  }
  if (c.primality) {
    j["primality"] = to_string(c.primality->status);
    j["primality_method"] = to_string(c.primality->method);
    if (c.primality->witness) {
      j["zero_divisor"] = {c.primality->witness->first.to_string(), c.primality->witness->second.to_string()};
    }
    j["primality_note"] = c.primality->note;
  }
  return j;
}

void print_cert(Report& rep, const CharSetCertificate& c) {
  rep.line("status", to_string(c.status));
  rep.line("stage", to_string(c.stage));
  rep.line("reason", c.reason);
  if (c.autoreduce_rejection) {
    rep.line("not_reduced", "element " + std::to_string(c.autoreduce_rejection->second + 1) + " w.r.t. element " +
                                std::to_string(c.autoreduce_rejection->first + 1));
  }
  if (c.system) {
    rep.line("H", c.system->h().to_string());
    for (const auto& e : c.system->elements()) {
      rep.line("element", e.poly.to_string() + "  [leader " + e.leader.to_string() + ", initial " +
                              e.initial.to_string() + ", separant " + e.separant.to_string() + "]");
    }
  }
  if (c.coherence) {
    for (const auto& p : c.coherence->pairs) {
      rep.line("delta_pair", "(" + std::to_string(p.first + 1) + ", " + std::to_string(p.second + 1) + ") " +
                                 p.value.to_string() + " -> " + p.reduction.remainder.to_string());
    }
  }
  if (c.primality) {
    rep.line("primality", to_string(c.primality->status) + " (" + to_string(c.primality->method) + ")");
    if (c.primality->witness) {
      rep.line("zero_divisor",
               c.primality->witness->first.to_string() + " * " + c.primality->witness->second.to_string());
    }
    if (!c.primality->note.empty()) rep.line("primality_note", c.primality->note);
  }
  bool ok = reverify(c);
  rep.line("reverified", ok ? "true" : "false");
  rep.trailer()["certificate"] = cert_json(c);
  rep.trailer()["reverified"] = ok;
  if (!ok) throw std::logic_error("certificate failed re-verification");
}

int cert_exit(const CharSetCertificate& c) { return c.status == CertStatus::rejected ? kNegative : kOk; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diffax: differential polynomials, prolongations and axiom-scheme instances"};
  app.require_subcommand(1);
  Options o;
  auto ring_opts = [&](CLI::App* c) {
    c->add_option("--m", o.m, "number of Delta-derivations")->check(CLI::Range(0, int(kMaxDerivations)));
    c->add_option("--n", o.n, "number of differential indeterminates")->check(CLI::PositiveNumber);
    c->add_option("--field", o.field, "constants | rational_t")->check(CLI::IsMember({"constants", "rational_t"}));
  };
  auto common = [&](CLI::App* c) {
    c->add_flag("--machine", o.machine, "print only the machine-readable trailer");
    c->add_option("--seed", o.seed, "seed recorded for randomized steps");
  };

  int code = kOk;
  std::function<int()> run;

  // parse
  std::string expr;
  auto* c_parse = app.add_subcommand("parse", "print the canonical form of a polynomial");
  c_parse->add_option("expr", expr)->required();
  ring_opts(c_parse);
  common(c_parse);
  c_parse->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      DiffPoly p = parse_poly(expr, ring);
      Report rep("parse");
      rep.both("poly", p.to_string());
      rep.both("total_degree", std::to_string(p.total_degree()));
      rep.both("roundtrip", parse_poly(p.to_string(), ring) == p ? "true" : "false");
      rep.print(o.machine);
      return kOk;
    };
  });

  // derive
  std::vector<int> by;
  auto* c_derive = app.add_subcommand("derive", "apply delta_i (repeatable --by)");
  c_derive->add_option("expr", expr)->required();
  c_derive->add_option("--by", by, "derivation indices, applied left to right")->required();
  ring_opts(c_derive);
  common(c_derive);
  c_derive->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      DiffPoly p = parse_poly(expr, ring);
      for (int i : by) p = derive(ring, p, i);
      Report rep("derive");
      rep.both("result", p.to_string());
      rep.print(o.machine);
      return kOk;
    };
  });

  // tau
  std::string check_point;
  auto* c_tau = app.add_subcommand("tau", "prolongation tau f");
  c_tau->add_option("expr", expr)->required();
  c_tau->add_option("--check-point", check_point, "model point \"x1=t2; x2=...\" for tau f(a, Da) = D(f(a))");
  ring_opts(c_tau);
  common(c_tau);
  c_tau->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      DiffPoly f = parse_poly(expr, ring);
      DiffPoly t = tau(ring, f).value();
      if (!check_point.empty()) {
        Report rep("tau");
        rep.both("tau", t.to_string());
        auto dc = d_compatibility_check(ring, f, parse_point(check_point, ring));
        rep.both("tau_at_point", dc.tau_value.to_string());
        rep.both("d_of_value", dc.d_of_value.to_string());
        rep.both("d_compatible", dc.holds ? "true" : "false");
        rep.print(o.machine);
        return dc.holds ? kOk : kNegative;
      }
      if (o.machine) {
        Report rep("tau");
        rep.trailer()["tau"] = t.to_string();
        rep.print(true);
      } else {
        std::cout << t.to_string() << "\n";
      }
      return kOk;
    };
  });

  // eval
  std::string point;
  auto* c_eval = app.add_subcommand("eval", "evaluate at a model point in Q[t1..t_{m+1}]");
  c_eval->add_option("expr", expr)->required();
  c_eval->add_option("--point", point, "\"x1=t2; x2=...\"")->required();
  ring_opts(c_eval);
  common(c_eval);
  c_eval->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      Report rep("eval");
      rep.both("value", eval_at_model_point(ring, parse_poly(expr, ring), parse_point(point, ring)).to_string());
      rep.print(o.machine);
      return kOk;
    };
  });

  // autoreduce / hprod / coherent / reduce
  std::vector<std::string> set_texts;
  auto system_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    ring_opts(c);
    common(c);
    c->add_option("--ranking", o.ranking, "orderly | elimination:i,j,...");
    return c;
  };
  auto* c_auto = system_cmd("autoreduce", "check that a set is autoreduced");
  c_auto->add_option("polys", set_texts)->required();
  c_auto->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      Ranking r = Ranking::parse(o.ranking);
      r.validate(ring);
      auto s = parse_all(set_texts, ring);
      auto res = autoreduced_check(ring, s, r);
      Report rep("autoreduce");
      if (auto* rej = std::get_if<AutoreduceRejection>(&res)) {
        rep.both("autoreduced", "false");
        rep.both("reason", rej->reason);
        rep.print(o.machine);
        return kNegative;
      }
      const auto& sys = std::get<RankedSystem>(res);
      rep.both("autoreduced", "true");
      rep.both("H", sys.h().to_string());
      json els = json::array();
      for (const auto& e : sys.elements()) {
        rep.line("leader", e.leader.to_string() + " in " + e.poly.to_string());
        els.push_back({{"poly", e.poly.to_string()}, {"leader", e.leader.to_string()}});
      }
      rep.trailer()["elements"] = els;
      rep.print(o.machine);
      return kOk;
    };
  });

  auto* c_hprod = system_cmd("hprod", "product of initials and separants");
  c_hprod->add_option("polys", set_texts)->required();
  c_hprod->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      Ranking r = Ranking::parse(o.ranking);
      auto s = parse_all(set_texts, ring);
      auto sys = require_autoreduced(ring, s, r);
      Report rep("hprod");
      rep.both("H", h_product(sys).to_string());
      rep.print(o.machine);
      return kOk;
    };
  });

  auto* c_coh = system_cmd("coherent", "Delta-pair coherence test");
  c_coh->add_option("polys", set_texts)->required();
  c_coh->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      Ranking r = Ranking::parse(o.ranking);
      auto s = parse_all(set_texts, ring);
      auto sys = require_autoreduced(ring, s, r);
      auto v = coherence_check(sys);
      Report rep("coherent");
      rep.both("coherent", v.coherent ? "true" : "false");
      json ps = json::array();
      for (const auto& p : v.pairs) {
        rep.line("delta_pair", p.value.to_string() + " -> " + p.reduction.remainder.to_string());
        if (!verify_certificate(p.reduction, sys)) throw std::logic_error("Delta-pair certificate failed");
        ps.push_back({{"value", p.value.to_string()}, {"remainder", p.reduction.remainder.to_string()}});
      }
      rep.trailer()["delta_pairs"] = ps;
      rep.print(o.machine);
      return v.coherent ? kOk : kNegative;
    };
  });

  bool partial = false;
  auto* c_reduce = system_cmd("reduce", "Ritt reduction of f against an autoreduced set");
  c_reduce->add_option("expr", expr)->required();
  c_reduce->add_option("--set", set_texts, "elements of the autoreduced set")->required();
  c_reduce->add_flag("--partial", partial, "partial reduction (separants only)");
  c_reduce->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      Ranking r = Ranking::parse(o.ranking);
      auto sys = require_autoreduced(ring, parse_all(set_texts, ring), r);
      DiffPoly f = parse_poly(expr, ring);
      auto c = partial ? partial_reduce(f, sys) : full_reduce(f, sys);
      Report rep(partial ? "reduce --partial" : "reduce");
      add_certificate(rep, c, sys, "");
      rep.print(o.machine);
      return kOk;
    };
  });

  // groebner / member / eliminate / saturate / prime
  std::vector<std::string> ideal_texts, drop_texts;
  std::string by_text;
  unsigned macaulay_bound = 0;
  auto alg_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    ring_opts(c);
    common(c);
    c->add_option("--order", o.order, "grevlex | lex | block:k");
    return c;
  };
  auto* c_gb = alg_cmd("groebner", "reduced Groebner basis");
  c_gb->add_option("polys", ideal_texts)->required();
  c_gb->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      auto I = buchberger(ideal_of(parse_all(ideal_texts, ring), {}, o));
      Report rep("groebner");
      for (const auto& g : *I.basis) rep.line("basis", g.to_string());
      rep.trailer()["basis"] = poly_list(*I.basis);
      bool ok = verify_groebner(I);
      rep.both("s_pairs_verified", ok ? "true" : "false");
      rep.print(o.machine);
      return kOk;
    };
  });

  auto* c_mem = alg_cmd("member", "ideal membership with quotient certificate");
  c_mem->add_option("expr", expr)->required();
  c_mem->add_option("--ideal", ideal_texts)->required();
  c_mem->add_option("--macaulay-bound", macaulay_bound, "also run the Macaulay-matrix oracle at this degree");
  c_mem->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      DiffPoly f = parse_poly(expr, ring);
      auto I = buchberger(ideal_of(parse_all(ideal_texts, ring), {f}, o));
      auto res = ideal_member(f, I);
      Report rep("member");
      rep.both("member", res.member ? "true" : "false");
      rep.both("remainder", res.remainder.to_string());
      for (std::size_t i = 0; i < res.basis.size(); ++i) {
        rep.line("quotient", res.quotients[i].to_string() + "  * (" + res.basis[i].to_string() + ")");
      }
      rep.trailer()["quotients"] = poly_list(res.quotients);
      rep.trailer()["basis"] = poly_list(res.basis);
      rep.both("certificate_verified", res.certificate_verified ? "true" : "false");
      if (macaulay_bound) rep.both("macaulay", to_string(macaulay_member(f, I, macaulay_bound)));
      rep.print(o.machine);
      return res.member ? kOk : kNegative;
    };
  });

  auto* c_elim = alg_cmd("eliminate", "intersect with the subring avoiding --drop");
  c_elim->add_option("--ideal", ideal_texts)->required();
  c_elim->add_option("--drop", drop_texts, "variables to eliminate")->required();
  c_elim->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      auto I = ideal_of(parse_all(ideal_texts, ring), {}, o);
      std::vector<DerivVar> drop;
      for (const auto& d : drop_texts) drop.push_back(parse_var(d, ring));
      auto E = eliminate(I, drop);
      Report rep("eliminate");
      for (const auto& g : E.generators) rep.line("generator", g.to_string());
      rep.trailer()["generators"] = poly_list(E.generators);
      rep.print(o.machine);
      return kOk;
    };
  });

  auto* c_sat = alg_cmd("saturate", "I : h^infinity");
  c_sat->add_option("--ideal", ideal_texts)->required();
  c_sat->add_option("--by", by_text, "the polynomial h")->required();
  c_sat->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      DiffPoly h = parse_poly(by_text, ring);
      auto S = saturate(ideal_of(parse_all(ideal_texts, ring), {h}, o), h);
      Report rep("saturate");
      for (const auto& g : S.generators) rep.line("generator", g.to_string());
      rep.trailer()["generators"] = poly_list(S.generators);
      rep.print(o.machine);
      return kOk;
    };
  });

  auto* c_prime = alg_cmd("prime", "bounded primality test of an algebraic ideal");
  c_prime->add_option("--ideal", ideal_texts)->required();
  c_prime->add_option("--degree-bound", o.degree_bound, "trial-factor degree bound");
  c_prime->add_option("--height-bound", o.height_bound, "trial-factor coefficient bound");
  c_prime->add_flag("--assume-prime", o.assume_prime, "record primality as asserted");
  c_prime->callback([&] {
    run = [&] {
      Ring ring = ring_of(o);
      auto I = ideal_of(parse_all(ideal_texts, ring), {}, o);
      auto v = primality_oracle(I, primality_config(o));
      Report rep("prime");
      rep.both("status", to_string(v.status));
      rep.both("method", to_string(v.method));
      if (v.witness) {
        rep.both("witness", v.witness->first.to_string() + " * " + v.witness->second.to_string());
      }
      if (v.method == PrimalityMethod::principal_irreducible) {
        rep.both("exhausted_degree", std::to_string(v.exhausted_degree));
        rep.both("exhausted_height", std::to_string(v.exhausted_height));
      }
      rep.both("candidates_examined", std::to_string(v.candidates_examined));
      if (!v.note.empty()) rep.both("note", v.note);
      rep.print(o.machine);
      return v.status == PrimalityStatus::not_prime ? kNegative : kOk;
    };
  });

  // certify
  std::string file;
  auto* c_cert = app.add_subcommand("certify", "autoreduced -> coherent -> prime pipeline");
  c_cert->add_option("file", file, "instance file with [ring] and [lambda]");
  c_cert->add_option("--set", set_texts, "system given inline instead of a file");
  c_cert->add_option("--ranking", o.ranking, "orderly | elimination:i,j,... (inline systems)");
  c_cert->add_option("--degree-bound", o.degree_bound, "trial-factor degree bound");
  c_cert->add_option("--height-bound", o.height_bound, "trial-factor coefficient bound");
  c_cert->add_flag("--assume-prime", o.assume_prime, "record primality as asserted");
  ring_opts(c_cert);
  common(c_cert);
  c_cert->callback([&] {
    run = [&] {
      Ring ring;
      Ranking r;
      std::vector<DiffPoly> s;
      if (!file.empty()) {
        auto inst = load_instance(file);
        ring = inst.ring;
        r = inst.ranking;
        s = inst.lambda;
      } else if (!set_texts.empty()) {
        ring = ring_of(o);
        r = Ranking::parse(o.ranking);
        r.validate(ring);
        s = parse_all(set_texts, ring);
      } else {
        throw CLI::ValidationError("certify", "give an instance file or --set");
      }
      auto c = charset_certify(ring, s, r, primality_config(o));
      Report rep("certify");
      print_cert(rep, c);
      rep.print(o.machine);
      return cert_exit(c);
    };
  });

  // sat-member
  auto* c_satm = app.add_subcommand("sat-member", "membership in [L]:H^inf for the [lambda] of a file");
  c_satm->add_option("file", file)->required();
  c_satm->add_option("expr", expr)->required();
  common(c_satm);
  c_satm->callback([&] {
    run = [&] {
      auto inst = load_instance(file);
      auto c = charset_certify(inst.ring, inst.lambda, inst.ranking);
      if (c.status == CertStatus::rejected) throw DomainError("the [lambda] system is rejected: " + c.reason);
      auto m = sat_ideal_member(parse_poly(expr, inst.ring), c);
      Report rep("sat-member");
      rep.both("member", m.member ? "true" : "false");
      add_certificate(rep, m.reduction, *c.system, "");
      rep.print(o.machine);
      return m.member ? kOk : kNegative;
    };
  });

  // open-set check
  std::vector<std::string> g_texts;
  std::size_t samples = 20;
  auto* c_open = app.add_subcommand("open-check", "replay tau g = 0 on sampled points of O for members g");
  c_open->add_option("file", file)->required();
  c_open->add_option("g", g_texts, "members of the saturation ideal")->required();
  c_open->add_option("--samples", samples, "samples per member");
  common(c_open);
  c_open->callback([&] {
    run = [&] {
      auto inst = load_instance(file);
      auto c = charset_certify(inst.ring, inst.lambda, inst.ranking);
      if (c.status == CertStatus::rejected) throw DomainError("the [lambda] system is rejected: " + c.reason);
      auto pts = sample_open_points(c, inst.open, inst.bounds, samples, o.seed);
      Report rep("open-check");
      rep.both("samples", std::to_string(pts.size()));
      bool all = true;
      json res = json::array();
      for (const auto& gt : g_texts) {
        DiffPoly g = parse_poly(gt, inst.ring);
        auto chk = open_set_equality_check(c, g, pts);
        all = all && chk.passed;
        std::string line = std::string(chk.passed ? "passed" : "failed") + " (ell " + std::to_string(chk.ell) +
                           ", identity " + (chk.product_rule_identity ? "ok" : "FAILED") + ")";
        if (!chk.precondition_failure.empty()) line += " " + chk.precondition_failure;
        rep.line("g " + g.to_string(), line);
        res.push_back({{"g", g.to_string()},
                       {"passed", chk.passed},
                       {"ell", chk.ell},
                       {"identity", chk.product_rule_identity},
                       {"precondition_failure", chk.precondition_failure}});
      }
      rep.trailer()["results"] = res;
      rep.trailer()["passed"] = all;
      rep.print(o.machine);
      return all ? kOk : kNegative;
    };
  });

  // axiom
  auto* c_axiom = app.add_subcommand("axiom", "geometric axiom-scheme instances");
  c_axiom->require_subcommand(1);
  auto load_validated = [&](Report& rep) {
    auto f = load_instance(file);
    auto inst = f.axiom_instance();
    auto v = instance_validate(inst);
    rep.both("valid", v.valid ? "true" : "false");
    if (!v.valid) rep.both("failed_hypothesis", v.failed_hypothesis);
    if (!v.detail.empty()) rep.both("detail", v.detail);
    rep.line("certificate", to_string(v.certificate.status) + " (" + v.certificate.reason + ")");
    rep.trailer()["certificate"] = cert_json(v.certificate);
    json cont = json::array();
    for (const auto& [p, ok] : v.containment) {
      rep.line("in <W>", p.to_string() + (ok ? " yes" : " no"));
      cont.push_back({{"poly", p.to_string()}, {"member", ok}});
    }
    rep.trailer()["containment"] = cont;
    if (v.open_point) rep.both("open_point", point_text(*v.open_point));
    return std::make_pair(inst, v);
  };
  auto* c_val = c_axiom->add_subcommand("validate", "check the instance hypotheses");
  c_val->add_option("file", file)->required();
  common(c_val);
  c_val->callback([&] {
    run = [&] {
      Report rep("axiom validate");
      auto [inst, v] = load_validated(rep);
      rep.print(o.machine);
      return v.valid ? kOk : kNegative;
    };
  });
  auto* c_proj = c_axiom->add_subcommand("project", "elimination surrogate for the projection condition");
  c_proj->add_option("file", file)->required();
  common(c_proj);
  c_proj->callback([&] {
    run = [&] {
      Report rep("axiom project");
      auto [inst, v] = load_validated(rep);
      if (!v.valid) {
        rep.print(o.machine);
        return kNegative;
      }
      auto pv = projection_closure_check(inst, v);
      rep.both("contains_open", pv.contains_open ? "true" : "false");
      rep.both("order_bound", std::to_string(pv.order_bound));
      json el = json::array();
      for (const auto& [e, r] : pv.eliminants) {
        rep.line("eliminant", e.to_string() + " -> " + r.to_string());
        el.push_back({{"eliminant", e.to_string()}, {"remainder", r.to_string()}});
      }
      rep.trailer()["eliminants"] = el;
      rep.both("note", pv.note);
      rep.print(o.machine);
      return pv.contains_open ? kOk : kNegative;
    };
  });
  bool show_rejected = false;
  auto* c_wit = c_axiom->add_subcommand("witness", "search the bounded model for a witness");
  c_wit->add_option("file", file)->required();
  c_wit->add_flag("--transcript", show_rejected, "list every rejected candidate");
  common(c_wit);
  c_wit->callback([&] {
    run = [&] {
      Report rep("axiom witness");
      auto [inst, v] = load_validated(rep);
      auto w = witness_search(inst, v);
      rep.both("status", to_string(w.status));
      rep.both("bounds", "degree " + std::to_string(w.bounds.degree) + ", height " + std::to_string(w.bounds.height));
      rep.both("candidates_examined", std::to_string(w.candidates_examined));
      rep.both("truncated", w.truncated ? "true" : "false");
      if (w.witness) rep.both("witness", point_text(*w.witness));
      json checks = json::array();
      for (const auto& c : w.checks) {
        rep.line("check " + c.label, c.poly.to_string() + " -> " + c.value.to_string() +
                                         (c.expect_zero ? " (= 0 " : " (!= 0 ") + (c.passed ? "ok)" : "FAILED)"));
        checks.push_back({{"label", c.label},
                          {"poly", c.poly.to_string()},
                          {"value", c.value.to_string()},
                          {"expect_zero", c.expect_zero},
                          {"passed", c.passed}});
      }
      rep.trailer()["checks"] = checks;
      json rej = json::array();
      for (const auto& r : w.rejected) {
        if (show_rejected || w.status != WitnessStatus::found) rep.line("rejected", point_text(r.point) + " [" + r.failed_check + "]");
        rej.push_back({{"point", point_text(r.point)}, {"failed", r.failed_check}});
      }
      rep.trailer()["rejected"] = rej;
      rep.both("detail", w.detail);
      rep.print(o.machine);
      return w.status == WitnessStatus::found ? kOk : kNegative;
    };
  });

  // demo
  auto* c_demo = app.add_subcommand("demo", "demonstrations");
  c_demo->require_subcommand(1);
  auto* c_nvt = c_demo->add_subcommand("naive-vs-tau", "V(f, tau f : f in S) against tau V");
  c_nvt->add_option("file", file, "file with [S], [lambda] and [bounds]")->required();
  common(c_nvt);
  c_nvt->callback([&] {
    run = [&] {
      auto f = load_instance(file);
      if (f.s.empty()) f.s = f.lambda;
      auto c = charset_certify(f.ring, f.lambda, f.ranking);
      if (c.status == CertStatus::rejected) throw DomainError("the [lambda] system is rejected: " + c.reason);
      NaiveVsTauConfig cfg;
      cfg.bounds = f.bounds;
      cfg.samples = f.samples;
      cfg.members = f.members;
      cfg.seed = f.seed;
      auto r = naive_vs_tau_demo(f.s, c, cfg);
      Report rep("demo naive-vs-tau");
      rep.both("S", joined(f.s));
      rep.both("lambda", joined(f.lambda));
      rep.both("certificate", to_string(c.status));
      rep.both("naive_generators", joined(r.naive_gens));
      rep.both("tested_members", joined(r.tested_members));
      rep.trailer()["naive_generators"] = poly_list(r.naive_gens);
      rep.trailer()["tested_members"] = poly_list(r.tested_members);
      if (r.discrepancy) {
        const auto& d = *r.discrepancy;
        rep.both("discrepancy", "(" + point_text(d.point.a) + "; " + y_text(d.point.b) + ")");
        rep.both("violated", d.violated.to_string());
        rep.both("tau_violated", d.tau_violated.to_string());
        rep.both("tau_value", d.value.to_string());
        // Independent replay.
        bool on_naive = true;
        for (const auto& g : r.naive_gens) on_naive = on_naive && eval_at(f.ring, g, d.point.a, d.point.b).is_zero();
        bool off_tau = !eval_at(f.ring, d.tau_violated, d.point.a, d.point.b).is_zero();
        rep.both("replayed", on_naive && off_tau ? "true" : "false");
        if (!(on_naive && off_tau)) throw std::logic_error("discrepancy failed re-verification");
      } else {
        rep.both("discrepancy", "none on the grid");
      }
      rep.both("points_examined", std::to_string(r.points_examined));
      rep.both("samples_checked", std::to_string(r.samples_checked));
      rep.both("sample_violations", std::to_string(r.sample_violations));
      rep.print(o.machine);
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    code = run ? run() : kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
