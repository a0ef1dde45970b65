#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diffax/algebraic.hpp"
#include "diffax/error.hpp"
#include "diffax/geometry.hpp"
#include "diffax/instance_file.hpp"
#include "diffax/parse.hpp"
#include "diffax/prolongation.hpp"
#include "diffax/reduction.hpp"

namespace py = pybind11;
using namespace diffax;

namespace {

Ring make_ring(int m, int n, const std::string& field) {
  Ring r{m, n, FieldMode::constants};
  if (field == "rational_t") r.field = FieldMode::rational_t;
  else if (field != "constants") throw py::value_error("field must be 'constants' or 'rational_t'");
  return r;
}

std::vector<DiffPoly> parse_all(const std::vector<std::string>& texts, const Ring& r) {
  std::vector<DiffPoly> out;
  for (const auto& t : texts) out.push_back(parse_poly(t, r));
  return out;
}

std::vector<std::string> texts(const std::vector<DiffPoly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

py::dict certificate_dict(const ReductionCertificate& c, const RankedSystem& sys) {
  py::dict d;
  d["remainder"] = c.remainder.to_string();
  d["premultiplier"] = c.premultiplier.to_string();
  d["h_exponent"] = c.h_exponent();
  d["steps"] = c.steps;
  d["verified"] = verify_certificate(c, sys);
  return d;
}

}  // namespace

PYBIND11_MODULE(_diffax, mod) {
  mod.doc() = "Differential polynomials, Ritt reduction, prolongation and bounded model checks.";

  py::register_exception<Error>(mod, "DiffaxError", PyExc_ValueError);

  mod.def(
      "parse",
      [](const std::string& f, int m, int n, const std::string& field) {
        return parse_poly(f, make_ring(m, n, field)).to_string();
      },
      py::arg("f"), py::arg("m") = 1, py::arg("n") = 1, py::arg("field") = "constants",
      "Canonical form of a differential polynomial.");

  mod.def(
      "derive",
      [](const std::string& f, int i, int m, int n, const std::string& field) {
        Ring r = make_ring(m, n, field);
        return derive(r, parse_poly(f, r), i).to_string();
      },
      py::arg("f"), py::arg("i"), py::arg("m") = 1, py::arg("n") = 1, py::arg("field") = "constants");

  mod.def(
      "tau",
      [](const std::string& f, int m, int n, const std::string& field) {
        Ring r = make_ring(m, n, field);
        return tau(r, parse_poly(f, r)).value().to_string();
      },
      py::arg("f"), py::arg("m") = 1, py::arg("n") = 1, py::arg("field") = "constants",
      "Prolongation tau f, linear in the y-variables.");

  mod.def(
      "reduce",
      [](const std::string& f, const std::vector<std::string>& set, int m, int n, const std::string& field,
         const std::string& ranking, bool partial) {
        Ring r = make_ring(m, n, field);
        auto gens = parse_all(set, r);
        RankedSystem sys = require_autoreduced(r, gens, Ranking::parse(ranking));
        DiffPoly p = parse_poly(f, r);
        return certificate_dict(partial ? partial_reduce(p, sys) : full_reduce(p, sys), sys);
      },
      py::arg("f"), py::arg("set"), py::arg("m") = 1, py::arg("n") = 1, py::arg("field") = "constants",
      py::arg("ranking") = "orderly", py::arg("partial") = false);

  mod.def(
      "groebner",
      [](const std::vector<std::string>& gens, int m, int n, const std::string& field, const std::string& order) {
        Ring r = make_ring(m, n, field);
        AlgIdeal I = buchberger(AlgIdeal::over_occurring(parse_all(gens, r), MonomialOrder::parse(order)));
        return texts(*I.basis);
      },
      py::arg("gens"), py::arg("m") = 1, py::arg("n") = 1, py::arg("field") = "constants",
      py::arg("order") = "grevlex", "Reduced Groebner basis over the occurring derivative variables.");

  mod.def(
      "member",
      [](const std::string& f, const std::vector<std::string>& gens, int m, int n, const std::string& field) {
        Ring r = make_ring(m, n, field);
        auto all = parse_all(gens, r);
        DiffPoly p = parse_poly(f, r);
        auto with_f = all;
        with_f.push_back(p);
        // Variables of f join the ring so that membership is well posed.
        AlgIdeal tmpl = AlgIdeal::over_occurring(with_f);
        tmpl.generators = all;
        return ideal_member(p, buchberger(tmpl)).member;
      },
      py::arg("f"), py::arg("gens"), py::arg("m") = 1, py::arg("n") = 1, py::arg("field") = "constants");

  mod.def(
      "certify",
      [](const std::vector<std::string>& set, int m, int n, const std::string& field, const std::string& ranking) {
        Ring r = make_ring(m, n, field);
        auto c = charset_certify(r, parse_all(set, r), Ranking::parse(ranking));
        py::dict d;
        d["status"] = to_string(c.status);
        d["stage"] = to_string(c.stage);
        d["reason"] = c.reason;
        d["reverified"] = reverify(c);
        return d;
      },
      py::arg("set"), py::arg("m") = 1, py::arg("n") = 1, py::arg("field") = "constants",
      py::arg("ranking") = "orderly", "Autoreduction, coherence and primality checks on a candidate set.");

  mod.def(
      "witness_search",
      [](const std::string& instance_text) {
        auto f = parse_instance(instance_text);
        auto inst = f.axiom_instance();
        auto v = instance_validate(inst);
        py::dict d;
        d["valid"] = v.valid;
        d["failed_hypothesis"] = v.failed_hypothesis;
        if (!v.valid) {
          d["status"] = to_string(WitnessStatus::invalid_instance);
          return d;
        }
        auto w = witness_search(inst, v);
        d["status"] = to_string(w.status);
        d["witness"] = w.witness ? py::object(py::str(w.witness->to_string())) : py::object(py::none());
        d["candidates_examined"] = w.candidates_examined;
        d["rejected"] = w.rejected.size();
        return d;
      },
      py::arg("instance_text"), "Bounded witness search for an instance file given as text.");
}
