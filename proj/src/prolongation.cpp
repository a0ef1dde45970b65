#include "diffax/prolongation.hpp"

#include "diffax/error.hpp"

namespace diffax {

namespace {

unsigned y_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m.factors()) {
    if (v.family == Family::y) d += e;
  }
  return d;
}

}  // namespace

bool is_y_linear(const DiffPoly& p) {
  for (const auto& [m, c] : p.terms()) {
    if (y_degree(m) > 1) return false;
  }
  return true;
}

TauPoly::TauPoly(DiffPoly value) : value_(std::move(value)) {
  if (!is_y_linear(value_)) throw DomainError("prolongation value is not linear in the y-variables");
}

DiffPoly TauPoly::y_free_part() const {
  DiffPoly r;
  for (const auto& [m, c] : value_.terms()) {
    if (y_degree(m) == 0) r.add_term(m, c);
  }
  return r;
}

TauPoly tau(const Ring& ring, const DiffPoly& f) {
  if (f.has_family(Family::y)) throw DomainError("tau expects a polynomial in the x-variables only");
  DiffPoly r = coefficient_derivative(f, ring.d_symbol());
  for (const auto& v : f.variables()) {
    r += formal_partial(f, v) * DiffPoly::variable(v.with_family(Family::y));
  }
  return TauPoly(std::move(r));
}

std::vector<std::pair<DiffPoly, DiffPoly>> tau_set(const Ring& ring, std::span<const DiffPoly> fs) {
  std::vector<std::pair<DiffPoly, DiffPoly>> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.emplace_back(f, tau(ring, f).value());
  return out;
}

DCompatibility d_compatibility_check(const Ring& ring, const DiffPoly& f, const ModelPoint& p) {
  DCompatibility out;
  out.tau_value = eval_at(ring, tau(ring, f).value(), p, d_of_point(ring, p));
  out.d_of_value = eval_at_model_point(ring, f, p).derivative(ring.d_symbol());
  out.holds = out.tau_value == out.d_of_value;
  return out;
}

}  // namespace diffax
