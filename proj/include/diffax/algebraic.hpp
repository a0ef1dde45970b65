#pragma once

// Commutative algebra over the finitely many derivative variables that occur:
// reduced Groebner bases, membership, elimination, saturation, a brute-force
// Macaulay-matrix membership oracle and a bounded primality cascade.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffax/diffpoly.hpp"

namespace diffax {

enum class OrderKind { grevlex, lex, block };

/// Monomial order on exponent vectors. `block` compares the first
/// `block_size` variables by grevlex and breaks ties by grevlex on the rest.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::size_t block_size = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {OrderKind::lex, 0}; }
  static MonomialOrder block(std::size_t k) { return {OrderKind::block, k}; }
  /// "grevlex" | "lex" | "block:<k>".
  static MonomialOrder parse(const std::string& text);
  std::string to_string() const;

  int compare(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const;
};

/// An ideal of the polynomial ring over `variables` (largest first), treated
/// as plain indeterminates.
struct AlgIdeal {
  std::vector<DerivVar> variables;
  std::vector<DiffPoly> generators;
  MonomialOrder order;
  /// Reduced Groebner basis, present after buchberger(); sorted by descending
  /// leading monomial.
  std::optional<std::vector<DiffPoly>> basis;

  /// Ideal over the variables occurring in `gens`, largest (canonical order)
  /// first.
  static AlgIdeal over_occurring(std::vector<DiffPoly> gens, MonomialOrder order = {});

  bool is_unit() const;
  bool is_zero() const;
};

/// Throws DomainError when a generator uses a variable not in I.variables.
void check_variables(const AlgIdeal& ideal, const DiffPoly& f);

/// Attaches the reduced Groebner basis (normal selection strategy). Every
/// S-polynomial of the result is re-reduced before returning; a failure
/// throws std::logic_error.
AlgIdeal buchberger(const AlgIdeal& ideal);

/// Re-checks that every S-polynomial of the attached basis reduces to zero.
bool verify_groebner(const AlgIdeal& ideal);

struct MembershipResult {
  bool member = false;
  DiffPoly remainder;
  /// f = sum quotients[i] * basis[i] + remainder.
  std::vector<DiffPoly> quotients;
  std::vector<DiffPoly> basis;
  bool certificate_verified = false;
};

MembershipResult ideal_member(const DiffPoly& f, const AlgIdeal& ideal);

/// Normal form of f with respect to the (computed) Groebner basis.
DiffPoly normal_form(const DiffPoly& f, const AlgIdeal& ideal);

/// I intersected with the subring in the variables not in `drop`.
AlgIdeal eliminate(const AlgIdeal& ideal, const std::vector<DerivVar>& drop);

/// I : h^infinity via a fresh variable z, 1 - z*h and elimination of z.
AlgIdeal saturate(const AlgIdeal& ideal, const DiffPoly& h);

enum class MacaulayResult { member, not_member_at_bound, indeterminate };

std::string to_string(MacaulayResult r);

/// Decides whether f lies in the Q-span of { m*g : deg(m*g) <= bound }.
/// indeterminate when deg(f) > bound.
MacaulayResult macaulay_member(const DiffPoly& f, const AlgIdeal& ideal, unsigned bound);

struct PrimalityConfig {
  /// Largest total degree of a trial factor.
  unsigned degree_bound = 2;
  /// Largest absolute value of a trial-factor coefficient.
  unsigned height_bound = 5;
  /// Skip the factor search when the candidate space is larger than this.
  std::size_t max_candidates = 2'000'000;
  /// Monomial degree of zero-divisor probes.
  unsigned probe_degree = 2;
  /// Number of random linear probes.
  unsigned probe_samples = 16;
  std::uint64_t seed = 20120612;
  /// Record primality as user-asserted instead of deciding it.
  bool assume_prime = false;
};

enum class PrimalityStatus { prime, not_prime, unknown };
enum class PrimalityMethod { none, linear, principal_irreducible, certificate, counterexample };

std::string to_string(PrimalityStatus s);
std::string to_string(PrimalityMethod m);

struct PrimalityVerdict {
  PrimalityStatus status = PrimalityStatus::unknown;
  PrimalityMethod method = PrimalityMethod::none;
  /// f*g in I, f and g not in I. Always present (and re-verified) for
  /// not_prime, except for the unit ideal.
  std::optional<std::pair<DiffPoly, DiffPoly>> witness;
  unsigned exhausted_degree = 0;
  unsigned exhausted_height = 0;
  std::size_t candidates_examined = 0;
  std::string note;
};

/// linear -> principal irreducibility by trial factors -> zero-divisor probe
/// -> unknown.
PrimalityVerdict primality_oracle(const AlgIdeal& ideal, const PrimalityConfig& config = {});

}  // namespace diffax
