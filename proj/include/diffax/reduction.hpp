#pragma once

// Ritt reduction against autoreduced sets, with certificates, and the
// coherence test on Delta-pairs.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "diffax/ranking.hpp"

namespace diffax {

struct RankedElement {
  DiffPoly poly;
  DerivVar leader;
  unsigned leader_degree = 0;
  DiffPoly initial;
  DiffPoly separant;
};

/// An autoreduced set with cached leaders, initials, separants and
/// H = prod(initial * separant). Only constructible through autoreduced_check.
class RankedSystem {
 public:
  const Ring& ring() const { return ring_; }
  const Ranking& ranking() const { return ranking_; }
  /// Elements in strictly increasing leader rank.
  const std::vector<RankedElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const DiffPoly& h() const { return h_; }
  std::vector<DiffPoly> polys() const;

 private:
  friend struct RankedSystemBuilder;
  Ring ring_;
  Ranking ranking_;
  std::vector<RankedElement> elements_;
  DiffPoly h_;
};

struct AutoreduceRejection {
  /// Indices into the input sequence. `second` is not reduced with respect
  /// to `first`.
  std::size_t first = 0;
  std::size_t second = 0;
  std::string reason;
};

using AutoreduceResult = std::variant<RankedSystem, AutoreduceRejection>;

/// Accepts S iff it is autoreduced under r. Throws DomainError if S contains a
/// constant (including zero).
AutoreduceResult autoreduced_check(const Ring& ring, std::span<const DiffPoly> s, const Ranking& r);

/// Unwraps an accepted result; throws DomainError carrying the rejection reason.
RankedSystem require_autoreduced(const Ring& ring, std::span<const DiffPoly> s, const Ranking& r);

/// Exact product over the elements of initial * separant.
DiffPoly h_product(const RankedSystem& sys);

struct CofactorKey {
  std::size_t element = 0;
  MultiIndex theta;
  friend auto operator<=>(const CofactorKey&, const CofactorKey&) = default;
};

/// premultiplier * input - remainder = sum cofactor[g, theta] * theta(g).
struct ReductionCertificate {
  DiffPoly input;
  DiffPoly remainder;
  DiffPoly premultiplier;
  std::map<CofactorKey, DiffPoly> cofactors;
  /// premultiplier = prod initial_i^initial_powers[i] * separant_i^separant_powers[i].
  std::vector<unsigned> initial_powers;
  std::vector<unsigned> separant_powers;
  std::size_t steps = 0;

  /// Smallest k with premultiplier | H^k implied by the recorded powers.
  unsigned h_exponent() const;
};

/// Removes every proper derivative of a leader, using separants only.
ReductionCertificate partial_reduce(const DiffPoly& f, const RankedSystem& sys);
/// partial_reduce plus pseudo-division by initials, so the remainder is
/// reduced with respect to the system.
ReductionCertificate full_reduce(const DiffPoly& f, const RankedSystem& sys);

/// Expands the certificate identity and checks it is exactly zero, and that
/// the premultiplier matches the recorded powers.
bool verify_certificate(const ReductionCertificate& cert, const RankedSystem& sys);

/// No proper derivative of any leader occurs in f.
bool is_partially_reduced(const DiffPoly& f, const RankedSystem& sys);
/// Partially reduced and of degree below leader_degree in every leader.
bool is_reduced(const DiffPoly& f, const RankedSystem& sys);

/// True when premultiplier divides H^k, checked by exact division.
bool premultiplier_divides_h_power(const ReductionCertificate& cert, const RankedSystem& sys, unsigned k);

struct DeltaPair {
  std::size_t first = 0;
  std::size_t second = 0;
  MultiIndex lcm;
  DiffPoly value;
  ReductionCertificate reduction;
};

struct CoherenceVerdict {
  bool coherent = true;
  std::vector<DeltaPair> pairs;
};

/// For every pair whose leaders are derivatives of the same x_i, forms
/// S_g * (theta/theta_f) f - S_f * (theta/theta_g) g with theta = max(theta_f,
/// theta_g) and full-reduces it. Coherent iff every remainder is zero.
CoherenceVerdict coherence_check(const RankedSystem& sys);

}  // namespace diffax
