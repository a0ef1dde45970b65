#pragma once

// Characteristic-set certification (autoreduced -> coherent -> algebraically
// prime), membership in [L]:H^inf, the tau(V)|_O checks, and validation and
// witness search for instances of the geometric axiom: given L, an open
// O in V(L) \ V(H_L) and W in V(f, tau f : f in L) projecting onto O, find a
// with a in O and (a, Da) in W.
//
// Points live in the polynomial model Q[t_1..t_{m+1}] with delta_i = d/dt_i
// and D = d/dt_{m+1}; every check is exact.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diffax/algebraic.hpp"
#include "diffax/prolongation.hpp"
#include "diffax/reduction.hpp"

namespace diffax {

// ---------------------------------------------------------------------------
// Certification

enum class CertStatus { certified, rejected, conditional };
enum class CertStage { none, autoreduce, coherence, primality };

std::string to_string(CertStatus s);
std::string to_string(CertStage s);

struct CharSetCertificate {
  Ring ring;
  Ranking ranking;
  std::vector<DiffPoly> input;
  std::optional<RankedSystem> system;
  std::optional<AutoreduceRejection> autoreduce_rejection;
  std::optional<CoherenceVerdict> coherence;
  /// The algebraic ideal (L) over the derivative variables occurring in L.
  std::optional<AlgIdeal> algebraic_ideal;
  std::optional<PrimalityVerdict> primality;
  CertStatus status = CertStatus::rejected;
  /// Stage at which a rejection (or the conditional outcome) was decided.
  CertStage stage = CertStage::none;
  std::string reason;
};

/// autoreduced_check -> coherence_check -> primality_oracle on (L).
CharSetCertificate charset_certify(const Ring& ring, std::span<const DiffPoly> s, const Ranking& r,
                                   const PrimalityConfig& config = {});

/// Recomputes every part of the certificate from its input and compares.
bool reverify(const CharSetCertificate& cert);

struct SatMembership {
  bool member = false;
  ReductionCertificate reduction;
};

/// f in [L]:H^inf iff full_reduce(f, L) has remainder zero. Throws DomainError
/// for a rejected certificate.
SatMembership sat_ideal_member(const DiffPoly& f, const CharSetCertificate& cert);

/// Deterministic list of `count` members of [L]:H^inf: theta f for f in L,
/// then products with low-order variables and t-symbols. Each is checked with
/// sat_ideal_member.
std::vector<DiffPoly> saturation_members(const CharSetCertificate& cert, std::size_t count);

// ---------------------------------------------------------------------------
// Model search

struct SearchBounds {
  /// Per-variable polynomial degree in t_1..t_{m+1}.
  unsigned degree = 1;
  /// Largest absolute value of an integer coefficient.
  unsigned height = 1;
  /// Upper limit on candidate tuples examined.
  std::size_t max_candidates = 2'000'000;
};

/// Every polynomial in t_1..t_{m+1} of degree <= d with integer coefficients
/// in [-h, h], sorted by (degree, coefficient vector) where the coefficient
/// vector lists monomials in ascending graded order (1, t_{m+1}, ..., t_1,
/// ...) and values compare as 0 < 1 < -1 < 2 < -2 < ...
std::vector<TPoly> candidate_polys(const Ring& ring, unsigned degree, unsigned height,
                                   std::size_t max_candidates = 2'000'000);

struct EnumerationStats {
  std::size_t visited = 0;
  /// Stopped by max_candidates before the grid was exhausted.
  bool truncated = false;
  /// Stopped because the callback asked to.
  bool stopped = false;
};

/// Enumerates n-tuples of candidate polynomials ordered by (largest degree in
/// the tuple, then the per-variable candidate indices lexicographically, x_1
/// most significant). The callback returns true to stop.
EnumerationStats enumerate_points(const Ring& ring, const SearchBounds& bounds,
                                  const std::function<bool(const ModelPoint&)>& visit);

/// {f, tau f : f in S}, interleaved in input order.
std::vector<DiffPoly> naive_prolongation_gens(const Ring& ring, std::span<const DiffPoly> s);

struct SamplePoint {
  ModelPoint a;
  YAssignment b;
};

/// Points (a, b) with f(a) = 0 and tau f(a, b) = 0 for f in L, H_L(a) != 0 and
/// g(a) != 0 for every g in `extra`. Collected over the bounded grid, then a
/// seeded shuffle picks `count` of them.
std::vector<SamplePoint> sample_open_points(const CharSetCertificate& cert, std::span<const DiffPoly> extra,
                                            const SearchBounds& bounds, std::size_t count, std::uint64_t seed);

struct Discrepancy {
  SamplePoint point;
  DiffPoly violated;       // g in the saturation ideal
  DiffPoly tau_violated;   // tau g
  Scalar value;            // tau g (a, b), nonzero
};

struct NaiveVsTauReport {
  std::vector<DiffPoly> naive_gens;
  std::vector<DiffPoly> tested_members;
  std::optional<Discrepancy> discrepancy;
  std::size_t points_examined = 0;
  std::size_t samples_checked = 0;
  std::size_t sample_violations = 0;
};

struct NaiveVsTauConfig {
  SearchBounds bounds;
  std::size_t samples = 200;
  std::size_t members = 10;
  std::uint64_t seed = 1;
};

/// (a) searches V(naive_prolongation_gens(S)) for a point violating tau g for
/// some tested member g of the certified ideal; (b) checks that sampled
/// points of O show no such violation.
NaiveVsTauReport naive_vs_tau_demo(std::span<const DiffPoly> s, const CharSetCertificate& cert,
                                   const NaiveVsTauConfig& config);

struct OpenSetCheck {
  bool passed = false;
  /// Set when a sample does not lie on V(f, tau f : f in L) \ V(H), or g is
  /// not in the saturation ideal.
  std::optional<std::size_t> failing_sample;
  std::string precondition_failure;
  unsigned ell = 0;
  /// tau(H^l g) = H^l tau g + g tau(H^l) as polynomials.
  bool product_rule_identity = false;
  std::vector<Scalar> tau_values;
};

OpenSetCheck open_set_equality_check(const CharSetCertificate& cert, const DiffPoly& g,
                                     std::span<const SamplePoint> samples);

// ---------------------------------------------------------------------------
// Axiom instances

struct AxiomInstance {
  Ring ring;
  Ranking ranking;
  std::vector<DiffPoly> lambda;
  /// Inequations g != 0 cutting O inside V(L) \ V(H_L).
  std::vector<DiffPoly> open_extra;
  /// Generators of W over (x, y).
  std::vector<DiffPoly> w_gens;
  /// Truncation order for the algebraic surrogates.
  unsigned order_bound = 1;
  SearchBounds bounds;
  PrimalityConfig primality;
};

/// {theta w : w in W, order(theta) <= order_bound}.
std::vector<DiffPoly> truncated_w_generators(const AxiomInstance& inst);

struct InstanceValidation {
  bool valid = false;
  /// "characteristic set", "W inside V(f, tau f)", "O nonempty" or empty.
  std::string failed_hypothesis;
  std::string detail;
  CharSetCertificate certificate;
  /// Membership of each f and tau f in <truncated W>, in tau_set order.
  std::vector<std::pair<DiffPoly, bool>> containment;
  std::optional<ModelPoint> open_point;
  std::size_t points_examined = 0;
};

InstanceValidation instance_validate(const AxiomInstance& inst);

struct ProjectionVerdict {
  bool contains_open = false;
  unsigned order_bound = 0;
  /// (eliminant, remainder of full reduction against L).
  std::vector<std::pair<DiffPoly, DiffPoly>> eliminants;
  std::string note;
};

/// Eliminates the y-variables from <truncated W> and full-reduces every
/// eliminant against L. A truncation-order surrogate for dominance of the
/// projection, not the Kolchin-topological notion.
ProjectionVerdict projection_closure_check(const AxiomInstance& inst, const InstanceValidation& validated);

enum class WitnessStatus { found, exhausted, invalid_instance };
std::string to_string(WitnessStatus s);

struct CheckEntry {
  std::string label;
  DiffPoly poly;
  Scalar value;
  bool expect_zero = true;
  bool passed = false;
};

struct RejectedCandidate {
  ModelPoint point;
  std::string failed_check;
};

struct WitnessReport {
  WitnessStatus status = WitnessStatus::exhausted;
  std::optional<ModelPoint> witness;
  /// Full evaluation transcript of the witness.
  std::vector<CheckEntry> checks;
  /// Every rejected candidate with the first check it failed.
  std::vector<RejectedCandidate> rejected;
  std::size_t candidates_examined = 0;
  /// The grid was cut short by max_candidates.
  bool truncated = false;
  SearchBounds bounds;
  std::string detail;
};

/// Evaluates every condition at a (L(a) = 0, H(a) != 0, extras != 0, W at
/// (a, Da) = 0) using model evaluation only.
std::vector<CheckEntry> witness_checks(const AxiomInstance& inst, const ModelPoint& a);

/// Requires a validated instance (status invalid_instance otherwise).
WitnessReport witness_search(const AxiomInstance& inst, const InstanceValidation& validated);

}  // namespace diffax
