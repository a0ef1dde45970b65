#pragma once

// Differential polynomials in x_1..x_n (and the doubled y-family used by the
// prolongation) over the base field of scalar.hpp.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diffax/scalar.hpp"

namespace diffax {

enum class FieldMode { constants, rational_t };

/// Ring configuration: m Delta-derivations, n differential indeterminates.
struct Ring {
  int m = 1;
  int n = 1;
  FieldMode field = FieldMode::constants;

  /// Number of t-symbols in the model, t_1..t_{m+1}.
  int t_count() const { return m + 1; }
  /// The t-symbol on which D acts.
  int d_symbol() const { return m + 1; }
  /// Throws IndexError when m or n is out of the supported range.
  void validate() const;
};

/// Exponents (e_1..e_m) of a derivative operator delta_1^e_1 ... delta_m^e_m.
struct MultiIndex {
  std::array<std::uint16_t, kMaxDerivations> e{};

  int order() const;
  std::uint16_t operator[](std::size_t i) const { return e[i]; }
  std::uint16_t& operator[](std::size_t i) { return e[i]; }
  /// The unit index e_i (1-based i).
  static MultiIndex unit(int i);
  bool is_zero() const { return order() == 0; }
  /// True when every component of *this is <= the matching one of other.
  bool divides(const MultiIndex& other) const;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  /// Componentwise difference; precondition b.divides(a).
  friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
  static MultiIndex max(const MultiIndex& a, const MultiIndex& b);

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  /// Plain lexicographic order on (e_1, ..., e_m).
  friend std::strong_ordering operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

enum class Family : std::uint8_t { x = 0, y = 1 };

/// theta x_i or theta y_i.
struct DerivVar {
  Family family = Family::x;
  int index = 1;
  MultiIndex theta;

  static DerivVar x(int i, MultiIndex th = {}) { return {Family::x, i, th}; }
  static DerivVar y(int i, MultiIndex th = {}) { return {Family::y, i, th}; }

  int order() const { return theta.order(); }
  /// True when *this is theta' applied to other for some theta' (possibly trivial).
  bool is_derivative_of(const DerivVar& other) const;
  bool is_proper_derivative_of(const DerivVar& other) const;
  DerivVar with_family(Family f) const { return {f, index, theta}; }

  friend bool operator==(const DerivVar&, const DerivVar&) = default;

  std::string to_string() const;
};

/// Canonical storage order: y-family above x-family, then the orderly rule
/// (order, index, lexicographic exponents). Returns <0, 0, >0.
int canonical_compare(const DerivVar& a, const DerivVar& b);

struct CanonicalLess {
  bool operator()(const DerivVar& a, const DerivVar& b) const { return canonical_compare(a, b) < 0; }
};

/// Power product of derivative variables, factors sorted ascending in the
/// canonical order, exponents positive.
class Monomial {
 public:
  using Factor = std::pair<DerivVar, unsigned>;

  Monomial() = default;
  explicit Monomial(const DerivVar& v, unsigned exp = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;
  unsigned degree_in(const DerivVar& v) const;
  Monomial without(const DerivVar& v) const;
  bool divides(const Monomial& other) const;
  /// Precondition: divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  std::string to_string() const;

 private:
  friend class MonomialAccess;
  std::vector<Factor> factors_;
};

/// Graded order on monomials: total degree, then the factor lists compared
/// from the highest canonical variable down. A monomial order.
int compare_monomials(const Monomial& a, const Monomial& b);

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(a, b) > 0; }
};

/// Sparse differential polynomial. Terms iterate in descending monomial order;
/// no zero coefficients are stored.
class DiffPoly {
 public:
  using TermMap = std::map<Monomial, Scalar, MonomialGreater>;

  DiffPoly() = default;
  DiffPoly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  DiffPoly(long c) : DiffPoly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  static DiffPoly variable(const DerivVar& v);
  static DiffPoly term(const Monomial& m, const Scalar& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when no derivative variable occurs (an element of the base field).
  bool is_scalar() const;
  /// Constant coefficient when is_scalar().
  Scalar scalar_value() const;
  std::size_t size() const { return terms_.size(); }

  unsigned total_degree() const;
  unsigned degree_in(const DerivVar& v) const;
  /// Coefficient of v^k, as a polynomial in the remaining variables.
  DiffPoly coefficient(const DerivVar& v, unsigned k) const;
  std::set<DerivVar, CanonicalLess> variables() const;
  bool has_family(Family f) const;
  int max_order() const;

  /// Adds c*m in place.
  void add_term(const Monomial& m, const Scalar& c);

  DiffPoly operator-() const;
  friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  DiffPoly& operator+=(const DiffPoly& b);
  DiffPoly& operator-=(const DiffPoly& b);
  DiffPoly& operator*=(const DiffPoly& b) { return *this = *this * b; }
  DiffPoly scaled(const Scalar& c) const;
  DiffPoly times_monomial(const Monomial& m, const Scalar& c) const;
  DiffPoly pow(unsigned k) const;

  friend bool operator==(const DiffPoly& a, const DiffPoly& b);
  friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

  /// Text in the expression grammar; parse(to_string()) reproduces the value.
  std::string to_string() const;

 private:
  TermMap terms_;
};

enum class ArithOp { add, sub, mul, neg, pow };

/// Dispatches to the ring operations; `exponent` is used by pow only.
DiffPoly arith(ArithOp op, const DiffPoly& a, const DiffPoly& b = {}, unsigned exponent = 0);

/// delta_i f (1 <= i <= m): Leibniz over monomials, d/dt_i on coefficients.
DiffPoly derive(const Ring& ring, const DiffPoly& f, int i);
/// theta f for a whole multi-index.
DiffPoly derive(const Ring& ring, const DiffPoly& f, const MultiIndex& theta);

/// Formal partial derivative with respect to a single variable; coefficients
/// are left alone.
DiffPoly formal_partial(const DiffPoly& f, const DerivVar& v);

/// d/dt_var applied to every coefficient.
DiffPoly coefficient_derivative(const DiffPoly& f, int var);

/// Quotient when b divides a exactly, nullopt otherwise.
std::optional<DiffPoly> divide_exact(const DiffPoly& a, const DiffPoly& b);

/// Concrete differential ring Q[t_1..t_{m+1}]: x_j is assigned a t-polynomial
/// and theta x_j evaluates to the corresponding iterated partial derivative.
struct ModelPoint {
  std::map<int, TPoly> x;

  std::string to_string() const;
};

/// Assignment for the y-family; paired with a ModelPoint as (a, b).
using YAssignment = std::map<int, TPoly>;

/// Value of theta applied to p (delta_i = d/dt_i).
TPoly apply_theta(const TPoly& p, const MultiIndex& theta);

/// f evaluated at p. Throws DomainError on unassigned or y-variables.
Scalar eval_at_model_point(const Ring& ring, const DiffPoly& f, const ModelPoint& p);

/// f evaluated at (a, b) with the y-family taken from b.
Scalar eval_at(const Ring& ring, const DiffPoly& f, const ModelPoint& a, const YAssignment& b);

/// Dp: D = d/dt_{m+1} applied to every assigned polynomial.
YAssignment d_of_point(const Ring& ring, const ModelPoint& p);

/// Throws IndexError when f refers to derivations or variables outside ring.
void check_in_ring(const Ring& ring, const DiffPoly& f);

}  // namespace diffax
