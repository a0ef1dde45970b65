#pragma once

// Exact base-field arithmetic: rational numbers and rational functions in the
// formal symbols t_1..t_{m+1}. Derivation i of the field acts as d/dt_i.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace diffax {

/// Maximum number of Delta-derivations supported by the fixed-width index types.
inline constexpr std::size_t kMaxDerivations = 7;
/// t_1..t_m carry the Delta-derivations, t_{m+1} carries D.
inline constexpr std::size_t kMaxTSymbols = kMaxDerivations + 1;

using Rational = mpq_class;

using TMonomial = std::array<std::uint16_t, kMaxTSymbols>;

/// Sparse polynomial in t_1..t_k with rational coefficients. Terms are kept in
/// descending graded-lex order (t_1 > t_2 > ...), coefficients nonzero.
class TPoly {
 public:
  struct Term {
    TMonomial exps{};
    Rational coef;
  };

  TPoly() = default;
  explicit TPoly(const Rational& c);
  /// The symbol t_index (1-based).
  static TPoly symbol(int index);
  static TPoly monomial(const TMonomial& exps, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Value of a constant polynomial (zero for the zero polynomial).
  Rational constant_value() const;

  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  int total_degree() const;
  /// Degree in t_var (1-based); -1 for the zero polynomial.
  int degree_in(int var) const;
  /// Highest 1-based symbol index occurring, 0 if constant.
  int max_symbol() const;

  /// Coefficients as a polynomial in t_var: result[k] is the coefficient of t_var^k.
  std::vector<TPoly> coefficients_in(int var) const;

  TPoly operator-() const;
  friend TPoly operator+(const TPoly& a, const TPoly& b);
  friend TPoly operator-(const TPoly& a, const TPoly& b);
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  TPoly scaled(const Rational& c) const;
  /// Multiplies by t_var^k.
  TPoly shifted(int var, int k) const;
  TPoly pow(unsigned k) const;

  TPoly derivative(int var) const;

  friend bool operator==(const TPoly& a, const TPoly& b);

  std::string to_string() const;

 private:
  friend class TPolyBuilder;
  std::vector<Term> terms_;
};

/// Compares t-monomials in the graded-lex order used by TPoly.
int compare_tmonomials(const TMonomial& a, const TMonomial& b);

/// Quotient a / b when b divides a exactly; nullopt otherwise. b must be nonzero.
std::optional<TPoly> divide_exact(const TPoly& a, const TPoly& b);

/// Greatest common divisor over Q, normalized to leading coefficient 1.
/// gcd(0, 0) = 0.
TPoly gcd(const TPoly& a, const TPoly& b);

/// Divides by the leading coefficient (zero stays zero).
TPoly make_monic(const TPoly& p);

/// Element of the base field: either a plain rational or a reduced fraction
/// num/den of t-polynomials with monic denominator. Canonical, so equality is
/// structural.
class Scalar {
 public:
  Scalar() = default;
  // GMP leaves mpq_class(a, b) unreduced; normalize on entry.
  Scalar(const Rational& q) : q_(q) { q_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  Scalar(long v) : q_(v) {}             // NOLINT(google-explicit-constructor)
  static Scalar from_poly(const TPoly& p);
  /// num/den reduced to canonical form; throws DomainError if den is zero.
  static Scalar fraction(const TPoly& num, const TPoly& den);
  static Scalar symbol(int index) { return from_poly(TPoly::symbol(index)); }

  bool is_zero() const { return !fn_ && sgn(q_) == 0; }
  bool is_one() const { return !fn_ && q_ == 1; }
  bool is_rational() const { return !fn_; }
  /// True when the value lies in Q[t] (denominator 1).
  bool is_polynomial() const;
  /// Precondition: is_rational().
  const Rational& rational() const { return q_; }

  TPoly numerator() const;
  TPoly denominator() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  /// Throws DomainError on division by zero.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  Scalar pow(unsigned k) const;
  /// d/dt_var.
  Scalar derivative(int var) const;
  /// Highest t-symbol index occurring, 0 if rational.
  int max_symbol() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const;

 private:
  struct Fraction {
    TPoly num;
    TPoly den;
  };
  Rational q_{0};
  std::shared_ptr<const Fraction> fn_;
};

}  // namespace diffax
