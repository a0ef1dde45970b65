#pragma once

// The prolongation tau: for f in K{x}, tau f(x, y) = f^D(x) + sum_v (df/dv) * v_y
// over the occurring derivatives v = theta x_i, with v_y = theta y_i and f^D
// the coefficientwise D-derivative. tau f(a, Da) = D(f(a)) in any model.

#include <span>
#include <utility>
#include <vector>

#include "diffax/diffpoly.hpp"

namespace diffax {

/// A polynomial over (x, y) that is affine-linear in the y-family.
class TauPoly {
 public:
  /// Throws DomainError when some monomial has y-degree above one.
  explicit TauPoly(DiffPoly value);
  const DiffPoly& value() const { return value_; }
  /// The y-free part (equals f^D for tau f).
  DiffPoly y_free_part() const;

 private:
  DiffPoly value_;
};

/// True when every monomial has total degree at most one in the y-family.
bool is_y_linear(const DiffPoly& p);

/// tau f. Throws DomainError when f contains y-variables.
TauPoly tau(const Ring& ring, const DiffPoly& f);

/// (f, tau f) for each f, in input order.
std::vector<std::pair<DiffPoly, DiffPoly>> tau_set(const Ring& ring, std::span<const DiffPoly> fs);

struct DCompatibility {
  bool holds = false;
  /// tau f evaluated at (p, Dp).
  Scalar tau_value;
  /// D applied to f(p).
  Scalar d_of_value;
};

/// Compares tau f(p, Dp) with D(f(p)) exactly.
DCompatibility d_compatibility_check(const Ring& ring, const DiffPoly& f, const ModelPoint& p);

}  // namespace diffax
