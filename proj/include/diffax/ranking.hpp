#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "diffax/diffpoly.hpp"

namespace diffax {

/// A ranking of derivative variables.
///
/// orderly:     compare (order(theta), var index, lexicographic exponents).
/// elimination: compare (block position of the var index, order(theta),
///              lexicographic exponents); `blocks` lists variable indices from
///              lowest to highest, so every derivative of blocks.back() ranks
///              above every derivative of the others.
///
/// The y-family ranks above the whole x-family by the same rule.
class Ranking {
 public:
  enum class Kind { orderly, elimination };

  Ranking() = default;
  static Ranking orderly() { return {}; }
  static Ranking elimination(std::vector<int> blocks);
  /// "orderly" or "elimination:1,2,..." (lowest first).
  static Ranking parse(std::string_view text);

  Kind kind() const { return kind_; }
  const std::vector<int>& blocks() const { return blocks_; }

  /// <0, 0, >0.
  int compare(const DerivVar& a, const DerivVar& b) const;
  bool less(const DerivVar& a, const DerivVar& b) const { return compare(a, b) < 0; }

  /// Throws IndexError when an elimination ranking does not list exactly the
  /// indices 1..n.
  void validate(const Ring& ring) const;

  std::string to_string() const;

 private:
  int position(int var_index) const;

  Kind kind_ = Kind::orderly;
  std::vector<int> blocks_;
};

struct LeaderData {
  DerivVar leader;
  unsigned degree = 0;
  DiffPoly initial;
  DiffPoly separant;
};

/// Leader, initial and separant of a non-constant polynomial. Throws
/// DomainError for constants.
LeaderData leader_initial_separant(const DiffPoly& f, const Ranking& r);

/// Highest-ranked variable of f (f non-constant).
DerivVar leader(const DiffPoly& f, const Ranking& r);

}  // namespace diffax
