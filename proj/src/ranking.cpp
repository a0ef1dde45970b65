#include "diffax/ranking.hpp"

#include <algorithm>
#include <sstream>

#include "diffax/error.hpp"

namespace diffax {

Ranking Ranking::elimination(std::vector<int> blocks) {
  Ranking r;
  r.kind_ = Kind::elimination;
  r.blocks_ = std::move(blocks);
  auto sorted = r.blocks_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw IndexError("elimination ranking lists a variable twice");
  }
  return r;
}

Ranking Ranking::parse(std::string_view text) {
  if (text == "orderly") return orderly();
  constexpr std::string_view prefix = "elimination:";
  if (text.substr(0, prefix.size()) != prefix) {
    throw ParseError("ranking must be 'orderly' or 'elimination:i,j,...'", 0);
  }
  std::vector<int> blocks;
  std::string rest(text.substr(prefix.size()));
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      blocks.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParseError("bad variable index '" + item + "' in ranking", prefix.size());
    }
  }
  return elimination(std::move(blocks));
}

int Ranking::position(int var_index) const {
  auto it = std::find(blocks_.begin(), blocks_.end(), var_index);
  if (it == blocks_.end()) {
    throw IndexError("variable x" + std::to_string(var_index) + " missing from elimination ranking");
  }
  return static_cast<int>(it - blocks_.begin());
}

int Ranking::compare(const DerivVar& a, const DerivVar& b) const {
  if (a.family != b.family) return a.family < b.family ? -1 : 1;
  if (kind_ == Kind::orderly) return canonical_compare(a, b);
  int pa = position(a.index), pb = position(b.index);
  if (pa != pb) return pa < pb ? -1 : 1;
  int oa = a.order(), ob = b.order();
  if (oa != ob) return oa < ob ? -1 : 1;
  auto c = a.theta <=> b.theta;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

void Ranking::validate(const Ring& ring) const {
  if (kind_ == Kind::orderly) return;
  if (static_cast<int>(blocks_.size()) != ring.n) {
    throw IndexError("elimination ranking must list each of x1..x" + std::to_string(ring.n) + " once");
  }
  for (int i = 1; i <= ring.n; ++i) position(i);
}

std::string Ranking::to_string() const {
  if (kind_ == Kind::orderly) return "orderly";
  std::string s = "elimination:";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(blocks_[i]);
  }
  return s;
}

DerivVar leader(const DiffPoly& f, const Ranking& r) {
  auto vars = f.variables();
  if (vars.empty()) throw DomainError("constant polynomial has no leader");
  DerivVar best = *vars.begin();
  for (const auto& v : vars) {
    if (r.less(best, v)) best = v;
  }
  return best;
}

LeaderData leader_initial_separant(const DiffPoly& f, const Ranking& r) {
  LeaderData d;
  d.leader = leader(f, r);
  d.degree = f.degree_in(d.leader);
  d.initial = f.coefficient(d.leader, d.degree);
  d.separant = formal_partial(f, d.leader);
  return d;
}

}  // namespace diffax
