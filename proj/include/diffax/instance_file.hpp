#pragma once

// Line-oriented instance files:
//
//   [ring]    m=1 n=1 field=constants|rational_t [ranking=orderly]
//   [lambda]  one polynomial per line
//   [open]    inequations g != 0
//   [W]       polynomials over x and y
//   [S]       input system for the naive-vs-tau demo
//   [bounds]  order= degree= height= [samples= members= seed= max_candidates=]
//
// '#' starts a comment. [ring] must precede every polynomial section.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diffax/error.hpp"
#include "diffax/geometry.hpp"

namespace diffax {

/// Malformed instance file; `line` is 1-based.
class InstanceError : public Error {
 public:
  InstanceError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct InstanceFile {
  Ring ring;
  Ranking ranking;
  std::vector<DiffPoly> lambda;
  std::vector<DiffPoly> open;
  std::vector<DiffPoly> w;
  std::vector<DiffPoly> s;
  unsigned order = 1;
  SearchBounds bounds;
  std::size_t samples = 200;
  std::size_t members = 10;
  std::uint64_t seed = 1;

  AxiomInstance axiom_instance() const;
};

InstanceFile parse_instance(std::string_view text);
/// Throws Error when the file cannot be read.
InstanceFile load_instance(const std::filesystem::path& path);

}  // namespace diffax
