#include "diffax/instance_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "diffax/parse.hpp"

namespace diffax {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint64_t to_number(std::string_view key, std::string_view v, std::size_t line) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw InstanceError("expected a non-negative integer for " + std::string(key) + ", got '" + std::string(v) + "'",
                        line);
  }
  return out;
}

enum class Section { none, ring, lambda, open, w, s, bounds };

}  // namespace

AxiomInstance InstanceFile::axiom_instance() const {
  AxiomInstance inst;
  inst.ring = ring;
  inst.ranking = ranking;
  inst.lambda = lambda;
  inst.open_extra = open;
  inst.w_gens = w;
  inst.order_bound = order;
  inst.bounds = bounds;
  return inst;
}

InstanceFile parse_instance(std::string_view text) {
  InstanceFile f;
  Section sec = Section::none;
  bool have_ring = false;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw InstanceError("unterminated section header", lineno);
      auto name = trim(line.substr(1, line.size() - 2));
      if (name == "ring") sec = Section::ring;
      else if (name == "lambda") sec = Section::lambda;
      else if (name == "open") sec = Section::open;
      else if (name == "W") sec = Section::w;
      else if (name == "S") sec = Section::s;
      else if (name == "bounds") sec = Section::bounds;
      else throw InstanceError("unknown section [" + std::string(name) + "]", lineno);
      if (sec == Section::ring && have_ring) throw InstanceError("duplicate [ring] section", lineno);
      have_ring = have_ring || sec == Section::ring;
      continue;
    }

    switch (sec) {
      case Section::none:
        throw InstanceError("content before the first section", lineno);
      case Section::ring:
      case Section::bounds: {
        std::istringstream words{std::string(line)};
        std::string word;
        while (words >> word) {
          auto eq = word.find('=');
          if (eq == std::string::npos || eq == 0 || eq + 1 == word.size()) {
            throw InstanceError("expected key=value, got '" + word + "'", lineno);
          }
          std::string key = word.substr(0, eq);
          std::string val = word.substr(eq + 1);
          if (sec == Section::ring) {
            if (key == "m") f.ring.m = static_cast<int>(to_number(key, val, lineno));
            else if (key == "n") f.ring.n = static_cast<int>(to_number(key, val, lineno));
            else if (key == "field") {
              if (val == "constants") f.ring.field = FieldMode::constants;
              else if (val == "rational_t") f.ring.field = FieldMode::rational_t;
              else throw InstanceError("field must be constants or rational_t", lineno);
            } else if (key == "ranking") {
              try {
                f.ranking = Ranking::parse(val);
              } catch (const Error& e) {
                throw InstanceError(e.what(), lineno);
              }
            } else {
              throw InstanceError("unknown [ring] key '" + key + "'", lineno);
            }
          } else {
            auto v = to_number(key, val, lineno);
            if (key == "order") f.order = static_cast<unsigned>(v);
            else if (key == "degree") f.bounds.degree = static_cast<unsigned>(v);
            else if (key == "height") f.bounds.height = static_cast<unsigned>(v);
            else if (key == "max_candidates") f.bounds.max_candidates = v;
            else if (key == "samples") f.samples = v;
            else if (key == "members") f.members = v;
            else if (key == "seed") f.seed = v;
            else throw InstanceError("unknown [bounds] key '" + key + "'", lineno);
          }
        }
        if (sec == Section::ring) {
          try {
            f.ring.validate();
            f.ranking.validate(f.ring);
          } catch (const Error& e) {
            throw InstanceError(e.what(), lineno);
          }
        }
        break;
      }
      default: {
        if (!have_ring) throw InstanceError("[ring] must come before polynomial sections", lineno);
        DiffPoly p;
        try {
          p = parse_poly(line, f.ring);
        } catch (const Error& e) {
          throw InstanceError(e.what(), lineno);
        }
        bool x_only = sec != Section::w;
        if (x_only && p.has_family(Family::y)) throw InstanceError("y-variables are only allowed in [W]", lineno);
        if (sec == Section::lambda) f.lambda.push_back(std::move(p));
        else if (sec == Section::open) f.open.push_back(std::move(p));
        else if (sec == Section::w) f.w.push_back(std::move(p));
        else f.s.push_back(std::move(p));
      }
    }
  }
  if (!have_ring) throw InstanceError("missing [ring] section", lineno == 0 ? 1 : lineno);
  return f;
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace diffax
