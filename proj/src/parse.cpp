#include "diffax/parse.hpp"

#include <cctype>

#include "diffax/error.hpp"

namespace diffax {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  DiffPoly parse_all() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    DiffPoly p = poly();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

  DerivVar var_only() {
    skip_ws();
    std::size_t start = pos_;
    DiffPoly p = atom();
    skip_ws();
    if (pos_ != text_.size() || p.size() != 1) throw ParseError("expected a single variable", start);
    const auto& [m, c] = *p.terms().begin();
    if (m.factors().size() != 1 || m.degree() != 1 || !c.is_one()) {
      throw ParseError("expected a single variable", start);
    }
    return m.factors().front().first;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a number", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  int index() {
    std::size_t at = pos_;
    std::string d = digits();
    if (d.size() > 6) throw IndexError("index too large at position " + std::to_string(at));
    return std::stoi(d);
  }

  DiffPoly poly() {
    DiffPoly acc;
    if (accept('-')) {
      acc = -term();
    } else {
      accept('+');
      acc = term();
    }
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  DiffPoly term() {
    DiffPoly acc = factor();
    while (true) {
      if (accept('*')) {
        acc *= factor();
      } else if (peek('/')) {
        std::size_t at = pos_++;
        DiffPoly d = factor();
        if (!d.is_scalar()) throw ParseError("division by a non-constant polynomial", at);
        Scalar s = d.scalar_value();
        if (s.is_zero()) throw ParseError("division by zero", at);
        acc = acc.scaled(Scalar(1L) / s);
      } else {
        break;
      }
    }
    return acc;
  }

  DiffPoly factor() {
    DiffPoly a = atom();
    if (accept('^')) {
      std::size_t at = pos_;
      std::string d = digits();
      if (d.size() > 6) throw ParseError("exponent too large", at);
      a = a.pow(static_cast<unsigned>(std::stoul(d)));
    }
    return a;
  }

  DiffPoly atom() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = text_[pos_];
    std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      DiffPoly p = poly();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return DiffPoly(Scalar(Rational(digits())));
    }
    if (c == 't') {
      ++pos_;
      int i = index();
      if (ring_.field != FieldMode::rational_t) {
        throw ParseError("t-symbols require field mode rational_t", at);
      }
      if (i < 1 || i > ring_.t_count()) {
        throw IndexError("t-symbol t" + std::to_string(i) + " outside t1..t" + std::to_string(ring_.t_count()));
      }
      return DiffPoly(Scalar::symbol(i));
    }
    MultiIndex theta;
    while (peek('d')) {
      std::size_t dat = pos_++;
      int i = index();
      if (i < 1 || i > ring_.m) {
        throw IndexError("derivation d" + std::to_string(i) + " outside d1..d" + std::to_string(ring_.m) +
                         " at position " + std::to_string(dat));
      }
      theta[static_cast<std::size_t>(i - 1)]++;
    }
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == 'x' || text_[pos_] == 'y')) {
      Family fam = text_[pos_] == 'x' ? Family::x : Family::y;
      ++pos_;
      int i = index();
      if (i < 1 || i > ring_.n) {
        throw IndexError("variable index " + std::to_string(i) + " outside 1.." + std::to_string(ring_.n) +
                         " at position " + std::to_string(at));
      }
      return DiffPoly::variable(DerivVar{fam, i, theta});
    }
    if (pos_ == text_.size()) throw ParseError("unexpected end of expression", pos_);
    throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffPoly parse_poly(std::string_view text, const Ring& ring) {
  ring.validate();
  return Parser(text, ring).parse_all();
}

TPoly parse_tpoly(std::string_view text, const Ring& ring) {
  Ring r = ring;
  r.field = FieldMode::rational_t;
  DiffPoly p = parse_poly(text, r);
  if (!p.is_scalar()) throw ParseError("expected a polynomial in t-symbols only", 0);
  Scalar s = p.scalar_value();
  if (!s.is_polynomial()) throw ParseError("expected a polynomial, not a fraction", 0);
  return s.numerator();
}

DerivVar parse_var(std::string_view text, const Ring& ring) {
  ring.validate();
  return Parser(text, ring).var_only();
}

}  // namespace diffax
