#pragma once

#include <cctype>
#include <cstring>

#include "bmoa/operators.hpp"

namespace bmoa {

// Prefix expression grammars for symbols and weights, e.g.
//   mobius 0.5+0i
//   compose (mobius 0.3) (poly 0 1 1)
//   blaschke m=1 [0.9, -0.5i]
//   halfmap
// and
//   power 0.25 | log 1.0 | const | coslog 0.1 | staircase |
//   product (log 1) bounded-factor=osc | custom <name> | derived (power 0.25)
// Decimal literals parse through strtod, so a given text always produces the
// same 64-bit values.

namespace parse_detail {

struct Lexer {
  std::string src;
  std::size_t pos = 0;

  explicit Lexer(std::string s) : src(std::move(s)) {}

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw InvalidSymbol(std::string("parse: expected '") + c + "' " + what);
  }

  // identifiers may contain '-' (bounded-factor); '=' separates key=value
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size()) {
      const char c = src[pos];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
          (pos > start && std::isdigit(static_cast<unsigned char>(c))))
        ++pos;
      else
        break;
    }
    if (pos == start) throw InvalidSymbol("parse: identifier expected near '" +
                                          src.substr(pos, 12) + "'");
    return src.substr(start, pos - start);
  }

  bool looks_like_number() {
    skip_ws();
    if (pos >= src.size()) return false;
    const char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-')
      return true;
    if (c == 'i')  // bare imaginary unit, but not an identifier like "id"
      return pos + 1 >= src.size() || !std::isalpha(static_cast<unsigned char>(src[pos + 1]));
    return false;
  }

  // one complex literal, delimited by whitespace/parens/brackets/commas:
  // 1, -0.5, 0.5+0i, -0.5i, 1e-3-2.5i, i, -i
  cplx complex_lit() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() && !std::isspace(static_cast<unsigned char>(src[pos])) &&
           std::strchr("()[],=", src[pos]) == nullptr)
      ++pos;
    if (pos == start) throw InvalidSymbol("parse: number expected");
    return parse_complex(src.substr(start, pos - start));
  }

  static double to_double(const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
      throw InvalidSymbol("parse: bad number '" + s + "'");
    return v;
  }

  static cplx parse_complex(const std::string& tok) {
    if (tok.empty()) throw InvalidSymbol("parse: empty number");
    // find the split between real and imaginary chunks: a '+'/'-' that is not
    // the leading sign and not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      if ((tok[i] == '+' || tok[i] == '-') && tok[i - 1] != 'e' && tok[i - 1] != 'E')
        split = i;  // keep the last such sign
    }
    if (split == std::string::npos) {
      if (tok.back() == 'i') return {0.0, to_double(tok.substr(0, tok.size() - 1))};
      return {to_double(tok), 0.0};
    }
    std::string a = tok.substr(0, split), b = tok.substr(split);
    if (b.back() != 'i')
      throw InvalidSymbol("parse: expected imaginary suffix in '" + tok + "'");
    b.pop_back();
    return {to_double(a), to_double(b)};
  }
};

}  // namespace parse_detail

WeightPtr parse_weight(parse_detail::Lexer& lx);
AnalyticMap parse_symbol(parse_detail::Lexer& lx);

inline WeightPtr parse_weight(parse_detail::Lexer& lx) {
  const std::string head = lx.ident();
  if (head == "power") return WeightSpec::power(std::real(lx.complex_lit()));
  if (head == "log") return WeightSpec::log_weight(std::real(lx.complex_lit()));
  if (head == "const" || head == "constant") return WeightSpec::constant();
  if (head == "coslog") return WeightSpec::coslog(std::real(lx.complex_lit()));
  if (head == "staircase") return WeightSpec::staircase();
  if (head == "derived") {
    lx.expect('(', "before derived base weight");
    WeightPtr base = parse_weight(lx);
    lx.expect(')', "after derived base weight");
    return derived_weight(base);
  }
  if (head == "product") {
    lx.expect('(', "before product base weight");
    WeightPtr base = parse_weight(lx);
    lx.expect(')', "after product base weight");
    const std::string key = lx.ident();
    if (key != "bounded-factor") throw InvalidSymbol("parse: expected bounded-factor=...");
    lx.expect('=', "after bounded-factor");
    return WeightSpec::product(base, lx.ident());
  }
  if (head == "custom") {
    const std::string name = lx.ident();
    if (name == "coslog") return WeightSpec::coslog(std::real(lx.complex_lit()));
    if (name == "staircase") return WeightSpec::staircase();
    throw InvalidSymbol("parse: unknown custom weight '" + name + "'");
  }
  throw InvalidSymbol("parse: unknown weight '" + head + "'");
}

inline AnalyticMap parse_symbol_arg(parse_detail::Lexer& lx) {
  if (lx.accept('(')) {
    AnalyticMap f = parse_symbol(lx);
    lx.expect(')', "after sub-expression");
    return f;
  }
  // bare nullary atoms
  const std::string head = lx.ident();
  if (head == "identity" || head == "id") return AnalyticMap::identity();
  if (head == "halfmap") return AnalyticMap::halfmap();
  throw InvalidSymbol("parse: expected parenthesized sub-expression, got '" + head + "'");
}

inline AnalyticMap parse_symbol(parse_detail::Lexer& lx) {
  const std::string head = lx.ident();
  if (head == "identity" || head == "id") return AnalyticMap::identity();
  if (head == "halfmap") return AnalyticMap::halfmap();
  if (head == "const" || head == "constant") return AnalyticMap::constant(lx.complex_lit());
  if (head == "mobius") return AnalyticMap::mobius(lx.complex_lit());
  if (head == "dilate") return AnalyticMap::dilate(lx.complex_lit());
  if (head == "poly") {
    std::vector<cplx> cs;
    while (lx.looks_like_number()) cs.push_back(lx.complex_lit());
    if (cs.empty()) throw InvalidSymbol("parse: poly needs at least one coefficient");
    return AnalyticMap::polynomial(std::move(cs));
  }
  if (head == "blaschke") {
    int m = 0;
    if (lx.peek() == 'm') {
      const std::string key = lx.ident();
      if (key != "m") throw InvalidSymbol("parse: expected m=<order> in blaschke");
      lx.expect('=', "after m");
      m = static_cast<int>(std::real(lx.complex_lit()));
    }
    lx.expect('[', "before blaschke zero list");
    std::vector<cplx> zeros;
    if (!lx.accept(']')) {
      for (;;) {
        zeros.push_back(lx.complex_lit());
        if (lx.accept(']')) break;
        lx.expect(',', "between blaschke zeros");
      }
    }
    return AnalyticMap::blaschke(std::move(zeros), m);
  }
  if (head == "compose") {
    AnalyticMap outer = parse_symbol_arg(lx);
    AnalyticMap inner = parse_symbol_arg(lx);
    return AnalyticMap::compose(std::move(outer), std::move(inner));
  }
  if (head == "product" || head == "sum") {
    AnalyticMap a = parse_symbol_arg(lx);
    AnalyticMap b = parse_symbol_arg(lx);
    return head == "sum" ? AnalyticMap::sum(std::move(a), std::move(b))
                         : AnalyticMap::product(std::move(a), std::move(b));
  }
  if (head == "intpow") {
    AnalyticMap base = parse_symbol_arg(lx);
    const int n = static_cast<int>(std::real(lx.complex_lit()));
    return AnalyticMap::int_power(std::move(base), n);
  }
  if (head == "hprim") {
    lx.expect('(', "before hprim weight");
    WeightPtr w = parse_weight(lx);
    lx.expect(')', "after hprim weight");
    return AnalyticMap::h_primitive(w, lx.complex_lit());
  }
  throw InvalidSymbol("parse: unknown symbol '" + head + "'");
}

inline AnalyticMap parse_symbol(const std::string& text) {
  parse_detail::Lexer lx(text);
  AnalyticMap f = parse_symbol(lx);
  if (!lx.eof()) throw InvalidSymbol("parse: trailing input after symbol: '" +
                                     lx.src.substr(lx.pos) + "'");
  return f;
}

inline WeightPtr parse_weight(const std::string& text, double eps0_override = 0.0) {
  parse_detail::Lexer lx(text);
  WeightPtr w = parse_weight(lx);
  if (!lx.eof()) throw InvalidSymbol("parse: trailing input after weight: '" +
                                     lx.src.substr(lx.pos) + "'");
  if (eps0_override > 0.0) w = w->with_eps0(eps0_override);
  return w;
}

}  // namespace bmoa
