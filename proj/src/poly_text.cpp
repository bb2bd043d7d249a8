#include "mwc/poly_text.hpp"

#include <cctype>

namespace mwc {

std::string format_poly(const LPoly& f) {
  if (f.is_zero()) return "0";
  const auto& names = f.ring()->names;
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) out += '+';
    first = false;
    out += std::to_string(c);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      out += '*';
      out += names[j];
      if (e[j] != 1) {
        out += '^';
        out += std::to_string(e[j]);
      }
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view s, const RingPtr& ring, int prec) : s_(s), ring_(ring), prec_(prec) {}

  LPoly parse() {
    LPoly::TermMap terms;
    const std::int64_t m = ipow(ring_->ctx.p, prec_);
    skip_ws();
    if (at_end()) error("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        error("expected '+' or '-'");
      }
      first = false;
      auto [e, c] = term();
      std::int64_t v = mod_reduce(c, m);
      if (sign < 0) v = mod_reduce(-v, m);
      auto [it, ins] = terms.try_emplace(e, 0);
      it->second = add_mod(it->second, v, m);
      skip_ws();
    }
    return LPoly(ring_, prec_, std::move(terms));
  }

 private:
  std::pair<Exponent, std::int64_t> term() {
    skip_ws();
    Exponent e(ring_->nvars(), 0);
    std::int64_t c = 1;
    bool have_factor = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = integer();
      have_factor = true;
    }
    while (true) {
      skip_ws();
      if (have_factor) {
        if (peek() != '*') break;
        ++pos_;
        skip_ws();
      }
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c = mod_reduce(static_cast<std::int64_t>((static_cast<__int128>(c) * integer()) % ipow(ring_->ctx.p, prec_)),
                       ipow(ring_->ctx.p, prec_));
        have_factor = true;
        continue;
      }
      if (!is_ident_start(peek())) {
        if (!have_factor) error("expected a coefficient or variable");
        break;
      }
      std::string name = ident();
      auto idx = ring_->index_of(name);
      if (!idx) fail(ErrorKind::VariableMismatch, "unknown variable '" + name + "' in polynomial text");
      int ex = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        bool paren = peek() == '(';
        if (paren) ++pos_;
        skip_ws();
        int sgn = 1;
        if (peek() == '-' || peek() == '+') {
          sgn = peek() == '-' ? -1 : 1;
          ++pos_;
        }
        ex = sgn * static_cast<int>(integer());
        skip_ws();
        if (paren) {
          if (peek() != ')') error("expected ')'");
          ++pos_;
        }
      }
      e[*idx] += ex;
      have_factor = true;
    }
    return {e, c};
  }

  std::int64_t integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) error("expected digits");
    std::int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > (std::int64_t{1} << 58)) error("integer literal too large");
      v = v * 10 + (s_[pos_++] - '0');
    }
    return v;
  }

  static bool is_ident_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
  static bool is_ident_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'' || ch == '$';
  }

  std::string ident() {
    std::size_t start = pos_;
    while (!at_end() && is_ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::InvalidArgument, "polynomial parse error at offset " + std::to_string(pos_) + ": " + msg + " in '" +
                                         std::string(s_) + "'");
  }

  std::string_view s_;
  const RingPtr& ring_;
  int prec_;
  std::size_t pos_ = 0;
};

}  // namespace

LPoly parse_poly(std::string_view text, const RingPtr& ring, int prec) { return Parser(text, ring, prec).parse(); }

}  // namespace mwc
