#include "ffvar/poly.hpp"

#include <cctype>

namespace ffvar {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
};

int64_t parse_int(Cursor& c) {
  c.skip_ws();
  size_t start = c.i;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  if (c.i == start) throw std::invalid_argument("Poly::parse: expected integer at position " +
                                                std::to_string(start) + " in \"" + c.s + "\"");
  return std::stoll(c.s.substr(start, c.i - start));
}

}  // namespace

Poly Poly::parse(int64_t q, const std::string& text) {
  Cursor c{text};
  std::vector<int64_t> coeffs;
  bool first = true;
  while (!c.done()) {
    if (!first) {
      if (c.peek() != '+')
        throw std::invalid_argument("Poly::parse: expected '+' between terms in \"" + text + "\"");
      ++c.i;
    }
    first = false;

    // term: [coeff][*][var[^exp]]
    int64_t coeff = 1;
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      coeff = parse_int(c);
      saw_coeff = true;
      if (coeff >= q)
        throw std::invalid_argument("Poly::parse: coefficient " + std::to_string(coeff) +
                                    " out of range [0," + std::to_string(q) + ")");
      if (c.peek() == '*') ++c.i;
    }
    int exp = 0;
    char v = c.peek();
    if (v == 'T' || v == 'S' || v == 't' || v == 's') {
      ++c.i;
      exp = 1;
      if (c.peek() == '^') {
        ++c.i;
        int64_t e = parse_int(c);
        if (e < 0 || e > 4096) throw std::invalid_argument("Poly::parse: bad exponent");
        exp = static_cast<int>(e);
      }
    } else if (!saw_coeff) {
      throw std::invalid_argument("Poly::parse: malformed term in \"" + text + "\"");
    }

    if (static_cast<int>(coeffs.size()) <= exp) coeffs.resize(exp + 1, 0);
    coeffs[exp] = (coeffs[exp] + coeff) % q;
  }
  if (first) throw std::invalid_argument("Poly::parse: empty input");
  return Poly(q, std::move(coeffs));
}

}  // namespace ffvar
