#include "zetacount/lattice_poly.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "zetacount/errors.hpp"

namespace zetacount {

LatticePolynomial::LatticePolynomial(unsigned variable_count, std::map<Exponents, Integer> terms)
    : n_(variable_count) {
  if (n_ == 0) throw ParseError("polynomial needs at least one variable");
  for (auto& [exps, c] : terms) {
    if (exps.size() != n_) throw ParseError("exponent vector length does not match the variable count");
    if (c != 0) terms_.emplace(exps, c);
  }
  if (terms_.empty()) throw PreconditionError("the zero polynomial is not a valid congruence (P(t) would have a pole at t = 1)");
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : s_(text) {}

  struct Term {
    Integer coeff;
    std::map<unsigned, unsigned> powers;  // 1-based variable index -> exponent
  };

  std::vector<Term> parse_all() {
    std::vector<Term> out;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      bool had_sign = false;
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        if (peek() == '-') sign = -1;
        had_sign = true;
        ++pos_;
        skip_ws();
      }
      if (!first && !had_sign) fail("expected '+' or '-'");
      first = false;
      Term t = parse_term();
      t.coeff *= sign;
      out.push_back(std::move(t));
      skip_ws();
    }
    return out;
  }

 private:
  Term parse_term() {
    Term t{Integer(1), {}};
    bool any = false;
    bool expect_factor = false;
    while (true) {
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Integer k = read_number();
        t.coeff *= ipow(k, read_power());
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        unsigned var = read_variable();
        t.powers[var] += static_cast<unsigned>(read_power());
      } else if (expect_factor) {
        fail("expected a factor after '*'");
      } else {
        break;
      }
      any = true;
      skip_ws();
      expect_factor = false;
      if (!at_end() && peek() == '*') {
        ++pos_;
        expect_factor = true;
      }
    }
    if (!any || expect_factor) fail("expected a term");
    return t;
  }

  Integer read_number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)), 10);
  }

  unsigned long read_power() {
    skip_ws();
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent after '^'");
    Integer e = read_number();
    if (!e.fits_uint_p() || e > 1000) fail("exponent too large");
    return e.get_ui();
  }

  unsigned read_variable() {
    char c = peek();
    ++pos_;
    if (c == 'x' && !at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer idx = read_number();
      if (idx == 0 || idx > 64) fail("variable index out of range");
      return static_cast<unsigned>(idx.get_ui());
    }
    switch (c) {
      case 'x': return 1;
      case 'y': return 2;
      case 'z': return 3;
      default: fail(std::string("unknown variable '") + c + "'");
    }
    return 0;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + what + " in '" +
                     std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LatticePolynomial LatticePolynomial::parse(std::string_view text, unsigned variable_count) {
  auto terms = TermParser(text).parse_all();
  unsigned max_var = 0;
  for (const auto& t : terms)
    for (const auto& [var, e] : t.powers) max_var = std::max(max_var, var);
  unsigned n = variable_count == 0 ? std::max(1U, max_var) : variable_count;
  if (max_var > n)
    throw ParseError("polynomial uses x" + std::to_string(max_var) + " but only " + std::to_string(n) +
                     " variables were declared");
  std::map<Exponents, Integer> merged;
  for (const auto& t : terms) {
    Exponents e(n, 0);
    for (const auto& [var, pw] : t.powers) e[var - 1] += pw;
    merged[e] += t.coeff;
  }
  return LatticePolynomial(n, std::move(merged));
}

unsigned LatticePolynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

bool LatticePolynomial::is_constant() const { return total_degree() == 0; }

std::map<Exponents, Integer> LatticePolynomial::partial(unsigned var) const {
  std::map<Exponents, Integer> out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out[d] += c * e[var];
  }
  return out;
}

Integer evaluate_terms(const std::map<Exponents, Integer>& terms, std::span<const Integer> x) {
  Integer acc = 0;
  for (const auto& [e, c] : terms) {
    Integer term = c;
    for (std::size_t k = 0; k < e.size(); ++k) term *= ipow(x[k], e[k]);
    acc += term;
  }
  return acc;
}

Integer LatticePolynomial::evaluate(std::span<const Integer> x) const {
  if (x.size() != n_) throw std::invalid_argument("point dimension does not match the variable count");
  return evaluate_terms(terms_, x);
}

std::string LatticePolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  // Highest total degree first, reads like the usual hand-written form.
  std::vector<std::pair<Exponents, Integer>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (unsigned k : a.first) da += k;
    for (unsigned k : b.first) db += k;
    return da > db;
  });
  for (const auto& [e, c] : ordered) {
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](unsigned k) { return k > 0; });
    bool wrote = false;
    if (mag != 1 || !has_var) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (wrote) os << "*";
      os << "x" << (k + 1);
      if (e[k] > 1) os << "^" << e[k];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace zetacount
