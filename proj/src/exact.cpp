#include "zetacount/exact.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <sstream>
#include <stdexcept>

#include "zetacount/errors.hpp"

namespace zetacount {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw ParseError("not an integer literal: '" + std::string(text) + "'");
  Integer z(std::string(digits), 10);
  if (s.front() == '-') z = -z;
  return z;
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  auto den_text = trim(s.substr(slash + 1));
  if (!all_digits(den_text)) throw ParseError("bad denominator in rational literal: '" + std::string(text) + "'");
  Integer den(std::string(den_text), 10);
  if (den == 0) throw ParseError("zero denominator in rational literal: '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("frac: zero denominator");
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational rpow(const Integer& p, long exponent) {
  if (exponent >= 0) return Rational(ipow(p, static_cast<unsigned long>(exponent)));
  Rational q(Integer(1), ipow(p, static_cast<unsigned long>(-exponent)));
  q.canonicalize();
  return q;
}

bool in_ring_S(const Rational& q, const Integer& p) {
  Integer den = q.get_den();
  while (den > 1) {
    if (den % p != 0) return false;
    den /= p;
  }
  return true;
}

unsigned long valuation(Integer z, const Integer& p) {
  if (z == 0) throw std::invalid_argument("valuation of zero");
  return mpz_remove(z.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
}

bool is_prime(const Integer& p) {
  if (p < 2) return false;
  if (p < 1000000) {
    unsigned long v = p.get_ui();
    for (unsigned long d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  }
  return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Poly::Poly(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

Rational Poly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(out));
}

Poly Poly::truncated(std::size_t k) const {
  if (k >= coeffs_.size()) return *this;
  return Poly(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(k)));
}

DivRem divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Rational> rem(a.coefficients().begin(), a.coefficients().end());
  const auto bc = b.coefficients();
  const int db = b.degree();
  const Rational inv_lead = 1 / b.leading();
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    const Rational c = rem[static_cast<std::size_t>(k)] * inv_lead;
    if (c == 0) continue;
    quot[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * bc[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

namespace {
Poly monic(const Poly& a) { return a.is_zero() ? a : a * (1 / a.leading()); }
}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divrem(x, y).remainder;
    x = std::move(y);
    y = monic(r);
  }
  return monic(x);
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  Poly r0 = a, r1 = b;
  Poly s0{1}, s1{};
  Poly t0{}, t1{1};
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    Poly s2 = s0 - q * s1;
    Poly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Rational scale = 1 / r0.leading();
  return {r0 * scale, s0 * scale, t0 * scale};
}

Poly pow(const Poly& base, unsigned exponent) {
  Poly result{1};
  Poly b = base;
  while (exponent > 0) {
    if (exponent & 1U) result = result * b;
    exponent >>= 1U;
    if (exponent > 0) b = b * b;
  }
  return result;
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: " + to_string(b) + " does not divide " + to_string(a));
  return q;
}

std::vector<std::string> coefficient_strings(const Poly& poly) {
  std::vector<std::string> out;
  out.reserve(poly.coefficients().size());
  for (const auto& c : poly.coefficients()) out.push_back(to_string(c));
  return out;
}

Poly poly_from_strings(std::span<const std::string> coefficients) {
  std::vector<Rational> v;
  v.reserve(coefficients.size());
  for (const auto& s : coefficients) v.push_back(parse_rational(s));
  return Poly(std::move(v));
}

std::string to_string(const Poly& poly, std::string_view var) {
  if (poly.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto cs = poly.coefficients();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const Rational& c = cs[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << to_string(mag);
      continue;
    }
    if (mag != 1) os << to_string(mag) << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(Poly numerator, Poly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
}

RationalFunction RationalFunction::canonical() const {
  if (canonical_) return *this;
  Poly num = num_, den = den_;
  if (num.is_zero()) {
    den = Poly{1};
  } else {
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  const auto dc = den.coefficients();
  const auto lowest = std::find_if(dc.begin(), dc.end(), [](const Rational& c) { return c != 0; });
  const Rational scale = 1 / *lowest;
  RationalFunction out(num * scale, den * scale);
  out.canonical_ = true;
  return out;
}

Rational RationalFunction::operator()(const Rational& x) const {
  Rational d = den_(x);
  if (d == 0) {
    const RationalFunction c = canonical();
    d = c.den_(x);
    if (d == 0) throw PreconditionError("evaluation at a pole t = " + to_string(x));
    return c.num_(x) / d;
  }
  return num_(x) / d;
}

int RationalFunction::degree() const {
  if (num_.is_zero()) return INT_MIN;
  return num_.degree() - den_.degree();
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_).canonical();
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_).canonical();
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_).canonical();
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num_.is_zero()) throw PreconditionError("division by the zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_).canonical();
}

bool equivalent(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string to_string(const RationalFunction& r, std::string_view var) {
  return "(" + to_string(r.numerator(), var) + ") / (" + to_string(r.denominator(), var) + ")";
}

}  // namespace zetacount
