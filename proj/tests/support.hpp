#pragma once
// Reference values and generators shared by the unit and acceptance tests.
// The closed-form references are written out from the known formulas
// directly, independent of the library's decomposition code.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "zetacount/asymptotics.hpp"
#include "zetacount/counting.hpp"
#include "zetacount/exact.hpp"
#include "zetacount/zeta_link.hpp"

namespace zctest {

using zetacount::Integer;
using zetacount::Poly;
using zetacount::Rational;

inline Rational pw(const Integer& p, long k) { return zetacount::rpow(p, k); }

// y^2 - x^3: M_{6e+d}.
inline Rational cusp_count(const Integer& p, long e, int d) {
  const Rational P(p);
  switch (d) {
    case 0: return (P + 1) * pw(p, 7 * e - 1) - pw(p, 6 * e - 1);
    case 1: return (P + 1) * pw(p, 7 * e) - pw(p, 6 * e);
    default: return 2 * pw(p, 7 * e + d) - pw(p, 6 * e + d - 1);
  }
}

// y^2 - x^3: numerator of the 5/6 class over 1 - p^-5 t^6, and the 1/1
// class numerator over 1 - p^-1 t.
inline Poly cusp_c1(const Integer& p) {
  const Rational P(p);
  return Poly{(P + 1) * pw(p, -1), (P + 1) * pw(p, -2), 2 * pw(p, -2), 2 * pw(p, -3), 2 * pw(p, -4), 2 * pw(p, -5)};
}
inline Poly cusp_c2(const Integer& p) { return Poly{-pw(p, -1)}; }

// x^3 + y^5: the 8/15 class numerator C_1 and the 1/1 class numerator C_2.
inline Poly e8_c1(const Integer& p) {
  const Rational P(p);
  auto q = [&](long k) { return pw(p, k); };
  const Rational p7 = q(7);
  const Rational den = p7 - 1;
  std::vector<Rational> c(15);
  c[14] = (p7 + P - 2) / (den * q(8));
  c[13] = (p7 + q(2) - P - 1) / (den * q(8));
  c[12] = (p7 + q(2) - P - 1) / (den * q(7));
  c[11] = (p7 + q(3) - q(2) - 1) / (den * q(7));
  c[10] = (p7 + q(3) - q(2) - 1) / (den * q(6));
  c[9] = (p7 + q(3) - q(2) - 1) / (den * q(5));
  c[8] = (p7 + q(4) - q(3) - 1) / (den * q(5));
  c[7] = (p7 + q(5) - q(4) - 1) / (den * q(5));
  c[6] = (p7 + q(5) - q(4) - 1) / (den * q(4));
  c[5] = (p7 + q(5) - q(4) - 1) / (den * q(3));
  c[4] = (p7 + q(6) - q(5) - 1) / (den * q(3));
  c[3] = (p7 + q(6) - q(5) - 1) / (den * q(2));
  c[2] = (2 * p7 - q(6) - 1) / (den * q(2));
  c[1] = (q(8) - 1) / (den * q(2));
  c[0] = (q(8) - 1) / (den * P);
  return Poly(c);
}
inline Poly e8_c2(const Integer& p) { return Poly{-(Rational(p) - 1) / ((pw(p, 7) - 1) * Rational(p))}; }

// x^3 + y^5: M_{3+15e} = p^{4+22e} + (p-1)(p^{7e} + ... + p^7 + 1) p^{2+15e}.
inline Integer e8_count_residue3(const Integer& p, unsigned long e) {
  Integer geometric = 0;
  for (unsigned long j = 0; j <= e; ++j) geometric += zetacount::ipow(p, 7 * j);
  return zetacount::ipow(p, 4 + 22 * e) + (p - 1) * geometric * zetacount::ipow(p, 2 + 15 * e);
}

// Exhaustive counts computed by an independent script (tests/oracles).
inline const std::vector<long long> kCuspP2 = {1, 2, 6, 12, 24, 48, 160, 320, 896, 1792, 3584, 7168, 22528};
inline const std::vector<long long> kCuspP3 = {1,     3,      15,      45,     135,     405,    2673,
                                               8019,  37179,  111537,  334611, 1003833, 6200145};
inline const std::vector<long long> kE8P2 = {1,       2,        6,        20,       40,        144,      288,
                                             576,     2176,     8448,     16896,    33792,     133120,   266240,
                                             1056768, 4210688,  8421376,  25231360, 84017152,  168034304,
                                             604504064};

inline Integer ceil_q(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Integer floor_q(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Poly random_poly(std::mt19937_64& rng, int max_degree, int coeff_range) {
  std::uniform_int_distribution<int> deg(-1, max_degree);
  std::uniform_int_distribution<int> c(-coeff_range, coeff_range);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rational> out(static_cast<std::size_t>(deg(rng) + 1));
  for (auto& x : out) x = zetacount::frac(c(rng), den(rng));
  return Poly(out);
}

// Random sparse polynomial in n variables, total degree <= max_degree.
inline zetacount::LatticePolynomial random_lattice_poly(std::mt19937_64& rng, unsigned n, unsigned max_degree,
                                                        int coeff_range) {
  std::uniform_int_distribution<unsigned> nterms(1, 4), exp(0, max_degree);
  std::uniform_int_distribution<int> c(-coeff_range, coeff_range);
  for (;;) {
    std::map<zetacount::Exponents, Integer> terms;
    const unsigned count = nterms(rng);
    for (unsigned t = 0; t < count; ++t) {
      zetacount::Exponents e(n);
      unsigned total = 0;
      for (auto& x : e) {
        x = std::min(exp(rng), max_degree - total);
        total += x;
      }
      int coeff = c(rng);
      if (coeff == 0) continue;
      terms[e] += coeff;
      if (terms[e] == 0) terms.erase(e);
    }
    if (!terms.empty()) return zetacount::LatticePolynomial(n, std::move(terms));
  }
}

// Random spec with up to three pole classes; factors in one class share a
// ratio and differ by a scale.
inline zetacount::FactorSpec random_factor_spec(std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> classes(1, 3), small(1, 4), scale(1, 2), size(1, 2);
  zetacount::FactorSpec spec;
  std::vector<Rational> used;
  const unsigned k = classes(rng);
  while (used.size() < k) {
    const unsigned nu = small(rng), N = small(rng);
    const Rational r = zetacount::frac(nu, N);
    if (std::find(used.begin(), used.end(), r) != used.end()) continue;
    used.push_back(r);
    const unsigned members = size(rng);
    for (unsigned j = 0; j < members; ++j) {
      const unsigned s = scale(rng);
      spec.push_back({static_cast<unsigned>(r.get_num().get_ui()) * s, static_cast<unsigned>(r.get_den().get_ui()) * s});
    }
  }
  return spec;
}

}  // namespace zctest
