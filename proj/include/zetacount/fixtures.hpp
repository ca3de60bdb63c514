#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zetacount/zeta_link.hpp"

namespace zetacount {

/// A polynomial with a known Poincare series, parameterised by the prime.
struct Fixture {
  std::string name;
  std::string polynomial;
  std::vector<unsigned> primes;  // primes exercised by the test suites
  std::string description;
  unsigned count_depth = 12;     // default max i for counting in the CLI
  std::function<PoincareSeries(const Integer& p)> poincare;
};

const std::vector<Fixture>& fixtures();
/// Throws ParseError for an unknown name.
const Fixture& find_fixture(std::string_view name);

}  // namespace zetacount
