#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "kdvbbm/errors.hpp"

namespace kdvbbm {

// How the dyadic sum sum_{N <= M dyadic} N^a is bounded as M grows.
enum class DyadicBound {
  power,        // a > 0: comparable to M^a
  constant,     // a < 0: bounded by a constant
  logarithmic,  // a = 0: term count, comparable to ln M
};

struct DyadicSumReport {
  double loop_value = 0.0;    // direct accumulation over N = 1, 2, ..., M
  double closed_form = 0.0;   // geometric closed form (term count when a = 0)
  std::size_t count = 0;      // number of dyadic terms, log2(M) + 1
  DyadicBound bound = DyadicBound::constant;
  double bound_constant = 0.0;  // C with loop_value <= C * envelope(M)
  bool integer_exact = false;   // both paths evaluated in exact integer arithmetic
  std::uint64_t loop_integer = 0;
  std::uint64_t closed_integer = 0;
};

// Sum of N^a over dyadic N = 1..M, returned with the closed geometric form
// and the bound class it certifies. For positive integer a both the loop and
// the closed form (2^(a(p+1)) - 1)/(2^a - 1) are also computed in uint64 so
// equality is exact, not approximate; for negative integer a the double loop
// is itself exact (binary fractions, partial sums well inside the mantissa).
inline DyadicSumReport dyadic_sum(double a, std::uint64_t M) {
  if (M < 2 || (M & (M - 1)) != 0)
    throw config_error("dyadic_sum: M must be a dyadic number >= 2");

  DyadicSumReport rep;
  std::uint64_t p = 0;
  for (std::uint64_t v = M; v > 1; v >>= 1) ++p;
  rep.count = static_cast<std::size_t>(p) + 1;

  rep.loop_value = 0.0;
  for (std::uint64_t i = 0; i <= p; ++i)
    rep.loop_value += std::pow(2.0, a * static_cast<double>(i));

  if (a == 0.0) {
    rep.closed_form = static_cast<double>(rep.count);
    rep.bound = DyadicBound::logarithmic;
    rep.bound_constant = static_cast<double>(rep.count) / std::log(static_cast<double>(M));
  } else {
    const double q = std::pow(2.0, a);
    rep.closed_form = (std::pow(2.0, a * static_cast<double>(p + 1)) - 1.0) / (q - 1.0);
    if (a > 0.0) {
      rep.bound = DyadicBound::power;
      rep.bound_constant = rep.loop_value / std::pow(static_cast<double>(M), a);
    } else {
      rep.bound = DyadicBound::constant;
      rep.bound_constant = 1.0 / (1.0 - q);
    }
  }

  const bool a_is_positive_integer = a > 0.0 && a == std::floor(a);
  if (a_is_positive_integer) {
    const std::uint64_t ai = static_cast<std::uint64_t>(a);
    if (ai * (p + 1) < 64) {
      std::uint64_t sum = 0;
      for (std::uint64_t i = 0; i <= p; ++i) sum += std::uint64_t{1} << (ai * i);
      const std::uint64_t numer = (std::uint64_t{1} << (ai * (p + 1))) - 1;
      const std::uint64_t denom = (std::uint64_t{1} << ai) - 1;
      rep.loop_integer = sum;
      rep.closed_integer = numer / denom;
      rep.integer_exact = true;
    }
  }
  return rep;
}

}  // namespace kdvbbm
