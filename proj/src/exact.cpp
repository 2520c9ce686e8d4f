#include "dsp/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace dsp::exact {

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("exact::from_double: non-finite value");
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  // 53 significant bits fit in an int64 after scaling by 2^53.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{Integer(scaled)};
  if (exp > 0) {
    r *= Rational(Integer(1) << exp);
  } else if (exp < 0) {
    r /= Rational(Integer(1) << (-exp));
  }
  return r;
}

Rational rationalize(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) throw std::domain_error("exact::rationalize: non-finite value");
  // Continued-fraction convergents of x.
  Integer h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
  Integer k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  while (frac > 1e-15) {
    const double inv = 1.0 / frac;
    const auto a = static_cast<std::int64_t>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= 1e-15 * std::max(1.0, std::abs(x))) break;
  }
  return Rational(h, k);
}

Integer binomial(Count n, Count k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("exact::binomial requires 0 <= k <= n");
  k = std::min(k, n - k);
  Integer r = 1;
  for (Count i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Rational beta_binomial_pmf(Count trials, const Rational& a, const Rational& b, Count k) {
  if (k < 0 || k > trials) throw std::domain_error("exact::beta_binomial_pmf outcome out of range");
  // C(m, k) (a)_k (b)_{m-k} / (a + b)_m
  Rational r{binomial(trials, k)};
  for (Count i = 0; i < k; ++i) r *= a + i;
  for (Count i = 0; i < trials - k; ++i) r *= b + i;
  const Rational ab = a + b;
  for (Count i = 0; i < trials; ++i) r /= ab + i;
  return r;
}

Rational specific_consumer_risk(const RiskQuery& query) {
  query.validate();
  const Count remaining = query.remaining();
  if (remaining == 0) return Rational(0);
  if (remaining > kExactMaxTrials) {
    throw std::length_error("exact risk limited to remaining lots of at most " +
                            std::to_string(kExactMaxTrials) + " items");
  }
  const Count c = ceil_threshold(query.lq, remaining);
  const Rational a = from_double(query.prior.a) + query.observed;
  const Rational b = from_double(query.prior.b) + (query.sample_size - query.observed);

  Rational term = beta_binomial_pmf(remaining, a, b, 0);
  Rational below = 0;
  for (Count k = 0; k < c; ++k) {
    below += term;
    // pmf(k + 1) / pmf(k) = (m - k)(a + k) / ((k + 1)(b + m - k - 1))
    if (k + 1 <= remaining) {
      term *= Rational(remaining - k) * (a + k);
      term /= Rational(k + 1) * (b + (remaining - k - 1));
    }
  }
  return Rational(1) - below;
}

}  // namespace dsp::exact
