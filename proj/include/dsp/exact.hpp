#pragma once

// Exact rational evaluation of beta-binomial masses and the specific
// consumer's risk. Used for tie detection at small remaining lots.

#include <boost/multiprecision/cpp_int.hpp>

#include "dsp/risk.hpp"

namespace dsp::exact {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Exact value of a finite double.
Rational from_double(double x);

/// Best rational approximation with denominator <= max_denominator, e.g. 0.1 -> 1/10.
Rational rationalize(double x, std::int64_t max_denominator = 1'000'000);

Integer binomial(Count n, Count k);

/// C(m, k) * B(k + a, m - k + b) / B(a, b) with a, b taken exactly.
Rational beta_binomial_pmf(Count trials, const Rational& a, const Rational& b, Count k);

/// Exact specific consumer's risk. Throws std::length_error when the
/// remaining lot exceeds kExactMaxTrials.
Rational specific_consumer_risk(const RiskQuery& query);

}  // namespace dsp::exact
