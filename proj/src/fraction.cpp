#include "dsp/fraction.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dsp {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed proportion '" + std::string(whole) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// "12.5" -> 125/10
std::pair<std::int64_t, std::int64_t> parse_decimal(std::string_view s, std::string_view whole) {
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return {parse_int(s, whole), 1};
  std::string_view ip = s.substr(0, dot);
  std::string_view fp = s.substr(dot + 1);
  if (fp.size() > 15) throw std::invalid_argument("too many decimals in '" + std::string(whole) + "'");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
  std::int64_t num = (ip.empty() ? 0 : parse_int(ip, whole)) * den + (fp.empty() ? 0 : parse_int(fp, whole));
  return {num, den};
}

}  // namespace

ExactFraction::ExactFraction(std::int64_t numerator, std::int64_t denominator) {
  if (numerator <= 0 || denominator <= 0 || numerator > denominator) {
    throw std::domain_error("proportion must satisfy 0 < p <= q, got " + std::to_string(numerator) +
                            "/" + std::to_string(denominator));
  }
  const auto g = std::gcd(numerator, denominator);
  p_ = numerator / g;
  q_ = denominator / g;
}

ExactFraction ExactFraction::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty proportion");
  if (s.back() == '%') {
    auto [num, den] = parse_decimal(trim(s.substr(0, s.size() - 1)), text);
    return ExactFraction(num, den * 100);
  }
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    return ExactFraction(parse_int(trim(s.substr(0, slash)), text), parse_int(trim(s.substr(slash + 1)), text));
  }
  auto [num, den] = parse_decimal(s, text);
  return ExactFraction(num, den);
}

std::string ExactFraction::str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

Count ceil_threshold(const ExactFraction& lq, Count size) {
  if (size < 0) throw std::domain_error("ceil_threshold: negative size");
  __extension__ using Wide = __int128;
  const Wide num = static_cast<Wide>(lq.numerator()) * size + lq.denominator() - 1;
  return static_cast<Count>(num / lq.denominator());
}

Count threshold_period(const ExactFraction& lq) {
  return (lq.denominator() + lq.numerator() - 1) / lq.numerator();
}

}  // namespace dsp
