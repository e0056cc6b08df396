#include "equitrans/scalar.hpp"

#include "equitrans/errors.hpp"

#include <cctype>

namespace equitrans {

std::string to_string(const Rational& x) {
  const auto num = boost::multiprecision::numerator(x);
  const auto den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

boost::multiprecision::mpz_int parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InvalidInput("malformed rational: '" + std::string(whole) + "'");
  // A leading zero would select octal in the mpz string constructor.
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  const boost::multiprecision::mpz_int v{std::string(s)};
  return negative ? boost::multiprecision::mpz_int(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidInput("empty rational literal");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_integer(text.substr(0, slash), text);
    const auto den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view head = text.substr(0, dot);
    const std::string_view tail = text.substr(dot + 1);
    if (!tail.empty() && !all_digits(tail)) throw InvalidInput("malformed decimal: '" + std::string(text) + "'");
    const bool negative = !head.empty() && head.front() == '-';
    std::string digits(head);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    digits += tail;
    const auto num = parse_integer(digits, text);
    boost::multiprecision::mpz_int den = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
    Rational r(num, den);
    // "-0.5" parsed as "-05" keeps its sign already; guard the "-0.x" corner.
    if (negative && r > 0) r = -r;
    return r;
  }
  return Rational(parse_integer(text, text));
}

}  // namespace equitrans
