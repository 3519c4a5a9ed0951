#include "qbound/rational.hpp"

#include <cmath>

#include "qbound/errors.hpp"

namespace qbound {

std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Boost reads a leading zero as an octal prefix, so strip it first.
BigInt decimal(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return BigInt{std::string(digits)};
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("not a rational number: '" + std::string(whole) + "'");
  BigInt v = decimal(s);
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("bad denominator in '" + std::string(text) + "'");
    BigInt den = decimal(den_text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      int_part.remove_prefix(1);
    }
    if (int_part.empty()) int_part = "0";
    if (!all_digits(int_part) || (!frac_part.empty() && !all_digits(frac_part))) {
      throw ParseError("not a rational number: '" + std::string(text) + "'");
    }
    BigInt scale = 1;
    for (std::size_t k = 0; k < frac_part.size(); ++k) scale *= 10;
    BigInt digits = decimal(std::string(int_part) + std::string(frac_part));
    Rational r(digits, scale);
    return negative ? Rational(-r) : r;
  }

  return Rational(parse_integer(text, text));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  BigInt sn = boost::multiprecision::sqrt(num);
  BigInt sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

std::string_view to_string(Exactness e) {
  switch (e) {
    case Exactness::exact_rational:
      return "exact-rational";
    case Exactness::radical_of_rational:
      return "radical-of-rational";
    case Exactness::floating:
      return "floating";
  }
  return "floating";
}

BoundValue BoundValue::rational(const Rational& r) {
  return BoundValue{to_double(r), Exactness::exact_rational, r};
}

BoundValue BoundValue::sqrt_of(const Rational& radicand) {
  if (radicand < 0) throw DomainError("negative radicand " + to_string(radicand));
  return BoundValue{std::sqrt(to_double(radicand)), Exactness::radical_of_rational, radicand};
}

BoundValue BoundValue::floating(double v) { return BoundValue{v, Exactness::floating, std::nullopt}; }

}  // namespace qbound
