#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace qbound {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "numerator/denominator" in lowest terms, always with an explicit denominator.
std::string to_string(const Rational& r);

/// Accepts "p", "p/q" and finite decimals such as "-0.125" (parsed exactly).
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// Exact square root when both numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& r);

/// How a reported number relates to exact arithmetic.
enum class Exactness { exact_rational, radical_of_rational, floating };

std::string_view to_string(Exactness e);

/// A bound value together with its exact provenance: for exact_rational the
/// rational is the value, for radical_of_rational it is the radicand.
struct BoundValue {
  double value = 0.0;
  Exactness exactness = Exactness::floating;
  std::optional<Rational> exact;

  static BoundValue rational(const Rational& r);
  static BoundValue sqrt_of(const Rational& radicand);
  static BoundValue floating(double v);
};

}  // namespace qbound
