#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pexp {

/// Arbitrary-precision rational number; all probabilities, expectation
/// values and program constants are kept exact.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-4/5" or a decimal literal such as "1.5" into a rational.
[[nodiscard]] std::optional<Rational> parse_rational(std::string_view text);

/// Renders as "p/q", or just "p" when the denominator is 1.
[[nodiscard]] std::string to_string(const Rational &q);

/// Renders a rational as a decimal approximation (for diagnostics only).
[[nodiscard]] double to_double(const Rational &q);

} // namespace pexp
