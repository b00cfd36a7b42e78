#include "pexp/rational.hpp"

#include <cctype>

namespace pexp {

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty())
    return std::nullopt;
  size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::string &out) {
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      out.push_back(text[pos++]);
    return pos > start;
  };
  std::string whole;
  if (!digits(whole))
    return std::nullopt;
  Rational value;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    std::string denom;
    if (!digits(denom) || pos != text.size())
      return std::nullopt;
    Rational d{boost::multiprecision::cpp_int(denom)};
    if (d == 0)
      return std::nullopt;
    value = Rational{boost::multiprecision::cpp_int(whole)} / d;
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::string frac;
    if (!digits(frac) || pos != text.size())
      return std::nullopt;
    Rational scale = 1;
    for (size_t i = 0; i < frac.size(); ++i)
      scale *= 10;
    value = Rational{boost::multiprecision::cpp_int(whole)} +
            Rational{boost::multiprecision::cpp_int(frac)} / scale;
  } else if (pos == text.size()) {
    value = Rational{boost::multiprecision::cpp_int(whole)};
  } else {
    return std::nullopt;
  }
  return negative ? -value : value;
}

std::string to_string(const Rational &q) {
  return q.str();
}

double to_double(const Rational &q) {
  return q.convert_to<double>();
}

} // namespace pexp
