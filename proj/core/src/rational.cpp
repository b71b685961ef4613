#include "cotlab/rational.hpp"

#include <cctype>

#include "cotlab/errors.hpp"

namespace cotlab {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  // Decimal form: sign, digits, optional fraction part. No exponents.
  if (text.find('/') == std::string::npos && text.find('.') != std::string::npos) {
    size_t dot = text.find('.');
    std::string intpart = text.substr(0, dot);
    std::string fracpart = text.substr(dot + 1);
    bool negative = !intpart.empty() && intpart[0] == '-';
    if (negative) intpart = intpart.substr(1);
    if (intpart.empty()) intpart = "0";
    for (char c : intpart + fracpart)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("bad rational literal: " + text);
    Rational value(intpart + fracpart);
    Rational scale = 1;
    for (size_t i = 0; i < fracpart.size(); ++i) scale *= 10;
    value /= scale;
    return negative ? Rational(-value) : value;
  }
  try {
    return Rational(text);
  } catch (const std::exception&) {
    throw ParseError("bad rational literal: " + text);
  }
}

}  // namespace cotlab
