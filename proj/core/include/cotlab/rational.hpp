#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace cotlab {

/// Exact rational scalar used by every identity-preserving computation.
/// Double precision is reserved for optimization values and reports.
using Rational = boost::multiprecision::mpq_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "p/q" or "p" (also accepts a plain decimal like "0.25", converted
/// exactly). Throws std::runtime_error on garbage.
Rational parse_rational(const std::string& text);

/// Canonical serialization: "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Exact embedding of a double (every finite double is rational).
inline Rational rational_from_double(double x) { return Rational(x); }

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace cotlab
