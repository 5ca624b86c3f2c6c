#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace paramlift {

/// Arbitrary precision rational number. Always kept in canonical form.
using Rational = mpq_class;

/// Parses "3", "-3", "3/10", "0.3", "1e-5" or "2.5E3" into an exact rational.
/// Throws SyntaxError on malformed input or a zero denominator.
Rational parseRational(std::string_view text);

/// "p/q" or "p" when the denominator is one.
std::string toString(Rational const& value);

/// Decimal rendering with the given number of significant digits.
std::string toDecimalString(Rational const& value, int significantDigits = 12);

/// numerator / denominator in canonical form.
inline Rational fraction(long numerator, long denominator) {
    Rational result(numerator, denominator);
    result.canonicalize();
    return result;
}

double toDouble(Rational const& value);

/// Exact conversion of a finite binary64 value.
Rational fromDouble(double value);

}  // namespace paramlift
