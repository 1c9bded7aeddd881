#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace mobius {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-7/2", or a decimal like "0.49" (exactly, as 49/100).
Rational parse_rational(const std::string& text);

std::string rational_to_string(const Rational& value);

/// Exact power 2^e for e possibly negative.
Rational pow2_rational(long exponent);

} // namespace mobius
