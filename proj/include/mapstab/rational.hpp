#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mapstab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "p" or "p/q" with q > 1.
std::string to_string(const Rational& q);

/// Parses "p" or "p/q" (optional leading sign); throws EngineError(Parse).
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// (-1)^(a*b) for graded degrees; negative degrees use their parity.
inline bool koszul_negative(int a, int b) { return ((a & 1) != 0) && ((b & 1) != 0); }

}  // namespace mapstab
