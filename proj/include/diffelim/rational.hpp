#pragma once

#include <gmpxx.h>

#include <string>

namespace diffelim {

/// Exact rational number; GMP keeps it canonical (reduced, positive
/// denominator, zero as 0/1).
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "a" or "a/b"; throws std::invalid_argument on malformed text or a
/// zero denominator.
Rational parse_rational(const std::string& text);

}  // namespace diffelim
