// Exact rational scalars. All numerical work in this library is done over Q
// with arbitrary-precision arithmetic; no floating point is used anywhere.
#pragma once

#include <gmpxx.h>

#include <string>

namespace mrstab {

using Rat = mpq_class;
using Int = mpz_class;

// Canonical decimal-free rendering: "7", "-3/4".
inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

// Parses "p" or "p/q"; throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& s);

}  // namespace mrstab
