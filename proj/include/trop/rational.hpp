#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace trop {

// Exact scalars. mpq_class canonicalizes (reduced fraction, positive
// denominator) on every arithmetic result, which is what makes RREF bases
// bitwise-canonical. Floating point is forbidden everywhere in the library.
using Rat = mpq_class;
using Int = mpz_class;

using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

// Parses "p", "-p", or "p/q". Throws Error(ParseError) on anything else.
Rat rat_from_string(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 0.
std::string rat_to_string(const Rat& value);

// Content-normalized direction vector: divides by the gcd of the entries,
// preserving sign. The zero vector is returned unchanged.
IntVec primitive(const IntVec& v);

// Clears denominators and normalizes: the unique primitive integer vector on
// the same ray (sign preserved). Zero stays zero.
IntVec primitive_of_rational(const RatVec& v);

bool is_zero_vec(const RatVec& v);
bool is_zero_vec(const IntVec& v);

RatVec to_rat_vec(const IntVec& v);

Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const RatVec& a, const IntVec& b);

}  // namespace trop
