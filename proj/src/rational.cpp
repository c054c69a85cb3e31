#include "trop/rational.hpp"

#include <cstddef>

#include "trop/error.hpp"

namespace trop {

Rat rat_from_string(const std::string& text) {
  if (text.empty()) throw Error(Err::ParseError, "empty rational literal");
  // Accept an optional leading minus, digits, optional "/digits".
  std::size_t i = 0;
  auto digits_from = [&](std::size_t start) {
    std::size_t j = start;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    return j;
  };
  if (text[i] == '-' || text[i] == '+') ++i;
  std::size_t num_end = digits_from(i);
  if (num_end == i) throw Error(Err::ParseError, "bad rational literal '" + text + "'");
  if (num_end == text.size()) {
    return Rat(text);
  }
  if (text[num_end] != '/') throw Error(Err::ParseError, "bad rational literal '" + text + "'");
  std::size_t den_start = num_end + 1;
  std::size_t den_end = digits_from(den_start);
  if (den_end != text.size() || den_end == den_start)
    throw Error(Err::ParseError, "bad rational literal '" + text + "'");
  Rat value(text);
  if (value.get_den() == 0) throw Error(Err::ParseError, "zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

std::string rat_to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

IntVec primitive(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) {
    Int ax = abs(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ax.get_mpz_t());
  }
  if (g == 0 || g == 1) return v;
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVec primitive_of_rational(const RatVec& v) {
  Int lcm = 1;
  for (const Rat& x : v) {
    Int den = x.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  IntVec scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(lcm);
    s.canonicalize();
    scaled[i] = s.get_num();
  }
  return primitive(scaled);
}

bool is_zero_vec(const RatVec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero_vec(const IntVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

RatVec to_rat_vec(const IntVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Rat dot(const RatVec& a, const IntVec& b) {
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * Rat(b[i]);
  return acc;
}

}  // namespace trop
