#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace critpt {

using BigInt = boost::multiprecision::cpp_int;
// Arbitrary-precision rational, always stored in lowest terms with a
// positive denominator.
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const BigRational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const BigRational& r) { return boost::multiprecision::denominator(r); }

inline BigRational rat(long long num, long long den = 1) {
  return BigRational(BigInt(num), BigInt(den));
}

inline double to_double(const BigRational& r) { return r.template convert_to<double>(); }

inline BigRational rat_pow(const BigRational& base, int exp) {
  if (exp < 0) return 1 / rat_pow(base, -exp);
  BigRational out(1);
  BigRational b = base;
  int e = exp;
  while (e > 0) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

inline BigInt factorial_int(int n) {
  BigInt f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial_int(int n, int k) {
  if (k < 0 || k > n) return BigInt(0);
  BigInt out(1);
  for (int i = 0; i < k; ++i) {
    out *= (n - i);
    out /= (i + 1);
  }
  return out;
}

inline std::string rat_str(const BigRational& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

}  // namespace critpt
