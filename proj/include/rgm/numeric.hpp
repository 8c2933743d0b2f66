#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "rgm/modular.hpp"

namespace rgm {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int ipow(const Int& base, long e) {
  Int r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}
inline Int ipow(u64 base, long e) { return ipow(Int(base), e); }

inline Rational make_rational(const Int& num, const Int& den) { return Rational(num, den); }

inline std::string to_string(const Int& x) { return x.str(); }
inline std::string to_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}
inline Int numerator(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Int denominator(const Rational& x) { return boost::multiprecision::denominator(x); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(const Int& x) { return x.convert_to<double>(); }

}  // namespace rgm
