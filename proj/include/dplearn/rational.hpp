#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "dplearn/errors.hpp"

namespace dplearn {

// Exact rational arithmetic for probabilities and error thresholds.
// Doubles convert losslessly (every finite double is a binary rational),
// so comparisons such as err(f) <= alpha are decidable even when alpha
// arrives as a double.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat(long long num, long long den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  return Rat(num, den);
}

inline Rat rat(double x) { return Rat(x); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw ValidationError("rational with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse rational: " + s);
  }
}

inline std::string rational_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// True when the value is exactly representable as a double (denominator a
// power of two and within range); such weights can round-trip as JSON numbers.
inline bool fits_double_exactly(const Rat& r) {
  double d = to_double(r);
  return Rat(d) == r;
}

}  // namespace dplearn
