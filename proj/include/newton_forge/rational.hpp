#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nf {

namespace mp = boost::multiprecision;

// Exact arithmetic only. Expression templates are disabled so Rat behaves
// like a plain value type in containers and generic code.
using Int = mp::number<mp::backends::cpp_int_backend<>, mp::et_off>;
using Rat = mp::number<mp::backends::rational_adaptor<mp::backends::cpp_int_backend<>>, mp::et_off>;

inline int sign(const Rat& x) { return x.sign(); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Parses "-3/4", "7" or "0". Whitespace is not accepted.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in rational literal: " + s);
  return Rat(num, den);
}

// "p/q" with the denominator omitted when it is 1.
inline std::string rat_to_string(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

// Decimal rendering with a fixed number of significant digits (used in
// reports only; the kernel never touches floating point).
inline std::string rat_to_decimal(const Rat& x, int sig_digits = 12) {
  if (x == 0) return "0";
  Int num = numerator(x), den = denominator(x);
  std::string out;
  if (num < 0) { out += "-"; num = -num; }
  // exponent e such that 10^e <= num/den < 10^(e+1)
  int e = 0;
  Int n = num, d = den;
  while (n >= d * 10) { d *= 10; ++e; }
  while (n < d) { n *= 10; --e; }
  // digits = round(num/den * 10^(sig_digits-1-e))
  Int scaled_num = num, scaled_den = den;
  int shift = sig_digits - 1 - e;
  if (shift >= 0) for (int i = 0; i < shift; ++i) scaled_num *= 10;
  else for (int i = 0; i < -shift; ++i) scaled_den *= 10;
  Int digits = (scaled_num * 2 + scaled_den) / (scaled_den * 2);  // round half up
  std::string ds = digits.str();
  if ((int)ds.size() > sig_digits) { ds.pop_back(); ++e; }  // rounding carried over
  // trim trailing zeros but keep at least one digit
  while (ds.size() > 1 && ds.back() == '0') ds.pop_back();
  if (e >= -4 && e < sig_digits + 3) {
    if (e >= 0) {
      if ((int)ds.size() <= e) ds.append(e + 1 - ds.size(), '0');
      out += ds.substr(0, e + 1);
      if ((int)ds.size() > e + 1) out += "." + ds.substr(e + 1);
    } else {
      out += "0.";
      out.append(-e - 1, '0');
      out += ds;
    }
  } else {
    out += ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e" + std::to_string(e);
  }
  return out;
}

inline double rat_to_double(const Rat& x) { return x.convert_to<double>(); }

}  // namespace nf
