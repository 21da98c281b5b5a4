#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace metlie {

/// Exact rational scalar. GMP keeps values in canonical reduced form
/// (gcd(num,den)=1, den>0) as long as inputs are canonical.
using Rat = mpq_class;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct unsupported_case : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" (optional sign, arbitrary precision). Throws
/// input_error on malformed text or zero denominator.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw input_error("empty rational literal");
  for (char c : s)
    if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
      throw input_error("malformed rational literal: " + s);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw input_error("malformed rational literal: " + s);
  if (q.get_den() == 0) throw input_error("zero denominator in rational literal: " + s);
  q.canonicalize();
  return q;
}

/// Serializes as "p/q", or "p" when the denominator is 1.
inline std::string rat_str(const Rat& x) { return x.get_str(); }

inline Rat rat_of(long num, long den = 1) {
  if (den == 0) throw input_error("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace metlie
