#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stabcalc {

// Exact rational coefficient type. All ring arithmetic in this library is
// exact; there is no floating point anywhere in the computation paths.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// "num" or "num/den", canonicalized.
inline std::string rat_to_string(const Rat& r) {
    return r.get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline Int factorial(unsigned n) {
    Int f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

inline Int int_pow(const Int& b, unsigned e) {
    Int r = 1;
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

inline long lcm_long(long a, long b) {
    Int g = gcd(Int(a), Int(b));
    Int l = Int(a) / g * Int(b);
    return l.get_si();
}

} // namespace stabcalc
