#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qb {

using Int = boost::multiprecision::cpp_int;
// expression templates off: arithmetic yields plain values (std::min etc. stay usable)
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Int num(const Rat& r) { return numerator(r); }
inline Int den(const Rat& r) { return denominator(r); }

inline Rat make_rat(long long p, long long q) {
    if (q == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(Int(p), Int(q));
}

inline bool is_integer(const Rat& r) { return den(r) == 1; }

// floor(p/q) for exact rationals
inline Int rat_floor(const Rat& r) {
    Int p = num(r), q = den(r);
    Int d = p / q;
    if (p % q != 0 && p < 0) d -= 1;
    return d;
}

// r mod 1, result in [0,1)
inline Rat mod1(const Rat& r) { return r - Rat(rat_floor(r)); }

inline long long to_ll(const Int& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer too large");
    return static_cast<long long>(v);
}

inline std::string rat_str(const Rat& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

// Bernoulli numbers B_0, B_1 = -1/2, B_2 = 1/6, ... by the standard recurrence, cached.
const Rat& bernoulli(int n);

// binomial(n, k) as exact integer, n >= 0
Int binomial(long long n, long long k);

// Pochhammer (x)_n = x(x+1)...(x+n-1)
Rat pochhammer(const Rat& x, int n);

// falling factorial x(x-1)...(x-n+1)
Rat falling_factorial(const Rat& x, int n);

Int factorial(int n);

} // namespace qb
