#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace czhardy {

// All set measures, integrals and inequality certificates are carried as
// exact rationals.  GMP supplies the arithmetic; this header only adds the
// few conversions the rest of the library needs.
using Rational = mpq_class;
using Integer = mpz_class;

// q^e for integer e of either sign.
inline Rational rational_pow(long q, long e) {
    if (q <= 0) throw std::invalid_argument("rational_pow: base must be positive");
    Integer num;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(q),
                  static_cast<unsigned long>(e < 0 ? -e : e));
    Rational r(num);
    if (e < 0) r = 1 / r;
    return r;
}

// r^p for p >= 0.
inline Rational pow_int(const Rational& r, unsigned long p) {
    Rational out(1);
    Rational base = r;
    unsigned long e = p;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Canonical "num/den" form, denominator always present.
inline std::string to_fraction_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts "3", "-3/4", "15/5"; canonicalizes.
inline Rational parse_fraction(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_fraction: empty string");
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_fraction: cannot parse '" + s + "'");
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("parse_fraction: zero denominator");
    return r;
}

// Every finite double is a dyadic rational; the conversion is lossless.
inline Rational rational_from_double(double x) { return Rational(x); }

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace czhardy
