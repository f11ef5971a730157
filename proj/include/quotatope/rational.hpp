#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace quotatope {

using BigInt = mpz_class;
using Rational = mpq_class;

// Error taxonomy used across the library; the CLI maps these to exit codes.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const BigInt& z) { return z.get_str(); }

// Canonical "p" / "p/q" form.
inline std::string to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw input_error("empty rational literal");
    try {
        Rational r(s);
        r.canonicalize();
        if (r.get_den() == 0) throw input_error("zero denominator in '" + s + "'");
        return r;
    } catch (const std::invalid_argument&) {
        throw input_error("malformed rational literal '" + s + "'");
    }
}

// Exact rational from a double (doubles are dyadic rationals).
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw input_error("non-finite weight");
    Rational r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

inline long to_long(const BigInt& z) {
    if (!z.fits_slong_p()) throw capacity_error("integer too large for machine word: " + z.get_str());
    return z.get_si();
}

// floor(num/den) for exact rationals.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

inline BigInt floor_of(const Rational& r) { return floor_div(r.get_num(), r.get_den()); }

inline BigInt ceil_of(const Rational& r) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

}  // namespace quotatope
