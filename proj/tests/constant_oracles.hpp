#pragma once

// Independent high-precision brackets for the constants used by the evaluator, CLI and
// acceptance suites.

#include "dfinum/enclosure.hpp"

#include <mpfr.h>

namespace dfinum::testing {

/// Real interval [lo, hi] known to contain a constant.
struct Interval {
    BigRational lo, hi;
};

inline bool contains(const Enclosure& e, const Interval& iv) {
    return e.contains(GaussianRational(iv.lo)) && e.contains(GaussianRational(iv.hi));
}

inline Interval e_oracle() {
    BigRational s, t(1);
    for (long k = 0; k < 120; ++k) {
        s += t;
        t /= BigRational(k + 1);
    }
    return {s, s + 2 * t};
}

inline Interval log2_oracle() {
    BigRational s;
    long n = 400;
    for (long k = 1; k <= n; ++k) s += BigRational(1) / BigRational(BigInteger(k) << static_cast<unsigned long>(k));
    return {s, s + BigRational(1) / BigRational(BigInteger(n) << static_cast<unsigned long>(n))};
}

/// arctan(1/m) by its alternating series, bracketed by consecutive partial sums.
inline Interval atan_inv(long m, long terms) {
    BigRational s, p(1, m);
    BigRational m2(m * m);
    for (long k = 0; k < terms; ++k) {
        BigRational t = p / BigRational(2 * k + 1);
        s += (k % 2 == 0) ? t : BigRational(-t);
        p /= m2;
    }
    BigRational next = p / BigRational(2 * terms + 1);
    return terms % 2 == 0 ? Interval{s, s + next} : Interval{s - next, s};
}

inline Interval pi4_oracle() {
    Interval a = atan_inv(5, 80), b = atan_inv(239, 40);
    return {4 * a.lo - b.hi, 4 * a.hi - b.lo};
}

/// MPFR value of a constant as a tight rational interval.
inline Interval mpfr_oracle(int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), double arg_num, double arg_den) {
    BigFloat x(600), y(600);
    mpfr_set_d(x.get(), arg_num, MPFR_RNDN);
    mpfr_div_d(x.get(), x.get(), arg_den, MPFR_RNDN);
    fn(y.get(), x.get(), MPFR_RNDN);
    BigRational v = y.to_rational(), eps(BigRational(1) / BigRational(BigInteger(1) << 590));
    return {v - eps, v + eps};
}

inline Interval exp_pi_oracle(int sign) {
    BigFloat p(600), y(600);
    mpfr_const_pi(p.get(), MPFR_RNDN);
    if (sign < 0) mpfr_neg(p.get(), p.get(), MPFR_RNDN);
    mpfr_exp(y.get(), p.get(), MPFR_RNDN);
    BigRational v = y.to_rational(), eps(BigRational(1) / BigRational(BigInteger(1) << 580));
    return {v - eps, v + eps};
}

/// sqrt(2) between consecutive decimal truncations at 10^-digits.
inline Interval sqrt2_oracle(unsigned long digits = 120) {
    BigInteger scale, r;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    BigInteger n = 2 * scale * scale;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return {BigRational(r, scale), BigRational(r + 1, scale)};
}

/// Partial sum of 1/k^3 for k = 1..n.
inline BigRational zeta3_partial(long n) {
    BigRational s;
    for (long k = 1; k <= n; ++k) s += BigRational(1) / BigRational(BigInteger(k) * k * k);
    return s;
}

/// zeta(3) lies in [S_n + 1/(2(n+1)^2), S_n + 1/(2n^2)].
inline Interval zeta3_oracle(long n) {
    const BigRational s = zeta3_partial(n);
    return {s + BigRational(1, 2 * (n + 1) * (n + 1)), s + BigRational(1, 2 * n * n)};
}

}  // namespace dfinum::testing
