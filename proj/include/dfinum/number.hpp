#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>

namespace dfinum {

/// Exact rational; gmpxx keeps every result canonical (den > 0, reduced).
using BigRational = mpq_class;
using BigInteger = mpz_class;

/// Element of Q(i).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(implicit)
    GaussianRational(BigRational re) : re_(std::move(re)), im_(0) {}  // NOLINT(implicit)
    GaussianRational(BigRational re, BigRational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {BigRational(0), BigRational(1)}; }

    const BigRational& re() const { return re_; }
    const BigRational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// re^2 + im^2.
    BigRational norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational inverse() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// Integer power, negative exponents allowed for nonzero values.
    GaussianRational pow(long e) const;

    /// Canonical text, e.g. "3/2", "-i", "1/2+3*i".
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.str(); }

private:
    BigRational re_{0};
    BigRational im_{0};
};

using Gaussian = GaussianRational;

inline bool is_zero(const BigRational& x) { return sgn(x) == 0; }
inline bool is_zero(const GaussianRational& x) { return x.is_zero(); }
inline GaussianRational conj(const GaussianRational& x) { return x.conj(); }
inline BigRational conj(const BigRational& x) { return x; }

/// Canonical text of a rational ("a" or "a/b").
std::string to_string(const BigRational& x);

/// log2 |x| as a double; -inf for zero. Robust for huge numerators/denominators.
double log2_abs(const BigRational& x);
double log2_abs(const GaussianRational& x);

BigRational factorial(unsigned long n);

}  // namespace dfinum
