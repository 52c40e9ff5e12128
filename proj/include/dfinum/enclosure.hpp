#pragma once

#include "dfinum/number.hpp"

#include <mpfr.h>

#include <string>
#include <variant>

namespace dfinum {

/// Owning wrapper around an mpfr_t with a fixed precision in bits.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    /// Round-to-nearest conversion; returns an upper bound on the absolute rounding error.
    double set(const BigRational& q);

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(value_); }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }

    BigRational to_rational() const;
    /// Upper / lower bounds on |x| as doubles.
    double abs_upper() const;
    double abs_lower() const;
    /// Upper bound on one unit in the last place of x (0 for x = 0).
    double ulp() const;

private:
    mpfr_t value_;
};

/// Closed complex disk {w : |w - mid| <= rad}. Midpoint parts are BigFloats; the radius
/// is a double maintained with upward rounding so every operation stays an enclosure.
class Enclosure {
public:
    explicit Enclosure(mpfr_prec_t prec = 64);
    Enclosure(BigFloat re, BigFloat im, double rad);

    static Enclosure exact(const GaussianRational& x, mpfr_prec_t prec);
    static Enclosure from_rational(const BigRational& x, mpfr_prec_t prec) {
        return exact(GaussianRational(x), prec);
    }

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    double rad() const { return rad_; }
    mpfr_prec_t prec() const { return re_.prec(); }
    GaussianRational mid() const;

    Enclosure with_prec(mpfr_prec_t prec) const;
    /// Adds e to the radius (rounded up).
    Enclosure widened(double e) const;

    double abs_upper() const;
    double abs_lower() const;
    bool contains_zero() const;

    bool contains(const GaussianRational& x) const;
    bool contains(const Enclosure& other) const;
    bool overlaps(const Enclosure& other) const;

    Enclosure operator-() const;
    friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b);
    Enclosure& operator+=(const Enclosure& o) { return *this = *this + o; }
    Enclosure& operator*=(const Enclosure& o) { return *this = *this * o; }

    Enclosure inverse() const;
    Enclosure conj() const;

    /// Scientific rendering of the midpoint for diagnostics.
    std::string debug_str(int digits = 20) const;

private:
    BigFloat re_;
    BigFloat im_;
    double rad_ = 0.0;
};

/// Either an exact Gaussian rational or an enclosure of an unknown complex number.
using NumberValue = std::variant<GaussianRational, Enclosure>;

inline bool is_exact(const NumberValue& v) { return std::holds_alternative<GaussianRational>(v); }
Enclosure to_enclosure(const NumberValue& v, mpfr_prec_t prec);

namespace rounding {
double up(double x);
double down(double x);
double add_up(double a, double b);
double mul_up(double a, double b);
}  // namespace rounding

/// Working precision in bits for a request of `digits` significant decimal digits.
mpfr_prec_t bits_for_digits(long digits);

}  // namespace dfinum
