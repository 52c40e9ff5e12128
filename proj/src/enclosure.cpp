#include "dfinum/enclosure.hpp"

#include "dfinum/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dfinum {

namespace rounding {

double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
double add_up(double a, double b) {
    if (a == 0.0) return b;
    if (b == 0.0) return a;
    return up(a + b);
}
double mul_up(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return up(a * b);
}

}  // namespace rounding

using rounding::add_up;
using rounding::mul_up;
using rounding::up;

mpfr_prec_t bits_for_digits(long digits) {
    return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(std::max(1L, digits)) * 3.3219280948873623)) + 32;
}

// --- BigFloat -------------------------------------------------------------

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(value_, o.prec());
    mpfr_set(value_, o.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(value_, o.prec());
    mpfr_swap(value_, o.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(value_, o.prec());
        mpfr_set(value_, o.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(value_, o.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

double BigFloat::set(const BigRational& q) {
    int inexact = mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
    return inexact == 0 ? 0.0 : ulp();
}

BigRational BigFloat::to_rational() const {
    BigRational q;
    mpfr_get_q(q.get_mpq_t(), value_);
    return q;
}

double BigFloat::abs_upper() const { return std::fabs(mpfr_get_d(value_, MPFR_RNDA)); }
double BigFloat::abs_lower() const { return std::fabs(mpfr_get_d(value_, MPFR_RNDZ)); }

double BigFloat::ulp() const {
    if (mpfr_zero_p(value_)) return 0.0;
    double u = std::ldexp(1.0, static_cast<int>(mpfr_get_exp(value_) - prec()));
    return std::max(u, std::numeric_limits<double>::denorm_min());
}

// --- Enclosure ------------------------------------------------------------

Enclosure::Enclosure(mpfr_prec_t prec) : re_(prec), im_(prec) {}

Enclosure::Enclosure(BigFloat re, BigFloat im, double rad) : re_(std::move(re)), im_(std::move(im)), rad_(rad) {
    if (!(rad_ >= 0.0)) fail(ErrorKind::precondition, "enclosure radius must be nonnegative");
}

Enclosure Enclosure::exact(const GaussianRational& x, mpfr_prec_t prec) {
    Enclosure e(prec);
    double err = add_up(e.re_.set(x.re()), e.im_.set(x.im()));
    e.rad_ = err;
    return e;
}

GaussianRational Enclosure::mid() const { return {re_.to_rational(), im_.to_rational()}; }

Enclosure Enclosure::with_prec(mpfr_prec_t prec) const {
    if (prec >= this->prec()) {
        Enclosure e(prec);
        mpfr_set(e.re_.get(), re_.get(), MPFR_RNDN);
        mpfr_set(e.im_.get(), im_.get(), MPFR_RNDN);
        e.rad_ = rad_;
        return e;
    }
    Enclosure e(prec);
    double err = 0.0;
    if (mpfr_set(e.re_.get(), re_.get(), MPFR_RNDN) != 0) err = add_up(err, e.re_.ulp());
    if (mpfr_set(e.im_.get(), im_.get(), MPFR_RNDN) != 0) err = add_up(err, e.im_.ulp());
    e.rad_ = add_up(rad_, err);
    return e;
}

Enclosure Enclosure::widened(double e) const {
    Enclosure r = *this;
    r.rad_ = add_up(rad_, e);
    return r;
}

double Enclosure::abs_upper() const {
    double m = up(up(std::hypot(re_.abs_upper(), im_.abs_upper())));
    return add_up(m, rad_);
}

double Enclosure::abs_lower() const {
    double m = rounding::down(rounding::down(std::hypot(re_.abs_lower(), im_.abs_lower())));
    double r = m - rad_;
    return r > 0 ? rounding::down(r) : 0.0;
}

bool Enclosure::contains_zero() const { return contains(GaussianRational(0)); }

namespace {

BigRational sq_dist(const Enclosure& a, const GaussianRational& b) {
    BigRational dr = a.re().to_rational() - b.re(), di = a.im().to_rational() - b.im();
    return dr * dr + di * di;
}

BigRational exact_double(double d) {
    BigRational q;
    mpq_set_d(q.get_mpq_t(), d);
    return q;
}

}  // namespace

bool Enclosure::contains(const GaussianRational& x) const {
    BigRational r = exact_double(rad_);
    return sq_dist(*this, x) <= r * r;
}

bool Enclosure::contains(const Enclosure& other) const {
    BigRational slack = exact_double(rad_) - exact_double(other.rad_);
    if (sgn(slack) < 0) return false;
    return sq_dist(*this, other.mid()) <= slack * slack;
}

bool Enclosure::overlaps(const Enclosure& other) const {
    BigRational reach = exact_double(rad_) + exact_double(other.rad_);
    return sq_dist(*this, other.mid()) <= reach * reach;
}

Enclosure Enclosure::operator-() const {
    Enclosure r = *this;
    mpfr_neg(r.re_.get(), r.re_.get(), MPFR_RNDN);
    mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
    return r;
}

Enclosure Enclosure::conj() const {
    Enclosure r = *this;
    mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
    return r;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    Enclosure r(std::max(a.prec(), b.prec()));
    double err = 0.0;
    if (mpfr_add(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN) != 0) err = add_up(err, r.re_.ulp());
    if (mpfr_add(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN) != 0) err = add_up(err, r.im_.ulp());
    r.rad_ = add_up(add_up(a.rad_, b.rad_), err);
    return r;
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) { return a + (-b); }

namespace {

// Upper bound of |x| using the full MPFR exponent range.
void abs_bound(mpfr_t out, const BigFloat& re, const BigFloat& im) {
    mpfr_hypot(out, re.get(), im.get(), MPFR_RNDU);
}

// |a| rb + |b| ra + ra rb rounded up; magnitudes may lie outside the double range.
double product_radius(const BigFloat& are, const BigFloat& aim, double ra, const BigFloat& bre,
                      const BigFloat& bim, double rb) {
    mpfr_t ma, mb, acc, t;
    mpfr_inits2(64, ma, mb, acc, t, static_cast<mpfr_ptr>(nullptr));
    abs_bound(ma, are, aim);
    abs_bound(mb, bre, bim);
    mpfr_mul_d(acc, ma, rb, MPFR_RNDU);
    mpfr_mul_d(t, mb, ra, MPFR_RNDU);
    mpfr_add(acc, acc, t, MPFR_RNDU);
    mpfr_set_d(t, ra, MPFR_RNDU);
    mpfr_mul_d(t, t, rb, MPFR_RNDU);
    mpfr_add(acc, acc, t, MPFR_RNDU);
    double r = mpfr_get_d(acc, MPFR_RNDU);
    mpfr_clears(ma, mb, acc, t, static_cast<mpfr_ptr>(nullptr));
    return r;
}

}  // namespace

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    Enclosure r(std::max(a.prec(), b.prec()));
    double err = 0.0;
    if (mpfr_fmms(r.re_.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN) != 0)
        err = add_up(err, r.re_.ulp());
    if (mpfr_fmma(r.im_.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN) != 0)
        err = add_up(err, r.im_.ulp());
    double rad = 0.0;
    if (a.rad_ != 0.0 || b.rad_ != 0.0) rad = product_radius(a.re_, a.im_, a.rad_, b.re_, b.im_, b.rad_);
    r.rad_ = add_up(rad, err);
    return r;
}

Enclosure Enclosure::inverse() const {
    const mpfr_prec_t p = prec();
    BigFloat n(p + 8);
    mpfr_fmma(n.get(), re_.get(), re_.get(), im_.get(), im_.get(), MPFR_RNDN);
    if (n.is_zero()) fail(ErrorKind::precondition, "reciprocal of an enclosure containing zero");
    Enclosure r(p);
    mpfr_div(r.re_.get(), re_.get(), n.get(), MPFR_RNDN);
    mpfr_div(r.im_.get(), im_.get(), n.get(), MPFR_RNDN);
    mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
    double err = mul_up(4.0, add_up(r.re_.ulp(), r.im_.ulp()));
    double rad = 0.0;
    if (rad_ != 0.0) {
        double lo = rounding::down(rounding::down(std::hypot(re_.abs_lower(), im_.abs_lower())));
        double gap = rounding::down(lo - rad_);
        if (!(gap > 0.0)) fail(ErrorKind::precondition, "reciprocal of an enclosure containing zero");
        rad = up(rad_ / rounding::down(lo * gap));
    }
    r.rad_ = add_up(rad, err);
    return r;
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) { return a * b.inverse(); }

std::string Enclosure::debug_str(int digits) const {
    auto part = [digits](const BigFloat& f) {
        char buf[512];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, f.get());
        return std::string(buf);
    };
    char rbuf[64];
    std::snprintf(rbuf, sizeof rbuf, "%.3g", rad_);
    return "(" + part(re_) + " + " + part(im_) + "*i) +/- " + rbuf;
}

Enclosure to_enclosure(const NumberValue& v, mpfr_prec_t prec) {
    if (const auto* g = std::get_if<GaussianRational>(&v)) return Enclosure::exact(*g, prec);
    const auto& e = std::get<Enclosure>(v);
    return e.prec() == prec ? e : e.with_prec(prec);
}

}  // namespace dfinum
