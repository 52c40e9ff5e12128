#include "dfinum/number.hpp"

#include "dfinum/error.hpp"

#include <cmath>
#include <limits>

namespace dfinum {

GaussianRational GaussianRational::inverse() const {
    BigRational n = norm();
    if (sgn(n) == 0) fail(ErrorKind::precondition, "division by zero in Q(i)");
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    BigRational r = re_ * o.re_ - im_ * o.im_;
    BigRational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0) fail(ErrorKind::precondition, "division by zero in Q(i)");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

GaussianRational GaussianRational::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    GaussianRational result(1), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

std::string to_string(const BigRational& x) { return x.get_str(); }

std::string GaussianRational::str() const {
    if (sgn(im_) == 0) return to_string(re_);
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = to_string(im_) + "*i";
    if (sgn(re_) == 0) return imag;
    return to_string(re_) + (sgn(im_) > 0 ? "+" : "") + imag;
}

namespace {

double log2_abs_z(const BigInteger& z) {
    if (sgn(z) == 0) return -std::numeric_limits<double>::infinity();
    long exp = 0;
    double m = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log2(std::fabs(m)) + static_cast<double>(exp);
}

}  // namespace

double log2_abs(const BigRational& x) {
    return log2_abs_z(x.get_num()) - log2_abs_z(x.get_den());
}

double log2_abs(const GaussianRational& x) {
    double a = log2_abs(x.re()), b = log2_abs(x.im());
    if (std::isinf(a)) return b;
    if (std::isinf(b)) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
}

BigRational factorial(unsigned long n) {
    BigInteger f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return BigRational(f);
}

}  // namespace dfinum
