#include "dfinum/rational_function.hpp"

namespace dfinum {

RationalFunction::RationalFunction(GPoly num, GPoly den) {
    if (den.is_zero()) fail(ErrorKind::precondition, "rational function with zero denominator");
    if (num.is_zero()) {
        den_ = GPoly(1);
        return;
    }
    if (den.degree() > 0) {
        GPoly g = GPoly::gcd(num, den);
        if (g.degree() > 0) {
            num = num / g;
            den = den / g;
        }
    }
    GaussianRational inv = den.lc().inverse();
    num_ = std::move(num) * inv;
    den_ = std::move(den) * inv;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        if (den_.degree() == 0) {
            num_ += o.num_;
            return *this;
        }
        return *this = RationalFunction(num_ + o.num_, den_);
    }
    return *this = RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (is_zero() || o.is_zero()) return *this = RationalFunction();
    if (den_.degree() == 0 && o.den_.degree() == 0) {
        num_ *= o.num_;
        return *this;
    }
    // Cross-cancel before multiplying to keep intermediate degrees small.
    GPoly g1 = GPoly::gcd(num_, o.den_), g2 = GPoly::gcd(o.num_, den_);
    GPoly n = (num_ / g1) * (o.num_ / g2);
    GPoly d = (den_ / g2) * (o.den_ / g1);
    GaussianRational inv = d.lc().inverse();
    return *this = from_reduced(n * inv, d * inv);
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
    if (o.is_zero()) fail(ErrorKind::precondition, "division by zero rational function");
    return *this *= from_reduced(o.den_ * o.num_.lc().inverse(), o.num_.monic());
}

RationalFunction RationalFunction::shifted() const {
    return from_reduced(num_.taylor_shift(GaussianRational(1)), den_.taylor_shift(GaussianRational(1)));
}

RationalFunction RationalFunction::derivative() const {
    if (den_.degree() == 0) return from_reduced(num_.derivative(), den_);
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

}  // namespace dfinum
