#pragma once

#include "dfinum/polynomial.hpp"

#include <string>

namespace dfinum {

/// Element of Q(i)(x) kept in lowest terms with a monic denominator.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(1) {}
    RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT(implicit)
    RationalFunction(const GaussianRational& c) : num_(c), den_(1) {}  // NOLINT(implicit)
    RationalFunction(GPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(implicit)
    RationalFunction(GPoly num, GPoly den);

    const GPoly& num() const { return num_; }
    const GPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RationalFunction operator-() const { return from_reduced(-num_, den_); }
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    /// f(x + 1).
    RationalFunction shifted() const;
    RationalFunction derivative() const;

private:
    static RationalFunction from_reduced(GPoly num, GPoly den) {
        RationalFunction r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        return r;
    }

    GPoly num_;
    GPoly den_;
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

using RPoly = Polynomial<RationalFunction>;

}  // namespace dfinum
