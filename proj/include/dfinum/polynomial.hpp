#pragma once

#include "dfinum/error.hpp"
#include "dfinum/number.hpp"

#include <algorithm>
#include <cstddef>
#include <tuple>
#include <utility>
#include <vector>

namespace dfinum {

namespace detail {
template <class T>
bool zero_value(const T& v) {
    return is_zero(v);  // found by argument-dependent lookup at instantiation
}
}  // namespace detail

/// Dense univariate polynomial over a field K; coeffs_[j] multiplies x^j.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
template <class K>
class Polynomial {
public:
    using value_type = K;

    Polynomial() = default;
    explicit Polynomial(std::vector<K> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Polynomial(const K& c) {  // NOLINT(implicit)
        if (!is_zero_value(c)) coeffs_.push_back(c);
    }
    Polynomial(long c) : Polynomial(K(c)) {}  // NOLINT(implicit)

    static Polynomial x() { return monomial(K(1), 1); }
    static Polynomial monomial(const K& c, std::size_t deg) {
        if (is_zero_value(c)) return {};
        std::vector<K> v(deg + 1, K(0));
        v[deg] = c;
        return Polynomial(std::move(v));
    }

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<K>& coeffs() const { return coeffs_; }
    K coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : K(0); }
    const K& lc() const {
        if (coeffs_.empty()) fail(ErrorKind::precondition, "leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        return *this * (K(1) / lc());
    }

    template <class F>
    auto map(F&& f) const {
        using R = decltype(f(std::declval<const K&>()));
        std::vector<R> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(f(c));
        return Polynomial<R>(std::move(out));
    }

    /// Horner evaluation; V must accept V * K and V + K.
    template <class V>
    V eval(const V& x) const {
        V acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + V(*it);
        return acc;
    }
    K operator()(const K& x) const { return eval<K>(x); }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<K> d(coeffs_.size() - 1, K(0));
        for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = coeffs_[j] * K(static_cast<long>(j));
        return Polynomial(std::move(d));
    }

    /// p(x + b).
    Polynomial taylor_shift(const K& b) const {
        std::vector<K> c = coeffs_;
        const std::size_t n = c.size();
        if (is_zero_value(b)) return *this;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j > i; --j) c[j - 1] += b * c[j];
        return Polynomial(std::move(c));
    }

    /// p(q(x)).
    Polynomial compose(const Polynomial& q) const {
        Polynomial acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + Polynomial(*it);
        return acc;
    }

    Polynomial operator-() const {
        std::vector<K> c = coeffs_;
        for (auto& v : c) v = -v;
        return Polynomial(std::move(c));
    }
    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), K(0));
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), K(0));
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<K> c(a.coeffs_.size() + b.coeffs_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (is_zero_value(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(Polynomial a, const K& s) {
        if (is_zero_value(s)) return {};
        for (auto& v : a.coeffs_) v *= s;
        a.trim();
        return a;
    }
    friend Polynomial operator*(const K& s, Polynomial a) { return std::move(a) * s; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(unsigned e) const {
        Polynomial r(K(1)), b = *this;
        while (e) {
            if (e & 1u) r *= b;
            e >>= 1u;
            if (e) b *= b;
        }
        return r;
    }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    static std::pair<Polynomial, Polynomial> divrem(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) fail(ErrorKind::precondition, "polynomial division by zero");
        std::vector<K> r = a.coeffs_;
        const long db = b.degree();
        if (a.degree() < db) return {Polynomial(), a};
        std::vector<K> q(static_cast<std::size_t>(a.degree() - db + 1), K(0));
        const K inv = K(1) / b.lc();
        for (long k = a.degree() - db; k >= 0; --k) {
            K c = r[static_cast<std::size_t>(k + db)] * inv;
            if (is_zero_value(c)) continue;
            for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
            q[static_cast<std::size_t>(k)] = std::move(c);
        }
        r.resize(static_cast<std::size_t>(db));
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divrem(a, b).second; }
    /// Exact quotient; fails if b does not divide a.
    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) {
        auto [q, r] = divrem(a, b);
        if (!r.is_zero()) fail(ErrorKind::precondition, "inexact polynomial division");
        return q;
    }

    /// Monic gcd (zero iff both inputs are zero).
    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = divrem(a, b).second;
            a = std::move(b);
            b = r.monic();
        }
        return a.monic();
    }

    /// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) monic.
    static std::tuple<Polynomial, Polynomial, Polynomial> xgcd(const Polynomial& a, const Polynomial& b) {
        Polynomial r0 = a, r1 = b, s0(K(1)), s1, t0, t1(K(1));
        while (!r1.is_zero()) {
            auto [q, r] = divrem(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            Polynomial s2 = s0 - q * s1, t2 = t0 - q * t1;
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.is_zero()) return {r0, s0, t0};
        K inv = K(1) / r0.lc();
        return {r0 * inv, s0 * inv, t0 * inv};
    }

private:
    static bool is_zero_value(const K& v) { return detail::zero_value(v); }
    void trim() {
        while (!coeffs_.empty() && is_zero_value(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<K> coeffs_;
};

using QPoly = Polynomial<BigRational>;
using GPoly = Polynomial<GaussianRational>;

inline GPoly conj(const GPoly& p) {
    return p.map([](const GaussianRational& c) { return c.conj(); });
}

inline GPoly to_gaussian(const QPoly& p) {
    return p.map([](const BigRational& c) { return GaussianRational(c); });
}

/// Square-free decomposition (Yun): returns factors f_1, f_2, ... with p = lc * prod f_k^k,
/// each f_k monic and square-free (possibly constant 1).
std::vector<GPoly> squarefree_decomposition(const GPoly& p);

/// Falling factorial x (x-1) ... (x-k+1) as a polynomial in x, with x replaced by x + s.
GPoly falling_factorial_shifted(long s, unsigned k);

/// Nonnegative integer roots of p (exact), ascending. p must be nonzero.
std::vector<long> nonnegative_integer_roots(const GPoly& p);

}  // namespace dfinum
