#pragma once

// Independent generators of exact solutions used as residual oracles. They never call the
// conversion or closure routines under test.

#include "dfinum/ore.hpp"
#include "test_support.hpp"

#include <vector>

namespace dfinum::testing {

/// Extends a_0..a_{r-1} by solving the recurrence term by term.
inline std::vector<GaussianRational> solve_recurrence(const ShiftOperator& rec, std::vector<GaussianRational> a,
                                                      std::size_t count) {
    const std::size_t r = static_cast<std::size_t>(rec.order());
    while (a.size() < count) {
        const std::size_t n = a.size() - r;
        GaussianRational acc;
        for (std::size_t j = 0; j < r; ++j) acc += rec.coeff(j)(g(static_cast<long>(n))) * a[n + j];
        a.push_back(-acc / rec.coeff(r)(g(static_cast<long>(n))));
    }
    return a;
}

/// [z^t] of L f, with f given by its Taylor coefficients (missing entries are zero).
inline GaussianRational series_residual_coeff(const DiffOperator& op, const std::vector<GaussianRational>& f, long t) {
    GaussianRational acc;
    for (std::size_t j = 0; j < op.coeffs().size(); ++j) {
        const auto& p = op.coeffs()[j];
        for (std::size_t a = 0; a < p.coeffs().size(); ++a) {
            const long idx = t - static_cast<long>(a) + static_cast<long>(j);
            if (idx < 0 || idx >= static_cast<long>(f.size()) || t < static_cast<long>(a)) continue;
            BigInteger ff(1);
            for (std::size_t s = 0; s < j; ++s) ff *= idx - static_cast<long>(s);
            acc += p.coeffs()[a] * GaussianRational(BigRational(ff)) * f[static_cast<std::size_t>(idx)];
        }
    }
    return acc;
}

/// Series solution at an ordinary origin by undetermined coefficients: f_m is fixed by the
/// vanishing of [z^(m-r)] L f. `taylor` holds f_0..f_{r-1}.
inline std::vector<GaussianRational> solve_ode_series(const DiffOperator& op, std::vector<GaussianRational> taylor,
                                                      std::size_t count) {
    const long r = op.order();
    const GaussianRational lead0 = op.lc()(g(0));
    while (taylor.size() < count) {
        const long m = static_cast<long>(taylor.size());
        taylor.emplace_back();
        GaussianRational v0 = series_residual_coeff(op, taylor, m - r);
        BigInteger ff(1);
        for (long s = 0; s < r; ++s) ff *= m - s;
        taylor.back() = -v0 / (lead0 * GaussianRational(BigRational(ff)));
    }
    return taylor;
}

/// Truncated series product.
inline std::vector<GaussianRational> series_mul(const std::vector<GaussianRational>& a,
                                                const std::vector<GaussianRational>& b, std::size_t n) {
    std::vector<GaussianRational> out(n);
    for (std::size_t i = 0; i < n && i < a.size(); ++i)
        for (std::size_t j = 0; i + j < n && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline std::vector<GaussianRational> exp_series(std::size_t n, const GaussianRational& c = g(1)) {
    std::vector<GaussianRational> out;
    GaussianRational t(1);
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(t);
        t = t * c / g(static_cast<long>(k + 1));
    }
    return out;
}

inline GPoly random_nonvanishing_lc(Rng& rng, long degree, bool gaussian) {
    while (true) {
        GPoly p = rng.poly(degree, 4, !gaussian);
        if (p.degree() < 0) continue;
        if (p.degree() == 0 || nonnegative_integer_roots(p).empty()) return p;
    }
}

/// Random recurrence of order 1..max_order whose lc has no nonnegative integer roots.
inline ShiftOperator random_recurrence(Rng& rng, long max_order, long max_degree, bool gaussian = false) {
    const long r = rng.integer(1, max_order);
    std::vector<GPoly> c;
    for (long j = 0; j < r; ++j) c.push_back(rng.poly(rng.integer(0, max_degree), 4, !gaussian));
    c.push_back(random_nonvanishing_lc(rng, rng.integer(0, max_degree), gaussian));
    return ShiftOperator(std::move(c));
}

/// Random differential operator of order 1..max_order with an ordinary origin.
inline DiffOperator random_diffop(Rng& rng, long max_order, long max_degree, bool gaussian = false) {
    const long r = rng.integer(1, max_order);
    std::vector<GPoly> c;
    for (long j = 0; j < r; ++j) c.push_back(rng.poly(rng.integer(0, max_degree), 4, !gaussian));
    GPoly lc;
    do lc = rng.poly(rng.integer(0, max_degree), 4, !gaussian);
    while (lc(g(0)).is_zero());
    c.push_back(lc);
    return DiffOperator(std::move(c));
}

inline std::vector<GaussianRational> random_values(Rng& rng, std::size_t n, bool gaussian = false) {
    std::vector<GaussianRational> v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(rng.gaussian(6, !gaussian));
    return v;
}

}  // namespace dfinum::testing

namespace dfinum::testing {

/// Square root series of c with constant term s, where s^2 = c(0).
inline std::vector<GaussianRational> sqrt_series(const GPoly& c, const GaussianRational& s, std::size_t n) {
    std::vector<GaussianRational> out{s};
    for (std::size_t k = 1; k < n; ++k) {
        GaussianRational acc = c.coeff(k);
        for (std::size_t i = 1; i < k; ++i) acc -= out[i] * out[k - i];
        out.push_back(acc / (g(2) * s));
    }
    return out;
}

/// sum_k f_k h^k mod z^n for h(0) = 0.
inline std::vector<GaussianRational> compose_series(const std::vector<GaussianRational>& f,
                                                    const std::vector<GaussianRational>& h, std::size_t n) {
    std::vector<GaussianRational> out(n), power(n);
    power[0] = g(1);
    for (std::size_t k = 0; k < f.size() && k < n; ++k) {
        for (std::size_t t = 0; t < n; ++t) out[t] += f[k] * power[t];
        power = series_mul(power, h, n);
    }
    return out;
}

/// Series solution of L around the point y0 (ordinary), in the variable w - y0.
inline std::vector<GaussianRational> solve_ode_series_at(const DiffOperator& op, const GaussianRational& y0,
                                                         std::vector<GaussianRational> taylor, std::size_t count) {
    std::vector<GPoly> c;
    for (const auto& p : op.coeffs()) c.push_back(p.compose(GPoly::x() + GPoly(y0)));
    return solve_ode_series(DiffOperator(std::move(c)), std::move(taylor), count);
}

}  // namespace dfinum::testing
