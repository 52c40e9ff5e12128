#pragma once

#include "dfinum/ore.hpp"
#include "dfinum/rational_function.hpp"

#include <vector>

namespace dfinum {

/// P(z, y) = sum_j coeffs_y[j](z) * y^j with deg_y P >= 1.
class BivariatePolynomial {
public:
    BivariatePolynomial() = default;
    explicit BivariatePolynomial(std::vector<GPoly> coeffs_y);

    long degree_y() const { return static_cast<long>(coeffs_.size()) - 1; }
    long degree_z() const;
    const std::vector<GPoly>& coeffs() const { return coeffs_; }
    GPoly coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : GPoly(); }

    GaussianRational operator()(const GaussianRational& z, const GaussianRational& y) const;
    /// P(0, y) as a polynomial in y.
    GPoly fiber_at_zero() const;
    /// Coefficients of P(z, f(z)) mod z^n for a truncated series f.
    std::vector<GaussianRational> substitute_series(const std::vector<GaussianRational>& f, std::size_t n) const;

    /// Partial derivative in y (may have y-degree 0).
    std::vector<GPoly> derivative_y() const;
    std::vector<GPoly> derivative_z() const;

    /// The same polynomial viewed in F(z)[y].
    RPoly as_rpoly() const;

    friend bool operator==(const BivariatePolynomial& a, const BivariatePolynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<GPoly> coeffs_;
};

/// Power-series root of P with constant term y0, extended on demand by Newton lifting.
class SeriesRoot {
public:
    SeriesRoot(BivariatePolynomial parent, GaussianRational y0);

    const BivariatePolynomial& parent() const { return parent_; }
    const GaussianRational& y0() const { return y0_; }
    /// Coefficients computed so far; P(z, truncation) = 0 mod z^len holds exactly.
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    /// Ensures at least n coefficients are available.
    void extend(std::size_t n);
    GaussianRational coeff(std::size_t k) {
        extend(k + 1);
        return coeffs_[k];
    }

private:
    BivariatePolynomial parent_;
    GaussianRational y0_;
    std::vector<GaussianRational> coeffs_;
};

/// The unique power series f with f(0) = y0 and P(z, f) = 0, to order n. Throws when
/// P(0, y0) != 0 (not a root) or d/dy P(0, y0) = 0 (critical root).
SeriesRoot series_root(const BivariatePolynomial& p, const GaussianRational& y0, std::size_t n);

/// Differential operator of order <= deg_y P annihilating every root of P. P must be
/// squarefree in y.
DiffOperator alg_to_diffop(const BivariatePolynomial& p);

/// Operator annihilating f(g(z)) for every solution f of L and every root g of P.
DiffOperator compose_dfinite_algebraic(const DiffOperator& l, const BivariatePolynomial& p);

}  // namespace dfinum
