#include "dfinum/algebraic.hpp"

#include "dfinum/ansatz.hpp"

namespace dfinum {

namespace {

using Series = std::vector<GaussianRational>;

Series series_mul(const Series& a, const Series& b, std::size_t n) {
    Series out(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

Series series_inverse(const Series& a, std::size_t n) {
    Series out(n);
    const GaussianRational inv0 = a.at(0).inverse();
    for (std::size_t k = 0; k < n; ++k) {
        GaussianRational acc = k == 0 ? GaussianRational(1) : GaussianRational();
        for (std::size_t j = 1; j <= k && j < a.size(); ++j)
            if (!a[j].is_zero()) acc -= a[j] * out[k - j];
        out[k] = acc * inv0;
    }
    return out;
}

Series poly_series(const GPoly& p, std::size_t n) {
    Series out(n);
    for (std::size_t k = 0; k < n && k < p.coeffs().size(); ++k) out[k] = p.coeffs()[k];
    return out;
}

/// sum_j c_j(z) f^j mod z^n by Horner.
Series horner_series(const std::vector<GPoly>& c, const Series& f, std::size_t n) {
    Series acc(n);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = series_mul(acc, f, n);
        Series p = poly_series(*it, n);
        for (std::size_t k = 0; k < n; ++k) acc[k] += p[k];
    }
    return acc;
}

RationalFunction rf_derivative(const RationalFunction& f) { return f.derivative(); }

/// Inverse of a modulo m in F(z)[y]; throws when they share a factor.
RPoly inverse_mod(const RPoly& a, const RPoly& m, const char* what) {
    auto [g, s, t] = RPoly::xgcd(a % m, m);
    if (g.degree() != 0) fail(ErrorKind::precondition, what);
    return s % m;
}

RPoly from_vector(const RFVector& v, std::size_t start, std::size_t d) {
    return RPoly(std::vector<RationalFunction>(v.begin() + static_cast<long>(start),
                                               v.begin() + static_cast<long>(start + d)));
}

void add_into(RFVector& v, std::size_t start, const RPoly& p) {
    for (std::size_t j = 0; j < p.coeffs().size(); ++j) v[start + j] += p.coeffs()[j];
}

/// Quotient-ring data for F(z)[y]/(P): the modulus and y' = -P_z / P_y.
struct QuotientRing {
    RPoly modulus;
    RPoly y_prime;
    std::size_t d;

    explicit QuotientRing(const BivariatePolynomial& p) : d(static_cast<std::size_t>(p.degree_y())) {
        modulus = p.as_rpoly();
        const RPoly py = modulus.derivative();
        if (RPoly::gcd(modulus, py).degree() > 0)
            fail(ErrorKind::precondition,
                 "polynomial is not squarefree in y; pass its squarefree part instead");
        RPoly pz = modulus.map(rf_derivative);
        y_prime = (-(pz * inverse_mod(py, modulus, "d/dy P is not invertible modulo P"))) % modulus;
    }

    RPoly reduce(const RPoly& a) const { return a % modulus; }
    /// d/dz of a(z, y) with y a root of P.
    RPoly derivative(const RPoly& a) const {
        return reduce(a.map(rf_derivative) + a.derivative() * y_prime);
    }
};

}  // namespace

BivariatePolynomial::BivariatePolynomial(std::vector<GPoly> coeffs_y) : coeffs_(std::move(coeffs_y)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.size() < 2) fail(ErrorKind::precondition, "bivariate polynomial must have degree >= 1 in y");
}

long BivariatePolynomial::degree_z() const {
    long d = -1;
    for (const auto& c : coeffs_) d = std::max(d, c.degree());
    return d;
}

GaussianRational BivariatePolynomial::operator()(const GaussianRational& z, const GaussianRational& y) const {
    GaussianRational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + (*it)(z);
    return acc;
}

GPoly BivariatePolynomial::fiber_at_zero() const {
    std::vector<GaussianRational> c;
    for (const auto& p : coeffs_) c.push_back(p.coeff(0));
    return GPoly(std::move(c));
}

std::vector<GaussianRational> BivariatePolynomial::substitute_series(const std::vector<GaussianRational>& f,
                                                                     std::size_t n) const {
    return horner_series(coeffs_, f, n);
}

std::vector<GPoly> BivariatePolynomial::derivative_y() const {
    std::vector<GPoly> out;
    for (std::size_t j = 1; j < coeffs_.size(); ++j) out.push_back(coeffs_[j] * GaussianRational(static_cast<long>(j)));
    return out;
}

std::vector<GPoly> BivariatePolynomial::derivative_z() const {
    std::vector<GPoly> out;
    for (const auto& c : coeffs_) out.push_back(c.derivative());
    return out;
}

RPoly BivariatePolynomial::as_rpoly() const {
    std::vector<RationalFunction> c;
    for (const auto& p : coeffs_) c.emplace_back(p);
    return RPoly(std::move(c));
}

SeriesRoot::SeriesRoot(BivariatePolynomial parent, GaussianRational y0)
    : parent_(std::move(parent)), y0_(std::move(y0)) {
    if (!parent_(GaussianRational(), y0_).is_zero())
        fail(ErrorKind::precondition, "not a root: P(0, y0) != 0");
    if (!parent_.fiber_at_zero().derivative()(y0_).is_zero()) {
        coeffs_.push_back(y0_);
        return;
    }
    fail(ErrorKind::precondition, "critical root: dP/dy(0, y0) = 0");
}

void SeriesRoot::extend(std::size_t n) {
    if (coeffs_.size() >= n) return;
    const std::vector<GPoly> py = parent_.derivative_y();
    std::size_t k = coeffs_.size();
    Series f = coeffs_;
    while (k < n) {
        const std::size_t m = std::min(2 * k, n);
        f.resize(m);
        Series value = horner_series(parent_.coeffs(), f, m);
        Series slope = horner_series(py, f, m);
        Series corr = series_mul(value, series_inverse(slope, m), m);
        for (std::size_t t = 0; t < m; ++t) f[t] -= corr[t];
        k = m;
    }
    Series check = horner_series(parent_.coeffs(), f, n);
    for (const auto& c : check)
        if (!c.is_zero()) fail(ErrorKind::precondition, "series root failed the exact substitution check");
    coeffs_ = std::move(f);
}

SeriesRoot series_root(const BivariatePolynomial& p, const GaussianRational& y0, std::size_t n) {
    SeriesRoot root(p, y0);
    root.extend(n);
    return root;
}

DiffOperator alg_to_diffop(const BivariatePolynomial& p) {
    const QuotientRing ring(p);
    RFVector start(ring.d);
    add_into(start, 0, ring.reduce(RPoly::x()));
    auto step = [&](const RFVector& v) {
        RFVector out(ring.d);
        add_into(out, 0, ring.derivative(from_vector(v, 0, ring.d)));
        return out;
    };
    return operator_from_relation<OreKind::diff>(first_relation(std::move(start), step));
}

DiffOperator compose_dfinite_algebraic(const DiffOperator& l, const BivariatePolynomial& p) {
    if (l.is_zero()) fail(ErrorKind::precondition, "composition with the zero operator");
    const QuotientRing ring(p);
    const std::size_t r = static_cast<std::size_t>(l.order()), d = ring.d;
    if (r == 0) return l;

    // f^(r)(g) = -sum_k q_k(y) f^(k)(g) with q_k = p_k(y) / p_r(y) mod P.
    auto lift = [](const GPoly& c) {
        return c.map([](const GaussianRational& x) { return RationalFunction(x); });
    };
    const RPoly lead_inv = inverse_mod(lift(l.lc()), ring.modulus,
                                       "leading coefficient of L composed with the root is not invertible modulo P");
    std::vector<RPoly> q;
    for (std::size_t k = 0; k < r; ++k) q.push_back(ring.reduce(lift(l.coeff(k)) * lead_inv));

    // Component i holds A_i(z, y) with the element sum_i A_i f^(i)(g).
    RFVector start(r * d);
    start[0] = RationalFunction(1);
    auto step = [&](const RFVector& v) {
        RFVector out(r * d);
        for (std::size_t i = 0; i < r; ++i) {
            const RPoly a = from_vector(v, i * d, d);
            if (a.is_zero()) continue;
            add_into(out, i * d, ring.derivative(a));
            const RPoly chain = ring.reduce(a * ring.y_prime);
            if (i + 1 < r) {
                add_into(out, (i + 1) * d, chain);
            } else {
                for (std::size_t k = 0; k < r; ++k) add_into(out, k * d, ring.reduce(-(chain * q[k])));
            }
        }
        return out;
    };
    return operator_from_relation<OreKind::diff>(first_relation(std::move(start), step));
}

}  // namespace dfinum
