#include "dfinum/algebraic.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace dfinum;
using namespace dfinum::testing;

namespace {

const GPoly Z = GPoly::x();

DiffOperator dop(std::initializer_list<GPoly> c) { return DiffOperator(std::vector<GPoly>(c)); }

/// p((1 - z) y) + 2 (1 - z) for p = y^3 - 5y^2 + 3y + 2.
BivariatePolynomial cubic_lemma_polynomial() {
    const GPoly u = g(1) - Z;
    return BivariatePolynomial({gpoly({2}) + u * g(2), u * g(3), u.pow(2) * g(-5), u.pow(3)});
}

BivariatePolynomial sqrt_one_plus_z() { return BivariatePolynomial({gpoly({-1, -1}), GPoly(), gpoly({1})}); }

std::vector<GaussianRational> binomial_half(std::size_t n) {
    std::vector<GaussianRational> out;
    BigRational c(1);
    for (std::size_t k = 0; k < n; ++k) {
        out.emplace_back(c);
        c = c * (BigRational(1, 2) - BigRational(static_cast<long>(k))) / BigRational(static_cast<long>(k + 1));
    }
    return out;
}

}  // namespace

TEST_CASE("series roots") {
    const GaussianRational zeta(q(2, 3), q(1));
    auto lin = series_root(BivariatePolynomial({-Z * zeta, gpoly({1})}), g(0), 8);
    CHECK(lin.coeffs()[0] == g(0));
    CHECK(lin.coeffs()[1] == zeta);
    for (std::size_t k = 2; k < 8; ++k) CHECK(lin.coeffs()[k].is_zero());

    auto cubic = series_root(cubic_lemma_polynomial(), g(4), 6);
    const std::vector<GaussianRational> published{
        g(4), GaussianRational(q(46, 11)), GaussianRational(q(5538, 1331)), GaussianRational(q(670794, 161051)),
        GaussianRational(q(81144794, 19487171)),
        GaussianRational(BigRational(BigInteger("9819245130"), BigInteger("2357947691")))};
    CHECK(cubic.coeffs() == published);

    auto s = series_root(sqrt_one_plus_z(), g(1), 30);
    CHECK(s.coeffs() == binomial_half(30));
    s.extend(45);
    CHECK(s.coeffs() == binomial_half(45));
    CHECK(s.coeff(50) == binomial_half(51)[50]);

    CHECK_THROWS_WITH_AS(series_root(sqrt_one_plus_z(), g(2), 5), doctest::Contains("not a root"), Error);
    // y^2 - z^2 - z^3: y0 = 0 is a critical root.
    BivariatePolynomial crit({-(Z * Z) - Z.pow(3), GPoly(), gpoly({1})});
    CHECK_THROWS_WITH_AS(series_root(crit, g(0), 5), doctest::Contains("critical root"), Error);
}

TEST_CASE("annihilators of algebraic functions") {
    CHECK(alg_to_diffop(sqrt_one_plus_z()) == dop({GaussianRational(q(-1, 2)), gpoly({1, 1})}));
    const GaussianRational zeta(q(3, 7));
    CHECK(alg_to_diffop(BivariatePolynomial({-Z * zeta, gpoly({1})})) == dop({g(-1), Z}));

    const BivariatePolynomial cubic = cubic_lemma_polynomial();
    const DiffOperator l = alg_to_diffop(cubic);
    CHECK(l.order() <= 3);
    auto f = series_root(cubic, g(4), 40);
    CHECK(all_zero(apply_to_series(l, f.coeffs())));
    CHECK(all_zero(apply_to_sequence(diffop_to_rec(l), f.coeffs())));

    BivariatePolynomial square({gpoly({1, 2, 1}), gpoly({-2, -2}), gpoly({1})});  // (y - 1 - z)^2
    CHECK_THROWS_WITH_AS(alg_to_diffop(square), doctest::Contains("squarefree"), Error);
}

TEST_CASE("alg_to_diffop agrees with series roots on random quadratics") {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        const GaussianRational s = rng.gaussian(5, t % 2 == 0);
        if (s.is_zero()) continue;
        GPoly c = GPoly(s * s) + rng.poly(2, 3, t % 3 != 0) * Z;
        if (c.degree() <= 0) continue;
        BivariatePolynomial p({-c, GPoly(), gpoly({1})});
        const DiffOperator l = alg_to_diffop(p);
        CHECK(l.order() <= 2);
        auto root = sqrt_series(c, s, 30);
        CHECK(series_root(p, s, 30).coeffs() == root);
        CHECK(all_zero(apply_to_series(l, root)));
        CHECK(all_zero(apply_to_sequence(diffop_to_rec(l), root)));
    }
}

TEST_CASE("composition with algebraic functions") {
    const DiffOperator D = DiffOperator::generator(), one(GPoly(1));
    {
        // g = 2z
        const DiffOperator m = compose_dfinite_algebraic(D - one, BivariatePolynomial({gpoly({0, -2}), gpoly({1})}));
        CHECK(right_divisible(m, D - DiffOperator(GPoly(2))));
        CHECK(all_zero(apply_to_series(m, exp_series(40, g(2)))));
    }
    const BivariatePolynomial sq = sqrt_one_plus_z();
    auto h = binomial_half(40);
    h[0] = g(0);
    {
        const DiffOperator m = compose_dfinite_algebraic(D - one, sq);
        CHECK(m.order() <= 2);
        auto f = solve_ode_series_at(D - one, g(1), {g(1)}, 40);
        CHECK(all_zero(apply_to_series(m, compose_series(f, h, 40))));
    }
    {
        const DiffOperator l = D * D + one;
        const DiffOperator m = compose_dfinite_algebraic(l, sq);
        CHECK(m.order() <= 4);
        for (auto ics : {std::vector<GaussianRational>{g(1), g(0)}, std::vector<GaussianRational>{g(0), g(1)}}) {
            auto f = solve_ode_series_at(l, g(1), ics, 40);
            CHECK(all_zero(apply_to_series(m, compose_series(f, h, 40))));
        }
    }
    {
        // lc(L)(g) = z for g = 1 + z: invertible in F(z) although it vanishes at z = 0.
        const DiffOperator l = dop({g(1), gpoly({-1, 1})});
        CHECK_NOTHROW(compose_dfinite_algebraic(l, BivariatePolynomial({gpoly({-1, -1}), gpoly({1})})));
        // lc(L) = y^2 - 1 is zero modulo P = y^2 - 1.
        const DiffOperator bad = dop({g(1), gpoly({-1, 0, 1})});
        CHECK_THROWS_WITH_AS(compose_dfinite_algebraic(bad, BivariatePolynomial({gpoly({-1}), GPoly(), gpoly({1})})),
                             doctest::Contains("not invertible"), Error);
    }
}

TEST_CASE("composition residuals on random instances") {
    Rng rng(77);
    for (int t = 0; t < 12; ++t) {
        const DiffOperator l = random_diffop(rng, 2, 1);
        const GaussianRational s(rng.integer(1, 3));
        GPoly c = GPoly(s * s) + rng.poly(1, 3) * Z;
        if (c.degree() <= 0) continue;
        if (l.lc()(s).is_zero()) continue;
        const BivariatePolynomial p({-c, GPoly(), gpoly({1})});
        DiffOperator m;
        try {
            m = compose_dfinite_algebraic(l, p);
        } catch (const Error&) {
            continue;
        }
        CHECK(m.order() <= 2 * l.order());
        auto hh = sqrt_series(c, s, 30);
        hh[0] = g(0);
        auto f = solve_ode_series_at(l, s, random_values(rng, static_cast<std::size_t>(l.order())), 30);
        CHECK(all_zero(apply_to_series(m, compose_series(f, hh, 30))));
    }
}
