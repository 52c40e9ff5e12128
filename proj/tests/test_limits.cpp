#include "dfinum/limits.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <chrono>

using namespace dfinum;
using namespace dfinum::testing;

namespace {

const GPoly Y = GPoly::x();
const GPoly cubic = gpoly({2, 3, -5, 1});

Enclosure decimal(const char* text, double rad, mpfr_prec_t prec = 128) {
    BigFloat f(prec);
    mpfr_set_str(f.get(), text, 10, MPFR_RNDN);
    return Enclosure(f, BigFloat(prec), rad).widened(f.ulp());
}

ShiftOperator sop(std::initializer_list<GPoly> c) { return ShiftOperator(std::vector<GPoly>(c)); }

/// sum_{k=1}^{n} 1/k^3 as an enclosure of the partial sum plus the integral tail bounds.
BigRational zeta3_partial(long n) {
    BigRational s;
    for (long k = 1; k <= n; ++k) s += BigRational(1) / BigRational(BigInteger(k) * k * k);
    return s;
}

}  // namespace

TEST_CASE("lemma polynomial") {
    const BivariatePolynomial p = build_lemma_polynomial(cubic, g(4));
    CHECK(cubic(g(4)) == g(-2));
    const GPoly u = g(1) - Y;
    CHECK(p == BivariatePolynomial({gpoly({2}) + u * g(2), u * g(3), u.pow(2) * g(-5), u.pow(3)}));
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        GPoly q = rng.poly(rng.integer(1, 4), 5, false);
        if (q.degree() < 1) continue;
        GaussianRational eta = rng.gaussian();
        CHECK(build_lemma_polynomial(q, eta)(g(0), eta).is_zero());
    }
    CHECK_THROWS_AS(build_lemma_polynomial(gpoly({3}), g(1)), Error);
    // degree one: (1 - z) y - c - (eta - c)(1 - z)
    const GaussianRational c(5), eta(q(7, 3));
    CHECK(build_lemma_polynomial(Y - GPoly(c), eta) ==
          BivariatePolynomial({-GPoly(c) - u * (eta - c), u}));
}

TEST_CASE("root sequence of the cubic") {
    const auto start = std::chrono::steady_clock::now();
    ConvergentRecurrence seq = root_sequence(cubic, g(4));
    auto terms = unroll(seq.op, seq.initial, 40).exact_values();
    const std::vector<GaussianRational> published{
        g(4), GaussianRational(q(46, 11)), GaussianRational(q(5538, 1331)), GaussianRational(q(670794, 161051)),
        GaussianRational(q(81144794, 19487171)),
        GaussianRational(BigRational(BigInteger("9819245130"), BigInteger("2357947691")))};
    for (std::size_t k = 0; k < published.size(); ++k) CHECK(terms[k] == published[k]);
    CHECK(terms == series_root(build_lemma_polynomial(cubic, g(4)), g(4), 40).coeffs());
    // The z^4 coefficient is about 2.4e-4 from the root; the z^5 coefficient is within 1e-4.
    const BigRational root(BigInteger("41642479384602112131"), BigInteger("10000000000000000000"));
    CHECK(abs(terms[4].re() - root) > BigRational(1, 10000));
    CHECK(abs(terms[5].re() - root) < BigRational(1, 10000));
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));

    LimitResult lim = limit_of_recurrence(seq, 1e-12, 200, 128);
    CHECK(lim.tolerance_met);
    CHECK(lim.value.rad() <= 1e-12);
    CHECK(lim.rigor == "heuristic-tail");
    CHECK(lim.value.overlaps(decimal("4.1642479384602112131", 1e-19)));
    // p(limit) contains zero.
    Enclosure v = lim.value;
    Enclosure pv = ((v - Enclosure::exact(g(5), 128)) * v + Enclosure::exact(g(3), 128)) * v + Enclosure::exact(g(2), 128);
    CHECK(pv.contains_zero());
}

TEST_CASE("each root of the cubic is reached from a nearby start") {
    const char* published[] = {"-0.39138238063090084510", "1.2271344421706896320", "4.1642479384602112131"};
    const GaussianRational starts[] = {GaussianRational(q(-1, 2)), GaussianRational(q(5, 4)), GaussianRational(q(4))};
    for (int k = 0; k < 3; ++k) {
        auto res = root_sequence_limit(cubic, starts[k], 1e-10, 2000, 128);
        CHECK(res.root.disk.overlaps(decimal(published[k], 1e-19)));
        CHECK(res.limit.value.rad() <= 1e-10);
    }
}

TEST_CASE("square root sequences") {
    auto res = root_sequence_limit(Y * Y - g(2), GaussianRational(q(3, 2)), 1e-10, 200, 128);
    CHECK(res.limit.value.overlaps(decimal("1.41421356237309504880", 1e-19)));
    auto neg = root_sequence_limit(Y * Y - g(2), GaussianRational(q(-3, 2)), 1e-10, 200, 128);
    CHECK(neg.limit.value.overlaps(decimal("-1.41421356237309504880", 1e-19)));
    auto lin = root_sequence_limit(Y - g(5), g(0), 1e-10, 200, 128);
    REQUIRE(lin.limit.exact);
    CHECK(*lin.limit.exact == g(5));
    CHECK(lin.limit.value.rad() == 0.0);
    CHECK_THROWS_WITH_AS(root_sequence(Y * Y - g(2), g(0)), doctest::Contains("perturbed"), Error);
}

TEST_CASE("limits of recurrences") {
    ConvergentRecurrence inv_fact{sop({g(-1), Y + g(1)}), {0, {NumberValue(g(1))}}, std::nullopt};
    auto lim = limit_of_recurrence(inv_fact, 1e-30, 500, 128);
    CHECK(lim.value.contains(g(0)));
    CHECK(lim.value.rad() <= 1e-30);

    ConvergentRecurrence powers{sop({g(-2), g(1)}), {0, {NumberValue(g(1))}}, std::nullopt};
    try {
        limit_of_recurrence(powers, 1e-6, 300, 64);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::no_convergence);
    }

    ConvergentRecurrence constant{sop({g(-1), g(1)}), {0, {NumberValue(g(7))}}, std::nullopt};
    auto c = limit_of_recurrence(constant, 1e-6, 100, 64);
    CHECK(c.value.rad() == 0.0);
    CHECK(c.exact == g(7));

    const ShiftOperator li3 = sop({-Y.pow(4), Y * (Y + g(1)).pow(3)});
    ConvergentRecurrence zeta3{partial_sum_annihilator(li3), {0, {NumberValue(g(0)), NumberValue(g(1))}}, std::nullopt};
    const auto start = std::chrono::steady_clock::now();
    auto z = limit_of_recurrence(zeta3, 1e-6, 10000, 128);
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
    CHECK(z.tolerance_met);
    CHECK(z.rigor == "heuristic-tail");
    // zeta(3) lies in [S_n + 1/(2(n+1)^2), S_n + 1/(2n^2)].
    CHECK(z.value.overlaps(decimal("1.2020569031595942854", 1e-19)));
    const long n = static_cast<long>(z.terms) - 1;
    BigRational lo = zeta3_partial(n) + BigRational(1, 2 * (n + 1) * (n + 1));
    BigRational hi = zeta3_partial(n) + BigRational(1, 2 * n * n);
    CHECK(z.value.contains(GaussianRational(lo)));
    CHECK(z.value.contains(GaussianRational(hi)));
}

TEST_CASE("function limits") {
    ConvergentRecurrence ones{sop({g(-1), g(1)}), {0, {NumberValue(g(1))}}, std::nullopt};
    auto f = to_function_limit(ones);
    CHECK(all_zero(apply_to_series(f.op, {g(1), g(0), g(0), g(0)})));
    CHECK(f.note.find("1-") != std::string::npos);

    const ShiftOperator li3 = sop({-Y.pow(4), Y * (Y + g(1)).pow(3)});
    const ShiftOperator ps = partial_sum_annihilator(li3);
    ConvergentRecurrence zeta3{ps, {0, {NumberValue(g(0)), NumberValue(g(1))}}, std::nullopt};
    auto s = solve_recurrence(ps, {g(0), g(1)}, 61);
    std::vector<GaussianRational> gser{s[0]};
    for (std::size_t k = 1; k < 61; ++k) gser.push_back(s[k] - s[k - 1]);
    CHECK(all_zero(apply_to_series(to_function_limit(zeta3).op, gser)));

    ConvergentRecurrence inv_fact{sop({g(-1), Y + g(1)}), {0, {NumberValue(g(1))}}, std::nullopt};
    auto e = exp_series(60);
    std::vector<GaussianRational> ge{e[0]};
    for (std::size_t k = 1; k < 60; ++k) ge.push_back(e[k] - e[k - 1]);
    CHECK(all_zero(apply_to_series(to_function_limit(inv_fact).op, ge)));
}
