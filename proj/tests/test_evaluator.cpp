#include "dfinum/evaluator.hpp"
#include "constant_oracles.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace dfinum;
using namespace dfinum::testing;

namespace {

const GPoly Z = GPoly::x();

DiffOperator dop(std::initializer_list<GPoly> c) { return DiffOperator(std::vector<GPoly>(c)); }

DFiniteInstance exp_instance() { return {dop({g(-1), g(1)}), g(0), {NumberValue(g(1))}}; }
DFiniteInstance log_instance() { return {dop({GPoly(), g(1), gpoly({1, 1})}), g(0), {NumberValue(g(0)), NumberValue(g(1))}}; }
DFiniteInstance atan_instance() {
    return {dop({GPoly(), gpoly({0, 2}), gpoly({1, 0, 1})}), g(0), {NumberValue(g(0)), NumberValue(g(1))}};
}
DFiniteInstance epi_instance() { return {dop({GPoly(g(0, 1)), gpoly({1, 1})}), g(0), {NumberValue(g(1))}}; }

EvalOptions digits(long d) {
    EvalOptions o;
    o.prec = bits_for_digits(d);
    return o;
}

double step_bound(const GaussianRational& from, const GaussianRational& singular) {
    return std::sqrt((from - singular).norm().get_d());
}

}  // namespace

TEST_CASE("local Taylor coefficients") {
    auto e = local_taylor(exp_instance(), 6);
    CHECK(std::get<GaussianRational>(e[3]) == GaussianRational(q(1, 6)));
    auto l = local_taylor(log_instance(), 12);
    for (long n = 1; n < 12; ++n)
        CHECK(std::get<GaussianRational>(l[static_cast<std::size_t>(n)]) ==
              GaussianRational(q(n % 2 == 1 ? 1 : -1, n)));
    CHECK(std::get<GaussianRational>(l[0]).is_zero());
    auto a = local_taylor(atan_instance(), 12);
    for (long n = 0; n < 12; ++n) {
        GaussianRational expected = n % 2 == 0 ? g(0) : GaussianRational(q((n / 2) % 2 == 0 ? 1 : -1, n));
        CHECK(std::get<GaussianRational>(a[static_cast<std::size_t>(n)]) == expected);
    }
    // Coefficients at a shifted base match the oracle series there.
    DFiniteInstance shifted(dop({GPoly(), g(1), gpoly({1, 1})}), GaussianRational(q(1, 2)),
                            {NumberValue(g(0)), NumberValue(g(1))});
    auto s = local_taylor(shifted, 20);
    auto oracle = solve_ode_series_at(shifted.op(), GaussianRational(q(1, 2)), {g(0), g(1)}, 20);
    for (std::size_t k = 0; k < 20; ++k) CHECK(std::get<GaussianRational>(s[k]) == oracle[k]);
}

TEST_CASE("local evaluation") {
    EvalResult e = evaluate_local(exp_instance(), g(1), 0, digits(64));
    CHECK(contains(e.value, e_oracle()));
    CHECK(e.value.rad() <= 1e-60);
    CHECK(e.rigor == "heuristic-tail");

    try {
        evaluate_local(log_instance(), g(1), 0, digits(20));
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::no_path);
        CHECK(std::string(err.what()).find("continuation") != std::string::npos);
    }

    EvalResult at_base = evaluate_local(log_instance(), g(0), 0, digits(20));
    REQUIRE(at_base.exact);
    CHECK(at_base.exact->is_zero());
    CHECK(at_base.value.rad() == 0.0);
    EvalResult d1 = evaluate(log_instance(), g(0), 1, digits(20));
    CHECK(d1.exact == g(1));

    // Polynomial solutions terminate and stay exact: D^2 f = 0, f = 2 + 3z.
    DFiniteInstance lin(dop({GPoly(), GPoly(), g(1)}), g(0), {NumberValue(g(2)), NumberValue(g(3))});
    EvalResult p = evaluate_local(lin, GaussianRational(q(1, 3)), 0, digits(20));
    REQUIRE(p.exact);
    CHECK(*p.exact == g(3));
}

TEST_CASE("continuation steps") {
    const EvalOptions o = digits(30);
    DFiniteInstance e1 = continue_to(exp_instance(), g(1), o);
    CHECK(e1.base() == g(1));
    CHECK(contains(std::get<Enclosure>(e1.ics()[0]), e_oracle()));

    DFiniteInstance same = continue_to(exp_instance(), g(0), o);
    CHECK(std::get<GaussianRational>(same.ics()[0]) == g(1));

    DFiniteInstance a = continue_to(atan_instance(), GaussianRational(q(1, 2)), o);
    Interval atan_half = atan_inv(2, 200);
    CHECK(contains(std::get<Enclosure>(a.ics()[0]), atan_half));
    // f'(1/2) = 1/(1 + 1/4)
    CHECK(std::get<Enclosure>(a.ics()[1]).contains(GaussianRational(q(4, 5))));
}

TEST_CASE("automatic paths") {
    const EvalOptions o = digits(20);
    EvalPath p = auto_path(dop({g(-1), g(1)}), g(0), g(1), o);
    CHECK(p.waypoints == std::vector<GaussianRational>{g(0), g(1)});

    EvalPath lp = auto_path(log_instance().op(), g(0), g(1), o);
    CHECK(lp.waypoints.size() >= 3);
    CHECK(lp.waypoints.front() == g(0));
    CHECK(lp.waypoints.back() == g(1));
    for (std::size_t j = 1; j < lp.waypoints.size(); ++j) {
        const double step = std::sqrt((lp.waypoints[j] - lp.waypoints[j - 1]).norm().get_d());
        CHECK(step <= 0.75 * step_bound(lp.waypoints[j - 1], g(-1)) + 1e-12);
    }

    EvalPath ep = auto_path(epi_instance().op(), g(0), g(-2), o);
    CHECK(ep.waypoints.back() == g(-2));
    for (std::size_t j = 1; j + 1 < ep.waypoints.size(); ++j) CHECK(sgn(ep.waypoints[j].im()) > 0);
    EvalOptions lower = o;
    lower.hint = PathHint::lower;
    EvalPath lp2 = auto_path(epi_instance().op(), g(0), g(-2), lower);
    for (std::size_t j = 1; j + 1 < lp2.waypoints.size(); ++j) CHECK(sgn(lp2.waypoints[j].im()) < 0);
    // Determinism.
    CHECK(auto_path(epi_instance().op(), g(0), g(-2), o).waypoints == ep.waypoints);
}

TEST_CASE("evaluation by continuation") {
    EvalResult l = evaluate(log_instance(), g(1), 0, digits(40));
    CHECK(contains(l.value, log2_oracle()));
    CHECK(l.value.rad() <= 1e-38);
    CHECK(l.segments.size() >= 2);

    EvalResult a = evaluate(atan_instance(), g(1), 0, digits(40));
    CHECK(contains(a.value, pi4_oracle()));
    CHECK(a.value.rad() <= 1e-38);

    EvalPath upper{{g(0), g(-1, 1), g(-2)}};
    EvalResult ep = evaluate(epi_instance(), g(-2), 0, digits(20), upper);
    CHECK(contains(ep.value, exp_pi_oracle(1)));
    CHECK(ep.value.rad() <= 1e-12);
    EvalPath lower{{g(0), g(-1, -1), g(-2)}};
    EvalResult em = evaluate(epi_instance(), g(-2), 0, digits(20), lower);
    CHECK(contains(em.value, exp_pi_oracle(-1)));
    EvalResult auto_ep = evaluate(epi_instance(), g(-2), 0, digits(20));
    CHECK(contains(auto_ep.value, exp_pi_oracle(1)));
}

TEST_CASE("singular points are refused") {
    try {
        DFiniteInstance bessel(dop({Z * Z - g(1), Z, Z * Z}), g(0), {NumberValue(g(0)), NumberValue(g(1))});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::singular_point);
        CHECK(std::string(e.what()).find("base point 0") != std::string::npos);
    }
    try {
        evaluate(log_instance(), g(-1), 0, digits(20));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::singular_point);
    }
    try {
        evaluate(log_instance(), g(-2), 0, digits(20), EvalPath{{g(0), g(-2)}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::no_path);
    }
}

TEST_CASE("path independence and derivative consistency") {
    const EvalOptions o = digits(30);
    const GaussianRational half(q(1, 2));
    EvalResult direct = evaluate(log_instance(), half, 0, o, EvalPath{{g(0), half}});
    EvalResult detour =
        evaluate(log_instance(), half, 0, o, EvalPath{{g(0), GaussianRational(q(1, 4), q(1, 4)), half}});
    CHECK(direct.value.overlaps(detour.value));
    CHECK(direct.value.rad() <= 1e-28);

    const BigRational hstep(1, 100000000);
    for (const DFiniteInstance& inst : {log_instance(), atan_instance()}) {
        const GaussianRational zeta(q(1, 2));
        EvalResult d = evaluate(inst, zeta, 1, o);
        EvalResult fp = evaluate(inst, zeta + GaussianRational(hstep), 0, o);
        EvalResult fm = evaluate(inst, zeta - GaussianRational(hstep), 0, o);
        Enclosure quotient = (fp.value - fm.value) * Enclosure::exact(GaussianRational(1 / (2 * hstep)), o.prec);
        // Truncation error of the central difference: h^2/6 * max |f'''| <= 1e-15 here.
        CHECK(d.value.widened(1e-15).overlaps(quotient));
    }
}

TEST_CASE("semigroup and monotone precision") {
    const EvalOptions o = digits(30);
    const GaussianRational b1(q(1, 4), q(1, 8)), b2(q(1, 2));
    DFiniteInstance two = continue_to(continue_to(log_instance(), b1, o), b2, o);
    DFiniteInstance one = continue_to(log_instance(), b2, o);
    for (std::size_t k = 0; k < 2; ++k)
        CHECK(std::get<Enclosure>(two.ics()[k]).overlaps(std::get<Enclosure>(one.ics()[k])));

    for (const DFiniteInstance& inst : {exp_instance(), log_instance(), atan_instance()}) {
        EvalResult lo = evaluate(inst, GaussianRational(q(3, 4)), 0, digits(20));
        EvalResult hi = evaluate(inst, GaussianRational(q(3, 4)), 0, digits(40));
        CHECK(hi.value.rad() <= lo.value.rad());
        CHECK(hi.value.overlaps(lo.value));
    }
}
