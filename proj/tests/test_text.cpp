#include "dfinum/error.hpp"
#include "dfinum/text.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace dfinum;
using namespace dfinum::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::precondition;
}

}  // namespace

TEST_CASE("gaussian literals") {
    CHECK(parse_gaussian("3/4") == GaussianRational(q(3, 4)));
    CHECK(parse_gaussian("-7/3-1/2*i") == GaussianRational(q(-7, 3), q(-1, 2)));
    CHECK(parse_gaussian("i") == g(0, 1));
    CHECK(parse_gaussian("(1+i)/4") == GaussianRational(q(1, 4), q(1, 4)));
    CHECK(parse_gaussian("0.125") == GaussianRational(q(1, 8)));
    CHECK(parse_gaussian("1e-3") == GaussianRational(q(1, 1000)));
    CHECK(parse_gaussian("2.5E2") == g(250));
    CHECK(parse_gaussian("i^2") == g(-1));
    Rng rng(4);
    for (int t = 0; t < 200; ++t) {
        GaussianRational x = rng.gaussian(1000);
        CHECK(parse_gaussian(x.str()) == x);
    }
}

TEST_CASE("polynomial literals") {
    GPoly z = GPoly::x();
    CHECK(parse_polynomial("3*z^2 - 1/2*z + 1+2*i", "z") == g(3) * z * z - GaussianRational(q(1, 2)) * z + g(1, 2));
    CHECK(parse_polynomial("(z+1)^3", "z") == (z + g(1)).pow(3));
    CHECK(parse_polynomial("-z^2", "z") == -(z * z));
    CHECK(parse_polynomial("z/2", "z") == GaussianRational(q(1, 2)) * z);
    CHECK(kind_of([] { parse_polynomial("1/z", "z"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_polynomial("w + 1", "z"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_polynomial("z^-1", "z"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_polynomial("(z+1", "z"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_polynomial("", "z"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_polynomial("z", "i"); }) == ErrorKind::parse);
}

TEST_CASE("polynomial print and parse round trip") {
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        GPoly p = rng.poly(rng.integer(0, 5), 7, t % 3 == 0);
        const std::string s = format_polynomial(p, "z");
        CHECK(parse_polynomial(s, "z") == p);
        CHECK(format_polynomial(parse_polynomial(s, "z"), "z") == s);
    }
    CHECK(format_polynomial(gpoly({1, 0, -3}), "z") == "-3*z^2 + 1");
    CHECK(format_polynomial(GPoly(std::vector<GaussianRational>{g(1, 2), g(0, -1)}), "z") == "-i*z + (1+2*i)");
}

TEST_CASE("operator text form round trips through the canonical form") {
    ParsedOperator a = parse_operator("diff z: [i; 1 + z]");
    REQUIRE(a.is_diff());
    CHECK(a.diff() == DiffOperator(std::vector<GPoly>{GPoly(g(0, 1)), gpoly({1, 1})}));
    ParsedOperator b = parse_operator("shift n: [-n^3; (n+1)^3]");
    REQUIRE_FALSE(b.is_diff());
    CHECK(b.var == "n");
    CHECK(kind_of([&] { (void)b.diff(); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_operator("diff z: [0; 0]"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_operator("integral z: [1]"); }) == ErrorKind::parse);

    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        DiffOperator d = normalize(random_diffop(rng, 2, 2));
        const std::string s = format_operator(d);
        CHECK(format_operator(parse_diffop(s)) == s);
        ShiftOperator r = normalize(random_recurrence(rng, 2, 2));
        const std::string u = format_operator(r);
        CHECK(format_operator(parse_shiftop(u)) == u);
    }
}

TEST_CASE("bivariate text form") {
    BivariatePolynomial p = parse_bivariate("poly z,y: [[2], [3 - z], [-5], [1]]");
    CHECK(p.degree_y() == 3);
    CHECK(p.coeff(1) == gpoly({3, -1}));
    CHECK(parse_bivariate(format_bivariate(p)) == p);
    CHECK(kind_of([] { parse_bivariate("poly z,y: [[z]]"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_bivariate("poly z,z: [[1],[1]]"); }) == ErrorKind::parse);
}

TEST_CASE("number values and instances") {
    NumberValue v = parse_number_value("~1.4142±1e-4", 64);
    REQUIRE_FALSE(is_exact(v));
    const Enclosure& e = std::get<Enclosure>(v);
    CHECK(e.contains(GaussianRational(q(14142, 10000) + q(1, 10000))));
    CHECK(e.contains(GaussianRational(q(141421356, 100000000))));
    CHECK_FALSE(e.contains(GaussianRational(q(1415, 1000) + q(1, 10000))));
    NumberValue w = parse_number_value("~1+2*i+-0.5", 64);
    CHECK(std::get<Enclosure>(w).contains(g(1, 2)));
    CHECK(std::get<GaussianRational>(parse_number_value("3/7", 64)) == GaussianRational(q(3, 7)));

    DFiniteInstance inst = parse_instance("instance { op: diff z: [0; 1; 1 + z]; base: 0; ics: [0, 1] }", 128);
    CHECK(inst.op().order() == 2);
    CHECK(inst.exact());
    DFiniteInstance again = parse_instance(format_instance(inst), 128);
    CHECK(again.op() == inst.op());
    CHECK(std::get<GaussianRational>(again.ics()[1]) == g(1));

    CHECK(kind_of([] {
              parse_instance("instance { op: diff z: [z^2 - 1; z; z^2]; base: 0; ics: [0, 1] }", 64);
          }) == ErrorKind::singular_point);
    CHECK(kind_of([] { parse_instance("instance { op: diff z: [1; 1]; base: 0 }", 64); }) == ErrorKind::parse);
    CHECK(parse_point_list("[0, -1+i, -2]") == std::vector<GaussianRational>{g(0), g(-1, 1), g(-2)});
}

TEST_CASE("decimal printing rounds to nearest and bounds the total error") {
    const Enclosure third = Enclosure::exact(GaussianRational(q(1, 3)), 128);
    DecimalText t = format_decimal(third, 5);
    CHECK(t.mid == "0.33333");
    CHECK(t.rad == "3.4e-6");
    CHECK(format_decimal(Enclosure::exact(GaussianRational(q(2, 3)), 128), 5).mid == "0.66667");
    CHECK(format_decimal(Enclosure::exact(g(0), 64), 10).mid == "0");
    CHECK(format_decimal(Enclosure::exact(g(0), 64), 10).rad == "0");
    CHECK(format_decimal(Enclosure::exact(g(12345), 64), 3).mid == "12300");
    CHECK(format_decimal(Enclosure::exact(GaussianRational(q(1, 2), q(-1, 4)), 64), 4).mid == "0.5000 - 0.2500*i");
    CHECK(format_decimal(Enclosure::exact(g(0, -2), 64), 2).mid == "-2.0*i");

    // The radius caps the printed digits.
    const Enclosure wide = Enclosure::exact(GaussianRational(q(314159265, 100000000)), 128).widened(2e-4);
    t = format_decimal(wide, 30);
    CHECK(t.mid == "3.1416");
    CHECK(t.rad == "2.1e-4");

    // Printed value +- printed radius contains the enclosure.
    Rng rng(17);
    for (int k = 0; k < 100; ++k) {
        GaussianRational x = rng.gaussian(1000);
        const double r = std::ldexp(1.0, static_cast<int>(rng.integer(-60, -2)));
        Enclosure e = Enclosure::exact(x, 96).widened(r);
        const long digits = rng.integer(1, 25);
        DecimalText d = format_decimal(e, digits);
        std::string mid;
        for (char c : d.mid)
            if (c != ' ') mid += c;
        NumberValue back = parse_number_value("~" + mid + "±" + d.rad, 96);
        CHECK(std::get<Enclosure>(back).contains(e));
    }
}
