#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bispec/mahler.hpp"
#include "bispec/parser.hpp"
#include "bispec/poly.hpp"

using namespace bispec;

TEST_CASE("parser handles the expression grammar") {
    WeightPoly w = parse_weight("2 + z1*z2");
    CHECK(std::abs(w(cplx{1, 0}, cplx{1, 0}) - cplx{3, 0}) < 1e-15);
    CHECK(std::abs(w(cplx{0, 0}, cplx{0, 0}) - cplx{2, 0}) < 1e-15);

    WeightPoly p = parse_weight("(1 + z1)^2 - z2^3*0.5 + 1i*z1");
    CHECK(std::abs(p(cplx{0, 0}, cplx{0, 0}) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(p(cplx{1, 0}, cplx{0, 0}) - cplx{4, 1}) < 1e-15);
    CHECK(std::abs(p(cplx{0, 0}, cplx{1, 0}) - cplx{0.5, 0}) < 1e-15);

    CHECK(std::abs(parse_weight("-z1 - -z2")(cplx{1, 0}, cplx{1, 0})) < 1e-15);
    CHECK(std::abs(parse_weight("3")(cplx{0.5, 0}, cplx{0, 0}) - cplx{3, 0}) < 1e-15);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_weight("2 +"), syntax_error);
    CHECK_THROWS_AS(parse_weight("z3"), syntax_error);
    CHECK_THROWS_AS(parse_weight("(z1"), syntax_error);
    CHECK_THROWS_AS(parse_weight("z1^"), syntax_error);
    CHECK_THROWS_AS(parse_weight("z1^999"), exponent_too_large);
    CHECK_THROWS_AS(parse_weight(""), syntax_error);
    CHECK_THROWS_AS(parse_weight("z1 / z2"), syntax_error);
}

TEST_CASE("polynomial algebra agrees with pointwise evaluation") {
    WeightPoly a = parse_weight("1 + 2*z1 + z2^2");
    WeightPoly b = parse_weight("z1*z2 - 0.5");
    cplx z1{0.3, 0.1}, z2{-0.2, 0.4};
    CHECK(std::abs((a + b)(z1, z2) - (a(z1, z2) + b(z1, z2))) < 1e-14);
    CHECK(std::abs((a - b)(z1, z2) - (a(z1, z2) - b(z1, z2))) < 1e-14);
    CHECK(std::abs((a * b)(z1, z2) - a(z1, z2) * b(z1, z2)) < 1e-14);
    CHECK(std::abs(a.pow_int(3)(z1, z2) - std::pow(a(z1, z2), 3)) < 1e-12);
    CHECK(std::abs(a.swap_vars()(z2, z1) - a(z1, z2)) < 1e-14);
}

TEST_CASE("rotation substitution matches composition") {
    WeightPoly w = parse_weight("2 + z1*z2 - 0.3*z1^2");
    cplx u1 = std::polar(1.0, 0.9), u2 = std::polar(1.0, 2.1);
    WeightPoly ws = w.substitute_rotation(u1, u2);
    cplx z1{0.5, 0.2}, z2{0.1, -0.3};
    CHECK(std::abs(ws(z1, z2) - w(u1 * z1, u2 * z2)) < 1e-14);
}

TEST_CASE("restriction to one variable") {
    WeightPoly w = parse_weight("1 + z1 + z1*z2^2");
    Poly1 p = w.restrict_z1(cplx{0.5, 0.0});  // polynomial in z2
    CHECK(std::abs(p.eval(cplx{2, 0}) - w(cplx{0.5, 0}, cplx{2, 0})) < 1e-13);
    Poly1 q = w.restrict_z2(cplx{0, 0});  // polynomial in z1
    CHECK(q.degree() == 1);
    CHECK(std::abs(q.eval(cplx{3, 0}) - cplx{4, 0}) < 1e-14);
}

TEST_CASE("monomial factoring strips the largest common powers") {
    FactoredWeight f = factor_monomial(parse_weight("z1^2*z2 + z1^3*z2^2"));
    CHECK(f.s == 2);
    CHECK(f.t == 1);
    CHECK(f.origin_nonzero);
    CHECK(std::abs(f.reduced(cplx{0, 0}, cplx{0, 0}) - cplx{1, 0}) < 1e-15);

    FactoredWeight g = factor_monomial(parse_weight("1 + z1"));
    CHECK(g.s == 0);
    CHECK(g.t == 0);
    CHECK(g.origin_nonzero);

    // reduced weight vanishing at the origin without a common monomial
    FactoredWeight h = factor_monomial(parse_weight("z1 + z2"));
    CHECK(h.s == 0);
    CHECK(h.t == 0);
    CHECK_FALSE(h.origin_nonzero);
}

TEST_CASE("cocycle polynomial equals the iterated product") {
    WeightPoly w = parse_weight("2 + z1*z2 - 0.5*z2");
    cplx a1 = std::polar(1.0, 0.77), a2 = std::polar(1.0, 1.93);
    MobiusMap f1 = mobius_rotation(AngleSpec::make_irrational(0.77));
    MobiusMap f2 = mobius_rotation(AngleSpec::make_irrational(1.93));
    WeightPoly w4 = cocycle_poly(w, a1, a2, 4);
    cplx z1 = std::polar(1.0, 0.3), z2 = std::polar(1.0, -1.1);
    CHECK(std::abs(w4(z1, z2) - cocycle_value(w, f1, f2, 4, z1, z2)) < 1e-12);
    // n = 0 is the constant 1
    CHECK(std::abs(cocycle_poly(w, a1, a2, 0)(z1, z2) - cplx{1, 0}) < 1e-15);
}

TEST_CASE("mahler measure of linear and known factors") {
    // z - c has measure max(1, |c|)
    Poly1 a{{cplx{-2.0, 0.0}, cplx{1.0, 0.0}}};
    CHECK(mahler_measure(a) == doctest::Approx(2.0).epsilon(1e-12));
    Poly1 b{{cplx{-0.5, 0.0}, cplx{1.0, 0.0}}};
    CHECK(mahler_measure(b) == doctest::Approx(1.0).epsilon(1e-12));
    // leading coefficient scales the measure
    Poly1 c{{cplx{-1.0, 0.0}, cplx{3.0, 0.0}}};
    CHECK(mahler_measure(c) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(mahler_measure(Poly1{{}}), zero_polynomial);

    // quadrature agrees when roots are off the circle
    Poly1 d{{cplx{0.25, 0.0}, cplx{-1.0, 0.5}, cplx{1.0, 0.0}}};
    CHECK(std::exp(circle_log_abs_mean(d, 4096)) ==
          doctest::Approx(mahler_measure(d)).epsilon(1e-7));
}

TEST_CASE("boundary log integrability of a slice") {
    // w(z1, zeta) nonzero on the circle: integrable
    CHECK(log_integral_is_finite(parse_weight("2 + z1"), cplx{1.0, 0.0}));
    // zero of finite order on the circle is still integrable
    CHECK(log_integral_is_finite(parse_weight("z1 - 1"), cplx{1.0, 0.0}));
    // identically zero slice is not
    CHECK_FALSE(log_integral_is_finite(parse_weight("z2 - 1"), cplx{1.0, 0.0}));
}
