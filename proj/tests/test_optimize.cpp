#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bispec/optimize.hpp"
#include "bispec/parser.hpp"

using namespace bispec;

namespace {

// dense sampling lower bound for the max, upper bound for the min
double sampled_extremum(const WeightPoly& w, Domain dom, bool want_min) {
    std::mt19937_64 rng(7);
    double best = want_min ? 1e300 : 0.0;
    for (int k = 0; k < 20000; ++k) {
        double t1 = double(rng() >> 11) * 0x1.0p-53 * TAU;
        double t2 = double(rng() >> 11) * 0x1.0p-53 * TAU;
        double r1 = 1.0, r2 = 1.0;
        if (dom == Domain::Bidisc) {
            r1 = std::sqrt(double(rng() >> 11) * 0x1.0p-53);
            r2 = std::sqrt(double(rng() >> 11) * 0x1.0p-53);
        }
        double v = std::abs(w(std::polar(r1, t1), std::polar(r2, t2)));
        best = want_min ? std::min(best, v) : std::max(best, v);
    }
    return best;
}

}  // namespace

TEST_CASE("certified bounds trap the sampled extrema") {
    for (const char* text : {"2 + z1*z2", "z1 - 0.5", "1 + z1 + 0.5*z2^2",
                             "0.3 - z1*z2 + 0.2*z2"}) {
        WeightPoly w = parse_weight(text);
        CAPTURE(text);
        BoundResult tmin = certified_min_modulus(w, Domain::Torus2);
        double smin = sampled_extremum(w, Domain::Torus2, true);
        // certified sides: no sample may escape the bracket outward
        CHECK(tmin.lower <= smin + 1e-12);
        CHECK(tmin.lower <= tmin.upper + 1e-12);
        // the subdivision witness is at least as good as random sampling
        CHECK(tmin.upper <= smin + 1e-9);

        BoundResult bmin = certified_min_modulus(w, Domain::Bidisc);
        CHECK(bmin.lower <= tmin.lower + 1e-12);  // bidisc min is never larger

        BoundResult tmax = certified_max_modulus_torus(w);
        double smax = sampled_extremum(w, Domain::Torus2, false);
        CHECK(tmax.upper >= smax - 1e-12);
        CHECK(tmax.lower >= smax - 1e-9);
        // extrema on curves converge slower than point extrema; the bracket
        // stays valid, just wider
        CHECK(tmax.upper - tmax.lower <= 0.01 * (1.0 + tmax.upper));
    }
}

TEST_CASE("exact values on weights with known extrema") {
    // |2 + z1 z2| ranges over [1, 3]
    WeightPoly w = parse_weight("2 + z1*z2");
    BoundResult mn = certified_min_modulus(w, Domain::Torus2);
    BoundResult mx = certified_max_modulus_torus(w);
    // both extrema sit on whole curves (z1 z2 = -1 resp. +1), so the bracket
    // narrows like the cell budget, not like the tolerance
    CHECK(mn.lower == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(mn.lower <= 1.0 + 1e-12);
    CHECK(mx.upper == doctest::Approx(3.0).epsilon(5e-3));
    CHECK(mx.upper >= 3.0 - 1e-12);
    CHECK_FALSE(mn.zero_found);

    // constants short-circuit
    BoundResult c = certified_min_modulus(WeightPoly::constant(cplx{3, 4}), Domain::Bidisc);
    CHECK(c.lower == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(c.upper == doctest::Approx(5.0).epsilon(1e-12));

    // pure monomials
    BoundResult m = certified_min_modulus(parse_weight("z1*z2"), Domain::Torus2);
    CHECK(m.lower == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("circle variants bound one-variable moduli") {
    Poly1 p{{cplx{-0.5, 0.0}, cplx{1.0, 0.0}}};  // z - 0.5 on |z| = 1
    Bound1Result mn = certified_min_modulus_circle(p);
    Bound1Result mx = certified_max_modulus_circle(p);
    CHECK(mn.lower == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(mx.upper == doctest::Approx(1.5).epsilon(1e-4));
    CHECK_FALSE(mn.zero_found);

    Poly1 q{{cplx{-1.0, 0.0}, cplx{1.0, 0.0}}};  // zero on the circle
    Bound1Result z = certified_min_modulus_circle(q);
    CHECK(z.lower <= 1e-9);
}

TEST_CASE("zero witnesses land on actual zeros") {
    ZeroWitness t = find_torus_zero(parse_weight("z1 - z2"));
    REQUIRE(t.found);
    CHECK(std::abs(t.z[0] - t.z[1]) < 1e-6);
    CHECK(std::abs(std::abs(t.z[0]) - 1.0) < 1e-9);

    ZeroWitness b = find_bidisc_zero(parse_weight("z1 - 0.5"));
    REQUIRE(b.found);
    CHECK(std::abs(b.z[0] - cplx{0.5, 0.0}) < 1e-6);

    ZeroWitness none = find_torus_zero(parse_weight("z1 - 0.5"));
    CHECK_FALSE(none.found);
}

TEST_CASE("invertibility trichotomy") {
    InvertibilityReport a = invertibility_status(parse_weight("2 + z1*z2"));
    CHECK(a.status == InvertibilityStatus::InvertibleA2);
    CHECK(a.bidisc_floor > 0.0);  // any certified positive floor suffices

    InvertibilityReport b = invertibility_status(parse_weight("z1 - 0.5"));
    CHECK(b.status == InvertibilityStatus::InvertibleCT2Only);
    CHECK(b.torus_floor > 0.0);
    CHECK(b.has_witness);

    InvertibilityReport c = invertibility_status(parse_weight("z1 - z2"));
    CHECK(c.status == InvertibilityStatus::NotInvertibleCT2);
    CHECK(c.has_witness);
    CHECK(std::abs(c.zero_witness[0] - c.zero_witness[1]) < 1e-6);

    // monomials are torus-invertible, not bidisc-invertible
    InvertibilityReport m = invertibility_status(parse_weight("z1"));
    CHECK(m.status == InvertibilityStatus::InvertibleCT2Only);
}

TEST_CASE("nonvanishing certificates") {
    VanishingResult v = certify_nonvanishing(parse_weight("2 + z1*z2"), Domain::Bidisc);
    CHECK(v.verdict == Vanishing::ZeroFree);
    CHECK(v.positive_floor > 0.0);
    VanishingResult z = certify_nonvanishing(parse_weight("z1 - z2"), Domain::Torus2);
    CHECK(z.verdict == Vanishing::ZeroFound);
    CHECK(z.witness_value <= 1e-9);
}
