#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bispec/oracle.hpp"
#include "bispec/parser.hpp"

using namespace bispec;

namespace {

Map2 independent_pair() {
    return {mobius_rotation(AngleSpec::make_irrational(
                TAU * 0.6180339887498949, Relation{RelationKind::Independent, 0, 0})),
            mobius_rotation(AngleSpec::make_irrational(TAU * 0.41421356237309515)),
            false};
}

CaseTag independent_tag() {
    CaseTag tag;
    tag.kind = CaseKind::EE_IrrIrrIndependent;
    tag.class1 = tag.class2 = MapClass::EllipticIrrational;
    tag.relation = Relation{RelationKind::Independent, 0, 0};
    tag.invertibility = InvertibilityStatus::InvertibleA2;
    tag.monomial_hypothesis = true;
    return tag;
}

}  // namespace

TEST_CASE("birkhoff bracket on a constant weight is tight") {
    Map2 f = independent_pair();
    OracleEstimate e = birkhoff_radius(WeightPoly::constant(cplx{0.0, 1.5}), f, 32, 16);
    CHECK(e.lower <= 1.5 + 1e-9);
    CHECK(e.upper >= 1.5 - 1e-9);
    CHECK(e.upper - e.lower <= 0.01);
    CHECK(e.converged);
}

TEST_CASE("birkhoff bracket traps the ergodic mean") {
    // independent rotations: unique invariant measure, radius exactly 2
    Map2 f = independent_pair();
    WeightPoly w = parse_weight("2 + z1*z2");
    OracleEstimate rho = birkhoff_radius(w, f, 128, 32);
    // certified side: the upper bound dominates the true radius 2
    CHECK(rho.upper >= 2.0 - 1e-9);
    CHECK(rho.upper <= 3.0);  // and beats the sup norm
    // sampled side: finite-length means fluctuate around the limit
    CHECK(rho.lower == doctest::Approx(2.0).epsilon(0.05));
    CHECK(rho.lower <= rho.upper + 1e-12);

    OracleEstimate rmin = rho_min_estimate(w, f, 128, 32);
    CHECK(rmin.lower <= 2.0 + 1e-9);  // certified side sits below the limit
    CHECK(rmin.lower >= 1.0);
    CHECK(rmin.upper == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("rho_min is zero by definition without torus invertibility") {
    Map2 f = independent_pair();
    OracleEstimate e = rho_min_estimate(parse_weight("z1 - z2"), f, 32, 16);
    CHECK(e.lower == 0.0);
    CHECK(e.upper == 0.0);
}

TEST_CASE("upper bounds shrink as the cocycle length doubles") {
    Map2 f = independent_pair();
    WeightPoly w = parse_weight("2 + z1*z2");
    double prev = 1e300;
    for (long long n : {16, 32, 64, 128}) {
        OracleEstimate e = birkhoff_radius(w, f, n, 16);
        CHECK(e.upper <= prev * (1.0 + 1e-9));
        prev = e.upper;
    }
}

TEST_CASE("invariant families are actually invariant") {
    Map2 f = independent_pair();
    std::vector<MeasureFamily> fams = enumerate_measures(independent_tag(), f);
    REQUIRE(!fams.empty());
    bool lebesgue = false;
    for (const MeasureFamily& fam : fams) {
        if (fam.kind == MeasureFamily::Kind::TorusLebesgue) lebesgue = true;
        // quadrature(w o Phi) = quadrature(w): push the weight through the map
        WeightPoly w = parse_weight("1.5 + 0.25*z1 + z1*z2");
        cplx u1 = f.first.angle ? f.first.angle->unit() : cplx{1.0, 0.0};
        cplx u2 = f.second.angle ? f.second.angle->unit() : cplx{1.0, 0.0};
        WeightPoly pushed = w.substitute_rotation(u1, u2);
        double q0 = measure_quadrature(w, fam);
        double q1 = measure_quadrature(pushed, fam);
        CHECK(q0 == doctest::Approx(q1).epsilon(1e-9));
    }
    CHECK(lebesgue);
}

TEST_CASE("lebesgue quadrature reproduces the geometric mean") {
    Map2 f = independent_pair();
    std::vector<MeasureFamily> fams = enumerate_measures(independent_tag(), f);
    for (const MeasureFamily& fam : fams) {
        if (fam.kind != MeasureFamily::Kind::TorusLebesgue) continue;
        // geometric mean of |2 + z1 z2| over the torus is 2 (outer root)
        CHECK(measure_quadrature(parse_weight("2 + z1*z2"), fam) ==
              doctest::Approx(2.0).epsilon(1e-4));
        // and of |z1| is 1
        CHECK(measure_quadrature(parse_weight("z1"), fam) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("quadrature vanishes on a zero of the weight in the support") {
    CaseTag tag;
    tag.kind = CaseKind::ERat_P;
    tag.class1 = MapClass::EllipticRational;
    tag.class2 = MapClass::Parabolic;
    tag.p = 1;
    Map2 f{mobius_rotation(AngleSpec::make_rational(0, 1)),
           mobius_parabolic(cplx{1.0, 0.0}, 1.0), false};
    std::vector<MeasureFamily> fams = enumerate_measures(tag, f);
    REQUIRE(!fams.empty());
    bool saw_atom_like = false;
    for (const MeasureFamily& fam : fams) {
        if (fam.kind == MeasureFamily::Kind::FixedPointAtom ||
            fam.kind == MeasureFamily::Kind::BoundaryCircleAtFixedPoint)
            saw_atom_like = true;
        // w vanishes identically on z2 = 1, the parabolic fixed slice
        CHECK(measure_quadrature(parse_weight("z2 - 1"), fam) <= 1e-9);
    }
    CHECK(saw_atom_like);
}

TEST_CASE("ap probes certify exclusions on both sides") {
    Map2 f = independent_pair();
    WeightPoly w = parse_weight("2 + z1*z2");
    // outside the certified sup norm
    MembershipResult far = ap_membership_test(cplx{3.5, 0.0}, w, f, 64, 32);
    CHECK(far.certified_out);
    // far below the inverse sup norm
    MembershipResult low = ap_membership_test(cplx{0.2, 0.0}, w, f, 64, 32);
    CHECK(low.certified_out);
    // on the spectrum itself: never excluded
    MembershipResult on = ap_membership_test(std::polar(2.0, 0.7), w, f, 64, 32);
    CHECK_FALSE(on.certified_out);
}

TEST_CASE("lsf probes report witnesses but never certify") {
    Map2 f = independent_pair();
    WeightPoly w = parse_weight("2 + z1*z2");
    for (double r : {0.5, 2.0, 4.0}) {
        MembershipResult m = lsf_membership_test(cplx{r, 0.0}, w, f, 64, 16);
        CHECK_FALSE(m.certified_out);
    }
}

TEST_CASE("periodic rotations fall back to the exact power image") {
    // the cocycle of a period-2 rotation is periodic, so the horizon test is
    // replaced by root-image membership on the bidisc
    Map2 f{mobius_rotation(AngleSpec::make_rational(1, 2)),
           mobius_rotation(AngleSpec::make_rational(1, 2)), false};
    WeightPoly w = parse_weight("z1");
    CHECK_FALSE(ap_membership_test(cplx{0.5, 0.0}, w, f, 64, 64).certified_out);
    CHECK(ap_membership_test(cplx{1.2, 0.0}, w, f, 64, 64).certified_out);
}

TEST_CASE("attractor inclusions produce only subset claims") {
    AttractorData a;
    a.rho_k1 = a.rho_min_k1 = 4.0;
    a.rho_k2 = a.rho_min_k2 = 2.0;
    a.zero_orbit_finite = true;
    std::vector<AttractorInclusion> inc = attractor_inclusions(a);
    REQUIRE(!inc.empty());
    bool usf_annulus = false;
    for (const AttractorInclusion& i : inc) {
        CHECK(i.region.exactness == Exactness::SubsetOfTruth);
        auto [lo, hi] = radial_bounds(i.region);
        CHECK(lo >= 0.0);
        CHECK(hi <= 4.0 + 1e-9);
        if (i.target != SfTarget::Lsf && std::abs(lo - 2.0) < 1e-9 &&
            std::abs(hi - 4.0) < 1e-9)
            usf_annulus = true;
    }
    CHECK(usf_annulus);

    // a wandering zero adds the origin to the semi-Fredholm claims
    a.wandering_zero = true;
    std::vector<AttractorInclusion> inc2 = attractor_inclusions(a);
    bool has_zero = false;
    for (const AttractorInclusion& i : inc2)
        if (contains(i.region, cplx{0.0, 0.0}, 1e-12) != Location::Out) has_zero = true;
    CHECK(has_zero);
}

TEST_CASE("cross check accepts a correct closed form and flags a wrong one") {
    Map2 f = independent_pair();
    WeightPoly w = parse_weight("2 + z1*z2");
    CaseTag tag = independent_tag();

    SpectrumReport good;
    good.case_tag = "probe";
    good.sigma.primitives.push_back(Circle{2.0});
    good.sigma_ap = good.sigma_usf = good.sigma_lsf = good.sigma;
    OracleOptions opts;
    opts.grid = 32;
    opts.n_max = 64;
    opts.horizon = 32;
    std::vector<OracleRecordEntry> entries = cross_check(good, w, f, tag, opts);
    REQUIRE(!entries.empty());
    for (const OracleRecordEntry& e : entries) {
        CAPTURE(e.quantity);
        CHECK(e.agree);
    }

    SpectrumReport bad = good;
    bad.sigma.primitives[0] = Circle{5.0};
    bad.sigma_ap = bad.sigma_usf = bad.sigma_lsf = bad.sigma;
    std::vector<OracleRecordEntry> flagged = cross_check(bad, w, f, tag, opts);
    bool any_disagree = false;
    for (const OracleRecordEntry& e : flagged) any_disagree = any_disagree || !e.agree;
    CHECK(any_disagree);
}
