#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "bispec/parser.hpp"
#include "bispec/spectra.hpp"

using namespace bispec;

namespace {

const double GOLDEN = TAU * 0.6180339887498949;

ReportOptions quiet() {
    ReportOptions o;
    o.run_oracle = false;
    return o;
}

bool radial_is(const SpectralRegion& r, double lo, double hi, double tol = 1e-9) {
    auto [a, b] = radial_bounds(r);
    return std::abs(a - lo) <= tol && std::abs(b - hi) <= tol;
}

bool clean_notes(const SpectrumReport& rep) {
    for (const std::string& n : rep.notes)
        if (n.find("containment check failed") != std::string::npos) return false;
    return true;
}

}  // namespace

TEST_CASE("classification covers the taxonomy") {
    MobiusMap rat = mobius_rotation(AngleSpec::make_rational(1, 3));
    MobiusMap irr = mobius_rotation(AngleSpec::make_irrational(GOLDEN));
    MobiusMap par = mobius_parabolic(cplx{1.0, 0.0}, 1.0);
    MobiusMap hyp = mobius_hyperbolic(0.5);
    WeightPoly w = parse_weight("2 + z1*z2");

    CaseTag t1 = classify_case(rat, rat, w);
    CHECK(t1.kind == CaseKind::EE_RatRat);
    REQUIRE(t1.m.has_value());
    CHECK(*t1.m == 3);
    CHECK(case_tag_text(t1) == "EE-rat-rat m=3");

    CaseTag t2 = classify_case(rat, irr, w);
    CHECK(t2.kind == CaseKind::EE_RatIrr);
    CHECK(t2.p == 3);
    CHECK_FALSE(t2.coordinates_swapped);

    // rational factor in second position: normalization transposes
    CaseTag t3 = classify_case(irr, rat, w);
    CHECK(t3.kind == CaseKind::EE_RatIrr);
    CHECK(t3.coordinates_swapped);
    CHECK(case_tag_text(t3) == "EE-rat-irr p=3 (swapped)");

    CHECK(classify_case(irr, irr, w).kind == CaseKind::EE_IrrIrrGeneric);
    CHECK(classify_case(rat, par, w).kind == CaseKind::ERat_P);
    CHECK(classify_case(irr, par, w).kind == CaseKind::EIrr_P);
    CHECK(classify_case(par, par, w).kind == CaseKind::P_P);
    CHECK(classify_case(rat, hyp, w).kind == CaseKind::ERat_H);
    CHECK(classify_case(irr, hyp, w).kind == CaseKind::EIrr_H);
    CHECK(classify_case(par, hyp, w).kind == CaseKind::P_H);
    CHECK(classify_case(hyp, hyp, w).kind == CaseKind::H_H);
    CHECK(classify_case(hyp, irr, w).coordinates_swapped);
    CHECK(classify_case(hyp, par, w).coordinates_swapped);

    MobiusMap rel = mobius_rotation(AngleSpec::make_irrational(
        GOLDEN, Relation{RelationKind::Independent, 0, 0}));
    CHECK(classify_case(rel, irr, w).kind == CaseKind::EE_IrrIrrIndependent);
}

TEST_CASE("classification refuses what the engines cannot honor") {
    MobiusMap irr = mobius_rotation(AngleSpec::make_irrational(GOLDEN));
    MobiusMap hyp = mobius_hyperbolic(0.5);
    // monomial hypothesis: reduced weight vanishes at the origin
    CHECK_THROWS_WITH_AS(classify_case(irr, hyp, parse_weight("z1 + z2")),
                         doctest::Contains("monomial hypothesis"), unsupported_case);
    CHECK_THROWS_AS(classify_case(irr, mobius_parabolic(cplx{1, 0}, 1.0),
                                  parse_weight("z1 + z2")),
                    unsupported_case);

    // elliptic maps must arrive in rotation form, even with the angle declared
    MobiusMap t;
    t.b = cplx{0.3, 0.0};
    MobiusMap conj = t.compose(
        mobius_rotation(AngleSpec::make_rational(1, 4)).compose(t.inverse()));
    conj.angle = AngleSpec::make_rational(1, 4);
    CHECK_THROWS_WITH_AS(classify_case(conj, irr, parse_weight("1 + z1")),
                         doctest::Contains("rotation"), unsupported_case);
}

TEST_CASE("periodic pair reports exact root images") {
    Map2 f{mobius_rotation(AngleSpec::make_rational(1, 2)),
           mobius_rotation(AngleSpec::make_rational(1, 2)), false};
    SpectrumReport rep = compute_report(f, parse_weight("z1"), quiet());
    CHECK(rep.case_tag == "EE-rat-rat m=2");
    CHECK(rep.sigma.exactness == Exactness::Exact);
    CHECK(rep.sigma_ap.exactness == Exactness::Exact);
    CHECK(radial_is(rep.sigma, 0.0, 1.0));
    CHECK(radial_is(rep.sigma_ap, 1.0, 1.0));
    CHECK(radial_is(rep.sigma_usf, 1.0, 1.0));
    CHECK(radial_is(rep.sigma_lsf, 0.0, 1.0));
    CHECK(clean_notes(rep));
    // interior membership via the bidisc root image
    CHECK(contains(rep.sigma, cplx{0.4, 0.3}, 1e-9) != Location::Out);
    CHECK(contains(rep.sigma, cplx{1.2, 0.0}, 1e-9) == Location::Out);
}

TEST_CASE("rational x irrational with an invertible weight") {
    Map2 f{mobius_rotation(AngleSpec::make_rational(0, 1)),
           mobius_rotation(AngleSpec::make_irrational(GOLDEN)), false};
    // |3 + z2| >= 2 on the closed bidisc: invertible there
    SpectrumReport rep = compute_report(f, parse_weight("3 + z2"), quiet());
    CHECK(rep.case_tag == "EE-rat-irr p=1");
    for (const SpectralRegion* r :
         {&rep.sigma, &rep.sigma_ap, &rep.sigma_usf, &rep.sigma_lsf}) {
        CHECK(r->exactness == Exactness::Exact);
        CHECK(radial_is(*r, 3.0, 3.0));
    }
    CHECK(clean_notes(rep));
}

TEST_CASE("declared relations pick the fixed-value engine") {
    WeightPoly w = parse_weight("2 + z1*z2");
    Map2 ind{mobius_rotation(AngleSpec::make_irrational(
                 GOLDEN, Relation{RelationKind::Independent, 0, 0})),
             mobius_rotation(AngleSpec::make_irrational(TAU * 0.41421356237309515)),
             false};
    SpectrumReport rep = compute_report(ind, w, quiet());
    CHECK(rep.case_tag == "EE-irr-irr-independent");
    CHECK(radial_is(rep.sigma, 2.0, 2.0));
    CHECK(rep.sigma.exactness == Exactness::Exact);

    // a1^1 = a2^2: the q-step cocycle at the origin has modulus 4
    Map2 pos{mobius_rotation(AngleSpec::make_irrational(
                 GOLDEN, Relation{RelationKind::Positive, 1, 2})),
             mobius_rotation(AngleSpec::make_irrational(GOLDEN / 2.0)), false};
    SpectrumReport rep2 = compute_report(pos, w, quiet());
    CHECK(rep2.case_tag == "EE-irr-irr-positive-relation");
    CHECK(radial_is(rep2.sigma, 2.0, 2.0));

    Map2 mix{mobius_rotation(AngleSpec::make_irrational(
                 GOLDEN, Relation{RelationKind::Mixed, 1, 1})),
             mobius_rotation(AngleSpec::make_irrational(TAU - GOLDEN)), false};
    SpectrumReport rep3 = compute_report(mix, w, quiet());
    CHECK(rep3.case_tag == "EE-irr-irr-mixed-relation");
    CHECK(rep3.sigma.exactness == Exactness::OracleEstimate);
    auto [lo, hi] = radial_bounds(rep3.sigma);
    CHECK(lo < hi);  // genuinely an annulus for this weight
    bool noted = false;
    for (const std::string& n : rep3.notes)
        if (n.find("numerical estimates") != std::string::npos) noted = true;
    CHECK(noted);
}

TEST_CASE("parabolic slices") {
    // identity x parabolic: the slice z2 = 1 carries the spectrum
    Map2 f{mobius_rotation(AngleSpec::make_rational(0, 1)),
           mobius_parabolic(cplx{1.0, 0.0}, 1.0), false};
    SpectrumReport rep = compute_report(f, parse_weight("2 + z1*z2"), quiet());
    CHECK(rep.case_tag == "Erat-P p=1");
    // |2 + z1| over the circle: annulus(1, 3), radii from bracket midpoints
    CHECK(radial_is(rep.sigma, 1.0, 3.0, 1e-4));
    CHECK(rep.sigma.exactness == Exactness::Exact);
    CHECK(clean_notes(rep));

    // weight vanishing identically on the invariant slice
    SpectrumReport z = compute_report(f, parse_weight("z2 - 1"), quiet());
    bool zero_note = false;
    for (const std::string& n : z.notes)
        if (n.find("vanishes identically") != std::string::npos) zero_note = true;
    CHECK(zero_note);
    CHECK(radial_is(z.sigma, 0.0, 0.0));

    // parabolic x parabolic evaluates at the fixed pair
    Map2 pp{mobius_parabolic(cplx{1.0, 0.0}, 1.0),
            mobius_parabolic(cplx{0.0, 1.0}, -0.5), false};
    SpectrumReport rep2 = compute_report(pp, parse_weight("2 + z1*z2"), quiet());
    CHECK(rep2.case_tag == "P-P");
    CHECK(radial_is(rep2.sigma, std::abs(cplx{2.0, 0.0} + cplx{0.0, 1.0}),
                    std::abs(cplx{2.0, 0.0} + cplx{0.0, 1.0})));
}

TEST_CASE("hyperbolic fixed points split the semi-Fredholm spectra") {
    // parabolic x hyperbolic: values 4 and 2 at the fixed pairs
    Map2 f{mobius_parabolic(cplx{0.0, 1.0}, 1.0), mobius_hyperbolic(0.5), false};
    WeightPoly w = parse_weight("z2 + 3");
    SpectrumReport rep = compute_report(f, w, quiet());
    CHECK(rep.case_tag == "P-H");
    CHECK(radial_is(rep.sigma, 2.0, 4.0));
    CHECK(rep.sigma.exactness == Exactness::Exact);
    // attracting value 4 >= repelling value 2: usf fills the annulus
    CHECK(radial_is(rep.sigma_usf, 2.0, 4.0));
    CHECK(rep.sigma_usf.exactness == Exactness::Exact);
    CHECK(rep.sigma_usf.primitives.size() == 1);
    // lsf collapses to the two circles, claimed as a subset
    CHECK(rep.sigma_lsf.primitives.size() == 2);
    CHECK(rep.sigma_lsf.exactness == Exactness::SubsetOfTruth);
    CHECK(clean_notes(rep));
}

TEST_CASE("equal fixed-point moduli keep everything exact") {
    // h x h with a symmetric weight: moduli (3, 1, 1, 3), not strictly ordered
    MobiusMap h = mobius_hyperbolic(0.5);
    WeightPoly w = parse_weight("2 + z1*z2");
    SpectrumReport rep = compute_report(Map2{h, h, false}, w, quiet());
    CHECK(rep.case_tag == "H-H");
    CHECK(radial_is(rep.sigma, 1.0, 3.0));
    CHECK(rep.sigma.exactness == Exactness::Exact);
    CHECK(rep.sigma_ap.exactness == Exactness::Exact);
    CHECK(rep.sigma_usf.exactness == Exactness::SubsetOfTruth);
    CHECK(rep.sigma_lsf.exactness == Exactness::SubsetOfTruth);
    auto [ulo, uhi] = radial_bounds(rep.sigma_usf);
    CHECK(ulo >= 1.0 - 1e-9);
    CHECK(uhi <= 3.0 + 1e-9);
    CHECK(clean_notes(rep));
}

TEST_CASE("swap-form input reduces through the coordinatewise square") {
    MobiusMap h = mobius_hyperbolic(0.5);
    WeightPoly w = parse_weight("2 + z1*z2");
    SpectrumReport rep = compute_report(Map2{h, h, true}, w, quiet());
    CHECK(rep.case_tag.find("(crossed)") != std::string::npos);
    bool noted = false;
    for (const std::string& n : rep.notes)
        if (n.find("swap-form") != std::string::npos) noted = true;
    CHECK(noted);
    // h(+-1) = +-1, so the crossed values are the squares of the direct ones:
    // the pulled-back radial bounds match the coordinatewise report
    CHECK(radial_is(rep.sigma, 1.0, 3.0, 1e-9));

    // parabolic swap form: single fixed pair
    MobiusMap p = mobius_parabolic(cplx{1.0, 0.0}, 0.8);
    SpectrumReport rep2 = compute_report(Map2{p, p, true}, w, quiet());
    CHECK(rep2.case_tag.find("(crossed)") != std::string::npos);
    CHECK(radial_is(rep2.sigma, 3.0, 3.0, 1e-9));

    // a swap-form square that rotates is out of scope
    MobiusMap r = mobius_rotation(AngleSpec::make_rational(1, 8));
    CHECK_THROWS_WITH_AS(
        compute_report(Map2{r, r, true}, w, quiet()),
        doctest::Contains("swap-form"), unsupported_case);
}

TEST_CASE("constant weights collapse every engine to one circle") {
    WeightPoly c = WeightPoly::constant(cplx{0.0, 1.7});
    MobiusMap irr = mobius_rotation(AngleSpec::make_irrational(GOLDEN));
    MobiusMap hyp = mobius_hyperbolic(0.4);
    MobiusMap par = mobius_parabolic(cplx{1.0, 0.0}, 1.0);
    for (const Map2& f :
         {Map2{irr, hyp, false}, Map2{par, par, false},
          Map2{mobius_rotation(AngleSpec::make_rational(1, 3)), irr, false},
          Map2{hyp, hyp, true}}) {
        SpectrumReport rep = compute_report(f, c, quiet());
        CAPTURE(rep.case_tag);
        for (const SpectralRegion* r :
             {&rep.sigma, &rep.sigma_ap, &rep.sigma_usf, &rep.sigma_lsf})
            CHECK(radial_is(*r, 1.7, 1.7, 1e-9));
    }
}

TEST_CASE("the zero weight is rejected up front") {
    Map2 f{mobius_rotation(AngleSpec::make_irrational(GOLDEN)),
           mobius_hyperbolic(0.5), false};
    CHECK_THROWS_AS(compute_report(f, WeightPoly::from_terms({}), quiet()), zero_weight);
}

TEST_CASE("reports serialize losslessly") {
    Map2 f{mobius_parabolic(cplx{0.0, 1.0}, 1.0), mobius_hyperbolic(0.5), false};
    SpectrumReport rep = compute_report(f, parse_weight("z2 + 3"), quiet());
    SpectrumReport back = report_from_json(to_json(rep));
    CHECK(back == rep);
    CHECK(to_json(back).dump() == to_json(rep).dump());
}

TEST_CASE("oracle attachment records the cross checks") {
    Map2 ind{mobius_rotation(AngleSpec::make_irrational(
                 GOLDEN, Relation{RelationKind::Independent, 0, 0})),
             mobius_rotation(AngleSpec::make_irrational(TAU * 0.41421356237309515)),
             false};
    ReportOptions opts;
    opts.oracle.grid = 32;
    opts.oracle.n_max = 64;
    opts.oracle.horizon = 32;
    SpectrumReport rep = compute_report(ind, parse_weight("2 + z1*z2"), opts);
    CHECK(!rep.oracle_record.empty());
    for (const OracleRecordEntry& e : rep.oracle_record) {
        CAPTURE(e.quantity);
        CHECK(e.agree);
    }
}
