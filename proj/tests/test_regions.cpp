#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bispec/parser.hpp"
#include "bispec/regions.hpp"

using namespace bispec;

TEST_CASE("membership in the basic primitives") {
    CHECK(contains(RegionPrimitive{Disk{2.0}}, cplx{1.0, 0.5}, 1e-9) == Location::In);
    CHECK(contains(RegionPrimitive{Disk{2.0}}, cplx{3.0, 0.0}, 1e-9) == Location::Out);
    CHECK(contains(RegionPrimitive{Disk{2.0}}, cplx{2.0, 0.0}, 1e-9) != Location::Out);

    CHECK(contains(RegionPrimitive{Circle{1.0}}, std::polar(1.0, 2.2), 1e-9) !=
          Location::Out);
    CHECK(contains(RegionPrimitive{Circle{1.0}}, cplx{0.5, 0.0}, 1e-9) == Location::Out);

    CHECK(contains(RegionPrimitive{Annulus{1.0, 2.0}}, cplx{1.5, 0.0}, 1e-9) ==
          Location::In);
    CHECK(contains(RegionPrimitive{Annulus{1.0, 2.0}}, cplx{0.5, 0.0}, 1e-9) ==
          Location::Out);

    CHECK(contains(RegionPrimitive{PointZero{}}, cplx{0.0, 0.0}, 1e-9) != Location::Out);
    CHECK(contains(RegionPrimitive{PointZero{}}, cplx{0.1, 0.0}, 1e-9) == Location::Out);
}

TEST_CASE("root image membership is certified") {
    // lambda^2 in image of z1 over the torus: the unit circle
    RootImage onto_circle{2, Domain::Torus2, parse_weight("z1")};
    CHECK(contains(RegionPrimitive{onto_circle}, std::polar(1.0, 0.3), 1e-9) !=
          Location::Out);
    CHECK(contains(RegionPrimitive{onto_circle}, cplx{0.5, 0.0}, 1e-9) == Location::Out);
    CHECK(contains(RegionPrimitive{onto_circle}, cplx{1.3, 0.0}, 1e-9) == Location::Out);

    // over the bidisc the image fills the disc
    RootImage onto_disc{2, Domain::Bidisc, parse_weight("z1")};
    CHECK(contains(RegionPrimitive{onto_disc}, cplx{0.5, 0.2}, 1e-9) != Location::Out);
    CHECK(contains(RegionPrimitive{onto_disc}, cplx{1.2, 0.0}, 1e-9) == Location::Out);

    auto [lo, hi] = radial_bounds(RegionPrimitive{onto_circle});
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-6));
    auto [blo, bhi] = radial_bounds(RegionPrimitive{onto_disc});
    CHECK(blo == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(bhi == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("profile unions merge overlapping annuli") {
    ParamAnnulusUnion u;
    u.selector = ProfileSelector::AGeqB;
    // a >= b on the first half, a < b on the second
    for (int k = 0; k < 32; ++k) {
        double a = k < 16 ? 2.0 : 1.0;
        double b = k < 16 ? 1.0 : 2.0;
        u.samples.push_back({a, b});
    }
    auto iv = u.intervals();
    REQUIRE(iv.size() == 1);
    CHECK(iv[0][0] == doctest::Approx(1.0));
    CHECK(iv[0][1] == doctest::Approx(2.0));

    RegionPrimitive p{u};
    CHECK(contains(p, cplx{1.5, 0.0}, 1e-9) != Location::Out);
    // the sample band (adjacent-profile jump 1.0 here) reports Boundary, so
    // the certified Out verdict needs clearance beyond it
    CHECK(contains(p, cplx{3.5, 0.0}, 1e-9) == Location::Out);
    auto [lo, hi] = radial_bounds(p);
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(2.0));
}

TEST_CASE("canonicalize rewrites degenerate primitives and is idempotent") {
    SpectralRegion r;
    r.primitives.push_back(Annulus{1.5, 1.5});
    r.primitives.push_back(Disk{0.0});
    r.primitives.push_back(Circle{1.0});
    r.primitives.push_back(Disk{2.0});  // swallows the circle and the annulus
    canonicalize(r);
    SpectralRegion again = r;
    canonicalize(again);
    CHECK(r == again);
    REQUIRE(r.primitives.size() == 1);
    CHECK(std::holds_alternative<Disk>(r.primitives[0]));

    // an annulus does not swallow a circle outside it
    SpectralRegion s;
    s.primitives.push_back(Circle{3.0});
    s.primitives.push_back(Annulus{1.0, 2.0});
    canonicalize(s);
    CHECK(s.primitives.size() == 2);
}

TEST_CASE("region membership takes the union over primitives") {
    SpectralRegion r;
    r.primitives.push_back(Circle{1.0});
    r.primitives.push_back(Circle{2.0});
    CHECK(contains(r, std::polar(1.0, 0.1), 1e-9) != Location::Out);
    CHECK(contains(r, std::polar(2.0, 0.1), 1e-9) != Location::Out);
    CHECK(contains(r, cplx{1.5, 0.0}, 1e-9) == Location::Out);
    auto [lo, hi] = radial_bounds(r);
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(2.0));
}

TEST_CASE("json round trip preserves every primitive kind") {
    SpectrumReport rep;
    rep.case_tag = "round-trip";
    rep.sigma.exactness = Exactness::OracleEstimate;
    rep.sigma.primitives.push_back(Annulus{0.5, 2.5});
    rep.sigma_ap.primitives.push_back(Circle{1.25});
    rep.sigma_usf.exactness = Exactness::SupersetOfTruth;
    rep.sigma_usf.primitives.push_back(RootImage{3, Domain::Bidisc, parse_weight("1 + z1*z2")});
    ParamAnnulusUnion u;
    u.selector = ProfileSelector::ALtB;
    u.samples = {{1.0, 2.0}, {1.1, 1.9}, {0.9, 2.1}};
    rep.sigma_lsf.exactness = Exactness::SubsetOfTruth;
    rep.sigma_lsf.primitives.push_back(u);
    rep.sigma_lsf.primitives.push_back(PointZero{});
    rep.notes.push_back("a note");
    OracleRecordEntry e;
    e.quantity = "outer-radius-vs-cocycle-norm";
    e.closed_form = 2.5;
    e.lower = 2.4;
    e.upper = 2.6;
    e.agree = true;
    rep.oracle_record.push_back(e);
    OracleRecordEntry f;
    f.quantity = "no-closed-form";
    f.lower = 0.1;
    f.upper = 0.2;
    f.agree = false;
    rep.oracle_record.push_back(f);

    nlohmann::json j = to_json(rep);
    SpectrumReport back = report_from_json(j);
    CHECK(back == rep);
    CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("svg output is deterministic and self-contained") {
    SpectrumReport rep;
    rep.case_tag = "svg-check";
    rep.sigma.primitives.push_back(Disk{2.0});
    rep.sigma_ap.primitives.push_back(Annulus{1.0, 2.0});
    rep.sigma_usf.primitives.push_back(Circle{1.0});
    rep.sigma_lsf.primitives.push_back(Circle{2.0});
    std::string svg = to_svg(rep, 320);
    CHECK(svg == to_svg(rep, 320));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("svg-check") != std::string::npos);
    // degenerate sizes are clamped, not rejected
    CHECK(to_svg(rep, 1).find("<svg") != std::string::npos);
}
