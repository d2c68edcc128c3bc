#include "bispec/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "json.hpp"

#include "bispec/config.hpp"
#include "bispec/mahler.hpp"
#include "bispec/parser.hpp"
#include "bispec/spectra.hpp"

namespace bispec {

namespace {

constexpr double GOLDEN_TURN = 0.6180339887498949;
constexpr double GOLDEN_ANGLE = TAU * GOLDEN_TURN;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

void expect(CriterionResult& r, bool ok, const std::string& what) {
    if (!ok) {
        r.pass = false;
        r.detail.push_back("failed: " + what);
    }
}

const OracleRecordEntry* find_entry(const SpectrumReport& rep, const char* quantity) {
    for (const OracleRecordEntry& e : rep.oracle_record)
        if (e.quantity == quantity) return &e;
    return nullptr;
}

bool radial_is(const SpectralRegion& r, double lo, double hi, double tol = 1e-9) {
    auto [a, b] = radial_bounds(r);
    return std::abs(a - lo) <= tol && std::abs(b - hi) <= tol;
}

std::vector<double> circle_radii(const SpectralRegion& r) {
    std::vector<double> out;
    for (const RegionPrimitive& p : r.primitives)
        if (const auto* c = std::get_if<Circle>(&p)) out.push_back(c->r);
    std::sort(out.begin(), out.end());
    return out;
}

bool single_annulus(const SpectralRegion& r, double lo, double hi, double tol = 1e-9) {
    if (r.primitives.size() != 1) return false;
    const auto* a = std::get_if<Annulus>(&r.primitives[0]);
    return a && std::abs(a->r - lo) <= tol && std::abs(a->R - hi) <= tol;
}

MobiusMap irr_rotation(double radians, std::optional<Relation> rel = std::nullopt) {
    return mobius_rotation(AngleSpec::make_irrational(radians, rel));
}

MobiusMap rat_rotation(long long n, long long d) {
    return mobius_rotation(AngleSpec::make_rational(n, d));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
}

long long pick(std::mt19937_64& rng, long long n) { return (long long)(rng() % std::uint64_t(n)); }

cplx random_unit(std::mt19937_64& rng) { return std::polar(1.0, uniform(rng, 0.0, TAU)); }

cplx random_coeff(std::mt19937_64& rng) {
    return {uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
}

WeightPoly random_weight(std::mt19937_64& rng, int max_deg, int max_terms,
                         bool origin_nonzero) {
    for (;;) {
        std::vector<Term> terms;
        int n = 1 + int(pick(rng, max_terms));
        for (int k = 0; k < n; ++k)
            terms.push_back({int(pick(rng, max_deg + 1)), int(pick(rng, max_deg + 1)),
                             random_coeff(rng)});
        if (origin_nonzero) {
            cplx c = random_coeff(rng);
            while (std::abs(c) < 0.3) c = random_coeff(rng);
            terms.push_back({0, 0, c});
        }
        WeightPoly w = WeightPoly::from_terms(std::move(terms));
        if (!w.is_zero()) return w;
    }
}

MobiusMap random_rotation(std::mt19937_64& rng) {
    if (rng() & 1) {
        long long d = 1 + pick(rng, 11);
        return rat_rotation(pick(rng, d), d);
    }
    return irr_rotation(uniform(rng, 0.1, TAU - 0.1));
}

// One map pair per case kind, parameters jittered by the rng. Kind indices
// follow the CaseKind order (13 values; Independent and Positive share the
// fixed-value engine).
Map2 random_case_map(std::mt19937_64& rng, int kind) {
    double th = uniform(rng, 0.2, TAU - 0.2);
    auto parab = [&] {
        return mobius_parabolic(random_unit(rng),
                                (rng() & 1 ? 1.0 : -1.0) * uniform(rng, 0.5, 2.0));
    };
    auto hyper = [&] {
        return mobius_hyperbolic((rng() & 1 ? 1.0 : -1.0) * uniform(rng, 0.2, 0.8),
                                 random_unit(rng));
    };
    switch (kind) {
        case 0: {
            long long d1 = 1 + pick(rng, 4), d2 = 1 + pick(rng, 4);
            return {rat_rotation(pick(rng, d1), d1), rat_rotation(pick(rng, d2), d2),
                    false};
        }
        case 1: {
            long long d = 1 + pick(rng, 4);
            return {rat_rotation(pick(rng, d), d), irr_rotation(th), false};
        }
        case 2:
            return {irr_rotation(th), irr_rotation(uniform(rng, 0.2, TAU - 0.2)),
                    false};
        case 3:
            return {irr_rotation(th, Relation{RelationKind::Independent, 0, 0}),
                    irr_rotation(uniform(rng, 0.2, TAU - 0.2)), false};
        case 4: {
            // a1^p = a2^q with q in {1, 2}
            long long q = 1 + pick(rng, 2);
            Relation rel{RelationKind::Positive, 1, q};
            return {irr_rotation(th, rel), irr_rotation(th / double(q)), false};
        }
        case 5: {
            long long q = 1 + pick(rng, 2);
            Relation rel{RelationKind::Mixed, 1, q};
            return {irr_rotation(th, rel), irr_rotation((TAU - th) / double(q)), false};
        }
        case 6: {
            long long d = 1 + pick(rng, 4);
            return {rat_rotation(pick(rng, d), d), parab(), false};
        }
        case 7: return {irr_rotation(th), parab(), false};
        case 8: return {parab(), parab(), false};
        case 9: {
            long long d = 1 + pick(rng, 4);
            return {rat_rotation(pick(rng, d), d), hyper(), false};
        }
        case 10: return {irr_rotation(th), hyper(), false};
        case 11: return {parab(), hyper(), false};
        default: return {hyper(), hyper(), false};
    }
}

// ---- criterion bodies ----------------------------------------------------

void crit_example_annulus(CriterionResult& r) {
    Relation rel{RelationKind::Mixed, 1, 1};
    Map2 f{irr_rotation(GOLDEN_ANGLE, rel), irr_rotation(TAU - GOLDEN_ANGLE), false};
    WeightPoly w = parse_weight("2 + z1*z2");
    SpectrumReport rep = compute_report(f, w, {});
    expect(r, rep.case_tag == "EE-irr-irr-mixed-relation",
           "case tag is EE-irr-irr-mixed-relation, got " + rep.case_tag);
    auto [lo, hi] = radial_bounds(rep.sigma);
    expect(r, lo >= 0.95 && lo <= 1.05,
           "sigma inner radius in [0.95, 1.05], got " + num(lo));
    expect(r, hi >= 2.95 && hi <= 3.05,
           "sigma outer radius in [2.95, 3.05], got " + num(hi));
    expect(r, rep.sigma.exactness == Exactness::OracleEstimate,
           "sigma is flagged as an oracle estimate");
    const OracleRecordEntry* rho = find_entry(rep, "outer-radius-vs-cocycle-norm");
    expect(r, rho && rho->lower <= 3.0 + 1e-9 && rho->upper >= 3.0 - 1e-9,
           std::string("cocycle-norm bracket contains 3") +
               (rho ? " (got [" + num(rho->lower) + ", " + num(rho->upper) + "])"
                    : " (entry missing)"));
    const OracleRecordEntry* rmin = find_entry(rep, "inner-radius-vs-inverse-cocycle");
    expect(r, rmin && rmin->lower <= 1.0 + 1e-9 && rmin->upper >= 1.0 - 1e-9,
           std::string("inverse-cocycle bracket contains 1") +
               (rmin ? " (got [" + num(rmin->lower) + ", " + num(rmin->upper) + "])"
                     : " (entry missing)"));
    if (rho) r.detail.push_back("spectral radius bracket [" + num(rho->lower) + ", " +
                                num(rho->upper) + "], inner [" +
                                (rmin ? num(rmin->lower) + ", " + num(rmin->upper)
                                      : std::string("-")) +
                                "]");
}

void crit_independent_circle(CriterionResult& r) {
    Map2 f{irr_rotation(GOLDEN_ANGLE, Relation{RelationKind::Independent, 0, 0}),
           irr_rotation(TAU * (std::sqrt(2.0) - 1.0)), false};
    WeightPoly w = parse_weight("2 + z1*z2");
    SpectrumReport rep = compute_report(f, w, {});
    expect(r, rep.sigma.exactness == Exactness::Exact, "sigma exact");
    for (const SpectralRegion* reg :
         {&rep.sigma, &rep.sigma_ap, &rep.sigma_usf, &rep.sigma_lsf})
        expect(r, radial_is(*reg, 2.0, 2.0), "all four spectra are the circle r = 2");
    const OracleRecordEntry* q = find_entry(rep, "outer-radius-vs-measure-max");
    expect(r, q && std::abs(q->upper - 2.0) <= 1e-3,
           std::string("Lebesgue quadrature within 1e-3 of 2") +
               (q ? " (got " + num(q->upper) + ")" : " (entry missing)"));
    expect(r, q && q->agree, "quadrature agrees with the closed form");
}

void crit_periodic_root_image(CriterionResult& r) {
    Map2 f{rat_rotation(1, 2), rat_rotation(1, 2), false};
    WeightPoly w = parse_weight("z1");
    SpectrumReport rep = compute_report(f, w, {});
    expect(r, rep.case_tag == "EE-rat-rat m=2", "case tag EE-rat-rat m=2");
    expect(r, radial_is(rep.sigma, 0.0, 1.0), "sigma has radial bounds (0, 1)");
    expect(r, radial_is(rep.sigma_ap, 1.0, 1.0), "sigma_ap has radial bounds (1, 1)");
    expect(r,
           !rep.sigma.primitives.empty() &&
               std::holds_alternative<RootImage>(rep.sigma.primitives[0]),
           "sigma is a root-image region");
    int bad_in = 0, bad_out = 0;
    for (int i = 0; i < 25; ++i) {
        double rad = 0.15 + 0.2 * (i % 5);
        double ph = TAU * std::fmod(GOLDEN_TURN * (i + 1), 1.0);
        MembershipResult mr = ap_membership_test(std::polar(rad, ph), w, f, 64, 64);
        if (mr.certified_out) ++bad_in;
    }
    for (int i = 0; i < 9; ++i) {
        double rad = 1.1 + 0.2 * (i % 3);
        double ph = TAU * std::fmod(GOLDEN_TURN * (i + 7), 1.0);
        MembershipResult mr = ap_membership_test(std::polar(rad, ph), w, f, 64, 64);
        if (!mr.certified_out) ++bad_out;
    }
    expect(r, bad_in == 0, "no certified exclusion among 25 probes inside the disc (" +
                               std::to_string(bad_in) + " excluded)");
    expect(r, bad_out == 0, "all probes with |lambda| >= 1.1 certified out (" +
                                std::to_string(bad_out) + " not excluded)");
}

void crit_slice_branches(CriterionResult& r) {
    // branch 1: profile constant 3, oracle agrees
    {
        Map2 f{rat_rotation(0, 1), irr_rotation(GOLDEN_ANGLE), false};
        SpectrumReport rep = compute_report(f, parse_weight("3 + z2"), {});
        for (const SpectralRegion* reg :
             {&rep.sigma, &rep.sigma_ap, &rep.sigma_usf, &rep.sigma_lsf})
            expect(r, radial_is(*reg, 3.0, 3.0), "w = 3 + z2 gives the circle r = 3");
        const OracleRecordEntry* rho = find_entry(rep, "outer-radius-vs-cocycle-norm");
        expect(r, rho && rho->agree, "w = 3 + z2: cocycle oracle within 5%");
        const OracleRecordEntry* q = find_entry(rep, "outer-radius-vs-measure-max");
        expect(r, q && q->agree, "w = 3 + z2: slice quadrature within bounds");
    }
    // branch 2: engineered interior slice zero; the closed form and the
    // ergodic oracle genuinely part ways here
    Map2 f{irr_rotation(GOLDEN_ANGLE), rat_rotation(0, 1), false};
    SpectrumReport rep = compute_report(f, parse_weight("z1 - 0.5"), {});
    expect(r, rep.case_tag == "EE-rat-irr p=1 (swapped)",
           "case tag EE-rat-irr p=1 (swapped), got " + rep.case_tag);
    expect(r, radial_is(rep.sigma_ap, 0.5, 0.5), "sigma_ap is the circle r = 1/2");
    expect(r, radial_is(rep.sigma, 0.0, 0.5), "sigma is the disc of radius 1/2");
    const OracleRecordEntry* rho = find_entry(rep, "outer-radius-vs-cocycle-norm");
    const OracleRecordEntry* probes =
        find_entry(rep, "ap-probe-exclusions-inside-exact-region");
    bool oracle_agrees = rho && rho->agree;
    bool structural = r.pass;
    if (!oracle_agrees) {
        r.pass = false;
        if (structural) {
            r.expected_failure = true;
            r.detail.push_back(
                "expected failure: oracle radii are NOT within 5% on w = z1 - 0.5");
            if (rho)
                r.detail.push_back("closed-form outer radius 0.5; cocycle bracket [" +
                                   num(rho->lower) + ", " + num(rho->upper) + "]");
            if (probes && !probes->agree)
                r.detail.push_back(
                    "membership oracle certifies exclusion inside the claimed circle "
                    "(" + num(probes->upper) + " probe violations)");
            r.detail.push_back(
                "cause: the slice formula evaluates the weight at the disc centre, "
                "but the slice factor z - 1/2 has its zero inside the disc, so the "
                "boundary average (= its Mahler measure, 1) exceeds the centre "
                "value 1/2; the ergodic oracle sees the boundary average");
        }
    } else {
        r.detail.push_back(
            "warning: expected a closed-form/oracle disagreement on the interior-"
            "zero weight and saw none");
    }
}

void crit_hyperbolic_slate(CriterionResult& r) {
    WeightPoly w = parse_weight("z2 + 3");
    Map2 f1{irr_rotation(GOLDEN_ANGLE), mobius_hyperbolic(0.5), false};
    ReportOptions quiet;
    quiet.run_oracle = false;
    SpectrumReport rep = compute_report(f1, w, quiet);
    expect(r, single_annulus(rep.sigma, 2.0, 4.0), "sigma = annulus(2, 4)");
    expect(r, single_annulus(rep.sigma_usf, 2.0, 4.0),
           "sigma_usf = annulus(2, 4) when the attracting fixed point is +1");
    expect(r, rep.sigma_usf.exactness == Exactness::Exact, "sigma_usf exact");

    Map2 f2{irr_rotation(GOLDEN_ANGLE), mobius_hyperbolic(-0.5), false};
    SpectrumReport rep2 = compute_report(f2, w, quiet);
    std::vector<double> radii = circle_radii(rep2.sigma_usf);
    expect(r,
           rep2.sigma_usf.primitives.size() == 2 && radii.size() == 2 &&
               std::abs(radii[0] - 2.0) <= 1e-9 && std::abs(radii[1] - 4.0) <= 1e-9,
           "reversed attraction flips sigma_usf to circle(2) + circle(4)");

    AttractorData ad;
    ad.rho_k1 = ad.rho_min_k1 = 4.0;
    ad.rho_k2 = ad.rho_min_k2 = 2.0;
    ad.zero_orbit_finite = true;
    std::vector<AttractorInclusion> inc = attractor_inclusions(ad);
    bool found = false;
    for (const AttractorInclusion& i : inc) {
        if (i.target == SfTarget::Lsf) continue;
        auto [lo, hi] = radial_bounds(i.region);
        if (std::abs(lo - 2.0) <= 1e-9 && std::abs(hi - 4.0) <= 1e-9) found = true;
    }
    expect(r, found, "point radii 4 > 2 reproduce annulus(2, 4) inside sigma_usf");
    auto [ulo, uhi] = radial_bounds(rep.sigma_usf);
    expect(r, ulo <= 2.0 + 1e-9 && uhi >= 4.0 - 1e-9,
           "the inclusion sits inside the reported sigma_usf");
}

void crit_strict_grid(CriterionResult& r) {
    MobiusMap h = mobius_hyperbolic(0.5);
    WeightPoly w = parse_weight("2.5 - z1 - 0.5*z2");
    FixedPointGrid g = fixed_point_grid(h, h, w);
    for (int k = 0; k < 4; ++k)
        expect(r, std::abs(g.value[std::size_t(k)] - double(k + 1)) <= 1e-12,
               "grid modulus " + std::to_string(k + 1) + " certified (got " +
                   num(g.value[std::size_t(k)]) + ")");
    ReportOptions quiet;
    quiet.run_oracle = false;
    SpectrumReport rep = compute_report(Map2{h, h, false}, w, quiet);
    std::vector<double> radii = circle_radii(rep.sigma_usf);
    bool four = radii.size() == 4;
    for (int k = 0; four && k < 4; ++k) four = std::abs(radii[std::size_t(k)] - double(k + 1)) <= 1e-9;
    expect(r, four, "sigma_usf is the four circles r = 1, 2, 3, 4");
    expect(r, rep.sigma_usf.exactness == Exactness::Exact, "sigma_usf exact");
    expect(r, single_annulus(rep.sigma_lsf, 1.0, 4.0), "sigma_lsf = annulus(1, 4)");
    expect(r, rep.sigma_lsf.exactness == Exactness::Exact, "sigma_lsf exact");
    expect(r, single_annulus(rep.sigma, 1.0, 4.0), "sigma = annulus(1, 4)");
}

// ---- criterion 7: property suites -----------------------------------------

struct Suite {
    std::string name;
    long long cases = 0;
    long long failures = 0;
    std::string first_failure;
    double seconds = 0.0;
};

void suite_fail(Suite& s, const std::string& what) {
    if (s.failures == 0) s.first_failure = what;
    ++s.failures;
}

Suite suite_cocycle_identity(std::uint64_t seed) {
    Suite s;
    s.name = "cocycle-identity";
    std::mt19937_64 rng(seed ^ 0xc0c1dull);
    for (int k = 0; k < 1000; ++k) {
        ++s.cases;
        WeightPoly w = random_weight(rng, 2, 4, false);
        MobiusMap f1 = random_rotation(rng), f2 = random_rotation(rng);
        long long m = 1 + pick(rng, 5), n = 1 + pick(rng, 5);
        cplx z1 = random_unit(rng), z2 = random_unit(rng);
        cplx lhs = cocycle_value(w, f1, f2, m + n, z1, z2);
        MobiusMap g1 = iterate(f1, m), g2 = iterate(f2, m);
        cplx rhs = cocycle_value(w, f1, f2, m, z1, z2) *
                   cocycle_value(w, f1, f2, n, g1(z1), g2(z2));
        double err = std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
        if (!(err <= 1e-9))
            suite_fail(s, "case " + std::to_string(k) + ": relative error " + num(err));
    }
    return s;
}

Suite suite_mahler_quadrature(std::uint64_t seed) {
    Suite s;
    s.name = "mahler-vs-quadrature";
    std::mt19937_64 rng(seed ^ 0x3a41e5ull);
    for (int k = 0; k < 1000; ++k) {
        ++s.cases;
        // roots kept away from the circle so 4096 nodes resolve the mean
        int deg = 1 + int(pick(rng, 5));
        std::vector<cplx> coeff{std::polar(uniform(rng, 0.5, 2.0),
                                           uniform(rng, 0.0, TAU))};
        for (int d = 0; d < deg; ++d) {
            double rad = (rng() & 1) ? uniform(rng, 0.05, 0.85) : uniform(rng, 1.18, 2.5);
            cplx root = std::polar(rad, uniform(rng, 0.0, TAU));
            std::vector<cplx> next(coeff.size() + 1, cplx(0.0));
            for (std::size_t i = 0; i < coeff.size(); ++i) {
                next[i + 1] += coeff[i];
                next[i] -= coeff[i] * root;
            }
            coeff = std::move(next);
        }
        Poly1 p{coeff};
        double m1 = mahler_measure(p);
        double m2 = std::exp(circle_log_abs_mean(p, 4096));
        double err = std::abs(m1 - m2) / std::max(m1, 1e-12);
        if (!(err <= 1e-6))
            suite_fail(s, "case " + std::to_string(k) + ": relative gap " + num(err));
    }
    return s;
}

Suite suite_subdivision_soundness(std::uint64_t seed) {
    Suite s;
    s.name = "subdivision-soundness";
    std::mt19937_64 rng(seed ^ 0x5d1ull);
    for (int k = 0; k < 1000; ++k) {
        ++s.cases;
        WeightPoly w = random_weight(rng, 2, 5, false);
        Domain dom = (k & 1) ? Domain::Bidisc : Domain::Torus2;
        // brackets stay valid at any cell budget; keep it small so zero-heavy
        // weights do not grind toward an unreachable relative gap
        OptimizeOptions oo{1e-3, 20000, 1e-12};
        BoundResult mn = certified_min_modulus(w, dom, oo);
        BoundResult mx = certified_max_modulus_torus(w, oo);
        bool ok = true;
        for (int j = 0; j < 64 && ok; ++j) {
            cplx a = random_unit(rng), b = random_unit(rng);
            if (dom == Domain::Bidisc) {
                a *= std::sqrt(uniform(rng, 0.0, 1.0));
                b *= std::sqrt(uniform(rng, 0.0, 1.0));
            }
            double v = std::abs(w(a, b));
            if (v < mn.lower - 1e-9) ok = false;
            if (dom == Domain::Torus2 && v > mx.upper + 1e-9) ok = false;
        }
        if (!ok) suite_fail(s, "case " + std::to_string(k) + ": sampled value escaped a certified bound");
    }
    return s;
}

Suite suite_containment_chain(std::uint64_t seed) {
    Suite s;
    s.name = "containment-chain";
    std::mt19937_64 rng(seed ^ 0xc4a1ull);
    ReportOptions opts;
    opts.run_oracle = false;
    opts.oracle = OracleOptions{16, 32, 8, 512, 512, 1e-6, 0};
    opts.optimize = OptimizeOptions{1e-3, 30000, 1e-12};
    long long attempts = 0;
    while (s.cases < 1000 && attempts < 30000) {
        ++attempts;
        int kind = int(pick(rng, 13));
        Map2 f = random_case_map(rng, kind);
        WeightPoly w = random_weight(rng, 2, 4, true);
        SpectrumReport rep;
        try {
            rep = compute_report(f, w, opts);
        } catch (const unsupported_case&) {
            continue;
        } catch (const inconclusive_invertibility&) {
            continue;
        }
        ++s.cases;
        bool note_clean = true;
        for (const std::string& n : rep.notes)
            if (n.find("containment check failed") != std::string::npos)
                note_clean = false;
        auto inside = [](const SpectralRegion& part, const SpectralRegion& whole) {
            if (part.primitives.empty() || whole.primitives.empty()) return true;
            auto [pi, po] = radial_bounds(part);
            auto [wi, wo] = radial_bounds(whole);
            return pi >= wi - 1e-9 && po <= wo + 1e-9;
        };
        bool chain = inside(rep.sigma_ap, rep.sigma) &&
                     inside(rep.sigma_usf, rep.sigma_ap) &&
                     inside(rep.sigma_lsf, rep.sigma);
        if (!note_clean || !chain)
            suite_fail(s, "kind " + std::to_string(kind) + ": containment violated");
    }
    if (s.cases < 1000) suite_fail(s, "generator exhausted before 1000 valid cases");
    return s;
}

Suite suite_constant_collapse(std::uint64_t seed) {
    Suite s;
    s.name = "constant-weight-collapse";
    std::mt19937_64 rng(seed ^ 0xc011a45eull);
    ReportOptions opts;
    opts.run_oracle = false;
    opts.oracle = OracleOptions{16, 32, 8, 512, 512, 1e-6, 0};
    opts.optimize = OptimizeOptions{1e-3, 30000, 1e-12};
    for (int k = 0; k < 1000; ++k) {
        ++s.cases;
        int kind = k % 13;
        Map2 f = random_case_map(rng, kind);
        cplx c = std::polar(uniform(rng, 0.3, 3.0), uniform(rng, 0.0, TAU));
        SpectrumReport rep;
        try {
            rep = compute_report(f, WeightPoly::constant(c), opts);
        } catch (const error& e) {
            suite_fail(s, "kind " + std::to_string(kind) + ": " + e.what());
            continue;
        }
        double v = std::abs(c);
        bool ok = true;
        for (const SpectralRegion* reg :
             {&rep.sigma, &rep.sigma_ap, &rep.sigma_usf})
            ok = ok && radial_is(*reg, v, v, 1e-9 * (1.0 + v));
        // the one-sided lsf bound selects angles where the attracting profile
        // is strictly below the repelling one; a constant weight selects none
        ok = ok && (rep.sigma_lsf.primitives.empty() ||
                    radial_is(rep.sigma_lsf, v, v, 1e-9 * (1.0 + v)));
        if (!ok)
            suite_fail(s, "kind " + std::to_string(kind) +
                              ": spectra did not collapse to the circle r = " + num(v));
    }
    return s;
}

Suite suite_birkhoff_monotone(std::uint64_t seed) {
    Suite s;
    s.name = "birkhoff-upper-monotone";
    std::mt19937_64 rng(seed ^ 0xb1f4ull);
    for (int k = 0; k < 1000; ++k) {
        ++s.cases;
        WeightPoly w = random_weight(rng, 2, 4, false);
        Map2 f{random_rotation(rng), random_rotation(rng), false};
        OracleEstimate a = birkhoff_radius(w, f, 32, 16);
        OracleEstimate b = birkhoff_radius(w, f, 64, 16);
        bool ok = b.upper <= a.upper * (1.0 + 1e-9) + 1e-12 && a.lower <= a.upper + 1e-12 &&
                  b.lower <= b.upper + 1e-12;
        if (!ok)
            suite_fail(s, "case " + std::to_string(k) + ": upper(64) = " + num(b.upper) +
                              " > upper(32) = " + num(a.upper));
    }
    return s;
}

Suite suite_json_roundtrip(std::uint64_t seed) {
    Suite s;
    s.name = "json-round-trip";
    std::mt19937_64 rng(seed ^ 0x150full);
    auto random_region = [&](SpectralRegion& reg) {
        reg.exactness = static_cast<Exactness>(pick(rng, 4));
        int n = 1 + int(pick(rng, 3));
        for (int i = 0; i < n; ++i) {
            switch (pick(rng, 6)) {
                case 0: reg.primitives.push_back(Disk{uniform(rng, 0.0, 3.0)}); break;
                case 1: reg.primitives.push_back(Circle{uniform(rng, 0.0, 3.0)}); break;
                case 2: {
                    double a = uniform(rng, 0.0, 2.0);
                    reg.primitives.push_back(Annulus{a, a + uniform(rng, 0.0, 1.5)});
                    break;
                }
                case 3: reg.primitives.push_back(PointZero{}); break;
                case 4:
                    reg.primitives.push_back(
                        RootImage{1 + int(pick(rng, 4)),
                                  (rng() & 1) ? Domain::Torus2 : Domain::Bidisc,
                                  random_weight(rng, 2, 3, false)});
                    break;
                default: {
                    ParamAnnulusUnion u;
                    u.selector = (rng() & 1) ? ProfileSelector::AGeqB : ProfileSelector::ALtB;
                    int m = 8 + int(pick(rng, 24));
                    for (int j = 0; j < m; ++j)
                        u.samples.push_back({uniform(rng, 0.0, 2.0), uniform(rng, 0.0, 2.0)});
                    reg.primitives.push_back(std::move(u));
                }
            }
        }
    };
    for (int k = 0; k < 1000; ++k) {
        ++s.cases;
        SpectrumReport rep;
        rep.case_tag = "suite-" + std::to_string(pick(rng, 13));
        random_region(rep.sigma);
        random_region(rep.sigma_ap);
        random_region(rep.sigma_usf);
        random_region(rep.sigma_lsf);
        if (rng() & 1)
            rep.notes.push_back("note-" + std::to_string(pick(rng, 1000)));
        if (rng() & 1) {
            OracleRecordEntry e;
            e.quantity = "entry-" + std::to_string(pick(rng, 100));
            if (rng() & 1) e.closed_form = uniform(rng, 0.0, 4.0);
            e.lower = uniform(rng, 0.0, 2.0);
            e.upper = e.lower + uniform(rng, 0.0, 2.0);
            e.agree = rng() & 1;
            rep.oracle_record.push_back(e);
        }
        nlohmann::json j1 = to_json(rep);
        SpectrumReport back = report_from_json(j1);
        nlohmann::json j2 = to_json(back);
        if (!(j1 == j2 && j1.dump() == j2.dump()))
            suite_fail(s, "case " + std::to_string(k) + ": serialized bytes changed");
    }
    return s;
}

Suite suite_byte_determinism(std::uint64_t seed) {
    Suite s;
    s.name = "byte-determinism";
    std::mt19937_64 rng(seed ^ 0xde7ull);
    ReportOptions quiet;
    quiet.run_oracle = false;
    quiet.optimize = OptimizeOptions{1e-3, 30000, 1e-12};
    quiet.oracle = OracleOptions{16, 16, 8, 256, 256, 1e-6, 0};
    ReportOptions tiny;
    tiny.oracle = OracleOptions{16, 16, 8, 256, 256, 1e-6, 0};
    tiny.optimize = quiet.optimize;
    long long attempts = 0;
    while (s.cases < 1000 && attempts < 30000) {
        ++attempts;
        int kind = int(pick(rng, 13));
        Map2 f = random_case_map(rng, kind);
        WeightPoly w = random_weight(rng, 2, 4, true);
        const ReportOptions& opts = (s.cases % 25 == 24) ? tiny : quiet;
        SpectrumReport a, b;
        try {
            a = compute_report(f, w, opts);
            b = compute_report(f, w, opts);
        } catch (const unsupported_case&) {
            continue;
        } catch (const inconclusive_invertibility&) {
            continue;
        }
        ++s.cases;
        if (to_json(a).dump() != to_json(b).dump() ||
            to_svg(a, 320) != to_svg(b, 320))
            suite_fail(s, "kind " + std::to_string(kind) + ": repeated run changed bytes");
    }
    if (s.cases < 1000) suite_fail(s, "generator exhausted before 1000 valid cases");
    return s;
}

void crit_property_suites(CriterionResult& r, std::uint64_t seed) {
    Suite (*runners[])(std::uint64_t) = {
        suite_cocycle_identity,     suite_mahler_quadrature,
        suite_subdivision_soundness, suite_containment_chain,
        suite_constant_collapse,    suite_birkhoff_monotone,
        suite_json_roundtrip,       suite_byte_determinism,
    };
    for (auto* run : runners) {
        Timer t;
        Suite s = run(seed);
        s.seconds = t.s();
        char buf[32];
        std::snprintf(buf, sizeof buf, " [%.1f s]", s.seconds);
        r.detail.push_back(s.name + ": " + std::to_string(s.cases) + " cases, " +
                           std::to_string(s.failures) + " failures" +
                           (s.failures ? " (" + s.first_failure + ")" : "") + buf);
        expect(r, s.failures == 0, s.name + " has no failures");
    }
}

void crit_invertibility(CriterionResult& r) {
    struct Row {
        const char* text;
        InvertibilityStatus want;
        const char* name;
    } rows[] = {
        {"2 + z1*z2", InvertibilityStatus::InvertibleA2, "invertible on the bidisc"},
        {"z1 - 0.5", InvertibilityStatus::InvertibleCT2Only, "invertible on the torus only"},
        {"z1 - z2", InvertibilityStatus::NotInvertibleCT2, "not invertible on the torus"},
    };
    for (const Row& row : rows) {
        Timer t;
        InvertibilityReport ir = invertibility_status(parse_weight(row.text));
        double dt = t.s();
        expect(r, ir.status == row.want,
               std::string(row.text) + " is " + row.name);
        expect(r, dt < 20.0, std::string(row.text) + " certified in under 20 s (took " +
                                 num(dt) + " s)");
        r.detail.push_back(std::string(row.text) + ": " +
                           (ir.status == row.want ? "as expected" : "WRONG STATUS") +
                           ", " + num(dt) + " s");
    }
}

template <class F>
CriterionResult guarded(int number, const char* title, double limit_s, F&& body) {
    CriterionResult r;
    r.number = number;
    r.title = title;
    r.pass = true;
    Timer t;
    try {
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = t.s();
    if (limit_s > 0.0 && r.seconds >= limit_s) {
        r.pass = false;
        r.detail.push_back("failed: runtime " + num(r.seconds) + " s exceeds " +
                           num(limit_s) + " s");
    }
    return r;
}

struct CriterionSpec {
    int number;
    const char* title;
    double limit_s;
    void (*body)(CriterionResult&, std::uint64_t);
};

const CriterionSpec kCriteria[] = {
    {1, "mixed-relation annulus reproduction (w = 2 + z1*z2)", 60.0,
     [](CriterionResult& r, std::uint64_t) { crit_example_annulus(r); }},
    {2, "independent pair exact circle + Lebesgue quadrature", 30.0,
     [](CriterionResult& r, std::uint64_t) { crit_independent_circle(r); }},
    {3, "period-2 rotations: root image and membership probes", 0.0,
     [](CriterionResult& r, std::uint64_t) { crit_periodic_root_image(r); }},
    {4, "rational/irrational slice branches (one engineered miss)", 0.0,
     [](CriterionResult& r, std::uint64_t) { crit_slice_branches(r); }},
    {5, "hyperbolic slate: branch flip and attractor inclusions", 0.0,
     [](CriterionResult& r, std::uint64_t) { crit_hyperbolic_slate(r); }},
    {6, "strictly ordered fixed-point grid (four circles)", 0.0,
     [](CriterionResult& r, std::uint64_t) { crit_strict_grid(r); }},
    {7, "property suites (8 x 1000 cases)", 0.0,
     [](CriterionResult& r, std::uint64_t seed) { crit_property_suites(r, seed); }},
    {8, "invertibility trichotomy certified", 60.0,
     [](CriterionResult& r, std::uint64_t) { crit_invertibility(r); }},
};

CriterionResult run_one(const CriterionSpec& spec, std::uint64_t seed) {
    return guarded(spec.number, spec.title, spec.limit_s,
                   [&](CriterionResult& r) { spec.body(r, seed); });
}

void print_one(std::ostream& out, const CriterionResult& r) {
    const char* status = r.pass ? "PASS" : (r.expected_failure ? "FAIL (expected)" : "FAIL");
    char line[160];
    std::snprintf(line, sizeof line, "[%d/8] %-15s %s  (%.1f s)", r.number, status,
                  r.title.c_str(), r.seconds);
    out << line << "\n";
    for (const std::string& d : r.detail) out << "      " << d << "\n";
    out.flush();
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (const CriterionSpec& spec : kCriteria) out.push_back(run_one(spec, seed));
    return out;
}

int print_acceptance(std::ostream& out, std::uint64_t seed) {
    int unexpected = 0, expected = 0, passed = 0;
    // print each criterion as soon as it finishes; the suites run long
    for (const CriterionSpec& spec : kCriteria) {
        CriterionResult r = run_one(spec, seed);
        print_one(out, r);
        if (r.pass)
            ++passed;
        else if (r.expected_failure)
            ++expected;
        else
            ++unexpected;
    }
    out << "acceptance: " << passed << " pass, " << expected << " expected failure"
        << (expected == 1 ? "" : "s") << ", " << unexpected << " unexpected failure"
        << (unexpected == 1 ? "" : "s") << "\n";
    return unexpected;
}

}  // namespace bispec
