#include "bispec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace bispec {

const char* case_kind_name(CaseKind k) {
    switch (k) {
        case CaseKind::EE_RatRat: return "EE-rat-rat";
        case CaseKind::EE_RatIrr: return "EE-rat-irr";
        case CaseKind::EE_IrrIrrGeneric: return "EE-irr-irr-generic";
        case CaseKind::EE_IrrIrrIndependent: return "EE-irr-irr-independent";
        case CaseKind::EE_IrrIrrPositive: return "EE-irr-irr-positive-relation";
        case CaseKind::EE_IrrIrrMixed: return "EE-irr-irr-mixed-relation";
        case CaseKind::ERat_P: return "Erat-P";
        case CaseKind::EIrr_P: return "Eirr-P";
        case CaseKind::P_P: return "P-P";
        case CaseKind::ERat_H: return "Erat-H";
        case CaseKind::EIrr_H: return "Eirr-H";
        case CaseKind::P_H: return "P-H";
        case CaseKind::H_H: return "H-H";
    }
    return "?";
}

std::string case_tag_text(const CaseTag& tag) {
    std::string s = case_kind_name(tag.kind);
    if (tag.m)
        s += " m=" + std::to_string(*tag.m);
    else if (tag.p > 0)
        s += " p=" + std::to_string(tag.p);
    if (tag.crossed)
        s += " (crossed)";
    else if (tag.coordinates_swapped)
        s += " (swapped)";
    return s;
}

namespace {

InvertibilityStatus known_invertibility(const CaseTag& tag) {
    if (tag.invertibility == InvertibilityStatus::Inconclusive)
        throw inconclusive_invertibility(
            "invertibility of the weight was not certified either way");
    return tag.invertibility;
}

void require_monomial_hypothesis(const CaseTag& tag) {
    if (!tag.monomial_hypothesis)
        throw unsupported_case(
            "no closed form here unless the weight is a monomial times a factor "
            "that is nonzero at the origin");
}

// Symbolic cocycles grow degree linearly in the period; refuse blowups.
void require_small_period(long long n, const WeightPoly& w) {
    long long deg = std::max(w.deg1(), w.deg2());
    if (n < 1 || (deg > 0 && n * deg > 512) || n > 1'000'000)
        throw unsupported_case("rotation period " + std::to_string(n) +
                               " is too large for the symbolic cocycle");
}

SpectralRegion make_region(Exactness e, std::vector<RegionPrimitive> prims) {
    SpectralRegion r;
    r.exactness = e;
    r.primitives = std::move(prims);
    canonicalize(r);
    return r;
}

SpectralRegion annulus_region(double lo, double hi, Exactness e) {
    return make_region(e, {Annulus{lo, hi}});
}
SpectralRegion circle_region(double v, Exactness e) {
    return make_region(e, {Circle{v}});
}
SpectralRegion disk_region(double v, Exactness e) {
    return make_region(e, {Disk{v}});
}
SpectralRegion point_zero_region(Exactness e) {
    return make_region(e, {PointZero{}});
}

void emit_all(SpectrumReport& rep, const SpectralRegion& r) {
    rep.sigma = rep.sigma_ap = rep.sigma_usf = rep.sigma_lsf = r;
}

cplx rotation_unit(const MobiusMap& m) {
    return m.angle ? m.angle->unit() : cplx(1.0, 0.0);
}

Poly1 poly1_mul(const Poly1& x, const Poly1& y) {
    if (x.c.empty() || y.c.empty()) return {};
    std::vector<cplx> out(x.c.size() + y.c.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < x.c.size(); ++i)
        for (std::size_t j = 0; j < y.c.size(); ++j) out[i + j] += x.c[i] * y.c[j];
    return Poly1{std::move(out)};
}

Poly1 poly1_rotate(const Poly1& x, cplx r) {
    Poly1 out = x;
    cplx f{1.0, 0.0};
    for (cplx& cj : out.c) {
        cj *= f;
        f *= r;
    }
    return out;
}

// prod_{k<p} w(a1^k s, zeta) as a polynomial in s: the weight accumulated
// along the rotation orbit over the invariant circle {z2 = zeta}.
Poly1 slice_cocycle(const WeightPoly& w, cplx zeta, cplx alpha1, long long p) {
    Poly1 u = w.restrict_z2(zeta);
    Poly1 q{{cplx(1.0, 0.0)}};
    cplx rot{1.0, 0.0};
    for (long long k = 0; k < p; ++k) {
        q = poly1_mul(q, poly1_rotate(u, rot));
        rot *= alpha1;
    }
    return q;
}

double poly1_scale(const Poly1& p) {
    double s = 0.0;
    for (const cplx& c : p.c) s += std::abs(c);
    return std::max(1.0, s);
}

// Certified circle extrema of |q|^{1/p}; zero polynomial and zero hits
// collapse the minimum to 0 exactly.
struct SliceRange {
    double lo = 0.0, hi = 0.0;
    bool zero_poly = false;
};

SliceRange slice_range(const Poly1& q, long long p, const OptimizeOptions& opts = {}) {
    SliceRange out;
    if (q.is_zero(1e-14 * poly1_scale(q))) {
        out.zero_poly = true;
        return out;
    }
    Bound1Result mn = certified_min_modulus_circle(q, opts);
    Bound1Result mx = certified_max_modulus_circle(q, opts);
    double ip = 1.0 / double(p);
    out.lo = mn.zero_found ? 0.0 : std::pow(0.5 * (mn.lower + mn.upper), ip);
    out.hi = std::pow(0.5 * (mx.lower + mx.upper), ip);
    if (out.lo > out.hi) out.lo = out.hi;
    return out;
}

// Point spectra at a single boundary fixed pair: circle when invertible,
// filled otherwise.
SpectrumReport point_core(double v, InvertibilityStatus inv) {
    SpectrumReport rep;
    switch (inv) {
        case InvertibilityStatus::InvertibleA2:
            emit_all(rep, circle_region(v, Exactness::Exact));
            break;
        case InvertibilityStatus::InvertibleCT2Only:
            rep.sigma = rep.sigma_lsf = disk_region(v, Exactness::Exact);
            rep.sigma_ap = rep.sigma_usf = circle_region(v, Exactness::Exact);
            break;
        case InvertibilityStatus::NotInvertibleCT2:
            emit_all(rep, disk_region(v, Exactness::Exact));
            break;
        case InvertibilityStatus::Inconclusive:
            throw inconclusive_invertibility(
                "invertibility of the weight was not certified either way");
    }
    return rep;
}

// Shared shape of the annulus cases: the three invertibility outcomes with
// given inner/outer radii and exactness grade.
SpectrumReport annulus_core(double r, double R, InvertibilityStatus inv, Exactness e) {
    SpectrumReport rep;
    switch (inv) {
        case InvertibilityStatus::InvertibleA2:
            emit_all(rep, annulus_region(r, R, e));
            break;
        case InvertibilityStatus::InvertibleCT2Only:
            rep.sigma = rep.sigma_lsf = disk_region(R, e);
            rep.sigma_ap = rep.sigma_usf = annulus_region(r, R, e);
            break;
        case InvertibilityStatus::NotInvertibleCT2:
            emit_all(rep, disk_region(R, e));
            break;
        case InvertibilityStatus::Inconclusive:
            throw inconclusive_invertibility(
                "invertibility of the weight was not certified either way");
    }
    return rep;
}

// Oracle radii shared by the no-closed-form engines: quadrature extrema over
// the enumerated invariant families, clamped into the certified brackets.
struct OracleRadii {
    double inner = 0.0, outer = 0.0;
};

OracleRadii oracle_radial_estimate(const CaseTag& tag, const WeightPoly& w,
                                   const Map2& f, const OracleOptions& opts) {
    OracleEstimate rho = birkhoff_radius(w, f, opts.n_max, opts.grid);
    OracleEstimate rmin = rho_min_estimate(w, f, opts.n_max, opts.grid);
    OracleRadii out;
    out.outer = rho.upper;
    out.inner = rmin.lower;
    std::vector<MeasureFamily> fams = enumerate_measures(tag, f, opts);
    if (!fams.empty()) {
        double qmax = 0.0, qmin = std::numeric_limits<double>::infinity();
        for (const MeasureFamily& fam : fams) {
            double q = measure_quadrature(w, fam);
            qmax = std::max(qmax, q);
            qmin = std::min(qmin, q);
        }
        out.outer = std::clamp(qmax, rho.lower, rho.upper);
        out.inner = std::clamp(qmin, rmin.lower, rmin.upper);
    }
    out.inner = std::min(out.inner, out.outer);
    return out;
}

// Two-fixed-point shape shared by the irrational x hyperbolic and parabolic
// x hyperbolic engines: va at the attracting fixed point, vb at the
// repelling one. Ties take the annulus branch.
SpectrumReport two_point_core(double va, double vb, InvertibilityStatus inv) {
    double r = std::min(va, vb), R = std::max(va, vb);
    SpectrumReport rep;
    auto circles = [&](Exactness e) {
        return make_region(e, {Circle{r}, Circle{R}});
    };
    switch (inv) {
        case InvertibilityStatus::InvertibleA2:
            rep.sigma = annulus_region(r, R, Exactness::Exact);
            rep.sigma_ap = rep.sigma;
            rep.sigma_usf = vb <= va ? annulus_region(r, R, Exactness::Exact)
                                     : circles(Exactness::Exact);
            rep.sigma_lsf = va <= vb ? annulus_region(r, R, Exactness::SubsetOfTruth)
                                     : circles(Exactness::SubsetOfTruth);
            break;
        case InvertibilityStatus::InvertibleCT2Only:
            rep.sigma = disk_region(R, Exactness::Exact);
            rep.sigma_ap = annulus_region(r, R, Exactness::Exact);
            rep.sigma_usf = vb <= va ? annulus_region(r, R, Exactness::Exact)
                                     : circles(Exactness::Exact);
            rep.sigma_lsf =
                va <= vb ? disk_region(R, Exactness::SubsetOfTruth)
                         : make_region(Exactness::SubsetOfTruth, {Disk{r}, Circle{R}});
            break;
        case InvertibilityStatus::NotInvertibleCT2:
            rep.sigma = disk_region(R, Exactness::Exact);
            rep.sigma_ap = rep.sigma;
            if (vb <= va) {
                rep.sigma_usf = disk_region(R, Exactness::Exact);
                rep.sigma_lsf =
                    make_region(Exactness::SubsetOfTruth, {Disk{r}, Circle{R}});
            } else {
                // role reversal: the attracting value is the small one, so the
                // surjectivity side carries the full disc and both are exact
                rep.sigma_lsf = disk_region(R, Exactness::Exact);
                rep.sigma_usf = make_region(Exactness::Exact, {Disk{r}, Circle{R}});
            }
            break;
        case InvertibilityStatus::Inconclusive:
            throw inconclusive_invertibility(
                "invertibility of the weight was not certified either way");
    }
    return rep;
}

SpectrumReport hyp_hyp_core(const std::array<double, 4>& v, InvertibilityStatus inv,
                            const AttractorData& ad) {
    double r = *std::min_element(v.begin(), v.end());
    double R = *std::max_element(v.begin(), v.end());
    SpectrumReport rep;
    if (inv == InvertibilityStatus::Inconclusive)
        throw inconclusive_invertibility(
            "invertibility of the weight was not certified either way");
    rep.sigma = inv == InvertibilityStatus::InvertibleA2
                    ? annulus_region(r, R, Exactness::Exact)
                    : disk_region(R, Exactness::Exact);
    bool strict = inv == InvertibilityStatus::InvertibleA2 && v[0] < v[1] &&
                  v[1] < v[2] && v[2] < v[3];
    if (strict) {
        // heteroclinic transport between the fixed pairs blocks approximate
        // eigenvalues off the four circles, and the gaps carry index zero
        rep.sigma_lsf = annulus_region(r, R, Exactness::Exact);
        rep.sigma_usf = make_region(
            Exactness::Exact, {Circle{v[0]}, Circle{v[1]}, Circle{v[2]}, Circle{v[3]}});
        rep.sigma_ap = rep.sigma_usf;
        return rep;
    }
    std::vector<RegionPrimitive> usf, lsf;
    for (const AttractorInclusion& inc : attractor_inclusions(ad)) {
        for (const RegionPrimitive& pr : inc.region.primitives) {
            if (inc.target != SfTarget::Lsf) usf.push_back(pr);
            if (inc.target != SfTarget::Usf) lsf.push_back(pr);
        }
    }
    rep.sigma_usf = make_region(Exactness::SubsetOfTruth, std::move(usf));
    rep.sigma_lsf = make_region(Exactness::SubsetOfTruth, std::move(lsf));
    rep.sigma_ap = rep.sigma;
    return rep;
}

bool near_pair(const kernels::Point2& a, const kernels::Point2& b) {
    return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) < 1e-6;
}

}  // namespace

CaseTag classify_case(const MobiusMap& phi, const MobiusMap& psi, const WeightPoly& w,
                      const OptimizeOptions& opts) {
    Classification c1 = classify(phi), c2 = classify(psi);
    auto rotation_form = [](const MobiusMap& m, const Classification& c) {
        bool elliptic = c.cls == MapClass::EllipticRational ||
                        c.cls == MapClass::EllipticIrrational;
        if (elliptic && m.source != MapSource::CanonicalRotation)
            throw unsupported_case(
                "elliptic factor must be supplied as a canonical rotation; "
                "conjugate it to rotation form first");
    };
    rotation_form(phi, c1);
    rotation_form(psi, c2);

    auto rank = [](MapClass c) {
        switch (c) {
            case MapClass::EllipticRational: return 0;
            case MapClass::EllipticIrrational: return 1;
            case MapClass::Parabolic: return 2;
            case MapClass::Hyperbolic: return 3;
        }
        return 3;
    };
    CaseTag tag;
    tag.coordinates_swapped = rank(c1.cls) > rank(c2.cls);
    if (tag.coordinates_swapped) std::swap(c1, c2);
    tag.class1 = c1.cls;
    tag.class2 = c2.cls;

    WeightPoly wn = tag.coordinates_swapped ? w.swap_vars() : w;
    tag.invertibility = invertibility_status(wn, opts).status;
    tag.monomial_hypothesis = factor_monomial(wn).origin_nonzero;

    bool e1 = c1.cls == MapClass::EllipticRational || c1.cls == MapClass::EllipticIrrational;
    bool e2 = c2.cls == MapClass::EllipticRational || c2.cls == MapClass::EllipticIrrational;
    if (e1 && e2) {
        if (c1.cls == MapClass::EllipticRational && c2.cls == MapClass::EllipticRational) {
            tag.kind = CaseKind::EE_RatRat;
            tag.p = c1.order;
            tag.m = c1.order / gcd_ll(c1.order, c2.order) * c2.order;
        } else if (c1.cls == MapClass::EllipticRational) {
            tag.kind = CaseKind::EE_RatIrr;
            tag.p = c1.order;
        } else {
            // both irrational: equal rank, so never swapped and any declared
            // relation keeps its (p, q) orientation
            std::optional<Relation> rel = c2.angle.relation;
            if (!rel) rel = c1.angle.relation;
            if (!rel || rel->kind == RelationKind::Unknown) {
                tag.kind = CaseKind::EE_IrrIrrGeneric;
            } else if (rel->kind == RelationKind::Independent) {
                tag.kind = CaseKind::EE_IrrIrrIndependent;
            } else if (rel->kind == RelationKind::Positive) {
                tag.kind = CaseKind::EE_IrrIrrPositive;
            } else {
                tag.kind = CaseKind::EE_IrrIrrMixed;
            }
            if (rel) tag.relation = rel;
        }
    } else if (e1 && c2.cls == MapClass::Parabolic) {
        tag.kind = c1.cls == MapClass::EllipticRational ? CaseKind::ERat_P
                                                        : CaseKind::EIrr_P;
        if (c1.cls == MapClass::EllipticRational) tag.p = c1.order;
    } else if (e1) {
        tag.kind = c1.cls == MapClass::EllipticRational ? CaseKind::ERat_H
                                                        : CaseKind::EIrr_H;
        if (c1.cls == MapClass::EllipticRational) tag.p = c1.order;
    } else if (c1.cls == MapClass::Parabolic) {
        tag.kind = c2.cls == MapClass::Parabolic ? CaseKind::P_P : CaseKind::P_H;
    } else {
        tag.kind = CaseKind::H_H;
    }
    // the closed forms with an irrational rotation against a non-rotation (or
    // a rational one) factor all need the monomial hypothesis; refuse upfront
    // so classification already reports the obstruction
    bool needs_hypothesis =
        tag.kind == CaseKind::EE_RatIrr || tag.kind == CaseKind::EE_IrrIrrIndependent ||
        tag.kind == CaseKind::EE_IrrIrrPositive || tag.kind == CaseKind::EIrr_P ||
        tag.kind == CaseKind::EIrr_H;
    if (needs_hypothesis && !tag.monomial_hypothesis)
        throw unsupported_case(
            std::string(case_kind_name(tag.kind)) +
            ": monomial hypothesis fails: after splitting off the monomial "
            "factor the weight must be nonzero at the origin");
    return tag;
}

HyperbolicProfile hyperbolic_profile(const WeightPoly& w, long long p, cplx alpha1,
                                     cplx zeta1, cplx zeta2, long long samples,
                                     bool want_f, const OptimizeOptions& opts) {
    require_small_period(p, w);
    Poly1 q1 = slice_cocycle(w, zeta1, alpha1, p);
    Poly1 q2 = slice_cocycle(w, zeta2, alpha1, p);
    HyperbolicProfile out;
    long long n = std::max<long long>(8, samples);
    out.a.resize(std::size_t(n));
    out.b.resize(std::size_t(n));
    out.in_e.resize(std::size_t(n));
    out.in_f.assign(std::size_t(n), 0);
    double ip = 1.0 / double(p);
    double wscale = std::max(1.0, w.coeff_abs_sum());
    for (long long k = 0; k < n; ++k) {
        cplx s = std::polar(1.0, TAU * double(k) / double(n));
        std::size_t i = std::size_t(k);
        out.a[i] = std::pow(std::abs(q1.eval(s)), ip);
        out.b[i] = std::pow(std::abs(q2.eval(s)), ip);
        out.in_e[i] = out.a[i] >= out.b[i] ? 1 : 0;
        if (want_f) {
            Poly1 fiber = w.restrict_z1(s);
            if (fiber.is_zero(1e-12 * wscale)) {
                out.in_f[i] = 1;
            } else {
                Bound1Result mz = certified_min_modulus_circle(fiber, opts);
                out.in_f[i] = (mz.zero_found || mz.lower <= 1e-9) ? 1 : 0;
            }
        }
    }
    SliceRange r1 = slice_range(q1, p, opts), r2 = slice_range(q2, p, opts);
    out.r = std::min(r1.lo, r2.lo);
    out.R = std::max(r1.hi, r2.hi);
    // widen to cover the sampled values so the band union sits inside the
    // reported annulus even at the bracket midpoint error scale
    for (std::size_t i = 0; i < out.a.size(); ++i) {
        out.r = std::min({out.r, out.a[i], out.b[i]});
        out.R = std::max({out.R, out.a[i], out.b[i]});
    }
    return out;
}

FixedPointGrid fixed_point_grid(const MobiusMap& phi, const MobiusMap& psi,
                                const WeightPoly& w) {
    FixedPointData f1 = fixed_points(phi), f2 = fixed_points(psi);
    if (f1.points.size() < 2 || f2.points.size() < 2)
        throw error("fixed_point_grid needs two fixed points in each factor");
    const cplx s[2] = {f1.points[0].point, f1.points[1].point};
    const cplx z[2] = {f2.points[0].point, f2.points[1].point};
    FixedPointGrid g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            int k = 2 * i + j;
            g.point[std::size_t(k)] = {s[i], z[j]};
            g.value[std::size_t(k)] = std::abs(w(s[i], z[j]));
        }
    g.r = *std::min_element(g.value.begin(), g.value.end());
    g.R = *std::max_element(g.value.begin(), g.value.end());
    return g;
}

SpectrumReport spectra_rat_rat(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                               const ReportOptions&) {
    long long m = tag.m.value_or(1);
    require_small_period(m, w);
    WeightPoly wm = cocycle_poly(w, rotation_unit(f.first), rotation_unit(f.second), m);
    SpectrumReport rep;
    rep.sigma = make_region(Exactness::Exact,
                            {RootImage{int(m), Domain::Bidisc, wm}});
    rep.sigma_lsf = rep.sigma;
    rep.sigma_ap = make_region(Exactness::Exact,
                               {RootImage{int(m), Domain::Torus2, wm}});
    rep.sigma_usf = rep.sigma_ap;
    return rep;
}

SpectrumReport spectra_rat_irr(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                               const ReportOptions& opts) {
    require_monomial_hypothesis(tag);
    InvertibilityStatus inv = known_invertibility(tag);
    long long p = std::max<long long>(1, tag.p);
    require_small_period(p, w);
    WeightPoly wp = cocycle_poly(factor_monomial(w).reduced, rotation_unit(f.first),
                                 rotation_unit(f.second), p);
    SliceRange g = slice_range(wp.restrict_z2(cplx(0.0, 0.0)), p, opts.optimize);
    // the reduced cocycle is nonzero at the origin, so the profile polynomial
    // cannot vanish identically
    if (inv == InvertibilityStatus::InvertibleCT2Only)
        return annulus_core(g.lo, g.hi, inv, Exactness::Exact);
    SpectrumReport rep;
    emit_all(rep, annulus_region(g.lo, g.hi, Exactness::Exact));
    return rep;
}

SpectrumReport spectra_irr_generic(const CaseTag& tag, const WeightPoly& w,
                                   const Map2& f, const ReportOptions& opts) {
    InvertibilityStatus inv = known_invertibility(tag);
    OracleRadii est = oracle_radial_estimate(tag, w, f, opts.oracle);
    SpectrumReport rep = annulus_core(est.inner, est.outer, inv,
                                      Exactness::OracleEstimate);
    rep.notes.push_back(
        "radii are numerical estimates; the annulus is reported closed at both "
        "edges although the inner boundary circle need not belong");
    return rep;
}

SpectrumReport spectra_irr_related(const CaseTag& tag, const WeightPoly& w,
                                   const Map2& f, const ReportOptions&) {
    require_monomial_hypothesis(tag);
    InvertibilityStatus inv = known_invertibility(tag);
    long long q = 1;
    if (tag.relation && tag.relation->kind == RelationKind::Positive)
        q = std::max<long long>(1, tag.relation->q);
    require_small_period(q, w);
    WeightPoly wq = cocycle_poly(factor_monomial(w).reduced, rotation_unit(f.first),
                                 rotation_unit(f.second), q);
    double v = std::pow(std::abs(wq(cplx(0.0, 0.0), cplx(0.0, 0.0))), 1.0 / double(q));
    return point_core(v, inv);
}

SpectrumReport spectra_mixed_relation(const CaseTag& tag, const WeightPoly& w,
                                      const Map2& f, const ReportOptions& opts) {
    OracleRadii est = oracle_radial_estimate(tag, w, f, opts.oracle);
    SpectrumReport rep;
    emit_all(rep, annulus_region(est.inner, est.outer, Exactness::OracleEstimate));
    rep.notes.push_back(
        "no closed form available for this relation class; radii are numerical "
        "estimates from the cocycle and quadrature oracles");
    return rep;
}

SpectrumReport spectra_rat_parabolic(const CaseTag& tag, const WeightPoly& w,
                                     const Map2& f, const ReportOptions& opts) {
    InvertibilityStatus inv = known_invertibility(tag);
    long long p = std::max<long long>(1, tag.p);
    require_small_period(p, w);
    cplx zeta = fixed_points(f.second).points.at(0).point;
    SliceRange g = slice_range(slice_cocycle(w, zeta, rotation_unit(f.first), p), p,
                               opts.optimize);
    if (g.zero_poly) {
        SpectrumReport rep;
        emit_all(rep, point_zero_region(Exactness::Exact));
        rep.notes.push_back(
            "weight vanishes identically on the invariant boundary circle");
        return rep;
    }
    return annulus_core(g.lo, g.hi, inv, Exactness::Exact);
}

SpectrumReport spectra_irr_parabolic(const CaseTag& tag, const WeightPoly& w,
                                     const Map2& f, const ReportOptions&) {
    require_monomial_hypothesis(tag);
    InvertibilityStatus inv = known_invertibility(tag);
    cplx zeta = fixed_points(f.second).points.at(0).point;
    double v = std::abs(factor_monomial(w).reduced(cplx(0.0, 0.0), zeta));
    if (inv == InvertibilityStatus::NotInvertibleCT2 &&
        !log_integral_is_finite(w, zeta)) {
        SpectrumReport rep;
        emit_all(rep, point_zero_region(Exactness::Exact));
        rep.notes.push_back(
            "weight vanishes identically on the invariant boundary circle");
        return rep;
    }
    return point_core(v, inv);
}

SpectrumReport spectra_par_par(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                               const ReportOptions&) {
    cplx s = fixed_points(f.first).points.at(0).point;
    cplx z = fixed_points(f.second).points.at(0).point;
    return point_core(std::abs(w(s, z)), known_invertibility(tag));
}

SpectrumReport spectra_rat_hyperbolic(const CaseTag& tag, const WeightPoly& w,
                                      const Map2& f, const ReportOptions& opts) {
    InvertibilityStatus inv = known_invertibility(tag);
    long long p = std::max<long long>(1, tag.p);
    FixedPointData fp = fixed_points(f.second);
    bool want_f = inv == InvertibilityStatus::NotInvertibleCT2;
    HyperbolicProfile hp =
        hyperbolic_profile(w, p, rotation_unit(f.first), fp.points.at(0).point,
                           fp.points.at(1).point, opts.profile_samples, want_f,
                           opts.optimize);
    std::vector<std::array<double, 2>> samples(hp.a.size());
    for (std::size_t i = 0; i < hp.a.size(); ++i) samples[i] = {hp.a[i], hp.b[i]};
    ParamAnnulusUnion usf_bands{ProfileSelector::AGeqB, samples};
    ParamAnnulusUnion lsf_bands{ProfileSelector::ALtB, samples};

    SpectrumReport rep;
    switch (inv) {
        case InvertibilityStatus::InvertibleA2:
            rep.sigma = annulus_region(hp.r, hp.R, Exactness::Exact);
            rep.sigma_ap = rep.sigma;
            rep.sigma_usf = make_region(Exactness::Exact, {usf_bands});
            rep.sigma_lsf = make_region(Exactness::SubsetOfTruth, {lsf_bands});
            break;
        case InvertibilityStatus::InvertibleCT2Only:
            rep.sigma = disk_region(hp.R, Exactness::Exact);
            rep.sigma_ap = annulus_region(hp.r, hp.R, Exactness::Exact);
            rep.sigma_usf = make_region(Exactness::Exact, {usf_bands});
            rep.sigma_lsf =
                make_region(Exactness::SubsetOfTruth, {Disk{hp.r}, lsf_bands});
            break;
        case InvertibilityStatus::NotInvertibleCT2: {
            rep.sigma = disk_region(hp.R, Exactness::Exact);
            rep.sigma_ap = rep.sigma;
            double fa = 0.0, fb = 0.0;
            bool any = false;
            for (std::size_t i = 0; i < hp.in_f.size(); ++i) {
                if (!hp.in_f[i]) continue;
                any = true;
                fa = std::max(fa, hp.a[i]);
                fb = std::max(fb, hp.b[i]);
            }
            std::vector<RegionPrimitive> u{usf_bands}, l{lsf_bands};
            if (any) {
                u.push_back(Disk{fa});
                l.push_back(Disk{fb});
            }
            rep.sigma_usf = make_region(Exactness::Exact, std::move(u));
            rep.sigma_lsf = make_region(Exactness::SubsetOfTruth, std::move(l));
            break;
        }
        case InvertibilityStatus::Inconclusive:
            throw inconclusive_invertibility(
                "invertibility of the weight was not certified either way");
    }
    return rep;
}

SpectrumReport spectra_irr_hyperbolic(const CaseTag& tag, const WeightPoly& w,
                                      const Map2& f, const ReportOptions&) {
    require_monomial_hypothesis(tag);
    InvertibilityStatus inv = known_invertibility(tag);
    FixedPointData fp = fixed_points(f.second);
    WeightPoly red = factor_monomial(w).reduced;
    double va = std::abs(red(cplx(0.0, 0.0), fp.points.at(0).point));
    double vb = std::abs(red(cplx(0.0, 0.0), fp.points.at(1).point));
    return two_point_core(va, vb, inv);
}

SpectrumReport spectra_par_hyperbolic(const CaseTag& tag, const WeightPoly& w,
                                      const Map2& f, const ReportOptions&) {
    InvertibilityStatus inv = known_invertibility(tag);
    cplx s = fixed_points(f.first).points.at(0).point;
    FixedPointData fp = fixed_points(f.second);
    double va = std::abs(w(s, fp.points.at(0).point));
    double vb = std::abs(w(s, fp.points.at(1).point));
    return two_point_core(va, vb, inv);
}

SpectrumReport spectra_hyp_hyp(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                               const ReportOptions&) {
    InvertibilityStatus inv = known_invertibility(tag);
    FixedPointGrid g = fixed_point_grid(f.first, f.second, w);
    AttractorData ad;
    ad.rho_k1 = ad.rho_min_k1 = g.value[0];
    ad.rho_k2 = ad.rho_min_k2 = g.value[3];
    ad.zero_orbit_finite =
        *std::min_element(g.value.begin(), g.value.end()) > 0.0;
    if (inv == InvertibilityStatus::NotInvertibleCT2) {
        ZeroWitness zw = find_torus_zero(w);
        if (zw.found) {
            bool pinned = false;
            for (const kernels::Point2& q : g.point) pinned = pinned || near_pair(zw.z, q);
            ad.wandering_zero = !pinned;
        }
    }
    return hyp_hyp_core(g.value, inv, ad);
}

CrossedReduction reduce_crossed(const Map2& f, const WeightPoly& w) {
    if (!f.swapped) throw error("reduce_crossed: map is not in swap form");
    CrossedReduction out;
    out.square = f.diagonal_square();
    out.weight2 = [w, f](const kernels::Point2& z) {
        kernels::Point2 fz = f(z);
        return w(z[0], z[1]) * w(fz[0], fz[1]);
    };
    return out;
}

SpectralRegion radial_sqrt(const SpectralRegion& squared) {
    SpectralRegion out;
    out.exactness = squared.exactness == Exactness::Exact ? Exactness::Exact
                                                          : Exactness::OracleEstimate;
    for (const RegionPrimitive& pr : squared.primitives) {
        if (const auto* d = std::get_if<Disk>(&pr)) {
            out.primitives.push_back(Disk{std::sqrt(d->R)});
        } else if (const auto* c = std::get_if<Circle>(&pr)) {
            out.primitives.push_back(Circle{std::sqrt(c->r)});
        } else if (const auto* a = std::get_if<Annulus>(&pr)) {
            out.primitives.push_back(Annulus{std::sqrt(a->r), std::sqrt(a->R)});
        } else if (std::holds_alternative<PointZero>(pr)) {
            out.primitives.push_back(PointZero{});
        } else if (const auto* u = std::get_if<ParamAnnulusUnion>(&pr)) {
            ParamAnnulusUnion v = *u;
            for (std::array<double, 2>& s : v.samples) {
                s[0] = std::sqrt(s[0]);
                s[1] = std::sqrt(s[1]);
            }
            out.primitives.push_back(std::move(v));
        } else {
            throw unsupported_case(
                "square-root reduction needs rotation-invariant radial regions");
        }
    }
    canonicalize(out);
    return out;
}

namespace {

SpectrumReport dispatch_engine(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                               const ReportOptions& opts) {
    switch (tag.kind) {
        case CaseKind::EE_RatRat: return spectra_rat_rat(tag, w, f, opts);
        case CaseKind::EE_RatIrr: return spectra_rat_irr(tag, w, f, opts);
        case CaseKind::EE_IrrIrrGeneric: return spectra_irr_generic(tag, w, f, opts);
        case CaseKind::EE_IrrIrrIndependent:
        case CaseKind::EE_IrrIrrPositive: return spectra_irr_related(tag, w, f, opts);
        case CaseKind::EE_IrrIrrMixed: return spectra_mixed_relation(tag, w, f, opts);
        case CaseKind::ERat_P: return spectra_rat_parabolic(tag, w, f, opts);
        case CaseKind::EIrr_P: return spectra_irr_parabolic(tag, w, f, opts);
        case CaseKind::P_P: return spectra_par_par(tag, w, f, opts);
        case CaseKind::ERat_H: return spectra_rat_hyperbolic(tag, w, f, opts);
        case CaseKind::EIrr_H: return spectra_irr_hyperbolic(tag, w, f, opts);
        case CaseKind::P_H: return spectra_par_hyperbolic(tag, w, f, opts);
        case CaseKind::H_H: return spectra_hyp_hyp(tag, w, f, opts);
    }
    throw error("dispatch_engine: unhandled case kind");
}

// Radial necessary conditions for the containment chain: sigma_usf inside
// sigma_ap inside sigma, and sigma_lsf inside sigma. Violations become
// report notes so tests and the CLI can surface them.
void validate_containment(SpectrumReport& rep, const OptimizeOptions& budget) {
    auto bounds = [&](const SpectralRegion& r) { return radial_bounds(r, budget); };
    auto inside = [&](const SpectralRegion& part, const SpectralRegion& whole) {
        if (part.primitives.empty() || whole.primitives.empty()) return true;
        auto [pi, po] = bounds(part);
        auto [wi, wo] = bounds(whole);
        return pi >= wi - 1e-9 && po <= wo + 1e-9;
    };
    if (!inside(rep.sigma_ap, rep.sigma))
        rep.notes.push_back(
            "internal radial containment check failed: approximate point "
            "spectrum exceeds the spectrum");
    if (!inside(rep.sigma_usf, rep.sigma_ap))
        rep.notes.push_back(
            "internal radial containment check failed: upper semi-Fredholm "
            "spectrum exceeds the approximate point spectrum");
    if (!inside(rep.sigma_lsf, rep.sigma))
        rep.notes.push_back(
            "internal radial containment check failed: lower semi-Fredholm "
            "spectrum exceeds the spectrum");
}

void finalize_report(SpectrumReport& rep, const CaseTag& tag, const WeightPoly& w,
                     const Map2& f, const ReportOptions& opts) {
    rep.case_tag = case_tag_text(tag);
    validate_containment(rep, opts.optimize);
    if (opts.run_oracle)
        rep.oracle_record = cross_check(rep, w, f, tag, opts.oracle, opts.optimize);
}

// Composing two canonical parabolics with one shared fixed point lands the
// float trace exactly on the parabolic boundary, where classify() refuses raw
// matrices; the class and the fixed point are known symbolically here.
bool shared_parabolic_pair(const Map2& f) {
    if (f.first.source != MapSource::CanonicalParabolic ||
        f.second.source != MapSource::CanonicalParabolic)
        return false;
    FixedPointData a = fixed_points(f.first);
    FixedPointData b = fixed_points(f.second);
    return std::abs(a.points.at(0).point - b.points.at(0).point) < 1e-12;
}

SpectrumReport crossed_report(const Map2& f, const WeightPoly& w,
                              const ReportOptions& opts) {
    CaseTag tag = classify_input(f, w, opts.optimize);
    InvertibilityStatus inv = known_invertibility(tag);
    CrossedReduction red = reduce_crossed(f, w);

    FixedPointData fp = shared_parabolic_pair(f) ? fixed_points(f.first)
                                                 : fixed_points(red.square.first);
    SpectrumReport rep;
    if (tag.kind == CaseKind::P_P) {
        cplx s = fp.points.at(0).point;
        rep = point_core(std::abs(red.weight2({s, f.second(s)})), inv);
    } else {
        const cplx s0 = fp.points.at(0).point, s1 = fp.points.at(1).point;
        std::array<kernels::Point2, 4> pts = {{{s0, f.second(s0)},
                                               {s0, f.second(s1)},
                                               {s1, f.second(s0)},
                                               {s1, f.second(s1)}}};
        std::array<double, 4> v{};
        for (std::size_t i = 0; i < 4; ++i) v[i] = std::abs(red.weight2(pts[i]));
        AttractorData ad;
        ad.rho_k1 = ad.rho_min_k1 = v[0];
        ad.rho_k2 = ad.rho_min_k2 = v[3];
        ad.zero_orbit_finite = *std::min_element(v.begin(), v.end()) > 0.0;
        if (inv == InvertibilityStatus::NotInvertibleCT2) {
            ZeroWitness zw = find_torus_zero(w);
            if (zw.found) {
                bool pinned = false;
                for (const kernels::Point2& q : pts) pinned = pinned || near_pair(zw.z, q);
                ad.wandering_zero = !pinned;
            }
        }
        rep = hyp_hyp_core(v, inv, ad);
    }
    rep.sigma = radial_sqrt(rep.sigma);
    rep.sigma_ap = radial_sqrt(rep.sigma_ap);
    rep.sigma_usf = radial_sqrt(rep.sigma_usf);
    rep.sigma_lsf = radial_sqrt(rep.sigma_lsf);
    rep.notes.push_back(
        "swap-form input: spectra computed from the coordinatewise square of "
        "the dynamics, then pulled back by the radial square root");
    finalize_report(rep, tag, w, f, opts);
    return rep;
}

}  // namespace

CaseTag classify_input(const Map2& f, const WeightPoly& w,
                       const OptimizeOptions& opts) {
    if (!f.swapped) return classify_case(f.first, f.second, w, opts);
    Map2 sq = f.diagonal_square();
    if (is_identity(sq.first))
        throw unsupported_case(
            "swap-form square is a rotation: the reduced dynamics are periodic "
            "or rotation-like, which this reduction does not cover");
    Classification c;
    try {
        c = classify(sq.first);
    } catch (const missing_angle_spec&) {
        throw unsupported_case(
            "swap-form square is a rotation: the reduced dynamics are periodic "
            "or rotation-like, which this reduction does not cover");
    } catch (const ambiguous_class&) {
        if (!shared_parabolic_pair(f)) throw;
        c.cls = MapClass::Parabolic;
    }
    if (c.cls == MapClass::EllipticRational || c.cls == MapClass::EllipticIrrational)
        throw unsupported_case(
            "swap-form square is a rotation: the reduced dynamics are periodic "
            "or rotation-like, which this reduction does not cover");
    CaseTag tag;
    tag.crossed = true;
    tag.class1 = tag.class2 = c.cls;
    tag.kind = c.cls == MapClass::Parabolic ? CaseKind::P_P : CaseKind::H_H;
    tag.invertibility = invertibility_status(w, opts).status;
    tag.monomial_hypothesis = factor_monomial(w).origin_nonzero;
    return tag;
}

SpectrumReport compute_report(const Map2& f, const WeightPoly& w,
                              const ReportOptions& opts) {
    if (w.is_zero()) throw zero_weight("weight polynomial is identically zero");
    if (f.swapped) return crossed_report(f, w, opts);
    return compute_report(f.first, f.second, w, opts);
}

SpectrumReport compute_report(const MobiusMap& phi, const MobiusMap& psi,
                              const WeightPoly& w, const ReportOptions& opts) {
    if (w.is_zero()) throw zero_weight("weight polynomial is identically zero");
    CaseTag tag = classify_case(phi, psi, w, opts.optimize);
    Map2 g{tag.coordinates_swapped ? psi : phi, tag.coordinates_swapped ? phi : psi,
           false};
    WeightPoly v = tag.coordinates_swapped ? w.swap_vars() : w;
    SpectrumReport rep = dispatch_engine(tag, v, g, opts);
    finalize_report(rep, tag, v, g, opts);
    return rep;
}

}  // namespace bispec
