#include "bispec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bispec {
namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

bool is_pow2(long long n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<ArcBox> initial_boxes(long long grid) {
    std::vector<ArcBox> b;
    b.reserve(std::size_t(grid * grid));
    const double h = TAU / (2.0 * double(grid));
    for (long long i = 0; i < grid; ++i)
        for (long long j = 0; j < grid; ++j)
            b.push_back({TAU * (double(i) + 0.5) / double(grid), h,
                         TAU * (double(j) + 0.5) / double(grid), h});
    return b;
}

std::vector<kernels::Point2> cell_centers(long long grid) {
    std::vector<kernels::Point2> pts;
    pts.reserve(std::size_t(grid * grid));
    for (long long i = 0; i < grid; ++i)
        for (long long j = 0; j < grid; ++j)
            pts.push_back({std::polar(1.0, TAU * (double(i) + 0.5) / double(grid)),
                           std::polar(1.0, TAU * (double(j) + 0.5) / double(grid))});
    return pts;
}

std::string point_label(const char* head, cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s(%.6g%+.6gi)", head, z.real(), z.imag());
    return buf;
}

std::string pair_label(const char* head, cplx z1, cplx z2) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s(%.6g%+.6gi, %.6g%+.6gi)", head, z1.real(),
                  z1.imag(), z2.real(), z2.imag());
    return buf;
}

// lcm of the two rotation orders when the joint dynamics is periodic
std::optional<long long> periodic_order(const Map2& f) {
    if (f.swapped) return std::nullopt;
    if (f.first.source != MapSource::CanonicalRotation ||
        f.second.source != MapSource::CanonicalRotation)
        return std::nullopt;
    if (!f.first.angle || !f.first.angle->rational) return std::nullopt;
    if (!f.second.angle || !f.second.angle->rational) return std::nullopt;
    long long p = f.first.angle->primitive_order();
    long long q = f.second.angle->primitive_order();
    return p / gcd_ll(p, q) * q;
}

}  // namespace

OracleEstimate birkhoff_radius(const WeightPoly& w, const Map2& f, long long n_max,
                               long long grid) {
    if (!is_pow2(n_max)) throw error("birkhoff_radius: n_max must be a power of two");
    if (grid < 16) throw error("birkhoff_radius: grid must be at least 16");
    OracleEstimate est{"spectral-radius", 0.0, 0.0, n_max, grid, false};
    if (w.is_zero()) {
        est.converged = true;
        return est;
    }
    const long long cells = grid * grid;
    std::vector<ArcBox> boxes = initial_boxes(grid);
    std::vector<double> acc(std::size_t(cells), 0.0);
    std::vector<kernels::Point2> pts = cell_centers(grid);
    std::vector<double> pacc(std::size_t(cells), 0.0);
    double upper = INF;
    for (long long n = 1; n <= n_max; ++n) {
        // bound the n-th cocycle factor over each cell's current image box,
        // then advance the box; cells are independent
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long k = 0; k < cells; ++k) {
            acc[std::size_t(k)] += std::log(upper_bound_abs(w, boxes[std::size_t(k)]));
            boxes[std::size_t(k)] = map_arc_box(f, boxes[std::size_t(k)]);
        }
        kernels::add_log_abs(w, pts, pacc);
        apply_map2(f, pts);
        if (is_pow2(n)) {
            double snap = -INF;
            for (long long k = 0; k < cells; ++k)
                snap = std::max(snap, acc[std::size_t(k)] / double(n));
            upper = std::min(upper, std::exp(snap));
        }
    }
    est.upper = upper;
    est.lower = std::exp(kernels::max_element(pacc).value / double(n_max));
    est.lower = std::min(est.lower, est.upper);  // float dust guard
    est.converged = est.upper - est.lower <= 0.05 * std::max(1.0, est.upper);
    return est;
}

OracleEstimate rho_min_estimate(const WeightPoly& w, const Map2& f, long long n_max,
                                long long grid) {
    if (!is_pow2(n_max)) throw error("rho_min_estimate: n_max must be a power of two");
    if (grid < 16) throw error("rho_min_estimate: grid must be at least 16");
    OracleEstimate est{"min-radius", 0.0, 0.0, n_max, grid, false};
    if (w.is_zero()) {
        est.converged = true;
        return est;
    }
    // not invertible on the torus -> 0 by definition; only a certificate of a
    // zero makes that conclusive
    ZeroWitness hunt = find_torus_zero(w);
    if (hunt.found) {
        est.converged = true;
        return est;
    }
    VanishingResult van = certify_nonvanishing(w, Domain::Torus2, {});
    if (van.verdict != Vanishing::ZeroFree) {
        est.converged = van.verdict == Vanishing::ZeroFound;
        return est;
    }
    const Map2 finv = f.inverse();
    const long long cells = grid * grid;
    std::vector<ArcBox> boxes = initial_boxes(grid);
    std::vector<double> acc(std::size_t(cells), 0.0);  // -log of certified lower bounds
    std::vector<kernels::Point2> pts = cell_centers(grid);
    std::vector<double> pacc(std::size_t(cells), 0.0);
    std::vector<double> vals(std::size_t(cells), 0.0);
    double upper_inv = INF;
    for (long long n = 1; n <= n_max; ++n) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long k = 0; k < cells; ++k) {
            boxes[std::size_t(k)] = map_arc_box(finv, boxes[std::size_t(k)]);
            double lb = lower_bound_abs(w, boxes[std::size_t(k)]);
            acc[std::size_t(k)] += lb > 0.0 ? -std::log(lb) : INF;
        }
        apply_map2(finv, pts);
        kernels::abs_values(w, pts, vals);
        for (long long k = 0; k < cells; ++k)
            pacc[std::size_t(k)] -= std::log(vals[std::size_t(k)]);
        if (is_pow2(n)) {
            double snap = -INF;
            for (long long k = 0; k < cells; ++k)
                snap = std::max(snap, acc[std::size_t(k)] / double(n));
            if (snap < INF) upper_inv = std::min(upper_inv, std::exp(snap));
        }
    }
    double lower_inv = std::exp(kernels::max_element(pacc).value / double(n_max));
    est.lower = upper_inv < INF ? 1.0 / upper_inv : 0.0;
    est.upper = lower_inv > 0.0 ? 1.0 / lower_inv : INF;
    est.lower = std::min(est.lower, est.upper);
    est.converged = est.upper - est.lower <= 0.05 * std::max(1.0, est.upper);
    return est;
}

double measure_quadrature(const WeightPoly& w, const MeasureFamily& family) {
    if (family.nodes.empty()) throw error("measure family has no quadrature nodes");
    std::vector<double> vals(family.nodes.size());
    kernels::abs_values(w, family.nodes, vals);
    for (double& v : vals) v = std::log(v);  // exact zeros contribute -inf
    double mean = kernels::chunked_mean(vals);
    if (!(mean > -40.0)) return 0.0;
    return std::exp(mean);
}

namespace {

MeasureFamily torus_lebesgue(long long nodes_target) {
    long long g = std::max<long long>(16, llround(std::sqrt(double(nodes_target))));
    MeasureFamily fam{MeasureFamily::Kind::TorusLebesgue, "torus-lebesgue", {}};
    fam.nodes.reserve(std::size_t(g * g));
    for (long long i = 0; i < g; ++i)
        for (long long j = 0; j < g; ++j)
            fam.nodes.push_back({std::polar(1.0, TAU * double(i) / double(g)),
                                 std::polar(1.0, TAU * double(j) / double(g))});
    return fam;
}

// circle in the first coordinate, the second pinned at zeta
MeasureFamily boundary_circle(cplx zeta, long long nodes) {
    MeasureFamily fam{MeasureFamily::Kind::BoundaryCircleAtFixedPoint,
                      point_label("boundary-circle-at", zeta), {}};
    fam.nodes.reserve(std::size_t(nodes));
    for (long long j = 0; j < nodes; ++j)
        fam.nodes.push_back({std::polar(1.0, TAU * double(j) / double(nodes)), zeta});
    return fam;
}

// finite first-coordinate rotation orbit, the second pinned at zeta
MeasureFamily orbit_atoms_at(cplx base, cplx alpha1, long long p, cplx zeta) {
    MeasureFamily fam{MeasureFamily::Kind::BoundaryCircleAtFixedPoint,
                      pair_label("orbit-atoms-at", base, zeta), {}};
    cplx z = base;
    for (long long k = 0; k < p; ++k) {
        fam.nodes.push_back({z, zeta});
        z *= alpha1;
    }
    return fam;
}

MeasureFamily atom(cplx z1, cplx z2) {
    MeasureFamily fam{MeasureFamily::Kind::FixedPointAtom, pair_label("atom", z1, z2), {}};
    fam.nodes.push_back({z1, z2});
    return fam;
}

// first-coordinate rotation orbit times the full circle in the second
MeasureFamily circle_slice(cplx base, cplx alpha1, long long p, long long nodes_target) {
    MeasureFamily fam{MeasureFamily::Kind::CircleSlice, point_label("circle-slice-at", base),
                      {}};
    long long m2 = std::max<long long>(64, nodes_target / std::max<long long>(1, p));
    cplx z = base;
    for (long long k = 0; k < p; ++k) {
        for (long long j = 0; j < m2; ++j)
            fam.nodes.push_back({z, std::polar(1.0, TAU * double(j) / double(m2))});
        z *= alpha1;
    }
    return fam;
}

// finite joint rotation orbit (both angles rational)
MeasureFamily joint_orbit(const Map2& f, kernels::Point2 base, long long m) {
    MeasureFamily fam{MeasureFamily::Kind::DiagonalOrbit,
                      pair_label("joint-orbit-at", base[0], base[1]), {}};
    kernels::Point2 z = base;
    for (long long k = 0; k < m; ++k) {
        fam.nodes.push_back(z);
        z = f(z);
    }
    return fam;
}

// Winding circles: the orbit closure under a related irrational pair is a
// union of J circles in the direction (q0, +-p0); the map permutes the
// circles cyclically, so quadrature over all of them with equispaced
// parameters is exactly invariant for low harmonics.
MeasureFamily winding_circles(const Map2& f, const Relation& rel, kernels::Point2 base,
                              long long nodes_target) {
    long long g = gcd_ll(rel.p, rel.q);
    long long p0 = rel.p / g, q0 = rel.q / g;
    bool mixed = rel.kind == RelationKind::Mixed;
    cplx a1 = f.first.angle ? f.first.angle->unit() : cplx(1.0);
    cplx a2 = f.second.angle ? f.second.angle->unit() : cplx(1.0);
    // multiplier of z1^p0 z2^{-+q0} along the map; a g-th root of unity under
    // the declared relation, snapped to the nearest exact one
    cplx nu = cpow_int(a1, p0) * (mixed ? cpow_int(a2, q0) : cpow_int(std::conj(a2), q0));
    long long k = llround(double(g) * wrap_angle(std::arg(nu)) / TAU) % g;
    long long comps = g / gcd_ll(k == 0 ? g : k, g);
    long long per = std::max<long long>(64, nodes_target / comps);
    MeasureFamily fam{MeasureFamily::Kind::DiagonalOrbit,
                      pair_label("winding-orbit-at", base[0], base[1]), {}};
    std::vector<kernels::Point2> comp;
    comp.reserve(std::size_t(per));
    for (long long i = 0; i < per; ++i) {
        double t = TAU * double(i) / double(per);
        comp.push_back({base[0] * std::polar(1.0, double(q0) * t),
                        base[1] * std::polar(1.0, (mixed ? -1.0 : 1.0) * double(p0) * t)});
    }
    for (long long j = 0; j < comps; ++j) {
        fam.nodes.insert(fam.nodes.end(), comp.begin(), comp.end());
        apply_map2(f, comp);
    }
    return fam;
}

cplx boundary_fixed(const MobiusMap& m, std::size_t which) {
    FixedPointData fp = fixed_points(m);
    std::size_t seen = 0;
    for (const FixedPoint& p : fp.points) {
        if (p.location != PointLocation::Boundary) continue;
        if (seen == which) return p.point;
        ++seen;
    }
    throw error("factor has no boundary fixed point at the requested index");
}

}  // namespace

std::vector<MeasureFamily> enumerate_measures(const CaseTag& tag, const Map2& f,
                                              const OracleOptions& opts) {
    std::vector<MeasureFamily> fams;
    const long long qn = opts.quadrature_nodes;
    if (tag.crossed && f.swapped) {
        // atoms of a swap-form map sit at its own fixed points (s, f2(s))
        // with s a boundary fixed point of the coordinatewise square
        Map2 sq = f.diagonal_square();
        for (const FixedPoint& q : fixed_points(sq.first).points)
            if (q.location == PointLocation::Boundary)
                fams.push_back(atom(q.point, f.second(q.point)));
        return fams;
    }
    cplx a1 = f.first.angle ? f.first.angle->unit() : cplx(1.0);
    switch (tag.kind) {
        case CaseKind::EE_RatRat: {
            long long m = tag.m.value_or(1);
            for (long long a = 0; a < 16; ++a)
                for (long long b = 0; b < 16; ++b)
                    fams.push_back(joint_orbit(
                        f,
                        {std::polar(1.0, TAU * double(a) / 16.0),
                         std::polar(1.0, TAU * double(b) / 16.0)},
                        m));
            break;
        }
        case CaseKind::EE_RatIrr: {
            long long p = std::max<long long>(1, tag.p);
            for (long long a = 0; a < 64; ++a)
                fams.push_back(
                    circle_slice(std::polar(1.0, TAU * double(a) / 64.0), a1, p, qn));
            break;
        }
        case CaseKind::EE_IrrIrrGeneric:
        case CaseKind::EE_IrrIrrIndependent:
            fams.push_back(torus_lebesgue(qn));
            break;
        case CaseKind::EE_IrrIrrPositive:
        case CaseKind::EE_IrrIrrMixed: {
            fams.push_back(torus_lebesgue(qn));
            Relation rel = tag.relation.value_or(Relation{RelationKind::Positive, 1, 1});
            for (long long a = 0; a < 64; ++a)
                fams.push_back(winding_circles(
                    f, rel, {std::polar(1.0, TAU * double(a) / 64.0), cplx(1.0)},
                    opts.orbit_nodes));
            break;
        }
        case CaseKind::ERat_P:
        case CaseKind::ERat_H: {
            long long p = std::max<long long>(1, tag.p);
            std::size_t nfix = tag.kind == CaseKind::ERat_P ? 1 : 2;
            for (std::size_t i = 0; i < nfix; ++i) {
                cplx zeta = boundary_fixed(f.second, i);
                fams.push_back(boundary_circle(zeta, qn));
                for (long long a = 0; a < 64; ++a)
                    fams.push_back(orbit_atoms_at(std::polar(1.0, TAU * double(a) / 64.0),
                                                  a1, p, zeta));
            }
            break;
        }
        case CaseKind::EIrr_P:
            fams.push_back(boundary_circle(boundary_fixed(f.second, 0), qn));
            break;
        case CaseKind::EIrr_H:
            fams.push_back(boundary_circle(boundary_fixed(f.second, 0), qn));
            fams.push_back(boundary_circle(boundary_fixed(f.second, 1), qn));
            break;
        case CaseKind::P_P:
            fams.push_back(atom(boundary_fixed(f.first, 0), boundary_fixed(f.second, 0)));
            break;
        case CaseKind::P_H:
            fams.push_back(atom(boundary_fixed(f.first, 0), boundary_fixed(f.second, 0)));
            fams.push_back(atom(boundary_fixed(f.first, 0), boundary_fixed(f.second, 1)));
            break;
        case CaseKind::H_H:
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    fams.push_back(
                        atom(boundary_fixed(f.first, i), boundary_fixed(f.second, j)));
            break;
    }
    return fams;
}

CocycleTable::CocycleTable(const WeightPoly& w, const Map2& f, long long horizon,
                           long long grid)
    : grid_(std::max<long long>(8, grid)), horizon_(std::max<long long>(1, horizon)) {
    const long long cells = grid_ * grid_, n_steps = horizon_;
    centers_ = cell_centers(grid_);
    std::vector<ArcBox> init = initial_boxes(grid_);
    fwd_lo_.assign(std::size_t(cells * n_steps), 0.0);
    fwd_hi_.assign(std::size_t(cells * n_steps), 0.0);
    bwd_lo_.assign(std::size_t(cells * n_steps), 0.0);
    bwd_hi_.assign(std::size_t(cells * n_steps), 0.0);
    fwd_val_.assign(std::size_t(cells * n_steps), 0.0);
    bwd_val_.assign(std::size_t(cells * n_steps), 0.0);
    const Map2 finv = f.inverse();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long k = 0; k < cells; ++k) {
        ArcBox fb = init[std::size_t(k)], bb = fb;
        kernels::Point2 fp = centers_[std::size_t(k)], bp = fp;
        double flo = 0.0, fhi = 0.0, blo = 0.0, bhi = 0.0, fv = 0.0, bv = 0.0;
        for (long long n = 1; n <= n_steps; ++n) {
            double ub = upper_bound_abs(w, fb), lb = lower_bound_abs(w, fb);
            fhi += std::log(ub);
            flo += lb > 0.0 ? std::log(lb) : -INF;
            fv += std::log(std::abs(w(fp[0], fp[1])));
            fb = map_arc_box(f, fb);
            fp = f(fp);
            bb = map_arc_box(finv, bb);
            bp = finv(bp);
            double ub2 = upper_bound_abs(w, bb), lb2 = lower_bound_abs(w, bb);
            bhi += std::log(ub2);
            blo += lb2 > 0.0 ? std::log(lb2) : -INF;
            bv += std::log(std::abs(w(bp[0], bp[1])));
            std::size_t at = std::size_t(k * n_steps + n - 1);
            fwd_lo_[at] = flo;
            fwd_hi_[at] = fhi;
            bwd_lo_[at] = blo;
            bwd_hi_[at] = bhi;
            fwd_val_[at] = fv;
            bwd_val_[at] = bv;
        }
    }
}

MembershipResult CocycleTable::ap_probe(double abs_lambda, double slack) const {
    const long long cells = grid_ * grid_, n_steps = horizon_;
    const double la = std::log(std::max(abs_lambda, 1e-300));
    const double sl = std::log1p(slack);
    MembershipResult res;
    bool all_excluded = true;
    double best = -INF;
    std::size_t best_cell = 0;
    for (long long k = 0; k < cells; ++k) {
        bool excluded = false;
        double margin = INF;
        for (long long n = 1; n <= n_steps && !excluded; ++n) {
            std::size_t at = std::size_t(k * n_steps + n - 1);
            double lo_need = double(n) * (la - sl);  // forward magnitudes must reach this
            double hi_cap = double(n) * (la + sl);   // backward magnitudes must stay below
            if (fwd_hi_[at] < lo_need || bwd_lo_[at] > hi_cap) {
                excluded = true;
                break;
            }
            margin = std::min(margin, std::min(fwd_val_[at] - lo_need,
                                               hi_cap - bwd_val_[at]) /
                                          double(n));
        }
        if (excluded) continue;
        all_excluded = false;
        if (margin > best) {
            best = margin;
            best_cell = std::size_t(k);
        }
    }
    res.certified_out = all_excluded;
    if (!all_excluded) {
        res.witness = centers_[best_cell];
        res.margin = best;
    }
    return res;
}

MembershipResult CocycleTable::lsf_probe(double abs_lambda, double slack) const {
    const long long cells = grid_ * grid_, n_steps = horizon_;
    const double la = std::log(std::max(abs_lambda, 1e-300));
    const double sl = std::log1p(slack);
    MembershipResult res;
    double best = -INF;
    std::size_t best_cell = 0;
    for (long long k = 0; k < cells; ++k) {
        double margin = INF;
        for (long long n = 1; n <= n_steps; ++n) {
            std::size_t at = std::size_t(k * n_steps + n - 1);
            double hi_cap = double(n) * (la + sl);   // forward magnitudes stay below
            double lo_need = double(n) * (la - sl);  // backward magnitudes reach this
            margin = std::min(margin, std::min(hi_cap - fwd_val_[at],
                                               bwd_val_[at] - lo_need) /
                                          double(n));
        }
        if (margin > best) {
            best = margin;
            best_cell = std::size_t(k);
        }
    }
    // sampled only: a missing witness is not a refutation
    res.certified_out = false;
    res.witness = centers_[best_cell];
    res.margin = best;
    return res;
}

namespace {

MembershipResult periodic_ap_probe(cplx lambda, const WeightPoly& w, const Map2& f,
                                   long long m) {
    cplx a1 = f.first.angle->unit(), a2 = f.second.angle->unit();
    WeightPoly wm = cocycle_poly(w, a1, a2, m);
    RegionPrimitive prim = RootImage{int(m), Domain::Bidisc, wm};
    Location loc = contains(prim, lambda, 1e-9);
    MembershipResult res;
    res.certified_out = loc == Location::Out;
    res.margin = loc == Location::In ? 1.0 : 0.0;
    return res;
}

}  // namespace

MembershipResult ap_membership_test(cplx lambda, const WeightPoly& w, const Map2& f,
                                    long long horizon, long long grid, double slack) {
    if (std::optional<long long> m = periodic_order(f))
        return periodic_ap_probe(lambda, w, f, *m);
    CocycleTable table(w, f, horizon, grid);
    return table.ap_probe(std::abs(lambda), slack);
}

MembershipResult lsf_membership_test(cplx lambda, const WeightPoly& w, const Map2& f,
                                     long long horizon, long long grid, double slack) {
    if (std::optional<long long> m = periodic_order(f)) {
        MembershipResult res = periodic_ap_probe(lambda, w, f, *m);
        res.certified_out = false;  // one-directional: never refute
        return res;
    }
    CocycleTable table(w, f, horizon, grid);
    return table.lsf_probe(std::abs(lambda), slack);
}

std::vector<AttractorInclusion> attractor_inclusions(const AttractorData& a) {
    std::vector<AttractorInclusion> out;
    auto radial = [](RegionPrimitive prim) {
        SpectralRegion s;
        s.exactness = Exactness::SubsetOfTruth;
        s.primitives.push_back(std::move(prim));
        canonicalize(s);
        return s;
    };
    if (a.rho_k2 < a.rho_min_k1)
        out.push_back({radial(Annulus{a.rho_k2, a.rho_min_k1}), SfTarget::Usf});
    if (a.rho_k1 < a.rho_min_k2)
        out.push_back({radial(Annulus{a.rho_k1, a.rho_min_k2}), SfTarget::Lsf});
    if (a.rho_k1 == a.rho_min_k1 && a.rho_k1 == a.rho_k2 && a.rho_k1 == a.rho_min_k2)
        out.push_back({radial(Circle{a.rho_k1}), SfTarget::Sf});
    if (a.wandering_zero && a.zero_orbit_finite) {
        out.push_back({radial(Disk{a.rho_k2}), SfTarget::Usf});
        out.push_back({radial(Disk{a.rho_k1}), SfTarget::Lsf});
    }
    return out;
}

namespace {

bool bracket_agrees(double closed, double lo, double hi, double tol) {
    const double eps = 1e-12;
    return closed >= lo * (1.0 - tol) - eps && closed <= hi * (1.0 + tol) + eps;
}

}  // namespace

std::vector<OracleRecordEntry> cross_check(const SpectrumReport& report,
                                           const WeightPoly& w, const Map2& f,
                                           const CaseTag& tag,
                                           const OracleOptions& opts,
                                           const OptimizeOptions& budget) {
    std::vector<OracleRecordEntry> out;
    std::array<double, 2> b = radial_bounds(report.sigma_ap, budget);
    const double inner = b[0], outer = b[1];

    OracleEstimate rho = birkhoff_radius(w, f, opts.n_max, opts.grid);
    out.push_back({"outer-radius-vs-cocycle-norm", outer, rho.lower, rho.upper,
                   bracket_agrees(outer, rho.lower, rho.upper, 0.05)});
    OracleEstimate rmin = rho_min_estimate(w, f, opts.n_max, opts.grid);
    out.push_back({"inner-radius-vs-inverse-cocycle", inner, rmin.lower, rmin.upper,
                   bracket_agrees(inner, rmin.lower, rmin.upper, 0.05)});

    std::vector<MeasureFamily> fams = enumerate_measures(tag, f, opts);
    if (!fams.empty()) {
        double qmax = 0.0, qmin = INF;
        for (const MeasureFamily& fam : fams) {
            double q = measure_quadrature(w, fam);
            qmax = std::max(qmax, q);
            qmin = std::min(qmin, q);
        }
        // sampling a sub-family can undershoot, never overshoot: an excess
        // beyond 1e-6 relative is a genuine disagreement with the closed form
        bool max_ok = outer == 0.0 ? qmax <= 1e-9
                                   : qmax <= outer * (1.0 + 1e-6) + 1e-12 &&
                                         qmax >= outer * 0.95 - 1e-12;
        out.push_back({"outer-radius-vs-measure-max", outer, qmin, qmax, max_ok});
        bool min_ok = inner == 0.0 ? qmin <= 0.05
                                   : qmin >= inner * 0.95 - 1e-12 &&
                                         qmin <= inner * (1.0 + 1e-6) + 1e-12;
        out.push_back({"inner-radius-vs-measure-min", inner, qmin, qmax, min_ok});
    }

    // membership probes around the reported boundary, plus interior/exterior
    std::vector<double> radii;
    for (double base : {inner, outer}) {
        if (base <= 0.0) continue;
        radii.push_back(base * 0.9);
        radii.push_back(base);
        radii.push_back(base * 1.1);
    }
    if (inner < outer) radii.push_back(0.5 * (inner + outer));
    radii.push_back(outer * 1.5 + 0.1);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    std::optional<long long> period = periodic_order(f);
    std::optional<CocycleTable> table;
    if (!period) table.emplace(w, f, opts.horizon, opts.grid);

    const bool exact_ap = report.sigma_ap.exactness == Exactness::Exact;
    long long probes = 0, violations = 0, lsf_witnesses = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double phase =
            TAU * std::fmod(0.6180339887498949 * (double(i) + 1.0 + double(opts.seed)), 1.0);
        cplx lambda = std::polar(radii[i], phase);
        MembershipResult ap = period ? periodic_ap_probe(lambda, w, f, *period)
                                     : table->ap_probe(radii[i], opts.slack);
        ++probes;
        if (exact_ap && ap.certified_out &&
            contains(report.sigma_ap, lambda, 1e-9) == Location::In)
            ++violations;
        if (!period) {
            MembershipResult ls = table->lsf_probe(radii[i], opts.slack);
            if (ls.margin >= 0.0) ++lsf_witnesses;
        }
    }
    out.push_back({"ap-probe-exclusions-inside-exact-region", 0.0, double(violations),
                   double(violations), violations == 0});
    out.push_back({"lsf-probe-witnesses", std::nullopt, double(lsf_witnesses),
                   double(probes), true});
    return out;
}

}  // namespace bispec
