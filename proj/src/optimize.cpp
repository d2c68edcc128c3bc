#include "bispec/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "bispec/mahler.hpp"

namespace bispec {
namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

struct Cell {
    std::array<double, 4> c{}, h{};
    double v = 0.0;    // |w| at the center
    double key = 0.0;  // heap key: lower bound (min/vanish) or -(upper bound) (max)
    unsigned long long id = 0;
};

// (key, id) ordering keeps pops deterministic across runs
struct CellCmp {
    bool operator()(const Cell& a, const Cell& b) const {
        if (a.key != b.key) return a.key > b.key;
        return a.id > b.id;
    }
};
using Heap = std::priority_queue<Cell, std::vector<Cell>, CellCmp>;

double coeff_grad1(const WeightPoly& w) {
    double g = 0.0;
    for (const Term& t : w.terms()) g += std::abs(t.c) * double(t.i);
    return g;
}
double coeff_grad2(const WeightPoly& w) {
    double g = 0.0;
    for (const Term& t : w.terms()) g += std::abs(t.c) * double(t.j);
    return g;
}

struct TorusGeom {
    const WeightPoly& w;
    double g1, g2;
    explicit TorusGeom(const WeightPoly& wp)
        : w(wp), g1(coeff_grad1(wp)), g2(coeff_grad2(wp)) {}

    kernels::Point2 point(const std::array<double, 4>& c) const {
        return {std::polar(1.0, c[0]), std::polar(1.0, c[1])};
    }
    double value(const Cell& cl) const {
        kernels::Point2 p = point(cl.c);
        return std::abs(w(p[0], p[1]));
    }
    double slack(const Cell& cl) const { return g1 * cl.h[0] + g2 * cl.h[1]; }
    int split_dim(const Cell& cl) const { return g1 * cl.h[0] >= g2 * cl.h[1] ? 0 : 1; }

    std::vector<Cell> initial() const {
        std::vector<Cell> out;
        const double h = TAU / 16.0;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                Cell cl;
                cl.c = {(2 * i + 1) * h, (2 * j + 1) * h, 0.0, 0.0};
                cl.h = {h, h, 0.0, 0.0};
                out.push_back(cl);
            }
        return out;
    }
    void bulk_values(std::vector<Cell>& cells) const {
        std::vector<kernels::Point2> pts(cells.size());
        std::vector<double> vals(cells.size());
        for (std::size_t k = 0; k < cells.size(); ++k) pts[k] = point(cells[k].c);
        kernels::abs_values(w, pts, vals);
        for (std::size_t k = 0; k < cells.size(); ++k) cells[k].v = vals[k];
    }
};

// polar coordinates (r1, t1, r2, t2); |dz| <= |dr| + r_max |dt| per coordinate
struct BidiscGeom {
    const WeightPoly& w;
    double g1, g2;
    explicit BidiscGeom(const WeightPoly& wp)
        : w(wp), g1(coeff_grad1(wp)), g2(coeff_grad2(wp)) {}

    kernels::Point2 point(const std::array<double, 4>& c) const {
        return {std::polar(c[0], c[1]), std::polar(c[2], c[3])};
    }
    double value(const Cell& cl) const {
        kernels::Point2 p = point(cl.c);
        return std::abs(w(p[0], p[1]));
    }
    double slack(const Cell& cl) const {
        double r1 = std::min(1.0, cl.c[0] + cl.h[0]);
        double r2 = std::min(1.0, cl.c[2] + cl.h[2]);
        return g1 * (cl.h[0] + r1 * cl.h[1]) + g2 * (cl.h[2] + r2 * cl.h[3]);
    }
    int split_dim(const Cell& cl) const {
        std::array<double, 4> s = {g1 * cl.h[0], g1 * cl.h[1], g2 * cl.h[2],
                                   g2 * cl.h[3]};
        return int(std::max_element(s.begin(), s.end()) - s.begin());
    }

    std::vector<Cell> initial() const {
        std::vector<Cell> out;
        const double ht = TAU / 16.0;
        for (int a = 0; a < 2; ++a)
            for (int i = 0; i < 8; ++i)
                for (int b = 0; b < 2; ++b)
                    for (int j = 0; j < 8; ++j) {
                        Cell cl;
                        cl.c = {0.25 + 0.5 * a, (2 * i + 1) * ht, 0.25 + 0.5 * b,
                                (2 * j + 1) * ht};
                        cl.h = {0.25, ht, 0.25, ht};
                        out.push_back(cl);
                    }
        return out;
    }
    void bulk_values(std::vector<Cell>& cells) const {
        std::vector<kernels::Point2> pts(cells.size());
        std::vector<double> vals(cells.size());
        for (std::size_t k = 0; k < cells.size(); ++k) pts[k] = point(cells[k].c);
        kernels::abs_values(w, pts, vals);
        for (std::size_t k = 0; k < cells.size(); ++k) cells[k].v = vals[k];
    }
};

struct CircleGeom {
    const Poly1& p;
    double g;
    explicit CircleGeom(const Poly1& poly) : p(poly), g(0.0) {
        for (std::size_t k = 0; k < p.c.size(); ++k) g += std::abs(p.c[k]) * double(k);
    }

    kernels::Point2 point(const std::array<double, 4>& c) const {
        return {std::polar(1.0, c[0]), cplx(0.0)};
    }
    double value(const Cell& cl) const { return std::abs(p.eval(std::polar(1.0, cl.c[0]))); }
    double slack(const Cell& cl) const { return g * cl.h[0]; }
    int split_dim(const Cell&) const { return 0; }

    std::vector<Cell> initial() const {
        std::vector<Cell> out;
        const double h = TAU / 32.0;
        for (int k = 0; k < 16; ++k) {
            Cell cl;
            cl.c = {(2 * k + 1) * h, 0.0, 0.0, 0.0};
            cl.h = {h, 0.0, 0.0, 0.0};
            out.push_back(cl);
        }
        return out;
    }
    void bulk_values(std::vector<Cell>& cells) const {
        for (Cell& cl : cells) cl.v = value(cl);
    }
};

struct EngineOut {
    double lower = 0.0, upper = 0.0;
    std::array<double, 4> best{};
    bool zero_found = false, converged = false;
    std::size_t cells = 0;
    double floor = 0.0;
    Vanishing verdict = Vanishing::Inconclusive;
};

template <class Geom>
EngineOut run_min(const Geom& geom, double zero_floor, const OptimizeOptions& o) {
    EngineOut out;
    std::vector<Cell> init = geom.initial();
    geom.bulk_values(init);
    Heap heap;
    unsigned long long next_id = 0;
    double upper = INF;
    auto note = [&](const Cell& cl) {
        if (cl.v < upper) {
            upper = cl.v;
            out.best = cl.c;
            if (upper <= zero_floor) out.zero_found = true;
        }
    };
    for (Cell cl : init) {
        cl.id = next_id++;
        note(cl);
        cl.key = std::max(0.0, cl.v - geom.slack(cl));
        heap.push(cl);
    }
    out.cells = init.size();
    double lower = 0.0;
    while (true) {
        if (out.zero_found) {
            lower = 0.0;
            break;
        }
        if (heap.empty()) {
            lower = upper;
            out.converged = true;
            break;
        }
        const Cell top = heap.top();
        lower = std::min(std::max(top.key, 0.0), upper);
        if (upper - lower <= o.tol * std::max(1.0, upper)) {
            out.converged = true;
            break;
        }
        if (out.cells >= o.max_cells) break;
        heap.pop();
        int d = geom.split_dim(top);
        for (int side = 0; side < 2; ++side) {
            Cell ch = top;
            ch.h[d] = 0.5 * top.h[d];
            ch.c[d] = top.c[d] + (side ? ch.h[d] : -ch.h[d]);
            ch.v = geom.value(ch);
            ch.id = next_id++;
            ++out.cells;
            note(ch);
            ch.key = std::max(0.0, ch.v - geom.slack(ch));
            if (ch.key < upper) heap.push(ch);
        }
    }
    out.lower = lower;
    out.upper = upper;
    return out;
}

template <class Geom>
EngineOut run_max(const Geom& geom, const OptimizeOptions& o) {
    EngineOut out;
    std::vector<Cell> init = geom.initial();
    geom.bulk_values(init);
    Heap heap;
    unsigned long long next_id = 0;
    double lower = -INF;
    auto note = [&](const Cell& cl) {
        if (cl.v > lower) {
            lower = cl.v;
            out.best = cl.c;
        }
    };
    for (Cell cl : init) {
        cl.id = next_id++;
        note(cl);
        cl.key = -(cl.v + geom.slack(cl));
        heap.push(cl);
    }
    out.cells = init.size();
    double upper = INF;
    while (true) {
        if (heap.empty()) {
            upper = lower;
            out.converged = true;
            break;
        }
        const Cell top = heap.top();
        upper = std::max(-top.key, lower);
        if (upper - lower <= o.tol * std::max(1.0, lower)) {
            out.converged = true;
            break;
        }
        if (out.cells >= o.max_cells) break;
        heap.pop();
        int d = geom.split_dim(top);
        for (int side = 0; side < 2; ++side) {
            Cell ch = top;
            ch.h[d] = 0.5 * top.h[d];
            ch.c[d] = top.c[d] + (side ? ch.h[d] : -ch.h[d]);
            ch.v = geom.value(ch);
            ch.id = next_id++;
            ++out.cells;
            note(ch);
            ch.key = -(ch.v + geom.slack(ch));
            if (-ch.key > lower) heap.push(ch);
        }
    }
    out.lower = lower;
    out.upper = upper;
    return out;
}

// Zero-freeness only: cells whose lower bound is positive are pruned, so no
// accuracy target is needed. Locating a zero this way can take forever, which
// is why callers run the Newton hunts first and use this for the ZeroFree side.
template <class Geom>
EngineOut run_vanish(const Geom& geom, double zero_floor, const OptimizeOptions& o) {
    EngineOut out;
    std::vector<Cell> init = geom.initial();
    geom.bulk_values(init);
    Heap heap;
    unsigned long long next_id = 0;
    double floor = INF;
    auto admit = [&](Cell cl) -> bool {
        cl.id = next_id++;
        if (cl.v <= zero_floor) {
            out.best = cl.c;
            out.upper = cl.v;
            out.verdict = Vanishing::ZeroFound;
            return true;
        }
        double lb = cl.v - geom.slack(cl);
        if (lb > 0.0) {
            floor = std::min(floor, lb);
            return false;
        }
        cl.key = lb;
        heap.push(cl);
        return false;
    };
    for (const Cell& cl : init)
        if (admit(cl)) break;
    out.cells = init.size();
    while (out.verdict != Vanishing::ZeroFound) {
        if (heap.empty()) {
            out.verdict = Vanishing::ZeroFree;
            out.floor = floor;
            break;
        }
        if (out.cells >= o.max_cells) break;  // Inconclusive
        const Cell top = heap.top();
        heap.pop();
        int d = geom.split_dim(top);
        bool done = false;
        for (int side = 0; side < 2 && !done; ++side) {
            Cell ch = top;
            ch.h[d] = 0.5 * top.h[d];
            ch.c[d] = top.c[d] + (side ? ch.h[d] : -ch.h[d]);
            ch.v = geom.value(ch);
            ++out.cells;
            done = admit(ch);
        }
    }
    return out;
}

double weight_scale(const WeightPoly& w) { return 1.0 + w.coeff_abs_sum(); }

WeightPoly d_z1(const WeightPoly& w) {
    std::vector<Term> ts;
    for (const Term& t : w.terms())
        if (t.i >= 1) ts.push_back({t.i - 1, t.j, t.c * double(t.i)});
    return WeightPoly::from_terms(std::move(ts));
}
WeightPoly d_z2(const WeightPoly& w) {
    std::vector<Term> ts;
    for (const Term& t : w.terms())
        if (t.j >= 1) ts.push_back({t.i, t.j - 1, t.c * double(t.j)});
    return WeightPoly::from_terms(std::move(ts));
}

}  // namespace

namespace {

// |c z1^i z2^j| is constant on the torus and radially monotone on the bidisc.
// Subdivision cannot shrink the gap on a flat profile, so these are answered
// exactly instead.
bool monomial_abs(const WeightPoly& w, double& c, int& i, int& j) {
    if (w.terms().size() != 1) return false;
    const Term& t = w.terms()[0];
    c = std::abs(t.c);
    i = t.i;
    j = t.j;
    return true;
}

bool circle_monomial(const Poly1& p, double& c) {
    int nonzero = 0;
    for (const cplx& x : p.c)
        if (x != cplx(0.0)) {
            ++nonzero;
            c = std::abs(x);
        }
    return nonzero == 1;
}

}  // namespace

BoundResult certified_min_modulus(const WeightPoly& w, Domain dom,
                                  const OptimizeOptions& opts) {
    BoundResult r;
    if (w.is_zero()) {
        r.zero_found = r.converged = true;
        r.witness = {cplx(0.0), cplx(0.0)};
        return r;
    }
    {
        double mc;
        int mi, mj;
        if (monomial_abs(w, mc, mi, mj)) {
            r.converged = true;
            if (dom == Domain::Bidisc && mi + mj > 0) {
                r.zero_found = true;
                r.witness = {cplx(0.0), cplx(0.0)};
            } else {
                r.lower = r.upper = mc;
                r.witness = {cplx(1.0), cplx(1.0)};
            }
            return r;
        }
    }
    double eps0 = opts.zero_eps * weight_scale(w);
    EngineOut e = dom == Domain::Torus2 ? run_min(TorusGeom(w), eps0, opts)
                                        : run_min(BidiscGeom(w), eps0, opts);
    r.lower = e.lower;
    r.upper = e.upper;
    r.zero_found = e.zero_found;
    r.converged = e.converged;
    r.cells_processed = e.cells;
    r.witness = dom == Domain::Torus2 ? TorusGeom(w).point(e.best)
                                      : BidiscGeom(w).point(e.best);
    return r;
}

BoundResult certified_max_modulus_torus(const WeightPoly& w,
                                        const OptimizeOptions& opts) {
    BoundResult r;
    if (w.is_zero()) {
        r.zero_found = r.converged = true;
        r.witness = {cplx(1.0), cplx(1.0)};
        return r;
    }
    {
        double mc;
        int mi, mj;
        if (monomial_abs(w, mc, mi, mj)) {
            r.lower = r.upper = mc;
            r.converged = true;
            r.witness = {cplx(1.0), cplx(1.0)};
            return r;
        }
    }
    EngineOut e = run_max(TorusGeom(w), opts);
    r.lower = e.lower;
    r.upper = e.upper;
    r.converged = e.converged;
    r.cells_processed = e.cells;
    r.witness = TorusGeom(w).point(e.best);
    return r;
}

Bound1Result certified_min_modulus_circle(const Poly1& p, const OptimizeOptions& opts) {
    Bound1Result r;
    {
        double mc;
        if (circle_monomial(p, mc)) {
            r.lower = r.upper = mc;
            r.converged = true;
            return r;
        }
    }
    double scale = 1.0;
    for (const cplx& c : p.c) scale += std::abs(c);
    EngineOut e = run_min(CircleGeom(p), opts.zero_eps * scale, opts);
    r.lower = e.lower;
    r.upper = e.upper;
    r.witness_angle = e.best[0];
    r.zero_found = e.zero_found;
    r.converged = e.converged;
    r.cells_processed = e.cells;
    return r;
}

Bound1Result certified_max_modulus_circle(const Poly1& p, const OptimizeOptions& opts) {
    Bound1Result r;
    {
        double mc;
        if (circle_monomial(p, mc)) {
            r.lower = r.upper = mc;
            r.converged = true;
            return r;
        }
    }
    EngineOut e = run_max(CircleGeom(p), opts);
    r.lower = e.lower;
    r.upper = e.upper;
    r.witness_angle = e.best[0];
    r.converged = e.converged;
    r.cells_processed = e.cells;
    return r;
}

VanishingResult certify_nonvanishing(const WeightPoly& w, Domain dom,
                                     const OptimizeOptions& opts) {
    VanishingResult r;
    if (w.is_zero()) {
        r.verdict = Vanishing::ZeroFound;
        r.witness = {cplx(0.0), cplx(0.0)};
        return r;
    }
    {
        double mc;
        int mi, mj;
        if (monomial_abs(w, mc, mi, mj)) {
            if (dom == Domain::Bidisc && mi + mj > 0) {
                r.verdict = Vanishing::ZeroFound;
                r.witness = {cplx(0.0), cplx(0.0)};
            } else {
                r.verdict = Vanishing::ZeroFree;
                r.positive_floor = mc;
            }
            return r;
        }
    }
    double eps0 = opts.zero_eps * weight_scale(w);
    EngineOut e = dom == Domain::Torus2 ? run_vanish(TorusGeom(w), eps0, opts)
                                        : run_vanish(BidiscGeom(w), eps0, opts);
    r.verdict = e.verdict;
    r.cells_processed = e.cells;
    if (e.verdict == Vanishing::ZeroFound) {
        r.witness = dom == Domain::Torus2 ? TorusGeom(w).point(e.best)
                                          : BidiscGeom(w).point(e.best);
        r.witness_value = e.upper;
    }
    if (e.verdict == Vanishing::ZeroFree) r.positive_floor = e.floor;
    return r;
}

namespace {

// One projection round: nearest slice root in one variable, renormalized to
// the circle, then the same in the other variable.
void refine_on_torus(const WeightPoly& w, cplx& u, cplx& v) {
    for (int iter = 0; iter < 40; ++iter) {
        Poly1 pv = w.restrict_z1(u);
        if (pv.degree() >= 1) {
            cplx best = v;
            double bd = INF;
            for (const cplx& root : poly_roots(pv)) {
                if (std::abs(root) == 0.0) continue;
                cplx cand = root / std::abs(root);
                double d = std::abs(cand - v) + std::abs(std::abs(root) - 1.0);
                if (d < bd) {
                    bd = d;
                    best = cand;
                }
            }
            v = best;
        }
        Poly1 pu = w.restrict_z2(v);
        if (pu.degree() >= 1) {
            cplx best = u;
            double bd = INF;
            for (const cplx& root : poly_roots(pu)) {
                if (std::abs(root) == 0.0) continue;
                cplx cand = root / std::abs(root);
                double d = std::abs(cand - u) + std::abs(std::abs(root) - 1.0);
                if (d < bd) {
                    bd = d;
                    best = cand;
                }
            }
            u = best;
        }
    }
}

}  // namespace

ZeroWitness find_torus_zero(const WeightPoly& w) {
    ZeroWitness best;
    if (w.is_zero()) return {true, {cplx(1.0), cplx(1.0)}, 0.0};
    double eps = 1e-11 * weight_scale(w);
    best.value = INF;
    const int N = 256;
    auto consider = [&](cplx u, cplx v) {
        refine_on_torus(w, u, v);
        double val = std::abs(w(u, v));
        if (val < best.value) {
            best.value = val;
            best.z = {u, v};
        }
    };
    for (int k = 0; k < N && best.value > eps; ++k) {
        cplx u = std::polar(1.0, TAU * double(k) / double(N));
        Poly1 slice = w.restrict_z1(u);
        if (slice.degree() < 1) continue;
        for (const cplx& root : poly_roots(slice)) {
            if (std::abs(std::abs(root) - 1.0) > 0.05 || std::abs(root) == 0.0) continue;
            consider(u, root / std::abs(root));
            if (best.value <= eps) break;
        }
    }
    for (int k = 0; k < N && best.value > eps; ++k) {
        cplx v = std::polar(1.0, TAU * double(k) / double(N));
        Poly1 slice = w.restrict_z2(v);
        if (slice.degree() < 1) continue;
        for (const cplx& root : poly_roots(slice)) {
            if (std::abs(std::abs(root) - 1.0) > 0.05 || std::abs(root) == 0.0) continue;
            consider(root / std::abs(root), v);
            if (best.value <= eps) break;
        }
    }
    best.found = best.value <= eps;
    return best;
}

ZeroWitness find_bidisc_zero(const WeightPoly& w) {
    ZeroWitness best;
    if (w.is_zero()) return {true, {cplx(0.0), cplx(0.0)}, 0.0};
    double eps = 1e-11 * weight_scale(w);
    best.value = INF;
    WeightPoly w1 = d_z1(w), w2 = d_z2(w);
    auto newton = [&](kernels::Point2 z) {
        for (int iter = 0; iter < 60; ++iter) {
            cplx f = w(z[0], z[1]);
            if (std::abs(f) <= 1e-15) break;
            cplx j1 = w1(z[0], z[1]), j2 = w2(z[0], z[1]);
            double denom = std::norm(j1) + std::norm(j2);
            if (denom < 1e-30) break;
            z[0] -= f * std::conj(j1) / denom;
            z[1] -= f * std::conj(j2) / denom;
            if (std::abs(z[0]) > 1.0) z[0] /= std::abs(z[0]);
            if (std::abs(z[1]) > 1.0) z[1] /= std::abs(z[1]);
        }
        double val = std::abs(w(z[0], z[1]));
        if (val < best.value) {
            best.value = val;
            best.z = z;
        }
    };
    // slice roots inside the disc make good starts: exact zeros of one slice
    for (int k = 0; k < 64 && best.value > eps; ++k) {
        cplx u = std::polar(1.0, TAU * double(k) / 64.0);
        Poly1 slice = w.restrict_z1(u);
        if (slice.degree() >= 1)
            for (const cplx& root : poly_roots(slice))
                if (std::abs(root) <= 1.0) newton({u, root});
        slice = w.restrict_z2(u);
        if (slice.degree() >= 1)
            for (const cplx& root : poly_roots(slice))
                if (std::abs(root) <= 1.0) newton({root, u});
    }
    for (int a = 0; a < 4 && best.value > eps; ++a)
        for (int i = 0; i < 8 && best.value > eps; ++i)
            for (int b = 0; b < 4 && best.value > eps; ++b)
                for (int j = 0; j < 8; ++j) {
                    double r1 = 0.125 + 0.25 * a, r2 = 0.125 + 0.25 * b;
                    newton({std::polar(r1, TAU * i / 8.0), std::polar(r2, TAU * j / 8.0)});
                    if (best.value <= eps) break;
                }
    best.found = best.value <= eps;
    return best;
}

InvertibilityReport invertibility_status(const WeightPoly& w,
                                         const OptimizeOptions& opts) {
    InvertibilityReport rep;
    if (w.is_zero()) {
        rep.status = InvertibilityStatus::NotInvertibleCT2;
        rep.has_witness = true;
        rep.zero_witness = {cplx(1.0), cplx(1.0)};
        return rep;
    }
    ZeroWitness tz = find_torus_zero(w);
    if (tz.found) {
        rep.status = InvertibilityStatus::NotInvertibleCT2;
        rep.has_witness = true;
        rep.zero_witness = tz.z;
        return rep;
    }
    VanishingResult torus = certify_nonvanishing(w, Domain::Torus2, opts);
    if (torus.verdict == Vanishing::ZeroFound) {
        rep.status = InvertibilityStatus::NotInvertibleCT2;
        rep.has_witness = true;
        rep.zero_witness = torus.witness;
        return rep;
    }
    if (torus.verdict == Vanishing::Inconclusive) return rep;
    rep.torus_floor = torus.positive_floor;

    ZeroWitness bz = find_bidisc_zero(w);
    if (bz.found) {
        rep.status = InvertibilityStatus::InvertibleCT2Only;
        rep.has_witness = true;
        rep.zero_witness = bz.z;
        return rep;
    }
    VanishingResult bidisc = certify_nonvanishing(w, Domain::Bidisc, opts);
    if (bidisc.verdict == Vanishing::ZeroFound) {
        rep.status = InvertibilityStatus::InvertibleCT2Only;
        rep.has_witness = true;
        rep.zero_witness = bidisc.witness;
        return rep;
    }
    if (bidisc.verdict == Vanishing::Inconclusive) return rep;
    rep.bidisc_floor = bidisc.positive_floor;
    rep.status = InvertibilityStatus::InvertibleA2;
    return rep;
}

}  // namespace bispec
