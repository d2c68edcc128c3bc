#include "bispec/map2.hpp"

#include <algorithm>
#include <cmath>

namespace bispec {

void apply_map2(const Map2& f, std::span<kernels::Point2> pts) {
    if (f.swapped)
        for (kernels::Point2& p : pts) std::swap(p[0], p[1]);
    kernels::apply_map(f.first, f.second, pts);
}

kernels::Point2 arc_center(const ArcBox& b) {
    return {std::polar(1.0, b.t1), std::polar(1.0, b.t2)};
}

namespace {

constexpr double HALF_TURN = 0.5 * TAU;

struct Arc {
    double t, h;
};

Arc map_arc(const MobiusMap& m, Arc a) {
    if (a.h >= HALF_TURN) return {0.0, HALF_TURN};  // already the whole circle
    if (std::abs(m.b) <= 1e-15) {
        // rotation: translate the center, keep the width
        double shift = std::arg(m.a / std::conj(m.a));
        return {wrap_angle(a.t + shift), a.h};
    }
    double lo = std::arg(m(std::polar(1.0, a.t - a.h)));
    double hi = std::arg(m(std::polar(1.0, a.t + a.h)));
    double mid = std::arg(m(std::polar(1.0, a.t)));
    double width = wrap_angle(hi - lo);
    // the center image must land inside; widen if rounding pushed it out
    width = std::max(width, wrap_angle(mid - lo));
    width = std::min(width, TAU);
    double h = 0.5 * width + 1e-12;
    return {wrap_angle(lo + 0.5 * width), std::min(h, HALF_TURN)};
}

}  // namespace

ArcBox map_arc_box(const Map2& f, const ArcBox& b) {
    Arc a1{b.t1, b.h1}, a2{b.t2, b.h2};
    Arc i1 = map_arc(f.first, f.swapped ? a2 : a1);
    Arc i2 = map_arc(f.second, f.swapped ? a1 : a2);
    return {i1.t, i1.h, i2.t, i2.h};
}

namespace {
double slope_sum(const WeightPoly& w, const ArcBox& b) {
    double g1 = 0.0, g2 = 0.0;  // bounds for |d w / d theta_k| on the torus
    for (const Term& t : w.terms()) {
        g1 += std::abs(t.c) * double(t.i);
        g2 += std::abs(t.c) * double(t.j);
    }
    return g1 * b.h1 + g2 * b.h2;
}
}  // namespace

double upper_bound_abs(const WeightPoly& w, const ArcBox& b) {
    kernels::Point2 c = arc_center(b);
    return std::abs(w(c[0], c[1])) + slope_sum(w, b);
}

double lower_bound_abs(const WeightPoly& w, const ArcBox& b) {
    kernels::Point2 c = arc_center(b);
    return std::max(0.0, std::abs(w(c[0], c[1])) - slope_sum(w, b));
}

}  // namespace bispec
