#pragma once

#include <span>

#include "bispec/kernels.hpp"
#include "bispec/mobius.hpp"
#include "bispec/poly.hpp"

namespace bispec {

// Self-map of the bidisc built from two disc automorphisms, either acting
// coordinatewise or with the coordinates crossed:
//   swapped=false:  (z1, z2) -> (first(z1), second(z2))
//   swapped=true:   (z1, z2) -> (first(z2), second(z1))
struct Map2 {
    MobiusMap first, second;
    bool swapped = false;

    kernels::Point2 operator()(const kernels::Point2& p) const {
        return swapped ? kernels::Point2{first(p[1]), second(p[0])}
                       : kernels::Point2{first(p[0]), second(p[1])};
    }

    // The square of a crossed map acts coordinatewise.
    Map2 diagonal_square() const {
        return {first.compose(second), second.compose(first), false};
    }

    Map2 inverse() const {
        if (!swapped) return {first.inverse(), second.inverse(), false};
        return {second.inverse(), first.inverse(), true};
    }
};

void apply_map2(const Map2& f, std::span<kernels::Point2> pts);

// Product of two circular arcs, by center angle and half-width. Disc
// automorphisms act on the unit circle as orientation-preserving
// homeomorphisms, so the image of an arc box under a Map2 is again an arc
// box, computed exactly from endpoint images (plus a small safety margin).
struct ArcBox {
    double t1, h1, t2, h2;
};

kernels::Point2 arc_center(const ArcBox& b);

ArcBox map_arc_box(const Map2& f, const ArcBox& b);

// sup / inf of |w| over the box: center sample +- gradient bound per
// coordinate (inf clamped at zero)
double upper_bound_abs(const WeightPoly& w, const ArcBox& b);
double lower_bound_abs(const WeightPoly& w, const ArcBox& b);

}  // namespace bispec
