#pragma once

#include <optional>
#include <vector>

#include "bispec/types.hpp"

namespace bispec {

// Declared multiplicative relation between two unit-circle rotation
// constants a1, a2 (used only when both angles are irrational):
//   positive : a1^p = a2^q          (p, q > 0)
//   mixed    : a1^p * a2^q = 1
//   independent : no relation of either kind exists
//   unknown  : caller makes no claim; engines fall back to oracle radii
enum class RelationKind { Independent, Positive, Mixed, Unknown };

struct Relation {
    RelationKind kind = RelationKind::Unknown;
    long long p = 0, q = 0;
    bool operator==(const Relation&) const = default;
};

// Exact dichotomy for a rotation angle. Rationality is declared, never
// inferred from floating point.
struct AngleSpec {
    bool rational = true;
    long long num = 0, den = 1;  // rational: angle = 2*pi*num/den, reduced, 0 <= num < den
    double radians = 0.0;        // irrational: angle in radians
    std::optional<Relation> relation;

    static AngleSpec make_rational(long long num, long long den);
    static AngleSpec make_irrational(double radians, std::optional<Relation> rel = std::nullopt);

    double value() const { return rational ? TAU * double(num) / double(den) : radians; }
    cplx unit() const;                // e^{i*angle}
    long long primitive_order() const;  // rational only: den after reduction
    bool operator==(const AngleSpec&) const = default;
};

enum class MapSource { RawMatrix, CanonicalRotation, CanonicalParabolic, CanonicalHyperbolic };

// Holomorphic automorphism of the unit disc, stored as the SU(1,1)-shaped
// matrix (a, b; conj(b), conj(a)). det = |a|^2 - |b|^2 stays positive; it is
// 1 after su_normalize() and may drift from 1 only inside iterate() where
// entries would otherwise overflow. Real rescaling preserves the map.
struct MobiusMap {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
    MapSource source = MapSource::RawMatrix;
    std::optional<AngleSpec> angle;  // required for elliptic classification

    cplx operator()(cplx z) const {
        return (a * z + b) / (std::conj(b) * z + std::conj(a));
    }
    double det() const { return std::norm(a) - std::norm(b); }
    cplx derivative(cplx z) const {
        cplx d = std::conj(b) * z + std::conj(a);
        return det() / (d * d);
    }
    MobiusMap inverse() const;
    MobiusMap compose(const MobiusMap& inner) const;  // (*this) after inner
    void su_normalize();  // det -> 1, sign branch Re(a) >= 0 (tie: Im(a) >= 0)
};

enum class MapClass { EllipticRational, EllipticIrrational, Parabolic, Hyperbolic };

enum class PointLocation { Interior, Boundary, Exterior };

struct FixedPoint {
    cplx point;
    cplx derivative;
    PointLocation location;
};

struct FixedPointData {
    std::vector<FixedPoint> points;  // hyperbolic: attracting first
    bool all_points_fixed = false;   // identity map
};

struct Classification {
    MapClass cls;
    cplx rotation{1.0, 0.0};    // elliptic: multiplier at the interior fixed point
    long long order = 0;        // elliptic rational: primitive order
    AngleSpec angle;            // elliptic: the declared spec (identity gets 0/1)
};

// Constructors. Raw matrices are validated (disc preservation, 16 boundary
// probes) and SU(1,1)-normalized; canonical forms are built exactly.
MobiusMap mobius_from_matrix(cplx A, cplx B, cplx C, cplx D,
                             std::optional<AngleSpec> angle = std::nullopt);
MobiusMap mobius_rotation(const AngleSpec& angle);
// Parabolic with boundary fixed point zeta (|zeta| = 1) and real translation
// length beta != 0 in the half-plane model attached to zeta.
MobiusMap mobius_parabolic(cplx zeta, double beta);
// Hyperbolic z -> (z + a)/(1 + a z), a in (-1,1)\{0}: fixed points +-1,
// attracting +1 for a > 0. `rotate` moves the axis: fixed points +-rotate.
MobiusMap mobius_hyperbolic(double a, cplx rotate = cplx{1.0, 0.0});

Classification classify(const MobiusMap& m);
FixedPointData fixed_points(const MobiusMap& m);

// g with g(z0) = 0 conjugating an elliptic map to the rotation by its
// multiplier: returns (rotation, g) with rotation = g o m o g^{-1}.
std::pair<MobiusMap, MobiusMap> conjugate_elliptic_to_rotation(const MobiusMap& m);

MobiusMap iterate(const MobiusMap& m, long long n);

bool is_identity(const MobiusMap& m, double tol = 1e-12);

}  // namespace bispec
