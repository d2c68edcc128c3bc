#include "bispec/mobius.hpp"

#include <cmath>

namespace bispec {

AngleSpec AngleSpec::make_rational(long long num, long long den) {
    if (den == 0) throw error("angle denominator must be nonzero");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    num %= den;
    if (num < 0) num += den;
    long long g = gcd_ll(num, den);
    if (g == 0) g = 1;
    AngleSpec s;
    s.rational = true;
    s.num = num / g;
    s.den = den / g;
    return s;
}

AngleSpec AngleSpec::make_irrational(double radians, std::optional<Relation> rel) {
    if (!std::isfinite(radians)) throw error("angle must be finite");
    AngleSpec s;
    s.rational = false;
    s.radians = wrap_angle(radians);
    s.relation = rel;
    return s;
}

cplx AngleSpec::unit() const {
    if (rational) {
        long double t = 2.0L * 3.14159265358979323846264338327950288L *
                        (long double)num / (long double)den;
        return cplx(double(cosl(t)), double(sinl(t)));
    }
    return cplx(std::cos(radians), std::sin(radians));
}

long long AngleSpec::primitive_order() const {
    if (!rational) throw error("primitive order undefined for irrational angle");
    return den;  // make_rational reduced the fraction
}

void MobiusMap::su_normalize() {
    double d = det();
    if (!(d > 0.0) || !std::isfinite(d))
        throw not_disc_automorphism("matrix does not preserve the disc (det <= 0)");
    double s = std::sqrt(d);
    a /= s;
    b /= s;
    if (a.real() < 0.0 || (a.real() == 0.0 && a.imag() < 0.0)) {
        a = -a;
        b = -b;
    }
}

MobiusMap MobiusMap::inverse() const {
    MobiusMap r = *this;
    r.a = std::conj(a);
    r.b = -b;
    if (angle) {
        r.angle = angle->rational ? AngleSpec::make_rational(-angle->num, angle->den)
                                  : AngleSpec::make_irrational(-angle->radians);
    }
    return r;
}

// Matrix product; rescaled so repeated composition cannot overflow. The
// SU(1,1) shape is preserved by products and by real rescaling.
MobiusMap MobiusMap::compose(const MobiusMap& inner) const {
    MobiusMap r;
    r.a = a * inner.a + b * std::conj(inner.b);
    r.b = a * inner.b + b * std::conj(inner.a);
    r.source = MapSource::RawMatrix;
    double m0 = std::max(std::abs(r.a), std::abs(r.b));
    if (m0 > 1e80) {
        r.a /= m0;
        r.b /= m0;
    }
    double d = r.det();
    if (d > 1e-280 && std::isfinite(d)) {
        double s = std::sqrt(d);
        r.a /= s;
        r.b /= s;
    }
    return r;
}

bool is_identity(const MobiusMap& m, double tol) {
    MobiusMap c = m;
    c.su_normalize();
    return std::abs(c.b) <= tol && std::abs(c.a - 1.0) <= tol;
}

static void validate_on_circle(const MobiusMap& m) {
    for (int k = 0; k < 16; ++k) {
        double t = TAU * k / 16.0;
        cplx z(std::cos(t), std::sin(t));
        if (std::abs(std::abs(m(z)) - 1.0) > 1e-12)
            throw not_disc_automorphism("image of a boundary probe left the circle");
    }
    MobiusMap id = m.inverse().compose(m);
    if (std::abs(id.b) > 1e-12 || std::abs(id.a - 1.0) > 1e-12)
        throw not_disc_automorphism("inverse composition probe failed");
}

MobiusMap mobius_from_matrix(cplx A, cplx B, cplx C, cplx D, std::optional<AngleSpec> angle) {
    double scale = std::max({std::abs(A), std::abs(B), std::abs(C), std::abs(D)});
    if (!(scale > 0.0) || !std::isfinite(scale)) throw degenerate_map("zero matrix");
    cplx det = A * D - B * C;
    if (std::abs(det) <= 1e-14 * scale * scale)
        throw degenerate_map("matrix is singular");
    cplx s = std::sqrt(det);
    A /= s;
    B /= s;
    C /= s;
    D /= s;
    double tol = 1e-9 * std::max(1.0, std::max(std::abs(A), std::abs(B)));
    if (std::abs(D - std::conj(A)) > tol || std::abs(C - std::conj(B)) > tol)
        throw not_disc_automorphism("matrix is not of disc-automorphism form");
    MobiusMap m;
    m.a = A;
    m.b = B;
    m.source = MapSource::RawMatrix;
    m.angle = angle;
    m.su_normalize();
    validate_on_circle(m);
    return m;
}

MobiusMap mobius_rotation(const AngleSpec& angle) {
    double half = angle.value() / 2.0;
    MobiusMap m;
    m.a = cplx(std::cos(half), std::sin(half));
    m.b = 0.0;
    m.source = MapSource::CanonicalRotation;
    m.angle = angle;
    m.su_normalize();
    return m;
}

MobiusMap mobius_parabolic(cplx zeta, double beta) {
    double az = std::abs(zeta);
    if (std::abs(az - 1.0) > 1e-9)
        throw degenerate_map("parabolic fixed point must lie on the unit circle");
    zeta /= az;
    if (beta == 0.0 || !std::isfinite(beta))
        throw degenerate_map("parabolic translation must be nonzero and finite");
    // Fixed point 1: a = 1 + i b/2, b = -i b/2; conjugation by the rotation
    // sending 1 to zeta multiplies the off-diagonal entry by zeta.
    MobiusMap m;
    m.a = cplx(1.0, beta / 2.0);
    m.b = zeta * cplx(0.0, -beta / 2.0);
    m.source = MapSource::CanonicalParabolic;
    m.su_normalize();
    return m;
}

MobiusMap mobius_hyperbolic(double a, cplx rotate) {
    if (!(std::abs(a) < 1.0) || a == 0.0)
        throw degenerate_map("hyperbolic parameter must lie in (-1,1) minus 0");
    double r = std::abs(rotate);
    if (std::abs(r - 1.0) > 1e-9)
        throw degenerate_map("axis rotation must be a unit complex number");
    rotate /= r;
    double s = std::sqrt(1.0 - a * a);
    MobiusMap m;
    m.a = cplx(1.0 / s, 0.0);
    m.b = rotate * (a / s);
    m.source = MapSource::CanonicalHyperbolic;
    m.su_normalize();
    return m;
}

FixedPointData fixed_points(const MobiusMap& m_in) {
    MobiusMap m = m_in;
    m.su_normalize();
    FixedPointData out;
    auto locate = [](cplx z) {
        double r = std::abs(z);
        if (r < 1.0 - 1e-9) return PointLocation::Interior;
        if (r <= 1.0 + 1e-9) return PointLocation::Boundary;
        return PointLocation::Exterior;
    };
    if (std::abs(m.b) <= 1e-14) {
        if (std::abs(m.a - 1.0) <= 1e-12) {
            out.all_points_fixed = true;
            out.points.push_back({cplx(0.0), cplx(1.0), PointLocation::Interior});
            return out;
        }
        // rotation about 0; the reflected fixed point sits at infinity
        out.points.push_back({cplx(0.0), m.a / std::conj(m.a), PointLocation::Interior});
        return out;
    }
    // fixed points solve conj(b) z^2 - 2i Im(a) z - b = 0; the discriminant
    // over 4 reduces to Re(a)^2 - 1 via |a|^2 - |b|^2 = 1
    double h = m.a.real();
    double ia = m.a.imag();
    double D4 = h * h - 1.0;
    cplx cb = std::conj(m.b);
    if (D4 > 1e-13) {
        double s = std::sqrt(D4);
        cplx z1 = (cplx(0.0, ia) + s) / cb;
        cplx z2 = (cplx(0.0, ia) - s) / cb;
        FixedPoint p1{z1, m.derivative(z1), locate(z1)};
        FixedPoint p2{z2, m.derivative(z2), locate(z2)};
        if (std::abs(p2.derivative) < std::abs(p1.derivative)) std::swap(p1, p2);
        out.points.push_back(p1);  // attracting first
        out.points.push_back(p2);
        return out;
    }
    if (D4 < -1e-13) {
        double s = std::sqrt(-D4);
        cplx z1 = cplx(0.0, ia + s) / cb;
        cplx z2 = cplx(0.0, ia - s) / cb;
        if (std::abs(z1) > std::abs(z2)) std::swap(z1, z2);
        out.points.push_back({z1, m.derivative(z1), PointLocation::Interior});
        out.points.push_back({z2, m.derivative(z2), PointLocation::Exterior});
        return out;
    }
    cplx zeta = cplx(0.0, ia) / cb;
    zeta /= std::abs(zeta);
    out.points.push_back({zeta, m.derivative(zeta), PointLocation::Boundary});
    return out;
}

Classification classify(const MobiusMap& m_in) {
    MobiusMap m = m_in;
    m.su_normalize();

    if (std::abs(m.b) <= 1e-12 && std::abs(m.a - 1.0) <= 1e-12) {
        AngleSpec a0 = m.angle ? *m.angle : AngleSpec::make_rational(0, 1);
        if (std::abs(a0.unit() - 1.0) > 1e-8)
            throw error("declared angle inconsistent with the identity map");
        Classification c;
        c.cls = a0.rational ? MapClass::EllipticRational : MapClass::EllipticIrrational;
        c.rotation = 1.0;
        c.order = a0.rational ? a0.primitive_order() : 0;
        c.angle = a0;
        return c;
    }

    double h = m.a.real();
    bool in_band = std::abs(h - 1.0) <= 1e-9;
    if (in_band) {
        switch (m.source) {
            case MapSource::CanonicalParabolic: {
                Classification c;
                c.cls = MapClass::Parabolic;
                return c;
            }
            case MapSource::CanonicalHyperbolic: {
                Classification c;
                c.cls = MapClass::Hyperbolic;
                return c;
            }
            case MapSource::CanonicalRotation:
                break;  // exact elliptic construction, fall through
            case MapSource::RawMatrix:
                throw ambiguous_class(
                    "half-trace within 1e-9 of 1: supply a canonical parabolic "
                    "(or perturbed) form instead of a raw matrix");
        }
    }
    if (h > 1.0 && !in_band && m.source != MapSource::CanonicalRotation) {
        Classification c;
        c.cls = MapClass::Hyperbolic;
        return c;
    }

    // elliptic: rationality comes from the declared AngleSpec only
    if (!m.angle)
        throw missing_angle_spec("elliptic map requires a declared AngleSpec");
    FixedPointData fp = fixed_points(m);
    cplx mult = fp.points.front().derivative;
    if (std::abs(mult - m.angle->unit()) > 1e-8)
        throw error("declared angle inconsistent with rotation multiplier");
    Classification c;
    c.cls = m.angle->rational ? MapClass::EllipticRational : MapClass::EllipticIrrational;
    c.rotation = mult;
    c.order = m.angle->rational ? m.angle->primitive_order() : 0;
    c.angle = *m.angle;
    return c;
}

std::pair<MobiusMap, MobiusMap> conjugate_elliptic_to_rotation(const MobiusMap& m_in) {
    MobiusMap m = m_in;
    m.su_normalize();
    FixedPointData fp = fixed_points(m);
    bool elliptic = fp.all_points_fixed ||
                    (!fp.points.empty() && fp.points.front().location == PointLocation::Interior);
    if (!elliptic) throw not_elliptic("map has no interior fixed point");

    cplx z0 = fp.points.front().point;
    MobiusMap g;
    if (std::abs(z0) > 0.0) {
        double s = std::sqrt(1.0 - std::norm(z0));
        g.a = cplx(1.0 / s, 0.0);
        g.b = -z0 / s;
        g.su_normalize();
    }
    MobiusMap rot = g.compose(m).compose(g.inverse());
    if (std::abs(rot.b) > 1e-9)
        throw error("conjugation failed to produce a rotation");
    rot.b = 0.0;
    rot.a /= std::abs(rot.a);
    rot.source = MapSource::CanonicalRotation;
    rot.angle = m.angle;
    return {rot, g};
}

MobiusMap iterate(const MobiusMap& m, long long n) {
    MobiusMap result;  // identity
    result.source = (n == 0) ? MapSource::CanonicalRotation : m.source;
    if (n == 0) {
        result.angle = AngleSpec::make_rational(0, 1);
        return result;
    }
    MobiusMap base = (n < 0) ? m.inverse() : m;
    unsigned long long k = (n < 0) ? (unsigned long long)(-(n + 1)) + 1ULL
                                   : (unsigned long long)n;
    while (k > 0) {
        if (k & 1ULL) result = result.compose(base);
        k >>= 1;
        if (k) base = base.compose(base);
    }
    result.source = m.source;
    if (m.angle) {
        // relation tags describe a pair of angles; they do not transport
        if (m.angle->rational) {
            long long nn = m.angle->num * n % m.angle->den;
            result.angle = AngleSpec::make_rational(nn, m.angle->den);
        } else {
            result.angle = AngleSpec::make_irrational(wrap_angle(m.angle->radians * double(n)));
        }
    }
    return result;
}

}  // namespace bispec
