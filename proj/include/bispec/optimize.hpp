#pragma once

#include <cstddef>

#include "bispec/kernels.hpp"
#include "bispec/poly.hpp"

namespace bispec {

enum class Domain { Torus2, Bidisc };

struct OptimizeOptions {
    double tol = 1e-6;             // relative gap target for value brackets
    std::size_t max_cells = 1'000'000;
    double zero_eps = 1e-12;       // |w| <= zero_eps * scale counts as a zero hit
};

// Certified bracket for an extremum of |w| obtained by branch and bound over
// boxes with the coefficient gradient bound Lk = sum |c_ij| * (degree in
// coordinate k). 'converged' is false when the cell budget ran out first; the
// bracket is still valid.
struct BoundResult {
    double lower = 0.0;
    double upper = 0.0;
    kernels::Point2 witness{};     // attains 'upper' (min) or 'lower' (max)
    bool zero_found = false;
    bool converged = false;
    std::size_t cells_processed = 0;
};

BoundResult certified_min_modulus(const WeightPoly& w, Domain dom,
                                  const OptimizeOptions& opts = {});
BoundResult certified_max_modulus_torus(const WeightPoly& w,
                                        const OptimizeOptions& opts = {});

struct Bound1Result {
    double lower = 0.0;
    double upper = 0.0;
    double witness_angle = 0.0;
    bool zero_found = false;
    bool converged = false;
    std::size_t cells_processed = 0;
};

Bound1Result certified_min_modulus_circle(const Poly1& p,
                                          const OptimizeOptions& opts = {});
Bound1Result certified_max_modulus_circle(const Poly1& p,
                                          const OptimizeOptions& opts = {});

// Zero-freeness decision: prune cells whose lower bound is positive, subdivide
// the rest; a certified answer needs no accuracy target, only the budget.
enum class Vanishing { ZeroFree, ZeroFound, Inconclusive };

struct VanishingResult {
    Vanishing verdict = Vanishing::Inconclusive;
    kernels::Point2 witness{};
    double witness_value = 0.0;    // |w| at the witness when verdict is ZeroFound
    double positive_floor = 0.0;   // certified lower bound when ZeroFree
    std::size_t cells_processed = 0;
};

VanishingResult certify_nonvanishing(const WeightPoly& w, Domain dom,
                                     const OptimizeOptions& opts = {});

// Witness hunts; 'found' means |w| at the returned point is below the zero
// threshold, it is not a certificate of an exact zero.
struct ZeroWitness {
    bool found = false;
    kernels::Point2 z{};
    double value = 0.0;
};

ZeroWitness find_torus_zero(const WeightPoly& w);
ZeroWitness find_bidisc_zero(const WeightPoly& w);

// Invertibility of the weight as an element of C(T^2) and of the bidisc
// algebra. The second question subsumes the first; both are decided by
// nonvanishing certificates with witness hunts run first.
enum class InvertibilityStatus {
    InvertibleA2,        // no zero on the closed bidisc
    InvertibleCT2Only,   // no zero on the torus, but a zero inside
    NotInvertibleCT2,    // zero on the torus
    Inconclusive
};

struct InvertibilityReport {
    InvertibilityStatus status = InvertibilityStatus::Inconclusive;
    bool has_witness = false;
    kernels::Point2 zero_witness{};
    double torus_floor = 0.0;      // certified min |w| lower bound on the torus
    double bidisc_floor = 0.0;     // same on the closed bidisc (when reached)
};

InvertibilityReport invertibility_status(const WeightPoly& w,
                                         const OptimizeOptions& opts = {});

}  // namespace bispec
