#pragma once

#include <string>
#include <vector>

#include "bispec/case_tag.hpp"
#include "bispec/map2.hpp"
#include "bispec/regions.hpp"

namespace bispec {

// Numerical cross-checks, independent of the closed-form engines: the
// spectral radius through cocycle sup-norms, invariant-measure quadrature,
// and membership probes on the torus. The oracle never overclaims: the only
// certified verdict is an exclusion backed by per-cell Lipschitz bounds.

struct OracleOptions {
    long long grid = 64;              // cells per axis on the torus
    long long n_max = 256;            // power of two
    long long horizon = 64;           // membership test depth
    long long quadrature_nodes = 4096;
    long long orbit_nodes = 16384;    // winding-circle families
    double slack = 1e-6;              // membership inequality slack per step
    long long seed = 0;               // probe phase offset
};

struct OracleEstimate {
    std::string quantity;
    double lower = 0.0;
    double upper = 0.0;
    long long n_used = 0;
    long long grid = 0;
    bool converged = false;  // bracket within 5% relative
};

// Certified upper via arc-box propagation of every grid cell (rotations keep
// arc widths, so the bound tightens as 1/n); sampled lower at n = n_max.
OracleEstimate birkhoff_radius(const WeightPoly& w, const Map2& f, long long n_max,
                               long long grid);

// Radius of the inverse operator, reciprocated: requires certified torus
// invertibility, otherwise (0, 0) by definition (converged only when the
// weight provably vanishes).
OracleEstimate rho_min_estimate(const WeightPoly& w, const Map2& f, long long n_max,
                                long long grid);

struct MeasureFamily {
    enum class Kind {
        TorusLebesgue,
        CircleSlice,                // finite first-coordinate orbit x full circle
        DiagonalOrbit,              // winding circles / finite joint orbits
        FixedPointAtom,
        BoundaryCircleAtFixedPoint, // circle in the rotation coordinate x atom
    };
    Kind kind;
    std::string label;
    std::vector<kernels::Point2> nodes;  // equal-weight quadrature nodes
};

// The invariant families relevant to the classified case. Every returned
// family satisfies: quadrature(f o Phi) = quadrature(f) to 1e-9 for
// trigonometric polynomials of degree below the node count.
std::vector<MeasureFamily> enumerate_measures(const CaseTag& tag, const Map2& f,
                                              const OracleOptions& opts = {});

// exp of the mean of log|w| over the family's nodes; 0 when the mean
// diverges below -40 (a zero of w on the support).
double measure_quadrature(const WeightPoly& w, const MeasureFamily& family);

struct MembershipResult {
    bool certified_out = false;
    kernels::Point2 witness{cplx(1.0, 0.0), cplx(1.0, 0.0)};
    double margin = 0.0;  // worst slack of the witness over the horizon
};

// Forward/backward cocycle tables over a cell decomposition of the torus,
// built once and probed per lambda. Bounds are certified per cell.
class CocycleTable {
  public:
    CocycleTable(const WeightPoly& w, const Map2& f, long long horizon, long long grid);

    // Exists t with |w_n(t)| >= |l|^n and |w_n back from t| <= |l|^n for all
    // n <= horizon (slack applied)? certified_out only when every cell is
    // excluded at some finite n by the Lipschitz bounds.
    MembershipResult ap_probe(double abs_lambda, double slack) const;
    // Mirror with the inequality directions swapped; never certifies.
    MembershipResult lsf_probe(double abs_lambda, double slack) const;

    long long grid() const { return grid_; }
    long long horizon() const { return horizon_; }

  private:
    long long grid_, horizon_;
    std::vector<kernels::Point2> centers_;
    // cumulative log bounds, cell-major: [cell * horizon + (n-1)]
    std::vector<double> fwd_lo_, fwd_hi_, bwd_lo_, bwd_hi_;
    std::vector<double> fwd_val_, bwd_val_;  // sampled center values
};

// Membership in the approximate point spectrum on the torus. Periodic joint
// rotations are probed against the exact power-image set on the bidisc
// instead (the horizon test is vacuous when the cocycle is periodic).
MembershipResult ap_membership_test(cplx lambda, const WeightPoly& w, const Map2& f,
                                    long long horizon, long long grid,
                                    double slack = 1e-6);
MembershipResult lsf_membership_test(cplx lambda, const WeightPoly& w, const Map2& f,
                                     long long horizon, long long grid,
                                     double slack = 1e-6);

// Radii of the restrictions to an attracting and a repelling invariant set,
// plus the wandering-zero flags; drives the semi-Fredholm inclusions.
struct AttractorData {
    double rho_k1 = 0.0, rho_min_k1 = 0.0;  // K1 = attracting set
    double rho_k2 = 0.0, rho_min_k2 = 0.0;  // K2 = repelling set
    bool wandering_zero = false;       // w vanishes at a wandering boundary point
    bool zero_orbit_finite = false;    // the zero set meets that orbit finitely
};

enum class SfTarget { Usf, Lsf, Sf };

struct AttractorInclusion {
    SpectralRegion region;  // always SubsetOfTruth
    SfTarget target;
};

std::vector<AttractorInclusion> attractor_inclusions(const AttractorData& a);

// Runs every oracle against a finished report; one entry per quantity plus
// aggregated membership probes. agree=false entries are genuine
// disagreements (the closed form fell outside the widened oracle bracket).
std::vector<OracleRecordEntry> cross_check(const SpectrumReport& report,
                                           const WeightPoly& w, const Map2& f,
                                           const CaseTag& tag,
                                           const OracleOptions& opts = {},
                                           const OptimizeOptions& budget = {});

}  // namespace bispec
