#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bispec/case_tag.hpp"
#include "bispec/map2.hpp"
#include "bispec/oracle.hpp"
#include "bispec/regions.hpp"

namespace bispec {

struct ReportOptions {
    OracleOptions oracle;
    OptimizeOptions optimize;         // subdivision budget for certification steps
    long long profile_samples = 256;  // angular resolution of sampled band unions
    bool run_oracle = true;           // attach cross-check records to the report
};

// Radial profiles |w_p(s, zeta_k)|^{1/p} over the rotation circle at the two
// fixed points of a hyperbolic second factor (zeta1 attracting). in_e marks
// a >= b; in_f marks angles s where w(s, .) vanishes somewhere on the circle.
// r and R are certified circle extrema, not sampled ones.
struct HyperbolicProfile {
    std::vector<double> a, b;
    std::vector<unsigned char> in_e, in_f;
    double r = 0.0, R = 0.0;
};

HyperbolicProfile hyperbolic_profile(const WeightPoly& w, long long p, cplx alpha1,
                                     cplx zeta1, cplx zeta2, long long samples = 256,
                                     bool want_f = false,
                                     const OptimizeOptions& opts = {});

// |w| at the four fixed-point pairs of a hyperbolic x hyperbolic map,
// attracting coordinates first: (s1,z1), (s1,z2), (s2,z1), (s2,z2).
struct FixedPointGrid {
    std::array<kernels::Point2, 4> point{};
    std::array<double, 4> value{};
    double r = 0.0, R = 0.0;
};

FixedPointGrid fixed_point_grid(const MobiusMap& phi, const MobiusMap& psi,
                                const WeightPoly& w);

// Normalized taxonomy for a coordinatewise pair. Orders the factors
// (elliptic < parabolic < hyperbolic, rational rotations first), refuses
// elliptic factors not supplied as canonical rotations, and records the
// invertibility trichotomy of the weight. Engines receive the pair in this
// normalized order together with the swapped weight when applicable.
CaseTag classify_case(const MobiusMap& phi, const MobiusMap& psi, const WeightPoly& w,
                      const OptimizeOptions& opts = {});

// classify_case for a Map2, handling swap form: a swap-form map is tagged by
// its coordinatewise square (parabolic or hyperbolic only) with crossed set.
CaseTag classify_input(const Map2& f, const WeightPoly& w,
                       const OptimizeOptions& opts = {});

// Case engines. Each consumes the normalized pair and emits the four spectra
// for one family of boundary dynamics. One-sided results carry
// SubsetOfTruth; purely numerical radii carry OracleEstimate.
SpectrumReport spectra_rat_rat(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                               const ReportOptions& opts = {});
SpectrumReport spectra_rat_irr(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                               const ReportOptions& opts = {});
SpectrumReport spectra_irr_generic(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                                   const ReportOptions& opts = {});
SpectrumReport spectra_irr_related(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                                   const ReportOptions& opts = {});
SpectrumReport spectra_mixed_relation(const CaseTag& tag, const WeightPoly& w,
                                      const Map2& f, const ReportOptions& opts = {});
SpectrumReport spectra_rat_parabolic(const CaseTag& tag, const WeightPoly& w,
                                     const Map2& f, const ReportOptions& opts = {});
SpectrumReport spectra_irr_parabolic(const CaseTag& tag, const WeightPoly& w,
                                     const Map2& f, const ReportOptions& opts = {});
SpectrumReport spectra_par_par(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                               const ReportOptions& opts = {});
SpectrumReport spectra_rat_hyperbolic(const CaseTag& tag, const WeightPoly& w,
                                      const Map2& f, const ReportOptions& opts = {});
SpectrumReport spectra_irr_hyperbolic(const CaseTag& tag, const WeightPoly& w,
                                      const Map2& f, const ReportOptions& opts = {});
SpectrumReport spectra_par_hyperbolic(const CaseTag& tag, const WeightPoly& w,
                                      const Map2& f, const ReportOptions& opts = {});
SpectrumReport spectra_hyp_hyp(const CaseTag& tag, const WeightPoly& w, const Map2& f,
                               const ReportOptions& opts = {});

// Swap-form reduction: the coordinatewise square of the map plus the weight
// of the squared operator, w2(z) = w(z) * w(f(z)). The closure leaves the
// polynomial ring only through f, so it is exposed pointwise.
struct CrossedReduction {
    Map2 square;
    std::function<cplx(const kernels::Point2&)> weight2;
};

CrossedReduction reduce_crossed(const Map2& f, const WeightPoly& w);

// Preimage of a rotation-invariant region under squaring. Exact regions stay
// exact; every other grade degrades to OracleEstimate.
SpectralRegion radial_sqrt(const SpectralRegion& squared);

// Classify, dispatch to the matching engine, validate radial containment of
// the four spectra, and (unless disabled) attach oracle cross-checks.
// Swap-form maps route through the square of the operator and radial_sqrt.
SpectrumReport compute_report(const Map2& f, const WeightPoly& w,
                              const ReportOptions& opts = {});
SpectrumReport compute_report(const MobiusMap& phi, const MobiusMap& psi,
                              const WeightPoly& w, const ReportOptions& opts = {});

}  // namespace bispec
