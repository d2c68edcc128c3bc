#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bispec/optimize.hpp"
#include "bispec/poly.hpp"
#include "json.hpp"

namespace bispec {

// How a reported region relates to the true spectrum.
enum class Exactness { Exact, SupersetOfTruth, SubsetOfTruth, OracleEstimate };

enum class Location { In, Boundary, Out };

enum class ProfileSelector { AGeqB, ALtB };

// All primitives are centered at the origin. Disk and Annulus are closed.
struct Disk {
    double R = 0.0;
};
struct Circle {
    double r = 0.0;
};
struct Annulus {
    double r = 0.0, R = 0.0;
};
struct PointZero {};

// {lambda : lambda^m = poly(t) for some t in the domain}
struct RootImage {
    int m = 1;
    Domain domain = Domain::Torus2;
    WeightPoly poly;
};

// Union over a selected part of a sampled parameter circle of the annuli
// between two radial profiles. samples[k] = (a, b) at angle 2*pi*k/N.
struct ParamAnnulusUnion {
    ProfileSelector selector = ProfileSelector::AGeqB;
    std::vector<std::array<double, 2>> samples;

    // merged radial intervals [lo, hi] of the selected annuli
    std::vector<std::array<double, 2>> intervals() const;
    // largest adjacent-sample jump; membership flags Boundary within it
    double band() const;
};

using RegionPrimitive =
    std::variant<Disk, Circle, Annulus, PointZero, RootImage, ParamAnnulusUnion>;

struct SpectralRegion {
    Exactness exactness = Exactness::Exact;
    std::vector<RegionPrimitive> primitives;
};

struct OracleRecordEntry {
    std::string quantity;
    std::optional<double> closed_form;  // absent when no closed form is claimed
    double lower = 0.0, upper = 0.0;
    bool agree = true;
};

struct SpectrumReport {
    std::string case_tag;
    SpectralRegion sigma, sigma_ap, sigma_usf, sigma_lsf;
    std::vector<OracleRecordEntry> oracle_record;
    std::vector<std::string> notes;
};

bool operator==(const RegionPrimitive& x, const RegionPrimitive& y);
bool operator==(const SpectralRegion& x, const SpectralRegion& y);
bool operator==(const OracleRecordEntry& x, const OracleRecordEntry& y);
bool operator==(const SpectrumReport& x, const SpectrumReport& y);

// Membership with a tolerance band: signed radial distance <= 0 is In,
// <= tol is Boundary. RootImage asks whether poly - lambda^m vanishes on its
// domain (certified; an inconclusive certificate maps to Boundary).
Location contains(const RegionPrimitive& p, cplx lambda, double tol,
                  const OptimizeOptions& opts = {});
Location contains(const SpectralRegion& region, cplx lambda, double tol,
                  const OptimizeOptions& opts = {});

// (min, max) of |lambda| over the region
std::array<double, 2> radial_bounds(const RegionPrimitive& p,
                                    const OptimizeOptions& opts = {});
std::array<double, 2> radial_bounds(const SpectralRegion& region,
                                    const OptimizeOptions& opts = {});

// Rewrites degenerate primitives (Annulus(r,r) -> Circle, Disk(0) ->
// PointZero, ...), drops radial primitives contained in another, sorts
// deterministically. Idempotent.
void canonicalize(SpectralRegion& region);

nlohmann::json to_json(const SpectralRegion& region);
nlohmann::json to_json(const SpectrumReport& report);
SpectralRegion region_from_json(const nlohmann::json& j);
SpectrumReport report_from_json(const nlohmann::json& j);

// One panel per spectrum; deterministic bytes. size = panel edge in pixels.
std::string to_svg(const SpectrumReport& report, int size);

}  // namespace bispec
