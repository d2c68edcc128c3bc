#include "bispec/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bispec {
namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

double poly_scale(const WeightPoly& p) { return 1.0 + p.coeff_abs_sum(); }

// Sampled minimum of |poly - target| over the primitive's domain; cheap
// filter run before the certified machinery.
double sampled_min_shift(const WeightPoly& poly, Domain dom, cplx target,
                         kernels::Point2* argmin = nullptr) {
    double best = INF;
    auto visit = [&](cplx z1, cplx z2) {
        double v = std::abs(poly(z1, z2) - target);
        if (v < best) {
            best = v;
            if (argmin) *argmin = {z1, z2};
        }
    };
    if (dom == Domain::Torus2) {
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j)
                visit(std::polar(1.0, TAU * i / 64.0), std::polar(1.0, TAU * j / 64.0));
    } else {
        for (int a = 0; a < 5; ++a)
            for (int i = 0; i < 16; ++i)
                for (int b = 0; b < 5; ++b)
                    for (int j = 0; j < 16; ++j)
                        visit(std::polar(0.25 * a, TAU * i / 16.0),
                              std::polar(0.25 * b, TAU * j / 16.0));
    }
    return best;
}

Location locate_root_image(const RootImage& ri, cplx lambda, double tol,
                           OptimizeOptions opts) {
    cplx target = cpow_int(lambda, ri.m);
    WeightPoly shifted = ri.poly - WeightPoly::constant(target);
    double scale = poly_scale(shifted);
    if (sampled_min_shift(ri.poly, ri.domain, target) <= 1e-9 * scale) return Location::In;

    ZeroWitness hunt = ri.domain == Domain::Torus2 ? find_torus_zero(shifted)
                                                   : find_bidisc_zero(shifted);
    if (hunt.found) return Location::In;

    opts.max_cells = std::min<std::size_t>(opts.max_cells, 200'000);
    VanishingResult v = certify_nonvanishing(shifted, ri.domain, opts);
    if (v.verdict == Vanishing::ZeroFound) return Location::In;
    if (v.verdict == Vanishing::Inconclusive) return Location::Boundary;
    return v.positive_floor <= tol * scale ? Location::Boundary : Location::Out;
}

std::array<double, 2> root_image_bounds(const RootImage& ri, OptimizeOptions opts) {
    BoundResult mx = certified_max_modulus_torus(ri.poly, opts);
    double outer = std::pow(mx.upper, 1.0 / double(ri.m));
    double inner = 0.0;
    if (ri.domain == Domain::Torus2) {
        BoundResult mn = certified_min_modulus(ri.poly, Domain::Torus2, opts);
        inner = std::pow(std::max(0.0, mn.lower), 1.0 / double(ri.m));
        if (mn.zero_found) inner = 0.0;
    } else {
        // a zero-free holomorphic function attains its minimum modulus on the
        // distinguished boundary, so the bidisc minimum reduces to the torus
        ZeroWitness hunt = find_bidisc_zero(ri.poly);
        if (!hunt.found) {
            opts.max_cells = std::min<std::size_t>(opts.max_cells, 400'000);
            VanishingResult v = certify_nonvanishing(ri.poly, Domain::Bidisc, opts);
            if (v.verdict == Vanishing::ZeroFree) {
                BoundResult mn = certified_min_modulus(ri.poly, Domain::Torus2, opts);
                inner = std::pow(std::max(0.0, mn.lower), 1.0 / double(ri.m));
            }
        }
    }
    return {inner, outer};
}

// [lo, hi] radial interval of a purely radial primitive; nullopt otherwise
std::optional<std::array<double, 2>> radial_interval(const RegionPrimitive& p) {
    if (const Disk* d = std::get_if<Disk>(&p)) return std::array<double, 2>{0.0, d->R};
    if (const Circle* c = std::get_if<Circle>(&p))
        return std::array<double, 2>{c->r, c->r};
    if (const Annulus* a = std::get_if<Annulus>(&p))
        return std::array<double, 2>{a->r, a->R};
    if (std::get_if<PointZero>(&p)) return std::array<double, 2>{0.0, 0.0};
    return std::nullopt;
}

int kind_rank(const RegionPrimitive& p) { return int(p.index()); }

}  // namespace

std::vector<std::array<double, 2>> ParamAnnulusUnion::intervals() const {
    std::vector<std::array<double, 2>> iv;
    for (const std::array<double, 2>& s : samples) {
        bool selected = selector == ProfileSelector::AGeqB ? s[0] >= s[1] : s[0] < s[1];
        if (selected) iv.push_back({std::min(s[0], s[1]), std::max(s[0], s[1])});
    }
    std::sort(iv.begin(), iv.end());
    std::vector<std::array<double, 2>> merged;
    for (const std::array<double, 2>& v : iv) {
        if (!merged.empty() && v[0] <= merged.back()[1])
            merged.back()[1] = std::max(merged.back()[1], v[1]);
        else
            merged.push_back(v);
    }
    return merged;
}

double ParamAnnulusUnion::band() const {
    if (samples.size() < 2) return 0.0;
    double b = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const std::array<double, 2>& x = samples[k];
        const std::array<double, 2>& y = samples[(k + 1) % samples.size()];
        b = std::max({b, std::abs(x[0] - y[0]), std::abs(x[1] - y[1])});
    }
    return b;
}

Location contains(const RegionPrimitive& p, cplx lambda, double tol,
                  const OptimizeOptions& opts) {
    double x = std::abs(lambda);
    if (std::optional<std::array<double, 2>> iv = radial_interval(p)) {
        double d = std::max((*iv)[0] - x, x - (*iv)[1]);
        if (d <= 0.0) return Location::In;
        return d <= tol ? Location::Boundary : Location::Out;
    }
    if (const RootImage* ri = std::get_if<RootImage>(&p))
        return locate_root_image(*ri, lambda, tol, opts);
    const ParamAnnulusUnion& pu = std::get<ParamAnnulusUnion>(p);
    double d = INF;
    for (const std::array<double, 2>& iv : pu.intervals())
        d = std::min(d, std::max(iv[0] - x, x - iv[1]));
    if (d <= 0.0) return Location::In;
    return d <= tol + pu.band() ? Location::Boundary : Location::Out;
}

Location contains(const SpectralRegion& region, cplx lambda, double tol,
                  const OptimizeOptions& opts) {
    Location best = Location::Out;
    for (const RegionPrimitive& p : region.primitives) {
        Location loc = contains(p, lambda, tol, opts);
        if (loc == Location::In) return Location::In;
        if (loc == Location::Boundary) best = Location::Boundary;
    }
    return best;
}

std::array<double, 2> radial_bounds(const RegionPrimitive& p,
                                    const OptimizeOptions& opts) {
    if (std::optional<std::array<double, 2>> iv = radial_interval(p)) return *iv;
    if (const RootImage* ri = std::get_if<RootImage>(&p))
        return root_image_bounds(*ri, opts);
    const ParamAnnulusUnion& pu = std::get<ParamAnnulusUnion>(p);
    std::vector<std::array<double, 2>> iv = pu.intervals();
    if (iv.empty()) return {0.0, 0.0};
    double lo = INF, hi = 0.0;
    for (const std::array<double, 2>& v : iv) {
        lo = std::min(lo, v[0]);
        hi = std::max(hi, v[1]);
    }
    return {lo, hi};
}

std::array<double, 2> radial_bounds(const SpectralRegion& region,
                                    const OptimizeOptions& opts) {
    double lo = INF, hi = 0.0;
    for (const RegionPrimitive& p : region.primitives) {
        std::array<double, 2> b = radial_bounds(p, opts);
        lo = std::min(lo, b[0]);
        hi = std::max(hi, b[1]);
    }
    if (region.primitives.empty()) return {0.0, 0.0};
    return {lo, hi};
}

void canonicalize(SpectralRegion& region) {
    // a band union whose selector matched no angle is the empty set, not a
    // primitive with a zero radial footprint
    std::erase_if(region.primitives, [](const RegionPrimitive& p) {
        const ParamAnnulusUnion* pu = std::get_if<ParamAnnulusUnion>(&p);
        return pu && pu->intervals().empty();
    });
    for (RegionPrimitive& p : region.primitives) {
        if (Annulus* a = std::get_if<Annulus>(&p)) {
            if (a->R <= 0.0)
                p = PointZero{};
            else if (a->r == a->R)
                p = Circle{a->r};
            else if (a->r <= 0.0)
                p = Disk{a->R};
        }
        if (Disk* d = std::get_if<Disk>(&p))
            if (d->R <= 0.0) p = PointZero{};
        if (Circle* c = std::get_if<Circle>(&p))
            if (c->r <= 0.0) p = PointZero{};
    }
    std::vector<char> drop(region.primitives.size(), 0);
    for (std::size_t i = 0; i < region.primitives.size(); ++i) {
        std::optional<std::array<double, 2>> a = radial_interval(region.primitives[i]);
        if (!a) continue;
        for (std::size_t j = 0; j < region.primitives.size() && !drop[i]; ++j) {
            if (i == j || drop[j]) continue;
            std::optional<std::array<double, 2>> b = radial_interval(region.primitives[j]);
            if (!b) continue;
            // radial interval coverage is set coverage for these primitives
            // (degenerate annuli were already rewritten above)
            bool covered = (*b)[0] <= (*a)[0] && (*a)[1] <= (*b)[1];
            if (!covered) continue;
            if (j < i || !((*a)[0] <= (*b)[0] && (*b)[1] <= (*a)[1]))
                drop[i] = 1;  // keep the earlier one when the intervals tie
        }
    }
    std::vector<RegionPrimitive> kept;
    for (std::size_t i = 0; i < region.primitives.size(); ++i)
        if (!drop[i]) kept.push_back(region.primitives[i]);
    std::stable_sort(kept.begin(), kept.end(),
                     [](const RegionPrimitive& x, const RegionPrimitive& y) {
                         if (kind_rank(x) != kind_rank(y))
                             return kind_rank(x) < kind_rank(y);
                         std::optional<std::array<double, 2>> a = radial_interval(x);
                         std::optional<std::array<double, 2>> b = radial_interval(y);
                         if (a && b) return *a < *b;
                         return false;
                     });
    kept.erase(std::unique(kept.begin(), kept.end(),
                           [](const RegionPrimitive& x, const RegionPrimitive& y) {
                               return x == y;
                           }),
               kept.end());
    region.primitives = std::move(kept);
}

bool operator==(const RegionPrimitive& x, const RegionPrimitive& y) {
    if (x.index() != y.index()) return false;
    if (const Disk* d = std::get_if<Disk>(&x)) return d->R == std::get<Disk>(y).R;
    if (const Circle* c = std::get_if<Circle>(&x)) return c->r == std::get<Circle>(y).r;
    if (const Annulus* a = std::get_if<Annulus>(&x)) {
        const Annulus& b = std::get<Annulus>(y);
        return a->r == b.r && a->R == b.R;
    }
    if (std::get_if<PointZero>(&x)) return true;
    if (const RootImage* r = std::get_if<RootImage>(&x)) {
        const RootImage& s = std::get<RootImage>(y);
        return r->m == s.m && r->domain == s.domain && r->poly == s.poly;
    }
    const ParamAnnulusUnion& p = std::get<ParamAnnulusUnion>(x);
    const ParamAnnulusUnion& q = std::get<ParamAnnulusUnion>(y);
    return p.selector == q.selector && p.samples == q.samples;
}

bool operator==(const SpectralRegion& x, const SpectralRegion& y) {
    return x.exactness == y.exactness && x.primitives == y.primitives;
}

bool operator==(const OracleRecordEntry& x, const OracleRecordEntry& y) {
    return x.quantity == y.quantity && x.closed_form == y.closed_form &&
           x.lower == y.lower && x.upper == y.upper && x.agree == y.agree;
}

bool operator==(const SpectrumReport& x, const SpectrumReport& y) {
    return x.case_tag == y.case_tag && x.sigma == y.sigma && x.sigma_ap == y.sigma_ap &&
           x.sigma_usf == y.sigma_usf && x.sigma_lsf == y.sigma_lsf &&
           x.oracle_record == y.oracle_record && x.notes == y.notes;
}

namespace {

const char* exactness_name(Exactness e) {
    switch (e) {
        case Exactness::Exact: return "exact";
        case Exactness::SupersetOfTruth: return "superset_of_truth";
        case Exactness::SubsetOfTruth: return "subset_of_truth";
        default: return "oracle_estimate";
    }
}

Exactness exactness_from(const std::string& s) {
    if (s == "exact") return Exactness::Exact;
    if (s == "superset_of_truth") return Exactness::SupersetOfTruth;
    if (s == "subset_of_truth") return Exactness::SubsetOfTruth;
    if (s == "oracle_estimate") return Exactness::OracleEstimate;
    throw config_error("unknown exactness: " + s);
}

nlohmann::json primitive_to_json(const RegionPrimitive& p) {
    nlohmann::json j;
    if (const Disk* d = std::get_if<Disk>(&p)) {
        j["primitive"] = "disk";
        j["R"] = d->R;
    } else if (const Circle* c = std::get_if<Circle>(&p)) {
        j["primitive"] = "circle";
        j["r"] = c->r;
    } else if (const Annulus* a = std::get_if<Annulus>(&p)) {
        j["primitive"] = "annulus";
        j["r"] = a->r;
        j["R"] = a->R;
    } else if (std::get_if<PointZero>(&p)) {
        j["primitive"] = "point_zero";
    } else if (const RootImage* ri = std::get_if<RootImage>(&p)) {
        j["primitive"] = "root_image";
        j["m"] = ri->m;
        j["domain"] = ri->domain == Domain::Torus2 ? "torus2" : "bidisc";
        nlohmann::json terms = nlohmann::json::array();
        for (const Term& t : ri->poly.terms())
            terms.push_back({t.i, t.j, t.c.real(), t.c.imag()});
        j["poly"] = std::move(terms);
    } else {
        const ParamAnnulusUnion& pu = std::get<ParamAnnulusUnion>(p);
        j["primitive"] = "param_annulus_union";
        j["selector"] = pu.selector == ProfileSelector::AGeqB ? "a_ge_b" : "a_lt_b";
        nlohmann::json samples = nlohmann::json::array();
        for (const std::array<double, 2>& s : pu.samples) samples.push_back({s[0], s[1]});
        j["samples"] = std::move(samples);
    }
    return j;
}

RegionPrimitive primitive_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("primitive").get<std::string>();
    if (kind == "disk") return Disk{j.at("R").get<double>()};
    if (kind == "circle") return Circle{j.at("r").get<double>()};
    if (kind == "annulus") return Annulus{j.at("r").get<double>(), j.at("R").get<double>()};
    if (kind == "point_zero") return PointZero{};
    if (kind == "root_image") {
        RootImage ri;
        ri.m = j.at("m").get<int>();
        const std::string dom = j.at("domain").get<std::string>();
        if (dom == "torus2")
            ri.domain = Domain::Torus2;
        else if (dom == "bidisc")
            ri.domain = Domain::Bidisc;
        else
            throw config_error("unknown root_image domain: " + dom);
        std::vector<Term> ts;
        for (const nlohmann::json& t : j.at("poly"))
            ts.push_back({t.at(0).get<int>(), t.at(1).get<int>(),
                          cplx(t.at(2).get<double>(), t.at(3).get<double>())});
        ri.poly = WeightPoly::from_terms(std::move(ts));
        return ri;
    }
    if (kind == "param_annulus_union") {
        ParamAnnulusUnion pu;
        const std::string sel = j.at("selector").get<std::string>();
        if (sel == "a_ge_b")
            pu.selector = ProfileSelector::AGeqB;
        else if (sel == "a_lt_b")
            pu.selector = ProfileSelector::ALtB;
        else
            throw config_error("unknown selector: " + sel);
        for (const nlohmann::json& s : j.at("samples"))
            pu.samples.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
        return pu;
    }
    throw config_error("unknown primitive: " + kind);
}

}  // namespace

nlohmann::json to_json(const SpectralRegion& region) {
    nlohmann::json j;
    j["exactness"] = exactness_name(region.exactness);
    nlohmann::json prims = nlohmann::json::array();
    for (const RegionPrimitive& p : region.primitives) prims.push_back(primitive_to_json(p));
    j["primitives"] = std::move(prims);
    return j;
}

SpectralRegion region_from_json(const nlohmann::json& j) {
    SpectralRegion r;
    r.exactness = exactness_from(j.at("exactness").get<std::string>());
    for (const nlohmann::json& p : j.at("primitives"))
        r.primitives.push_back(primitive_from_json(p));
    return r;
}

nlohmann::json to_json(const SpectrumReport& report) {
    nlohmann::json j;
    j["case_tag"] = report.case_tag;
    j["sigma"] = to_json(report.sigma);
    j["sigma_ap"] = to_json(report.sigma_ap);
    j["sigma_usf"] = to_json(report.sigma_usf);
    j["sigma_lsf"] = to_json(report.sigma_lsf);
    nlohmann::json rec = nlohmann::json::array();
    for (const OracleRecordEntry& e : report.oracle_record) {
        nlohmann::json je;
        je["quantity"] = e.quantity;
        if (e.closed_form)
            je["closed_form"] = *e.closed_form;
        else
            je["closed_form"] = nullptr;
        je["lower"] = e.lower;
        je["upper"] = e.upper;
        je["agree"] = e.agree;
        rec.push_back(std::move(je));
    }
    j["oracle_record"] = std::move(rec);
    j["notes"] = report.notes;
    return j;
}

SpectrumReport report_from_json(const nlohmann::json& j) {
    SpectrumReport r;
    r.case_tag = j.at("case_tag").get<std::string>();
    r.sigma = region_from_json(j.at("sigma"));
    r.sigma_ap = region_from_json(j.at("sigma_ap"));
    r.sigma_usf = region_from_json(j.at("sigma_usf"));
    r.sigma_lsf = region_from_json(j.at("sigma_lsf"));
    for (const nlohmann::json& je : j.at("oracle_record")) {
        OracleRecordEntry e;
        e.quantity = je.at("quantity").get<std::string>();
        if (!je.at("closed_form").is_null()) e.closed_form = je.at("closed_form").get<double>();
        e.lower = je.at("lower").get<double>();
        e.upper = je.at("upper").get<double>();
        e.agree = je.at("agree").get<bool>();
        r.oracle_record.push_back(std::move(e));
    }
    for (const nlohmann::json& n : j.at("notes")) r.notes.push_back(n.get<std::string>());
    return r;
}

}  // namespace bispec
