#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <utility>

#include "bispec/regions.hpp"

namespace bispec {
namespace {

std::string g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* exactness_caption(Exactness e) {
    switch (e) {
        case Exactness::Exact: return "exact";
        case Exactness::SupersetOfTruth: return "superset of truth";
        case Exactness::SubsetOfTruth: return "subset of truth";
        default: return "oracle estimate";
    }
}

// Display radius only; sampled, not certified.
double display_outer(const RegionPrimitive& p) {
    if (const Disk* d = std::get_if<Disk>(&p)) return d->R;
    if (const Circle* c = std::get_if<Circle>(&p)) return c->r;
    if (const Annulus* a = std::get_if<Annulus>(&p)) return a->R;
    if (std::get_if<PointZero>(&p)) return 0.0;
    if (const RootImage* ri = std::get_if<RootImage>(&p)) {
        double mx = 0.0;
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j)
                mx = std::max(mx, std::abs(ri->poly(std::polar(1.0, TAU * i / 32.0),
                                                    std::polar(1.0, TAU * j / 32.0))));
        return std::pow(mx, 1.0 / double(ri->m));
    }
    const ParamAnnulusUnion& pu = std::get<ParamAnnulusUnion>(p);
    double mx = 0.0;
    for (const std::array<double, 2>& iv : pu.intervals()) mx = std::max(mx, iv[1]);
    return mx;
}

double display_outer(const SpectralRegion& r) {
    double mx = 0.0;
    for (const RegionPrimitive& p : r.primitives) mx = std::max(mx, display_outer(p));
    return mx;
}

void circle_path(std::string& out, double cx, double cy, double r) {
    out += "M" + g6(cx + r) + "," + g6(cy);
    out += "A" + g6(r) + "," + g6(r) + " 0 1,0 " + g6(cx - r) + "," + g6(cy);
    out += "A" + g6(r) + "," + g6(r) + " 0 1,0 " + g6(cx + r) + "," + g6(cy);
}

void draw_annulus(std::string& out, double cx, double cy, double ri, double ro) {
    out += "<path fill=\"#4477aa\" fill-opacity=\"0.35\" fill-rule=\"evenodd\" d=\"";
    circle_path(out, cx, cy, ro);
    circle_path(out, cx, cy, ri);
    out += "Z\"/>\n";
}

void draw_disk(std::string& out, double cx, double cy, double r) {
    out += "<circle cx=\"" + g6(cx) + "\" cy=\"" + g6(cy) + "\" r=\"" + g6(r) +
           "\" fill=\"#4477aa\" fill-opacity=\"0.35\"/>\n";
}

void draw_circle(std::string& out, double cx, double cy, double r) {
    out += "<circle cx=\"" + g6(cx) + "\" cy=\"" + g6(cy) + "\" r=\"" + g6(r) +
           "\" fill=\"none\" stroke=\"#4477aa\" stroke-width=\"2\"/>\n";
}

void draw_dot(std::string& out, double cx, double cy) {
    out += "<circle cx=\"" + g6(cx) + "\" cy=\"" + g6(cy) +
           "\" r=\"3\" fill=\"#4477aa\"/>\n";
}

// For each domain sample z, lambda^m = poly(z) contributes all m roots;
// dots are deduplicated on the pixel grid so output stays bounded.
void draw_root_image(std::string& out, const RootImage& ri, double cx, double cy,
                     double scale) {
    std::set<std::pair<int, int>> px;
    auto add = [&](cplx z1, cplx z2) {
        cplx u = ri.poly(z1, z2);
        double rad = std::pow(std::abs(u), 1.0 / double(ri.m));
        double base = std::arg(u) / double(ri.m);
        for (int k = 0; k < ri.m; ++k) {
            double ang = base + TAU * k / double(ri.m);
            px.insert({int(std::lround(cx + rad * std::cos(ang) * scale)),
                       int(std::lround(cy - rad * std::sin(ang) * scale))});
        }
    };
    if (ri.domain == Domain::Torus2) {
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j)
                add(std::polar(1.0, TAU * i / 64.0), std::polar(1.0, TAU * j / 64.0));
    } else {
        for (int a = 0; a <= 3; ++a)
            for (int i = 0; i < 16; ++i)
                for (int b = 0; b <= 3; ++b)
                    for (int j = 0; j < 16; ++j)
                        add(std::polar(a / 3.0, TAU * i / 16.0),
                            std::polar(b / 3.0, TAU * j / 16.0));
    }
    out += "<g fill=\"#4477aa\" fill-opacity=\"0.5\">\n";
    for (const std::pair<int, int>& q : px)
        out += "<circle cx=\"" + std::to_string(q.first) + "\" cy=\"" +
               std::to_string(q.second) + "\" r=\"1.2\"/>\n";
    out += "</g>\n";
}

void draw_primitive(std::string& out, const RegionPrimitive& p, double cx, double cy,
                    double scale) {
    if (const Disk* d = std::get_if<Disk>(&p)) {
        draw_disk(out, cx, cy, d->R * scale);
    } else if (const Circle* c = std::get_if<Circle>(&p)) {
        draw_circle(out, cx, cy, c->r * scale);
    } else if (const Annulus* a = std::get_if<Annulus>(&p)) {
        draw_annulus(out, cx, cy, a->r * scale, a->R * scale);
    } else if (std::get_if<PointZero>(&p)) {
        draw_dot(out, cx, cy);
    } else if (const RootImage* ri = std::get_if<RootImage>(&p)) {
        draw_root_image(out, *ri, cx, cy, scale);
    } else {
        const ParamAnnulusUnion& pu = std::get<ParamAnnulusUnion>(p);
        for (const std::array<double, 2>& iv : pu.intervals()) {
            if (iv[1] - iv[0] <= 1e-9)
                draw_circle(out, cx, cy, iv[1] * scale);
            else if (iv[0] <= 0.0)
                draw_disk(out, cx, cy, iv[1] * scale);
            else
                draw_annulus(out, cx, cy, iv[0] * scale, iv[1] * scale);
        }
    }
}

void draw_panel(std::string& out, const SpectralRegion& r, const char* label,
                double ox, double oy, int size, double scale) {
    double cx = ox + size * 0.5;
    double cy = oy + size * 0.5 + 8.0;
    out += "<rect x=\"" + g6(ox + 1) + "\" y=\"" + g6(oy + 1) + "\" width=\"" +
           std::to_string(size - 2) + "\" height=\"" + std::to_string(size - 2) +
           "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    out += "<text x=\"" + g6(ox + 10) + "\" y=\"" + g6(oy + 18) +
           "\" font-family=\"sans-serif\" font-size=\"13\">" + label + " (" +
           exactness_caption(r.exactness) + ")</text>\n";
    out += "<circle cx=\"" + g6(cx) + "\" cy=\"" + g6(cy) + "\" r=\"" + g6(scale) +
           "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4,3\"/>\n";
    for (const RegionPrimitive& p : r.primitives) draw_primitive(out, p, cx, cy, scale);
}

}  // namespace

std::string to_svg(const SpectrumReport& report, int size) {
    if (size < 64) size = 64;
    double outer = std::max({1.0, display_outer(report.sigma),
                             display_outer(report.sigma_ap),
                             display_outer(report.sigma_usf),
                             display_outer(report.sigma_lsf)});
    // common scale across panels so containments are visible at a glance
    double scale = (size * 0.5 - 24.0) / (1.1 * outer);
    int w = 2 * size, h = 2 * size;
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " +
           std::to_string(w) + " " + std::to_string(h) + "\">\n";
    out += "<rect width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h) +
           "\" fill=\"#ffffff\"/>\n";
    out += "<text x=\"" + std::to_string(size) + "\" y=\"" + std::to_string(2 * size - 6) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#666666\" "
           "text-anchor=\"middle\">case " + report.case_tag +
           ", dashed ring = unit circle</text>\n";
    draw_panel(out, report.sigma, "sigma", 0, 0, size, scale);
    draw_panel(out, report.sigma_ap, "sigma_ap", size, 0, size, scale);
    draw_panel(out, report.sigma_usf, "sigma_usf", 0, size, size, scale);
    draw_panel(out, report.sigma_lsf, "sigma_lsf", size, size, size, scale);
    out += "</svg>\n";
    return out;
}

}  // namespace bispec
