#include "bispec/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bispec::kernels {

bool parallel_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

namespace {

std::size_t chunk_count(std::size_t n) { return (n + CHUNK - 1) / CHUNK; }

double sum_chunk(std::span<const double> xs, std::size_t c) {
    std::size_t lo = c * CHUNK;
    std::size_t hi = std::min(xs.size(), lo + CHUNK);
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += xs[k];
    return s;
}

IndexedValue scan_chunk_min(std::span<const double> xs, std::size_t c) {
    std::size_t lo = c * CHUNK;
    std::size_t hi = std::min(xs.size(), lo + CHUNK);
    IndexedValue best{xs[lo], lo};
    for (std::size_t k = lo + 1; k < hi; ++k)
        if (xs[k] < best.value) best = {xs[k], k};
    return best;
}

IndexedValue scan_chunk_max(std::span<const double> xs, std::size_t c) {
    std::size_t lo = c * CHUNK;
    std::size_t hi = std::min(xs.size(), lo + CHUNK);
    IndexedValue best{xs[lo], lo};
    for (std::size_t k = lo + 1; k < hi; ++k)
        if (xs[k] > best.value) best = {xs[k], k};
    return best;
}

}  // namespace

void abs_values_serial(const WeightPoly& w, std::span<const Point2> pts,
                       std::span<double> out) {
    for (std::size_t k = 0; k < pts.size(); ++k)
        out[k] = std::abs(w(pts[k][0], pts[k][1]));
}

void abs_values_parallel(const WeightPoly& w, std::span<const Point2> pts,
                         std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(pts.size()); ++k)
        out[k] = std::abs(w(pts[k][0], pts[k][1]));
}

void apply_map_serial(const MobiusMap& f1, const MobiusMap& f2, std::span<Point2> pts) {
    for (Point2& p : pts) p = {f1(p[0]), f2(p[1])};
}

void apply_map_parallel(const MobiusMap& f1, const MobiusMap& f2, std::span<Point2> pts) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(pts.size()); ++k)
        pts[k] = {f1(pts[k][0]), f2(pts[k][1])};
}

void add_log_abs_serial(const WeightPoly& w, std::span<const Point2> pts,
                        std::span<double> acc) {
    for (std::size_t k = 0; k < pts.size(); ++k)
        acc[k] += std::log(std::abs(w(pts[k][0], pts[k][1])));
}

void add_log_abs_parallel(const WeightPoly& w, std::span<const Point2> pts,
                          std::span<double> acc) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(pts.size()); ++k)
        acc[k] += std::log(std::abs(w(pts[k][0], pts[k][1])));
}

double chunked_mean_serial(std::span<const double> xs) {
    if (xs.empty()) throw error("mean of empty range");
    double total = 0.0;
    for (std::size_t c = 0; c < chunk_count(xs.size()); ++c) total += sum_chunk(xs, c);
    return total / double(xs.size());
}

double chunked_mean_parallel(std::span<const double> xs) {
    if (xs.empty()) throw error("mean of empty range");
    std::size_t nc = chunk_count(xs.size());
    std::vector<double> partial(nc);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(nc); ++c)
        partial[c] = sum_chunk(xs, c);
    double total = 0.0;
    for (double p : partial) total += p;
    return total / double(xs.size());
}

IndexedValue min_element_serial(std::span<const double> xs) {
    if (xs.empty()) throw error("min of empty range");
    IndexedValue best = scan_chunk_min(xs, 0);
    for (std::size_t c = 1; c < chunk_count(xs.size()); ++c) {
        IndexedValue cand = scan_chunk_min(xs, c);
        if (cand.value < best.value) best = cand;
    }
    return best;
}

IndexedValue min_element_parallel(std::span<const double> xs) {
    if (xs.empty()) throw error("min of empty range");
    std::size_t nc = chunk_count(xs.size());
    std::vector<IndexedValue> partial(nc);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(nc); ++c)
        partial[c] = scan_chunk_min(xs, c);
    IndexedValue best = partial[0];
    for (std::size_t c = 1; c < nc; ++c)
        if (partial[c].value < best.value) best = partial[c];
    return best;
}

IndexedValue max_element_serial(std::span<const double> xs) {
    if (xs.empty()) throw error("max of empty range");
    IndexedValue best = scan_chunk_max(xs, 0);
    for (std::size_t c = 1; c < chunk_count(xs.size()); ++c) {
        IndexedValue cand = scan_chunk_max(xs, c);
        if (cand.value > best.value) best = cand;
    }
    return best;
}

IndexedValue max_element_parallel(std::span<const double> xs) {
    if (xs.empty()) throw error("max of empty range");
    std::size_t nc = chunk_count(xs.size());
    std::vector<IndexedValue> partial(nc);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(nc); ++c)
        partial[c] = scan_chunk_max(xs, c);
    IndexedValue best = partial[0];
    for (std::size_t c = 1; c < nc; ++c)
        if (partial[c].value > best.value) best = partial[c];
    return best;
}

#ifdef _OPENMP
void abs_values(const WeightPoly& w, std::span<const Point2> pts, std::span<double> out) {
    abs_values_parallel(w, pts, out);
}
void apply_map(const MobiusMap& f1, const MobiusMap& f2, std::span<Point2> pts) {
    apply_map_parallel(f1, f2, pts);
}
void add_log_abs(const WeightPoly& w, std::span<const Point2> pts, std::span<double> acc) {
    add_log_abs_parallel(w, pts, acc);
}
double chunked_mean(std::span<const double> xs) { return chunked_mean_parallel(xs); }
IndexedValue min_element(std::span<const double> xs) { return min_element_parallel(xs); }
IndexedValue max_element(std::span<const double> xs) { return max_element_parallel(xs); }
#else
void abs_values(const WeightPoly& w, std::span<const Point2> pts, std::span<double> out) {
    abs_values_serial(w, pts, out);
}
void apply_map(const MobiusMap& f1, const MobiusMap& f2, std::span<Point2> pts) {
    apply_map_serial(f1, f2, pts);
}
void add_log_abs(const WeightPoly& w, std::span<const Point2> pts, std::span<double> acc) {
    add_log_abs_serial(w, pts, acc);
}
double chunked_mean(std::span<const double> xs) { return chunked_mean_serial(xs); }
IndexedValue min_element(std::span<const double> xs) { return min_element_serial(xs); }
IndexedValue max_element(std::span<const double> xs) { return max_element_serial(xs); }
#endif

}  // namespace bispec::kernels
