#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "bispec/mobius.hpp"
#include "bispec/poly.hpp"

// Bulk evaluation kernels. Every operation has a serial reference and an
// OpenMP variant; both produce bitwise-identical output. Reductions that sum
// floating point work on fixed chunks of CHUNK elements combined in chunk
// order, so the grouping does not depend on the thread count.
namespace bispec::kernels {

inline constexpr std::size_t CHUNK = 1024;

using Point2 = std::array<cplx, 2>;

struct IndexedValue {
    double value;
    std::size_t index;  // ties resolve to the smallest index
};

bool parallel_available();

void abs_values_serial(const WeightPoly& w, std::span<const Point2> pts,
                       std::span<double> out);
void abs_values_parallel(const WeightPoly& w, std::span<const Point2> pts,
                         std::span<double> out);

void apply_map_serial(const MobiusMap& f1, const MobiusMap& f2, std::span<Point2> pts);
void apply_map_parallel(const MobiusMap& f1, const MobiusMap& f2, std::span<Point2> pts);

// acc[k] += log|w(pts[k])|; exact zeros contribute -inf
void add_log_abs_serial(const WeightPoly& w, std::span<const Point2> pts,
                        std::span<double> acc);
void add_log_abs_parallel(const WeightPoly& w, std::span<const Point2> pts,
                          std::span<double> acc);

double chunked_mean_serial(std::span<const double> xs);
double chunked_mean_parallel(std::span<const double> xs);

IndexedValue min_element_serial(std::span<const double> xs);
IndexedValue min_element_parallel(std::span<const double> xs);
IndexedValue max_element_serial(std::span<const double> xs);
IndexedValue max_element_parallel(std::span<const double> xs);

// dispatchers: OpenMP variant when compiled in, serial otherwise
void abs_values(const WeightPoly& w, std::span<const Point2> pts, std::span<double> out);
void apply_map(const MobiusMap& f1, const MobiusMap& f2, std::span<Point2> pts);
void add_log_abs(const WeightPoly& w, std::span<const Point2> pts, std::span<double> acc);
double chunked_mean(std::span<const double> xs);
IndexedValue min_element(std::span<const double> xs);
IndexedValue max_element(std::span<const double> xs);

}  // namespace bispec::kernels
