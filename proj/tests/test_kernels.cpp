#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "bispec/kernels.hpp"
#include "bispec/parser.hpp"

using namespace bispec;
using kernels::Point2;

namespace {

std::vector<Point2> random_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point2> pts(n);
    for (Point2& p : pts) {
        double a = double(rng() >> 11) * 0x1.0p-53 * TAU;
        double b = double(rng() >> 11) * 0x1.0p-53 * TAU;
        p = {std::polar(1.0, a), std::polar(1.0, b)};
    }
    return pts;
}

}  // namespace

TEST_CASE("serial and parallel kernels produce identical bytes") {
    WeightPoly w = parse_weight("2 + z1*z2 - 0.3*z1^2");
    MobiusMap f1 = mobius_rotation(AngleSpec::make_irrational(1.1));
    MobiusMap f2 = mobius_hyperbolic(0.4);
    // sizes straddling the chunk boundary
    for (std::size_t n : {std::size_t(1), std::size_t(1023), std::size_t(1024),
                          std::size_t(1025), std::size_t(50000)}) {
        CAPTURE(n);
        std::vector<Point2> pts = random_points(n, 11 * n);

        std::vector<double> a(n), b(n);
        kernels::abs_values_serial(w, pts, a);
        kernels::abs_values_parallel(w, pts, b);
        CHECK(std::memcmp(a.data(), b.data(), n * sizeof(double)) == 0);

        std::vector<Point2> ma = pts, mb = pts;
        kernels::apply_map_serial(f1, f2, ma);
        kernels::apply_map_parallel(f1, f2, mb);
        CHECK(std::memcmp(ma.data(), mb.data(), n * sizeof(Point2)) == 0);

        std::vector<double> sa(n, 0.5), sb(n, 0.5);
        kernels::add_log_abs_serial(w, pts, sa);
        kernels::add_log_abs_parallel(w, pts, sb);
        CHECK(std::memcmp(sa.data(), sb.data(), n * sizeof(double)) == 0);

        double m1 = kernels::chunked_mean_serial(a);
        double m2 = kernels::chunked_mean_parallel(a);
        CHECK(std::memcmp(&m1, &m2, sizeof(double)) == 0);

        kernels::IndexedValue i1 = kernels::min_element_serial(a);
        kernels::IndexedValue i2 = kernels::min_element_parallel(a);
        CHECK(i1.value == i2.value);
        CHECK(i1.index == i2.index);
        kernels::IndexedValue x1 = kernels::max_element_serial(a);
        kernels::IndexedValue x2 = kernels::max_element_parallel(a);
        CHECK(x1.value == x2.value);
        CHECK(x1.index == x2.index);
    }
}

TEST_CASE("kernels compute what they claim") {
    WeightPoly w = parse_weight("z1 + 2*z2");
    std::vector<Point2> pts = random_points(257, 3);
    std::vector<double> vals(pts.size());
    kernels::abs_values(w, pts, vals);
    for (std::size_t k = 0; k < pts.size(); ++k)
        CHECK(vals[k] == doctest::Approx(std::abs(w(pts[k][0], pts[k][1]))).epsilon(1e-14));

    std::vector<Point2> moved = pts;
    MobiusMap f1 = mobius_rotation(AngleSpec::make_rational(1, 3));
    MobiusMap f2 = mobius_parabolic(cplx{0.0, 1.0}, 0.7);
    kernels::apply_map(f1, f2, moved);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        CHECK(std::abs(moved[k][0] - f1(pts[k][0])) < 1e-14);
        CHECK(std::abs(moved[k][1] - f2(pts[k][1])) < 1e-14);
    }

    std::vector<double> acc(pts.size(), 0.0);
    kernels::add_log_abs(w, pts, acc);
    kernels::add_log_abs(w, pts, acc);
    for (std::size_t k = 0; k < pts.size(); ++k)
        CHECK(acc[k] == doctest::Approx(2.0 * std::log(vals[k])).epsilon(1e-12));
}

TEST_CASE("chunked mean is exact on constants and splits ties by index") {
    std::vector<double> xs(4096, 0.25);
    CHECK(kernels::chunked_mean(xs) == doctest::Approx(0.25).epsilon(1e-15));

    std::vector<double> tie(10, 1.0);
    tie[3] = tie[7] = 0.5;
    kernels::IndexedValue mn = kernels::min_element(tie);
    CHECK(mn.index == 3);
    tie[2] = tie[8] = 2.0;
    kernels::IndexedValue mx = kernels::max_element(tie);
    CHECK(mx.index == 2);
}

TEST_CASE("exact zeros contribute minus infinity") {
    WeightPoly w = parse_weight("z1 - 1");
    std::vector<Point2> pts{{cplx{1.0, 0.0}, cplx{1.0, 0.0}}};
    std::vector<double> acc(1, 0.0);
    kernels::add_log_abs(w, pts, acc);
    CHECK(std::isinf(acc[0]));
    CHECK(acc[0] < 0);
}
