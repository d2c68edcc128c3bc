// Times each kernel's serial reference against its OpenMP variant and checks
// that the outputs match bitwise. Grid sizes mirror the oracle defaults.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "bispec/kernels.hpp"
#include "bispec/parser.hpp"

using namespace bispec;
using kernels::Point2;

namespace {

template <class F>
double time_best_of(int reps, F&& body) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        body();
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
        if (dt < best) best = dt;
    }
    return best;
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-16s serial %9.4f ms   parallel %9.4f ms   speedup %5.2fx   %s\n",
                name, serial_s * 1e3, parallel_s * 1e3,
                parallel_s > 0 ? serial_s / parallel_s : 0.0,
                identical ? "bitwise-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = 1 << 20;
    int reps = 5;
    if (argc > 1) n = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) reps = std::atoi(argv[2]);

    std::printf("kernel benchmark: %zu points, best of %d runs, OpenMP %s\n", n, reps,
                kernels::parallel_available() ? "on" : "off");

    WeightPoly w = parse_weight("2 + z1*z2 - 0.3*z1^2 + 0.7*z2^2");
    MobiusMap f1 = mobius_rotation(AngleSpec::make_irrational(2.399963229728653));
    MobiusMap f2 = mobius_hyperbolic(0.5);

    std::mt19937_64 rng(42);
    std::vector<Point2> pts(n);
    for (Point2& p : pts) {
        double a = double(rng() >> 11) * 0x1.0p-53 * TAU;
        double b = double(rng() >> 11) * 0x1.0p-53 * TAU;
        p = {std::polar(1.0, a), std::polar(1.0, b)};
    }

    bool all_ok = true;
    std::vector<double> va(n), vb(n);

    double s1 = time_best_of(reps, [&] { kernels::abs_values_serial(w, pts, va); });
    double p1 = time_best_of(reps, [&] { kernels::abs_values_parallel(w, pts, vb); });
    bool ok1 = std::memcmp(va.data(), vb.data(), n * sizeof(double)) == 0;
    report("abs_values", s1, p1, ok1);
    all_ok = all_ok && ok1;

    std::vector<Point2> ma = pts, mb = pts;
    double s2 = time_best_of(reps, [&] { ma = pts; kernels::apply_map_serial(f1, f2, ma); });
    double p2 = time_best_of(reps, [&] { mb = pts; kernels::apply_map_parallel(f1, f2, mb); });
    bool ok2 = std::memcmp(ma.data(), mb.data(), n * sizeof(Point2)) == 0;
    report("apply_map", s2, p2, ok2);
    all_ok = all_ok && ok2;

    std::vector<double> aa(n, 0.0), ab(n, 0.0);
    double s3 = time_best_of(reps, [&] { kernels::add_log_abs_serial(w, pts, aa); });
    double p3 = time_best_of(reps, [&] { kernels::add_log_abs_parallel(w, pts, ab); });
    // accumulators drift apart across reps at the same rate; compare one shot
    std::fill(aa.begin(), aa.end(), 0.0);
    std::fill(ab.begin(), ab.end(), 0.0);
    kernels::add_log_abs_serial(w, pts, aa);
    kernels::add_log_abs_parallel(w, pts, ab);
    bool ok3 = std::memcmp(aa.data(), ab.data(), n * sizeof(double)) == 0;
    report("add_log_abs", s3, p3, ok3);
    all_ok = all_ok && ok3;

    double m1 = 0, m2 = 0;
    double s4 = time_best_of(reps, [&] { m1 = kernels::chunked_mean_serial(va); });
    double p4 = time_best_of(reps, [&] { m2 = kernels::chunked_mean_parallel(va); });
    bool ok4 = std::memcmp(&m1, &m2, sizeof(double)) == 0;
    report("chunked_mean", s4, p4, ok4);
    all_ok = all_ok && ok4;

    kernels::IndexedValue x1{}, x2{}, y1{}, y2{};
    double s5 = time_best_of(reps, [&] { x1 = kernels::min_element_serial(va); });
    double p5 = time_best_of(reps, [&] { x2 = kernels::min_element_parallel(va); });
    bool ok5 = x1.value == x2.value && x1.index == x2.index;
    report("min_element", s5, p5, ok5);
    all_ok = all_ok && ok5;

    double s6 = time_best_of(reps, [&] { y1 = kernels::max_element_serial(va); });
    double p6 = time_best_of(reps, [&] { y2 = kernels::max_element_parallel(va); });
    bool ok6 = y1.value == y2.value && y1.index == y2.index;
    report("max_element", s6, p6, ok6);
    all_ok = all_ok && ok6;

    return all_ok ? 0 : 1;
}
