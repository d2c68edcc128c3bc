#include "bispec/mahler.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace bispec {

std::vector<cplx> poly_roots(const Poly1& p) {
    int deg = p.degree();
    if (deg < 0) throw zero_polynomial("root finding needs a nonzero polynomial");
    std::size_t lead = 0;
    while (lead < p.c.size() && p.c[lead] == 0.0) ++lead;
    std::vector<cplx> roots(lead, cplx(0.0));  // factor z^lead exactly
    int d = deg - int(lead);
    if (d == 0) return roots;
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    const cplx top = p.c[lead + d];
    for (int k = 0; k < d; ++k) {
        if (k + 1 < d) companion(k + 1, k) = 1.0;
        companion(k, d - 1) = -p.c[lead + k] / top;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success)
        throw error("eigenvalue iteration failed on companion matrix");
    for (int k = 0; k < d; ++k) roots.push_back(solver.eigenvalues()(k));
    return roots;
}

double mahler_measure(const Poly1& p) {
    int deg = p.degree();
    if (deg < 0) throw zero_polynomial("Mahler measure needs a nonzero polynomial");
    double m = std::abs(p.c[deg]);
    for (const cplx& r : poly_roots(p)) m *= std::max(1.0, std::abs(r));
    return m;
}

double circle_log_abs_mean(const Poly1& p, int nodes, double phase) {
    double sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
        double theta = phase + TAU * double(k) / double(nodes);
        sum += std::log(std::abs(p.eval(std::polar(1.0, theta))));
    }
    return sum / double(nodes);
}

}  // namespace bispec
