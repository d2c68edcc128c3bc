#pragma once

#include <vector>

#include "bispec/poly.hpp"

namespace bispec {

// Roots of a nonzero polynomial (companion-matrix eigenvalues). Roots at the
// origin from trailing zero coefficients are included.
std::vector<cplx> poly_roots(const Poly1& p);

// |lead| * prod max(1, |root|). Throws zero_polynomial on the zero input.
double mahler_measure(const Poly1& p);

// Mean of log|p| over `nodes` equispaced circle points, shifted by
// `phase` radians. exp() of this is the quadrature estimate of the Mahler
// measure; -inf is returned when a node hits an exact zero.
double circle_log_abs_mean(const Poly1& p, int nodes, double phase = 0.0);

}  // namespace bispec
