#pragma once

#include <vector>

#include "bispec/mobius.hpp"
#include "bispec/types.hpp"

namespace bispec {

// Univariate polynomial, coefficients ascending by degree.
struct Poly1 {
    std::vector<cplx> c;

    cplx eval(cplx z) const {
        cplx r = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) r = r * z + c[k];
        return r;
    }
    int degree() const;  // after stripping exactly-zero leading coefficients
    double max_abs() const;
    bool is_zero(double threshold = 0.0) const { return max_abs() <= threshold; }
};

struct Term {
    int i = 0, j = 0;  // exponents of z1, z2
    cplx c;
};

// Bivariate polynomial weight over the closed bidisc. Terms are kept sorted
// by (i, j) with exactly-zero coefficients dropped; an evaluation row cache
// is rebuilt whenever the term list changes.
class WeightPoly {
  public:
    WeightPoly() = default;
    static WeightPoly constant(cplx v);
    static WeightPoly z1();
    static WeightPoly z2();
    static WeightPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int deg1() const { return d1_; }
    int deg2() const { return d2_; }
    cplx coeff(int i, int j) const;
    double coeff_abs_sum() const;      // bounds |w| on the closed bidisc
    double lipschitz_bound() const;    // sum |c_ij| (i+j), per-coordinate sup metric
    double max_coeff_abs() const;

    cplx operator()(cplx z1, cplx z2) const;

    WeightPoly operator+(const WeightPoly& o) const;
    WeightPoly operator-(const WeightPoly& o) const;
    WeightPoly operator*(const WeightPoly& o) const;
    WeightPoly operator*(cplx s) const;
    WeightPoly pow_int(long long k) const;

    // z1 -> r1 z1, z2 -> r2 z2 (|r| = 1 in all uses here)
    WeightPoly substitute_rotation(cplx r1, cplx r2) const;
    WeightPoly swap_vars() const;

    Poly1 restrict_z1(cplx z1_value) const;  // univariate in z2
    Poly1 restrict_z2(cplx z2_value) const;  // univariate in z1

    bool operator==(const WeightPoly& o) const {
        if (t_.size() != o.t_.size()) return false;
        for (std::size_t k = 0; k < t_.size(); ++k)
            if (t_[k].i != o.t_[k].i || t_[k].j != o.t_[k].j || t_[k].c != o.t_[k].c)
                return false;
        return true;
    }

  private:
    void normalize(std::vector<Term> terms);
    std::vector<Term> t_;
    struct Row {
        int i;
        std::vector<std::pair<int, cplx>> js;  // descending j
    };
    std::vector<Row> rows_;  // descending i
    int d1_ = 0, d2_ = 0;
};

// w = z1^s z2^t * reduced, with s, t maximal.
struct FactoredWeight {
    int s = 0, t = 0;
    WeightPoly reduced;
    bool origin_nonzero = false;  // reduced(0,0) != 0, the monomial-factor hypothesis
};
FactoredWeight factor_monomial(const WeightPoly& w);

// Products of w along forward orbits, w_n = prod_{k<n} w(Phi^k(.)).
// Rotation pairs admit the symbolic form; general factors only pointwise.
WeightPoly cocycle_poly(const WeightPoly& w, cplx alpha1, cplx alpha2, long long n);
cplx cocycle_value(const WeightPoly& w, const MobiusMap& f1, const MobiusMap& f2,
                   long long n, cplx z1, cplx z2);

// Whether the circle average of log|w(., zeta)| converges (the restriction
// is not identically zero; isolated polynomial zeros integrate).
bool log_integral_is_finite(const WeightPoly& w, cplx zeta);

}  // namespace bispec
