#include "bispec/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bispec {

int Poly1::degree() const {
    for (std::size_t k = c.size(); k-- > 0;)
        if (c[k] != 0.0) return int(k);
    return -1;
}

double Poly1::max_abs() const {
    double m = 0.0;
    for (const cplx& v : c) m = std::max(m, std::abs(v));
    return m;
}

void WeightPoly::normalize(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
        return x.i != y.i ? x.i < y.i : x.j < y.j;
    });
    t_.clear();
    for (const Term& t : terms) {
        if (!t_.empty() && t_.back().i == t.i && t_.back().j == t.j)
            t_.back().c += t.c;
        else
            t_.push_back(t);
    }
    std::erase_if(t_, [](const Term& t) { return t.c == 0.0; });
    d1_ = d2_ = 0;
    for (const Term& t : t_) {
        d1_ = std::max(d1_, t.i);
        d2_ = std::max(d2_, t.j);
    }
    rows_.clear();
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        if (rows_.empty() || rows_.back().i != it->i) rows_.push_back({it->i, {}});
        rows_.back().js.emplace_back(it->j, it->c);
    }
}

WeightPoly WeightPoly::constant(cplx v) {
    WeightPoly p;
    p.normalize({{0, 0, v}});
    return p;
}
WeightPoly WeightPoly::z1() {
    WeightPoly p;
    p.normalize({{1, 0, cplx(1.0)}});
    return p;
}
WeightPoly WeightPoly::z2() {
    WeightPoly p;
    p.normalize({{0, 1, cplx(1.0)}});
    return p;
}
WeightPoly WeightPoly::from_terms(std::vector<Term> terms) {
    WeightPoly p;
    p.normalize(std::move(terms));
    return p;
}

cplx WeightPoly::coeff(int i, int j) const {
    for (const Term& t : t_)
        if (t.i == i && t.j == j) return t.c;
    return 0.0;
}

double WeightPoly::coeff_abs_sum() const {
    double s = 0.0;
    for (const Term& t : t_) s += std::abs(t.c);
    return s;
}

double WeightPoly::lipschitz_bound() const {
    double s = 0.0;
    for (const Term& t : t_) s += std::abs(t.c) * double(t.i + t.j);
    return s;
}

double WeightPoly::max_coeff_abs() const {
    double s = 0.0;
    for (const Term& t : t_) s = std::max(s, std::abs(t.c));
    return s;
}

cplx WeightPoly::operator()(cplx z1, cplx z2) const {
    if (rows_.empty()) return 0.0;
    auto row_val = [&](const Row& r) {
        cplx acc = r.js.front().second;
        for (std::size_t m = 1; m < r.js.size(); ++m) {
            acc = acc * cpow_int(z2, r.js[m - 1].first - r.js[m].first) + r.js[m].second;
        }
        return acc * cpow_int(z2, r.js.back().first);
    };
    cplx acc = row_val(rows_.front());
    for (std::size_t m = 1; m < rows_.size(); ++m) {
        acc = acc * cpow_int(z1, rows_[m - 1].i - rows_[m].i) + row_val(rows_[m]);
    }
    return acc * cpow_int(z1, rows_.back().i);
}

WeightPoly WeightPoly::operator+(const WeightPoly& o) const {
    std::vector<Term> ts = t_;
    ts.insert(ts.end(), o.t_.begin(), o.t_.end());
    WeightPoly p;
    p.normalize(std::move(ts));
    return p;
}

WeightPoly WeightPoly::operator-(const WeightPoly& o) const {
    std::vector<Term> ts = t_;
    for (Term t : o.t_) {
        t.c = -t.c;
        ts.push_back(t);
    }
    WeightPoly p;
    p.normalize(std::move(ts));
    return p;
}

WeightPoly WeightPoly::operator*(const WeightPoly& o) const {
    std::map<std::pair<int, int>, cplx> acc;
    for (const Term& x : t_)
        for (const Term& y : o.t_) acc[{x.i + y.i, x.j + y.j}] += x.c * y.c;
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (const auto& [ij, c] : acc) ts.push_back({ij.first, ij.second, c});
    WeightPoly p;
    p.normalize(std::move(ts));
    return p;
}

WeightPoly WeightPoly::operator*(cplx s) const {
    std::vector<Term> ts = t_;
    for (Term& t : ts) t.c *= s;
    WeightPoly p;
    p.normalize(std::move(ts));
    return p;
}

WeightPoly WeightPoly::pow_int(long long k) const {
    if (k < 0) throw error("negative polynomial power");
    WeightPoly r = constant(1.0);
    WeightPoly b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

WeightPoly WeightPoly::substitute_rotation(cplx r1, cplx r2) const {
    std::vector<cplx> p1(d1_ + 1), p2(d2_ + 1);
    p1[0] = p2[0] = 1.0;
    for (int i = 1; i <= d1_; ++i) p1[i] = p1[i - 1] * r1;
    for (int j = 1; j <= d2_; ++j) p2[j] = p2[j - 1] * r2;
    std::vector<Term> ts = t_;
    for (Term& t : ts) t.c *= p1[t.i] * p2[t.j];
    WeightPoly p;
    p.normalize(std::move(ts));
    return p;
}

WeightPoly WeightPoly::swap_vars() const {
    std::vector<Term> ts;
    ts.reserve(t_.size());
    for (const Term& t : t_) ts.push_back({t.j, t.i, t.c});
    WeightPoly p;
    p.normalize(std::move(ts));
    return p;
}

Poly1 WeightPoly::restrict_z1(cplx z1_value) const {
    std::vector<cplx> pw(d1_ + 1);
    pw[0] = 1.0;
    for (int i = 1; i <= d1_; ++i) pw[i] = pw[i - 1] * z1_value;
    Poly1 r;
    r.c.assign(d2_ + 1, cplx(0.0));
    for (const Term& t : t_) r.c[t.j] += t.c * pw[t.i];
    if (t_.empty()) r.c.assign(1, cplx(0.0));
    return r;
}

Poly1 WeightPoly::restrict_z2(cplx z2_value) const {
    std::vector<cplx> pw(d2_ + 1);
    pw[0] = 1.0;
    for (int j = 1; j <= d2_; ++j) pw[j] = pw[j - 1] * z2_value;
    Poly1 r;
    r.c.assign(d1_ + 1, cplx(0.0));
    for (const Term& t : t_) r.c[t.i] += t.c * pw[t.j];
    if (t_.empty()) r.c.assign(1, cplx(0.0));
    return r;
}

FactoredWeight factor_monomial(const WeightPoly& w) {
    if (w.is_zero()) throw zero_weight("cannot factor the zero weight");
    int s = w.terms().front().i, t = w.terms().front().j;
    for (const Term& term : w.terms()) {
        s = std::min(s, term.i);
        t = std::min(t, term.j);
    }
    std::vector<Term> ts;
    for (const Term& term : w.terms()) ts.push_back({term.i - s, term.j - t, term.c});
    FactoredWeight f;
    f.s = s;
    f.t = t;
    f.reduced = WeightPoly::from_terms(std::move(ts));
    // guard against cancellation dust pretending to be a nonzero constant term
    f.origin_nonzero =
        std::abs(f.reduced.coeff(0, 0)) > 1e-14 * f.reduced.max_coeff_abs();
    return f;
}

WeightPoly cocycle_poly(const WeightPoly& w, cplx alpha1, cplx alpha2, long long n) {
    if (n < 0) throw error("cocycle index must be nonnegative");
    WeightPoly result = WeightPoly::constant(1.0);
    WeightPoly step = w;
    for (long long k = 0; k < n; ++k) {
        result = result * step;
        if (k + 1 < n) step = step.substitute_rotation(alpha1, alpha2);
    }
    return result;
}

cplx cocycle_value(const WeightPoly& w, const MobiusMap& f1, const MobiusMap& f2,
                   long long n, cplx z1, cplx z2) {
    if (n < 0) throw error("cocycle index must be nonnegative");
    cplx acc = 1.0;
    for (long long k = 0; k < n; ++k) {
        acc *= w(z1, z2);
        z1 = f1(z1);
        z2 = f2(z2);
    }
    return acc;
}

bool log_integral_is_finite(const WeightPoly& w, cplx zeta) {
    Poly1 r = w.restrict_z2(zeta);
    return !r.is_zero(1e-12 * (1.0 + w.coeff_abs_sum()));
}

}  // namespace bispec
