#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bispec {

using cplx = std::complex<double>;

inline constexpr double TAU = 6.283185307179586476925286766559;

// Integer powers by binary exponentiation; stable for |z| <= ~1 and the
// small exponents (<= 64) admitted by the weight grammar.
inline cplx cpow_int(cplx z, long long n) {
    if (n < 0) return 1.0 / cpow_int(z, -n);
    cplx r = 1.0, b = z;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

inline double wrap_angle(double t) {
    t = std::fmod(t, TAU);
    if (t < 0) t += TAU;
    return t;
}

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

struct error : std::runtime_error {
    explicit error(const std::string& m) : std::runtime_error(m) {}
};

struct not_disc_automorphism : error {
    explicit not_disc_automorphism(const std::string& m) : error(m) {}
};
struct degenerate_map : error {
    explicit degenerate_map(const std::string& m) : error(m) {}
};
struct ambiguous_class : error {
    explicit ambiguous_class(const std::string& m) : error(m) {}
};
struct missing_angle_spec : error {
    explicit missing_angle_spec(const std::string& m) : error(m) {}
};
struct not_elliptic : error {
    explicit not_elliptic(const std::string& m) : error(m) {}
};

struct syntax_error : error {
    std::size_t position;  // 0-based offset into the source text
    std::string expected;
    syntax_error(std::size_t pos, std::string exp)
        : error("syntax error at offset " + std::to_string(pos) + ": expected " + exp),
          position(pos),
          expected(std::move(exp)) {}
};
struct exponent_too_large : error {
    explicit exponent_too_large(const std::string& m) : error(m) {}
};
struct zero_weight : error {
    explicit zero_weight(const std::string& m) : error(m) {}
};
struct zero_polynomial : error {
    explicit zero_polynomial(const std::string& m) : error(m) {}
};

struct unsupported_case : error {
    explicit unsupported_case(const std::string& m) : error(m) {}
};
struct inconclusive_invertibility : error {
    explicit inconclusive_invertibility(const std::string& m) : error(m) {}
};
struct config_error : error {
    explicit config_error(const std::string& m) : error(m) {}
};

}  // namespace bispec
