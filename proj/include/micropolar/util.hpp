#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace micropolar {

using cplx = std::complex<double>;
using Vec3d = std::array<double, 3>;
using Vec3c = std::array<cplx, 3>;

inline constexpr double kPi = 3.14159265358979323846;

inline double dot(const Vec3d& a, const Vec3d& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline cplx dot(const Vec3d& a, const Vec3c& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm_sq(const Vec3d& a) { return dot(a, a); }

inline double norm_sq(const Vec3c& a) {
    return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

inline Vec3c cross(const Vec3d& a, const Vec3c& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

// i xi x v, the Fourier symbol of curl.
inline Vec3c curl_symbol(const Vec3d& xi, const Vec3c& v) {
    const Vec3c c = cross(xi, v);
    return {cplx(0, 1) * c[0], cplx(0, 1) * c[1], cplx(0, 1) * c[2]};
}

// v - xi (xi.v)/|xi|^2; identity at xi = 0.
inline Vec3c transverse_part(const Vec3d& xi, const Vec3c& v) {
    const double r2 = norm_sq(xi);
    if (r2 == 0.0) return v;
    const cplx s = dot(xi, v) / r2;
    return {v[0] - xi[0] * s, v[1] - xi[1] * s, v[2] - xi[2] * s};
}

// Compensated (Kahan) accumulator; keeps reductions stable and
// independent of how mode loops are batched.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// ---------------------------------------------------------------------------
// Deterministic counter-based random numbers (splitmix64 finalizer).
// The same (seed, counter) pair yields the same value on every platform and
// under any evaluation order.
// ---------------------------------------------------------------------------

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Uniform in (0, 1]; never returns 0 so it is safe under log().
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t h = mix64(seed ^ mix64(counter + 1));
    return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal via Box-Muller from two counter draws.
inline double counter_normal(std::uint64_t seed, std::uint64_t counter) {
    const double u1 = counter_uniform(seed, 2 * counter);
    const double u2 = counter_uniform(seed, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// Small sequential stream on top of the same generator, for test draws.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed) {}
    double uniform() { return counter_uniform(seed_, counter_++); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }
    std::uint64_t raw() { return mix64(seed_ ^ mix64(counter_++ + 1)); }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
// ---------------------------------------------------------------------------

inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    std::vector<double> x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess, then Newton.
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {x, w};
}

// Log-spaced grid from t_min to t_max inclusive.
inline std::vector<double> log_spaced(double t_min, double t_max, int count) {
    if (!(t_min > 0.0) || !(t_max > t_min) || count < 2)
        throw std::invalid_argument("log_spaced: need 0 < t_min < t_max, count >= 2");
    std::vector<double> t(count);
    const double a = std::log(t_min), b = std::log(t_max);
    for (int i = 0; i < count; ++i)
        t[i] = std::exp(a + (b - a) * i / (count - 1));
    t.front() = t_min;
    t.back() = t_max;
    return t;
}

}  // namespace micropolar
