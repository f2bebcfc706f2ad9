#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "micropolar/material.hpp"
#include "micropolar/symbol.hpp"
#include "micropolar/util.hpp"

namespace micropolar {

// ---------------------------------------------------------------------------
// Independent reference for the propagator: exponentiate the Fourier-side
// generator of the linear system with a general dense matrix exponential
// (scaling and squaring, Pade 13). Shares nothing with the closed-form
// route in symbol.hpp except MaterialParams.
// ---------------------------------------------------------------------------

using Mat6 = std::array<cplx, 36>;

namespace expm_detail {

inline cplx& at(Mat6& a, int r, int c) { return a[6 * r + c]; }
inline const cplx& at(const Mat6& a, int r, int c) { return a[6 * r + c]; }

inline Mat6 identity() {
    Mat6 a{};
    for (int i = 0; i < 6; ++i) at(a, i, i) = 1.0;
    return a;
}

inline Mat6 mul(const Mat6& a, const Mat6& b) {
    Mat6 c{};
    for (int i = 0; i < 6; ++i)
        for (int k = 0; k < 6; ++k) {
            const cplx aik = at(a, i, k);
            for (int j = 0; j < 6; ++j) at(c, i, j) += aik * at(b, k, j);
        }
    return c;
}

inline Mat6 add(const Mat6& a, const Mat6& b) {
    Mat6 c;
    for (int i = 0; i < 36; ++i) c[i] = a[i] + b[i];
    return c;
}

inline Mat6 scale(const Mat6& a, double s) {
    Mat6 c;
    for (int i = 0; i < 36; ++i) c[i] = a[i] * s;
    return c;
}

inline double norm_1(const Mat6& a) {
    double m = 0.0;
    for (int j = 0; j < 6; ++j) {
        double col = 0.0;
        for (int i = 0; i < 6; ++i) col += std::abs(at(a, i, j));
        m = std::max(m, col);
    }
    return m;
}

// Solve A X = B in place by LU with partial pivoting; returns X.
inline Mat6 solve(Mat6 a, Mat6 b) {
    std::array<int, 6> piv{};
    for (int i = 0; i < 6; ++i) piv[i] = i;
    for (int col = 0; col < 6; ++col) {
        int pr = col;
        double best = std::abs(at(a, col, col));
        for (int r = col + 1; r < 6; ++r) {
            const double v = std::abs(at(a, r, col));
            if (v > best) {
                best = v;
                pr = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("expm: singular Pade denominator");
        if (pr != col) {
            for (int j = 0; j < 6; ++j) {
                std::swap(at(a, col, j), at(a, pr, j));
                std::swap(at(b, col, j), at(b, pr, j));
            }
        }
        const cplx inv = 1.0 / at(a, col, col);
        for (int r = col + 1; r < 6; ++r) {
            const cplx f = at(a, r, col) * inv;
            if (f == cplx(0.0, 0.0)) continue;
            at(a, r, col) = f;
            for (int j = col + 1; j < 6; ++j) at(a, r, j) -= f * at(a, col, j);
            for (int j = 0; j < 6; ++j) at(b, r, j) -= f * at(b, col, j);
        }
    }
    for (int col = 5; col >= 0; --col) {
        const cplx inv = 1.0 / at(a, col, col);
        for (int j = 0; j < 6; ++j) at(b, col, j) *= inv;
        for (int r = 0; r < col; ++r) {
            const cplx f = at(a, r, col);
            if (f == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < 6; ++j) at(b, r, j) -= f * at(b, col, j);
        }
    }
    return b;
}

}  // namespace expm_detail

/// Dense exp(A) by Pade-13 scaling and squaring (Higham 2005 coefficients).
inline Mat6 expm(const Mat6& a_in) {
    using namespace expm_detail;
    static constexpr double theta13 = 5.371920351148152;
    static constexpr double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};

    const double nrm = norm_1(a_in);
    int s = 0;
    if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    const Mat6 a = scale(a_in, std::ldexp(1.0, -s));

    const Mat6 a2 = mul(a, a);
    const Mat6 a4 = mul(a2, a2);
    const Mat6 a6 = mul(a2, a4);
    const Mat6 id = identity();

    // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    Mat6 u_inner = add(add(scale(a6, b[13]), scale(a4, b[11])), scale(a2, b[9]));
    Mat6 u = mul(a6, u_inner);
    u = add(u, add(add(scale(a6, b[7]), scale(a4, b[5])),
                   add(scale(a2, b[3]), scale(id, b[1]))));
    u = mul(a, u);
    // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    Mat6 v_inner = add(add(scale(a6, b[12]), scale(a4, b[10])), scale(a2, b[8]));
    Mat6 v = mul(a6, v_inner);
    v = add(v, add(add(scale(a6, b[6]), scale(a4, b[4])),
                   add(scale(a2, b[2]), scale(id, b[0]))));

    Mat6 num = add(v, u);
    Mat6 den = add(v, scale(u, -1.0));
    Mat6 r = solve(den, num);
    for (int k = 0; k < s; ++k) r = mul(r, r);
    return r;
}

/// Fourier-side generator of the linear micropolar system at wavenumber xi,
/// acting on stacked (u_hat, w_hat):
///   du/dt = -(mu+chi)|xi|^2 u + 2 chi (i xi x) w
///   dw/dt = -gamma |xi|^2 w - kappa xi (xi . w) + 2 chi (i xi x) u - 4 chi w
inline Mat6 generator_matrix(const MaterialParams& p, const Vec3d& xi) {
    p.validate();
    using expm_detail::at;
    Mat6 m{};
    const double R = norm_sq(xi);
    const cplx iu(0.0, 1.0);
    const double cx[3][3] = {{0.0, -xi[2], xi[1]}, {xi[2], 0.0, -xi[0]}, {-xi[1], xi[0], 0.0}};
    for (int r = 0; r < 3; ++r) {
        at(m, r, r) += -(p.mu + p.chi) * R;
        at(m, 3 + r, 3 + r) += -p.gamma * R - 4.0 * p.chi;
        for (int c = 0; c < 3; ++c) {
            at(m, r, 3 + c) += 2.0 * p.chi * iu * cx[r][c];
            at(m, 3 + r, c) += 2.0 * p.chi * iu * cx[r][c];
            at(m, 3 + r, 3 + c) += -p.kappa * xi[r] * xi[c];
        }
    }
    return m;
}

/// Reference propagator exp(t M(xi)) for validating the closed form.
inline PropagatorMatrix propagator_oracle(const MaterialParams& p, const Vec3d& xi,
                                          double t) {
    if (t < 0.0) throw std::invalid_argument("propagator_oracle: t must be >= 0");
    Mat6 m = generator_matrix(p, xi);
    for (auto& z : m) z *= t;
    PropagatorMatrix K;
    K.m = expm(m);
    return K;
}

}  // namespace micropolar
