#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "micropolar/continuum.hpp"
#include "micropolar/field.hpp"
#include "micropolar/ops.hpp"

namespace micropolar {

// ---------------------------------------------------------------------------
// Initial-data synthesis. Divergence-free velocities come from the
// xi x c construction: u0_hat(xi) = m(|xi|) (xi x c) with a fixed unit
// vector c and radial envelope m(r) = amplitude r^{q-1} exp(-r^2/(2 sigma^2))
// so that |u0_hat| ~ r^q near the origin. The target linear decay rate is
// Gamma = q + 3/2.
// ---------------------------------------------------------------------------

struct DataSpec {
    enum class Kind { torus_random, continuum_profile };
    enum class Coupling { independent, u0_equals_minus_half_curl_w0 };

    Kind kind = Kind::continuum_profile;
    double q = 0.0;          // low-frequency exponent; Gamma = q + 3/2
    double sigma = 1.0;      // spectral decay scale
    double amplitude = 1.0;
    std::uint64_t seed = 0;
    Coupling coupling = Coupling::independent;

    void validate() const {
        if (q < -1.0)
            throw std::invalid_argument(
                "DataSpec: q < -1 breaks the (1+|xi|) integrability hypothesis");
        if (!(sigma > 0.0)) throw std::invalid_argument("DataSpec: sigma must be > 0");
        if (amplitude < 0.0)
            throw std::invalid_argument("DataSpec: amplitude must be >= 0");
    }
};

inline std::string to_string(DataSpec::Kind k) {
    return k == DataSpec::Kind::torus_random ? "torus-random" : "continuum-profile";
}

inline std::string to_string(DataSpec::Coupling c) {
    return c == DataSpec::Coupling::independent ? "independent"
                                                : "u0-equals-minus-half-curl-w0";
}

namespace detail {

inline double radial_envelope(double r, double q, double sigma, double amplitude) {
    return amplitude * std::pow(r, q - 1.0) * std::exp(-r * r / (2.0 * sigma * sigma));
}

}  // namespace detail

/// Closed-form whole-space profile. For independent data, u0 and w0 use the
/// axes (0,0,1) and (0,1,0); the measure-zero degeneracy xi || c is harmless
/// under quadrature sampling. The coupled variant builds w0 first and sets
/// u0 = -(1/2) curl w0 in Fourier form, so u0 + (1/2) curl w0 vanishes
/// identically (and |u0_hat| ~ r^{q} with w0 one power lower).
inline ContinuumProfile make_continuum_profile(const DataSpec& spec) {
    spec.validate();
    ContinuumProfile prof;
    prof.q = spec.q;
    prof.sigma = spec.sigma;
    const double q = spec.q, sigma = spec.sigma, amp = spec.amplitude;

    if (spec.coupling == DataSpec::Coupling::independent) {
        prof.u0_hat = [q, sigma, amp](const Vec3d& xi) -> Vec3c {
            const double r = std::sqrt(norm_sq(xi));
            if (r == 0.0) return {};
            const double m = detail::radial_envelope(r, q, sigma, amp);
            return {cplx(m * xi[1]), cplx(-m * xi[0]), cplx(0.0)};  // m * (xi x e3)
        };
        prof.w0_hat = [q, sigma, amp](const Vec3d& xi) -> Vec3c {
            const double r = std::sqrt(norm_sq(xi));
            if (r == 0.0) return {};
            const double m = detail::radial_envelope(r, q, sigma, amp);
            return {cplx(-m * xi[2]), cplx(0.0), cplx(m * xi[0])};  // m * (xi x e2)
        };
        return prof;
    }

    // Coupled: w0_hat = m_w(r) (xi x e3) with |w0_hat| ~ r^{q-1}, then
    // u0_hat = -(1/2) i xi x w0_hat, which has |u0_hat| ~ r^{q}.
    auto w0 = [q, sigma, amp](const Vec3d& xi) -> Vec3c {
        const double r = std::sqrt(norm_sq(xi));
        if (r == 0.0) return {};
        const double m = detail::radial_envelope(r, q - 1.0, sigma, amp);
        return {cplx(m * xi[1]), cplx(-m * xi[0]), cplx(0.0)};
    };
    prof.w0_hat = w0;
    prof.u0_hat = [w0](const Vec3d& xi) -> Vec3c {
        const Vec3c c = curl_symbol(xi, w0(xi));
        return {-0.5 * c[0], -0.5 * c[1], -0.5 * c[2]};
    };
    return prof;
}

/// Seeded random torus state: per-mode complex Gaussian amplitudes under the
/// radial envelope, Hermitian by construction (coefficients are generated on
/// a canonical half-lattice and mirrored), Leray-projected u, truncated to
/// the ball |k| <= n_cut. Deterministic for fixed seed regardless of fill
/// order (counter-based generator, see util.hpp); Nyquist planes and the
/// u-mean are zero.
inline StateSpectral make_torus_field(const GridSpec& grid, const DataSpec& spec,
                                      int n_cut) {
    grid.validate();
    spec.validate();
    if (n_cut < 0 || n_cut > grid.n / 2)
        throw std::invalid_argument("make_torus_field: need 0 <= n_cut <= n/2");
    StateSpectral z(grid);
    const int n = grid.n;
    const long long r2max = static_cast<long long>(n_cut) * n_cut;

    auto fill = [&](SpectralField& f, std::uint64_t stream) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const int ka = grid.freq(i), kb = grid.freq(j), kc = grid.freq(k);
                    if (ka == n / 2 || kb == n / 2 || kc == n / 2) continue;  // Nyquist
                    const long long r2 = static_cast<long long>(ka) * ka +
                                         static_cast<long long>(kb) * kb +
                                         static_cast<long long>(kc) * kc;
                    if (r2 == 0 || r2 > r2max) continue;
                    // canonical representative of the +-k pair
                    const bool canonical =
                        (ka > 0) || (ka == 0 && (kb > 0 || (kb == 0 && kc > 0)));
                    if (!canonical) continue;
                    const double r = grid.xi_unit() * std::sqrt(static_cast<double>(r2));
                    const double m =
                        detail::radial_envelope(r, spec.q, spec.sigma, spec.amplitude);
                    const std::size_t idx = grid.index(i, j, k);
                    const std::size_t cidx = grid.conj_index(i, j, k);
                    for (int c = 0; c < 3; ++c) {
                        const std::uint64_t counter =
                            (((stream * 3 + c) * static_cast<std::uint64_t>(n) * n * n) +
                             idx) * 2;
                        const double re = counter_normal(spec.seed, counter);
                        const double im = counter_normal(spec.seed, counter + 1);
                        const cplx a = m * cplx(re, im) / std::sqrt(2.0);
                        f.comp[c][idx] = a;
                        f.comp[c][cidx] = std::conj(a);
                    }
                }
    };

    fill(z.w, 1);
    if (spec.coupling == DataSpec::Coupling::u0_equals_minus_half_curl_w0) {
        z.u = scaled(-0.5, curl_hat(z.w));
    } else {
        fill(z.u, 0);
        z.u = leray_project(z.u);
    }
    return z;
}

}  // namespace micropolar
