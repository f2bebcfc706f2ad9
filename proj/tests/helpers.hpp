#pragma once

#include <cstdint>

#include "micropolar/field.hpp"
#include "micropolar/util.hpp"

namespace micropolar::test {

// Random Hermitian-symmetric field with all non-Nyquist modes populated
// (including longitudinal parts) and a real zero mode. Amplitudes fall off
// like 1/(1+|k|^2) so norms stay O(1).
inline SpectralField random_field(const GridSpec& g, std::uint64_t seed) {
    SpectralField f(g);
    const int n = g.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const int ka = g.freq(i), kb = g.freq(j), kc = g.freq(k);
                if (ka == n / 2 || kb == n / 2 || kc == n / 2) continue;
                const bool canonical =
                    (ka > 0) || (ka == 0 && (kb > 0 || (kb == 0 && kc > 0)));
                const std::size_t idx = g.index(i, j, k);
                const double env = 1.0 / (1.0 + ka * ka + kb * kb + kc * kc);
                if (ka == 0 && kb == 0 && kc == 0) {
                    for (int c = 0; c < 3; ++c)
                        f.comp[c][idx] = env * counter_normal(seed, 6 * idx + c);
                    continue;
                }
                if (!canonical) continue;
                const std::size_t cidx = g.conj_index(i, j, k);
                for (int c = 0; c < 3; ++c) {
                    const cplx a(env * counter_normal(seed, 6 * idx + 2 * c),
                                 env * counter_normal(seed, 6 * idx + 2 * c + 1));
                    f.comp[c][idx] = a;
                    f.comp[c][cidx] = std::conj(a);
                }
            }
    return f;
}

// Field with a single mode pair: coefficient a at integer frequency k,
// conj(a) at -k.
inline SpectralField single_mode_field(const GridSpec& g, const std::array<int, 3>& k,
                                       const Vec3c& a) {
    SpectralField f(g);
    const std::size_t idx =
        g.index(g.index_of_freq(k[0]), g.index_of_freq(k[1]), g.index_of_freq(k[2]));
    const std::size_t cidx =
        g.index(g.index_of_freq(-k[0]), g.index_of_freq(-k[1]), g.index_of_freq(-k[2]));
    for (int c = 0; c < 3; ++c) {
        f.comp[c][idx] = a[c];
        f.comp[c][cidx] = std::conj(a[c]);
    }
    return f;
}

}  // namespace micropolar::test
