#pragma once

#include <algorithm>
#include <cmath>

#include "micropolar/material.hpp"

namespace micropolar {

/// Derived constants of the decay machinery. All fields are exact functions
/// of the material parameters:
///   eta   = (1 + (mu+chi)/chi) / 4, which lies in (1/2, (mu+chi)/(2 chi))
///   c1    = 2 (mu + chi - 2 chi eta),  c2 = 2 chi (4 - 2/eta)
///   c3    = min(c1, c2) / 2,           c4 = max(2/c1, 2/c2)
///   delta = min(c1, c3)
///   a     = (gamma chi + mu chi + 2 mu gamma) / (4 chi^2)
/// t0 is the smallest time with t0 >= 10/delta and c2 (1 + t0) >= 10.
struct ConstantsLedger {
    double eta;
    double c1, c2, c3, c4;
    double delta;
    double a;
    double t0;
};

inline ConstantsLedger constants_ledger(const MaterialParams& p) {
    p.validate();
    ConstantsLedger L;
    L.eta = 0.25 * (1.0 + (p.mu + p.chi) / p.chi);
    L.c1 = 2.0 * (p.mu + p.chi - 2.0 * p.chi * L.eta);
    L.c2 = 2.0 * p.chi * (4.0 - 2.0 / L.eta);
    L.c3 = 0.5 * std::min(L.c1, L.c2);
    L.c4 = std::max(2.0 / L.c1, 2.0 / L.c2);
    L.delta = std::min(L.c1, L.c3);
    L.a = (p.gamma * p.chi + p.mu * p.chi + 2.0 * p.mu * p.gamma) /
          (4.0 * p.chi * p.chi);
    L.t0 = std::max(10.0 / L.delta, std::max(0.0, 10.0 / L.c2 - 1.0));
    return L;
}

/// Fourier-splitting radius g(t) = sqrt(10/delta) (1+t)^{-1/2}; satisfies
/// c2 >= delta g(t)^2 and 0 < g(t) <= 1 for t >= t0.
inline double splitting_radius(const ConstantsLedger& L, double t) {
    return std::sqrt(10.0 / L.delta) / std::sqrt(1.0 + t);
}

/// Gronwall weight e(t) = ((1+t)/(1+t0))^10, so e(t0) = 1.
inline double gronwall_weight(const ConstantsLedger& L, double t) {
    return std::pow((1.0 + t) / (1.0 + L.t0), 10.0);
}

}  // namespace micropolar
