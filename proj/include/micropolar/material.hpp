#pragma once

#include <stdexcept>

namespace micropolar {

/// Viscosity coefficients of the micropolar system: kinematic (mu) and
/// vortex (chi) viscosities must be positive; spin viscosity (gamma) and
/// gyroviscosity (kappa) may vanish.
struct MaterialParams {
    double mu = 1.0;
    double chi = 1.0;
    double gamma = 0.0;
    double kappa = 0.0;

    void validate() const {
        if (!(mu > 0.0)) throw std::invalid_argument("MaterialParams: mu must be > 0");
        if (!(chi > 0.0)) throw std::invalid_argument("MaterialParams: chi must be > 0");
        if (gamma < 0.0) throw std::invalid_argument("MaterialParams: gamma must be >= 0");
        if (kappa < 0.0) throw std::invalid_argument("MaterialParams: kappa must be >= 0");
    }
};

}  // namespace micropolar
