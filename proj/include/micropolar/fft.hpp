#pragma once

#include <fftw3.h>

#include <stdexcept>
#include <vector>

#include "micropolar/field.hpp"
#include "micropolar/util.hpp"

namespace micropolar {

/// Thin RAII wrapper over FFTW complex 3D transforms.
///
/// Convention: spectral arrays hold Fourier-series coefficients
/// f_hat(xi) = (1/L^3) integral f(x) exp(-i xi . x) dx, so
///   to_spectral = forward DFT / n^3,   to_physical = backward DFT.
/// Plans are created with FFTW_ESTIMATE so results do not depend on
/// runtime plan heuristics.
class Fft3 {
public:
    explicit Fft3(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("Fft3: n must be positive");
        const std::size_t m = static_cast<std::size_t>(n) * n * n;
        buf_in_.resize(m);
        buf_out_.resize(m);
        auto* in = reinterpret_cast<fftw_complex*>(buf_in_.data());
        auto* out = reinterpret_cast<fftw_complex*>(buf_out_.data());
        fwd_ = fftw_plan_dft_3d(n, n, n, in, out, FFTW_FORWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
        bwd_ = fftw_plan_dft_3d(n, n, n, in, out, FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!fwd_ || !bwd_) throw std::runtime_error("Fft3: plan creation failed");
    }

    ~Fft3() {
        if (fwd_) fftw_destroy_plan(fwd_);
        if (bwd_) fftw_destroy_plan(bwd_);
    }

    Fft3(const Fft3&) = delete;
    Fft3& operator=(const Fft3&) = delete;

    int n() const { return n_; }
    std::size_t size() const { return buf_in_.size(); }

    void to_physical(const std::vector<cplx>& coef, std::vector<cplx>& phys) const {
        check(coef);
        phys.resize(size());
        fftw_execute_dft(bwd_,
                         reinterpret_cast<fftw_complex*>(const_cast<cplx*>(coef.data())),
                         reinterpret_cast<fftw_complex*>(phys.data()));
    }

    void to_spectral(const std::vector<cplx>& phys, std::vector<cplx>& coef) const {
        check(phys);
        coef.resize(size());
        fftw_execute_dft(fwd_,
                         reinterpret_cast<fftw_complex*>(const_cast<cplx*>(phys.data())),
                         reinterpret_cast<fftw_complex*>(coef.data()));
        const double s = 1.0 / static_cast<double>(size());
        for (auto& z : coef) z *= s;
    }

private:
    void check(const std::vector<cplx>& v) const {
        if (v.size() != size()) throw std::invalid_argument("Fft3: size mismatch");
    }

    int n_;
    std::vector<cplx> buf_in_, buf_out_;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

}  // namespace micropolar
