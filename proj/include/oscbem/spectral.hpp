#pragma once

#include <functional>
#include <vector>

#include "oscbem/types.hpp"

namespace oscbem {

/// Truncated Fourier coefficient sequence of a 1-periodic function,
/// indexed m in [-K, K].
class FourierVector {
public:
    FourierVector() = default;
    explicit FourierVector(int bandwidth) : k_(bandwidth), c_(2 * bandwidth + 1, Complex(0.0)) {}

    static FourierVector mode(int m, Complex amplitude, int bandwidth);

    int bandwidth() const { return k_; }
    Complex coeff(int m) const {
        return std::abs(m) <= k_ ? c_[m + k_] : Complex(0.0);
    }
    void set_coeff(int m, Complex v);

    /// Synthesis at a point.
    Complex eval(double x) const;

    /// max |c_{-m} - conj(c_m)|, zero for real-valued functions.
    double conj_symmetry_defect() const;

    const std::vector<Complex>& raw() const { return c_; }

private:
    int k_ = 0;
    std::vector<Complex> c_{Complex(0.0)};
};

/// Trapezoidal-rule Fourier analysis with Q >= oversample*(2K+1) equispaced
/// samples; exact to roundoff for trigonometric polynomials of degree
/// <= Q-K-1. Throws InsufficientResolution for oversample < 2.
FourierVector fourier_coefficients(const std::function<Complex(double)>& f, int bandwidth,
                                   int oversample = 4);

/// (|f_0|^2 + sum_{m != 0} |m|^{2s} |f_m|^2)^{1/2} over the stored band.
double sobolev_norm(const FourierVector& f, double s);

/// Share of the squared H^s mass carried by the outermost octave of the
/// band; a cheap indicator that the band is too short for the norm.
double sobolev_tail_fraction(const FourierVector& f, double s);

/// conj(f_0) g_0 + sum_{m != 0} conj(f_m) g_m on the shared band.
Complex duality_pairing(const FourierVector& f, const FourierVector& g);

FourierVector operator-(const FourierVector& a, const FourierVector& b);

}  // namespace oscbem
