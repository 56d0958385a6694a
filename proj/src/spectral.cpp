#include "oscbem/spectral.hpp"

#include <algorithm>

namespace oscbem {

FourierVector FourierVector::mode(int m, Complex amplitude, int bandwidth) {
    FourierVector f(bandwidth);
    f.set_coeff(m, amplitude);
    return f;
}

void FourierVector::set_coeff(int m, Complex v) {
    if (std::abs(m) > k_) throw Error("mode outside stored band");
    c_[m + k_] = v;
}

Complex FourierVector::eval(double x) const {
    // phase reduced before scaling by 2 pi (exact for dyadic x), compensated
    // summation; sampled values feed identities checked near machine precision
    Complex acc = 0.0, comp = 0.0;
    for (int m = -k_; m <= k_; ++m) {
        double mx = m * x;
        double ph = 2.0 * pi * (mx - std::floor(mx));
        Complex term = c_[m + k_] * Complex(std::cos(ph), std::sin(ph)) - comp;
        Complex next = acc + term;
        comp = (next - acc) - term;
        acc = next;
    }
    return acc;
}

double FourierVector::conj_symmetry_defect() const {
    double d = 0.0;
    for (int m = 0; m <= k_; ++m)
        d = std::max(d, std::abs(coeff(-m) - std::conj(coeff(m))));
    return d;
}

FourierVector fourier_coefficients(const std::function<Complex(double)>& f, int bandwidth,
                                   int oversample) {
    if (oversample < 2)
        throw InsufficientResolution("oversample factor must be >= 2, got " +
                                     std::to_string(oversample));
    const int q = oversample * (2 * bandwidth + 1);
    std::vector<Complex> samples(q);
    for (int j = 0; j < q; ++j) samples[j] = f(double(j) / q);
    FourierVector out(bandwidth);
    for (int m = -bandwidth; m <= bandwidth; ++m) {
        Complex acc = 0.0;
        // phase recursion keeps this O(Q) per mode without trig per sample
        double ph = -2.0 * pi * m / q;
        Complex rot(std::cos(ph), std::sin(ph));
        Complex w(1.0, 0.0);
        for (int j = 0; j < q; ++j) {
            acc += samples[j] * w;
            w *= rot;
            if ((j & 1023) == 1023) {
                double p2 = ph * (j + 1);
                w = Complex(std::cos(p2), std::sin(p2));
            }
        }
        out.set_coeff(m, acc / double(q));
    }
    return out;
}

double sobolev_norm(const FourierVector& f, double s) {
    double acc = std::norm(f.coeff(0));
    for (int m = 1; m <= f.bandwidth(); ++m) {
        double w = std::pow(double(m), 2.0 * s);
        acc += w * (std::norm(f.coeff(m)) + std::norm(f.coeff(-m)));
    }
    return std::sqrt(acc);
}

double sobolev_tail_fraction(const FourierVector& f, double s) {
    const int k = f.bandwidth();
    if (k == 0) return 0.0;
    double total = std::norm(f.coeff(0));
    double tail = 0.0;
    const int cut = std::max(1, k / 2);
    for (int m = 1; m <= k; ++m) {
        double w = std::pow(double(m), 2.0 * s);
        double v = w * (std::norm(f.coeff(m)) + std::norm(f.coeff(-m)));
        total += v;
        if (m > cut) tail += v;
    }
    return total > 0.0 ? tail / total : 0.0;
}

Complex duality_pairing(const FourierVector& f, const FourierVector& g) {
    const int k = std::min(f.bandwidth(), g.bandwidth());
    Complex acc = 0.0;
    for (int m = -k; m <= k; ++m) acc += std::conj(f.coeff(m)) * g.coeff(m);
    return acc;
}

FourierVector operator-(const FourierVector& a, const FourierVector& b) {
    const int k = std::max(a.bandwidth(), b.bandwidth());
    FourierVector out(k);
    for (int m = -k; m <= k; ++m) out.set_coeff(m, a.coeff(m) - b.coeff(m));
    return out;
}

}  // namespace oscbem
