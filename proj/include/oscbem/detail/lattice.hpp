#pragma once

#include <cmath>

#include "oscbem/types.hpp"

namespace oscbem::detail {

/// Sum over integers p >= p0 of (a + b p)^{-expn} with a + b p0 > 0, b > 0,
/// expn > 1. Direct summation switches to a midpoint Euler-Maclaurin tail
/// once terms are negligible; absolute accuracy ~1e-15 of the value.
inline double decaying_power_sum(double a, double b, long long p0, double expn) {
    double acc = 0.0;
    long long p = p0;
    // switch to the tail once the expansion parameter b/x0 is ~3e-3; with
    // the phi''' correction the residual sits below 1e-15 of the value
    const double x_switch = std::max(400.0, 320.0 * b);
    while (true) {
        double base = a + b * p;
        if (base >= x_switch && p > p0) break;
        double term = std::pow(base, -expn);
        acc += term;
        ++p;
        if (term < 1e-17 * (std::abs(acc) + 1e-300)) break;
    }
    // tail from p onward: integral plus midpoint Euler-Maclaurin corrections
    double x0 = a + b * (p - 0.5);
    double phi1 = -expn * b * std::pow(x0, -expn - 1.0);
    double phi3 = -expn * (expn + 1.0) * (expn + 2.0) * b * b * b * std::pow(x0, -expn - 3.0);
    acc += std::pow(x0, 1.0 - expn) / ((expn - 1.0) * b);
    acc += phi1 / 24.0 + phi3 / 1920.0;
    return acc;
}

/// Sum over l ≡ c (mod J), l != 0 of |l + y|^{-expn}, |y| <= 1/2.
inline double residue_class_sum(int c, int j_count, double y, double expn) {
    const int J = j_count;
    int cp = ((c % J) + J) % J;
    int l_pos = cp == 0 ? J : cp;         // smallest positive l ≡ c
    int cm = ((-c) % J + J) % J;
    int l_neg = cm == 0 ? J : cm;         // smallest positive -l with l ≡ c
    double s = decaying_power_sum(l_pos + y, J, 0, expn);
    s += decaying_power_sum(l_neg - y, J, 0, expn);
    return s;
}

/// Sum over j ≡ r (mod J) of (mu/(mu+jN))^{d+1} |mu+jN|^{2 alpha}; the
/// Fourier-class sums behind the psi basis under the model operator.
inline double psi_class_sum(int mu, int n, int r, int J, int degree, double two_alpha) {
    const double expn = degree + 1 - two_alpha;
    const double mu_pow = std::pow(double(mu), degree + 1);
    // positive side: mu + jN > 0 <=> j >= j_plus
    int j_plus = mu > 0 ? 0 : 1;
    int rr = ((r % J) + J) % J;
    int j0 = j_plus + ((rr - j_plus) % J + J) % J;  // smallest j >= j_plus, j ≡ r
    double s = mu_pow * decaying_power_sum(double(mu) + double(j0) * n, double(J) * n, 0, expn);
    // negative side: mu + jN < 0 <=> j <= j_minus
    int j_minus = mu < 0 ? 0 : -1;
    int j1 = j_minus - ((j_minus - rr) % J + J) % J;  // largest j <= j_minus, j ≡ r
    double sgn = (degree + 1) % 2 == 0 ? 1.0 : -1.0;  // (mu+jN)^{-(d+1)} sign flip
    s += sgn * mu_pow *
         decaying_power_sum(-double(mu) - double(j1) * n, double(J) * n, 0, expn);
    return s;
}

}  // namespace oscbem::detail
