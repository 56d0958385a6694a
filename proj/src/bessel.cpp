#include "oscbem/bessel.hpp"

#include <cmath>

namespace oscbem {

double bessel_j(int n, double x) {
    const int a = std::abs(n);
    double v = std::cyl_bessel_j((double)a, std::abs(x));
    if (x < 0 && (a & 1)) v = -v;   // J_n(-x) = (-1)^n J_n(x)
    if (n < 0 && (a & 1)) v = -v;   // J_{-n} = (-1)^n J_n
    return v;
}

double bessel_y(int n, double x) {
    const int a = std::abs(n);
    double v = std::cyl_neumann((double)a, x);
    if (n < 0 && (a & 1)) v = -v;   // Y_{-n} = (-1)^n Y_n
    return v;
}

double bessel_j_prime(int n, double x) {
    if (n == 0) return -bessel_j(1, x);
    return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

Complex hankel1(int n, double x) {
    if (!(x > 0.0)) throw CoincidentPoints("hankel1 requires positive argument");
    return {bessel_j(n, x), bessel_y(n, x)};
}

}  // namespace oscbem
