#pragma once

#include "oscbem/types.hpp"

namespace oscbem {

double bessel_j(int n, double x);
double bessel_y(int n, double x);
/// J_n'(x) = (J_{n-1} - J_{n+1})/2
double bessel_j_prime(int n, double x);

/// H_n^{(1)}(x) = J_n(x) + i Y_n(x); throws CoincidentPoints at x <= 0.
Complex hankel1(int n, double x);

}  // namespace oscbem
