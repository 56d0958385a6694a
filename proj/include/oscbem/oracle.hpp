#pragma once

#include <functional>
#include <vector>

#include "oscbem/geometry.hpp"
#include "oscbem/operators.hpp"
#include "oscbem/spectral.hpp"
#include "oscbem/types.hpp"

namespace oscbem {

/// Model problem for the exact error formulas: pseudo-differential operator
/// of order two_alpha, degree-d splines on the uniform N-mesh, refined
/// collocation grid with M = J*N points, true density given by its Fourier
/// coefficients u_hat (callable at any mode).
struct ModelProblem {
    int degree = 1;
    double two_alpha = -1.0;
    int n = 8;
    int j = 1;
    std::function<Complex(long long)> u_hat;
    int aliasing_range = 1000;  // |k| cap in the aliasing sums
};

/// Aliasing lattice sum Omega(xi, y) truncated at |l| <= lattice_cap; the
/// analytic tail bound is written to *tail_bound when given.
Complex omega(double xi, double y, int degree, double two_alpha, long long lattice_cap = 10000,
              double* tail_bound = nullptr);

/// Omega at the rational node xi = q/j, evaluated through residue-class
/// sums with Euler-Maclaurin tails (accurate to ~1e-14).
Complex omega_at_node(int q, int j, double y, int degree, double two_alpha);

/// Stability denominator D(y) >= 1, simplified closed form.
double stability_D(double y, int j, int degree, double two_alpha);
/// D(y) from its definition as the node average of |1 + Omega|^2.
double stability_D_from_definition(double y, int j, int degree, double two_alpha);

/// Leading error function E(y), simplified closed form.
double error_E(double y, int j, int degree, double two_alpha);
/// E(y) from the node average of Omega (1 + conj Omega).
double error_E_from_definition(double y, int j, int degree, double two_alpha);

struct ExactErrorCoeffs {
    std::vector<int> mu;           // Lambda_N, ascending
    std::vector<Complex> error;    // a_mu - u_mu
    std::vector<Complex> leading;  // -(E/D) u_mu
    std::vector<Complex> remainder;  // R_N(mu); the mu = 0 slot holds Z_N
    Complex z_n = 0.0;
    std::vector<double> d_values;
    std::vector<double> e_values;
};

/// Closed-form Fourier coefficients of the collocation error on the refined
/// equispaced grid.
ExactErrorCoeffs exact_error_coeffs(const ModelProblem& problem);

/// H^s norm of the psi-synthesized error, assembled residue class by
/// residue class (no explicit synthesis).
double error_norm_lambda(const ExactErrorCoeffs& coeffs, const ModelProblem& problem, double s);

/// Fourier coefficients of sum_mu err_mu psi_mu on the band [-K, K].
FourierVector synthesize_psi_coeffs(const std::vector<int>& mu,
                                    const std::vector<Complex>& values, int n, int degree,
                                    int bandwidth);

/// P_N f: the psi-basis coefficients f_mu over Lambda_N.
std::vector<Complex> low_freq_projection(const FourierVector& f, int n, int degree);

/// -sum_{j != 0} f_{jM}; equals int f - Q_M[f] for the equispaced
/// M-point trapezoid rule.
Complex aliasing_error(const FourierVector& f, int m);

/// Exact density on a circle: u_m = f_m / lambda_m with the circle symbol.
/// Coefficients with |f_m| <= drop_tol are zeroed; a symbol magnitude below
/// floor on a kept mode throws NearResonantMode.
FourierVector circle_reference(const OperatorSpec& op, double radius, const FourierVector& data,
                               double drop_tol = 0.0, double symbol_floor = 1e-14);

/// Trace of the plane wave e^{i k x . (cos theta, sin theta)} on the circle,
/// via the Bessel expansion of the exponential.
FourierVector plane_wave_circle_trace(double k, double radius, double theta, int bandwidth);

/// Layer potential of a Fourier density over the circle at a point off it
/// (single layer only), via the Bessel series.
Complex circle_layer_field(const OperatorSpec& op, const FourierVector& density, double radius,
                           const Vec2& x);

struct ManufacturedSolution {
    Vec2 source;
    double wavenumber = 0.0;
    std::function<Complex(double)> boundary_data;  // G(z(t), source)
    std::function<Complex(const Vec2&)> field;     // G(x, source), x outside
};

/// Radiating reference for exterior problems: point source inside the
/// curve; boundary data is its trace, the exact exterior field is known.
ManufacturedSolution manufactured_exterior_solution(const BoundaryCurve& curve, double k,
                                                    const Vec2& source);

/// Fixed smooth reference density for model studies:
/// u_m = (1+|m|)^{-4} e^{i theta_m} with a deterministic phase.
Complex smooth_model_coeff(long long m);

}  // namespace oscbem
