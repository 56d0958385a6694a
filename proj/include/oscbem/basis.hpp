#pragma once

#include <optional>
#include <vector>

#include "oscbem/spectral.hpp"
#include "oscbem/types.hpp"

namespace oscbem {

/// Periodic spline space of degree d on a quasiuniform mesh in [0,1);
/// dimension equals the number of knots. B-splines are normalized to a
/// partition of unity.
class SplineSpace {
public:
    static SplineSpace uniform(int degree, int n);
    static SplineSpace from_knots(int degree, std::vector<double> knots);

    int degree() const { return degree_; }
    int size() const { return n_; }
    bool is_uniform() const { return uniform_; }
    const std::vector<double>& knots() const { return knots_; }
    double mesh_size() const { return h_max_; }
    double quasiuniformity() const { return h_max_ / h_min_; }

    /// Value of the n-th periodic B-spline at t.
    double eval(int n, double t) const;

    /// Values of the d+1 B-splines supported at t; indices are
    /// (first + r) mod N for r = 0..d.
    void nonzero_at(double t, int& first, double* values) const;

    /// Fourier coefficient of the n-th basis function at mode m.
    Complex basis_fourier(int n, int m) const;

    /// Fourier coefficients of sum_n a_n phi_n on the band [-K, K].
    FourierVector to_fourier(const std::vector<Complex>& a, int bandwidth) const;

private:
    int degree_ = 1;
    int n_ = 0;
    bool uniform_ = true;
    std::vector<double> knots_;
    double h_max_ = 0.0, h_min_ = 0.0;

    double knot_ext(int i) const;  // periodically extended knot
};

/// Spectral basis of the uniform spline space: psi_mu has Fourier support on
/// the residue class mu (mod N) with coefficients (mu/k)^{d+1}. Indices run
/// over Lambda_N = { -N/2 < mu <= N/2 }.
struct PsiBasisSpec {
    int n = 0;
    int degree = 1;
    long long truncation_blocks = 64;

    bool in_lambda(int mu) const { return 2 * mu > -n && 2 * mu <= n; }
    std::vector<int> lambda() const;
    /// Analytic bound on the dropped series tail for mode mu.
    double tail_bound(int mu, double two_alpha = 0.0) const;
};

/// Truncated evaluation of psi_mu (two_alpha = 0) or of the model operator
/// applied to it (mode k scaled by [k]^{two_alpha}).
Complex psi_series(const PsiBasisSpec& spec, int mu, double x, double two_alpha = 0.0);

inline Complex eval_psi(const PsiBasisSpec& spec, int mu, double x) {
    return psi_series(spec, mu, x, 0.0);
}

struct ProjectionInfo {
    double condition = 1.0;
    bool ill_conditioned = false;
};

/// B-spline coefficients of the H^s-orthogonal projection of `target` onto
/// the space. Uses the residue-class diagonalization on uniform meshes and
/// the Fourier-space Gram system otherwise; an excessive Gram condition
/// number is reported through `info`, not fatal.
std::vector<Complex> hs_projection(const FourierVector& target, const SplineSpace& space,
                                   double s, ProjectionInfo* info = nullptr,
                                   double condition_bound = 1e12);

}  // namespace oscbem
