#pragma once

#include <Eigen/Dense>
#include <functional>
#include <variant>

#include "oscbem/basis.hpp"
#include "oscbem/colloc.hpp"
#include "oscbem/geometry.hpp"
#include "oscbem/operators.hpp"
#include "oscbem/types.hpp"

namespace oscbem {

enum class MethodTag { LeastSquares, Modified, SquareCollocation };

/// Rectangular collocation system: G holds (V phi_n)(x_m), B (optional) the
/// plain basis samples phi_n(x_m), W the periodic trapezoid weights.
struct DiscreteSystem {
    Eigen::MatrixXcd G;
    Eigen::MatrixXcd B;  // 0x0 unless requested
    Eigen::VectorXd W;
    Eigen::VectorXcd rhs;
    MethodTag method = MethodTag::LeastSquares;

    int rows() const { return (int)G.rows(); }
    int cols() const { return (int)G.cols(); }
};

struct Solution {
    Eigen::VectorXcd coeffs;
    double condition = 0.0;
    double residual = 0.0;  // ||W^{1/2} (G a - rhs)||_2
    bool condition_warning = false;

    std::vector<Complex> coeff_vector() const {
        return {coeffs.data(), coeffs.data() + coeffs.size()};
    }
};

/// Trial space: B-splines for the Helmholtz kinds, the psi basis for the
/// pseudo-differential model operator.
using TrialBasis = std::variant<SplineSpace, PsiBasisSpec>;

struct AssembleOptions {
    bool with_basis_matrix = false;
    double quad_tol = 1e-12;
    int gauss_order = 16;
    int threads = 0;                    // 0: OSCBEM_THREADS env, default 1
    long long psi_direct_blocks = 512;  // direct part of the psi mode sums
    MethodTag method = MethodTag::LeastSquares;
};

DiscreteSystem assemble(const OperatorSpec& op, const BoundaryCurve& curve,
                        const TrialBasis& basis, const CollocationGrid& grid,
                        const std::function<Complex(double)>& data,
                        const AssembleOptions& opts = {});

/// Weighted least-squares solve of the rectangular system through a
/// rank-revealing QR of W^{1/2} G (the normal equations are never formed).
Solution solve_least_squares(const DiscreteSystem& sys);

/// Solves the N x N system (B^* W G) a = B^* W rhs.
Solution solve_modified(const DiscreteSystem& sys);

struct GalerkinOptions {
    /// quadrature nodes per trial dimension for the continuous pairings
    int nodes_per_dim = 32;
    int gauss_order = 16;
    double quad_tol = 1e-12;
    int threads = 0;
};

/// Classical Galerkin: <chi, V u> = <chi, f> with the continuous pairing
/// discretized by composite Gauss panels aligned with the spline cells.
Solution solve_galerkin(const OperatorSpec& op, const BoundaryCurve& curve,
                        const SplineSpace& space, const std::function<Complex(double)>& data,
                        const GalerkinOptions& opts = {});

/// Bubnov-Galerkin limit: <V chi, V u> = <V chi, f>.
Solution solve_bubnov_galerkin(const OperatorSpec& op, const BoundaryCurve& curve,
                               const SplineSpace& space,
                               const std::function<Complex(double)>& data,
                               const GalerkinOptions& opts = {});

/// The composite-Gauss grid used by the two Galerkin solvers.
CollocationGrid galerkin_quadrature_grid(const SplineSpace& space, const BoundaryCurve& curve,
                                         const GalerkinOptions& opts);

int thread_count(int requested);

}  // namespace oscbem
