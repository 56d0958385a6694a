#pragma once

#include <functional>
#include <vector>

#include "oscbem/basis.hpp"
#include "oscbem/geometry.hpp"
#include "oscbem/quadrature.hpp"
#include "oscbem/spectral.hpp"
#include "oscbem/types.hpp"

namespace oscbem {

enum class OperatorKind { HelmholtzSingleLayer, HelmholtzDoubleLayer, PseudoDifferential };
enum class ProblemSide { Exterior, Interior };

/// Boundary integral operator V. HelmholtzDoubleLayer is the full
/// formulation (1/2) I + D; its kernel normal points into the evaluation
/// domain (outward for exterior problems, inward for interior ones) so that
/// the layer-potential trace from that side equals V applied to the density.
struct OperatorSpec {
    OperatorKind kind = OperatorKind::PseudoDifferential;
    double wavenumber = 0.0;
    double two_alpha = 0.0;
    ProblemSide side = ProblemSide::Exterior;

    static OperatorSpec single_layer(double k) {
        return {OperatorKind::HelmholtzSingleLayer, k, -1.0, ProblemSide::Exterior};
    }
    static OperatorSpec double_layer(double k, ProblemSide side = ProblemSide::Exterior) {
        return {OperatorKind::HelmholtzDoubleLayer, k, 0.0, side};
    }
    static OperatorSpec pseudo_differential(double two_alpha) {
        return {OperatorKind::PseudoDifferential, 0.0, two_alpha, ProblemSide::Exterior};
    }

    double normal_sign() const { return side == ProblemSide::Exterior ? 1.0 : -1.0; }
};

struct QuadOptions {
    int gauss_order = 16;
    double target_tol = 1e-12;   // absolute tolerance of the graded ladder
    double standoff = 0.05;      // minimum field-point distance to the curve
    bool validate = false;       // re-integrate on a refined ladder and compare
};

/// [m]^{2 alpha} mode scaling; the zeroth coefficient is preserved.
FourierVector apply_pseudodiff(const FourierVector& f, double two_alpha);

/// Kernel value at boundary points; `normal_y` must be the outward unit
/// normal at y (the spec's side handles orientation internally).
/// For the double-layer formulation this is the kernel of D only.
Complex greens_kernel(const OperatorSpec& op, const Vec2& x, const Vec2& y,
                      const Vec2& normal_y = {0.0, 0.0});

/// (V density)(z(s)) for a generic density sampler on [0,1); integrates the
/// kernel against density(t) |z'(t)| with knot/corner splitting and a graded
/// ladder toward t = s. `extra_breaks` should contain any kinks of the
/// density. Throws QuadratureNotConverged when validation is on and fails.
Complex kernel_integral(const OperatorSpec& op, const BoundaryCurve& curve,
                        const std::function<Complex(double)>& density, double s,
                        const std::vector<double>& extra_breaks = {},
                        const QuadOptions& opts = {});

/// Fills (V phi_n)(z(s)) for every basis function of the space.
void boundary_apply_row(const OperatorSpec& op, const BoundaryCurve& curve,
                        const SplineSpace& space, double s, Complex* row,
                        const QuadOptions& opts = {});

/// (V u)(z(s)) for the spline density u = sum a_n phi_n.
Complex boundary_apply(const OperatorSpec& op, const BoundaryCurve& curve,
                       const SplineSpace& space, const std::vector<Complex>& coeffs, double s,
                       const QuadOptions& opts = {});

/// Eigenvalue of V on the Fourier mode e^{2 pi i m t} over a circle of the
/// given radius (derived Bessel products, gated by quadrature tests).
Complex circle_symbol(const OperatorSpec& op, int m, double radius);

/// Layer potential of the spline density at a point off the curve.
Complex field_eval(const OperatorSpec& op, const BoundaryCurve& curve, const SplineSpace& space,
                   const std::vector<Complex>& coeffs, const Vec2& x,
                   const QuadOptions& opts = {});

/// Same with a generic density sampler.
Complex field_eval_density(const OperatorSpec& op, const BoundaryCurve& curve,
                           const std::function<Complex(double)>& density, const Vec2& x,
                           const std::vector<double>& extra_breaks = {},
                           const QuadOptions& opts = {});

}  // namespace oscbem
