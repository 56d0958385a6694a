#include "oscbem/operators.hpp"

#include <algorithm>

#include "oscbem/bessel.hpp"

namespace oscbem {

FourierVector apply_pseudodiff(const FourierVector& f, double two_alpha) {
    FourierVector out(f.bandwidth());
    out.set_coeff(0, f.coeff(0));
    for (int m = 1; m <= f.bandwidth(); ++m) {
        double w = std::pow(double(m), two_alpha);
        out.set_coeff(m, w * f.coeff(m));
        out.set_coeff(-m, w * f.coeff(-m));
    }
    return out;
}

Complex greens_kernel(const OperatorSpec& op, const Vec2& x, const Vec2& y,
                      const Vec2& normal_y) {
    const double r = (x - y).norm();
    if (r <= 0.0) throw CoincidentPoints("kernel evaluated at coincident points");
    const double k = op.wavenumber;
    switch (op.kind) {
        case OperatorKind::HelmholtzSingleLayer:
            return 0.25 * iu * hankel1(0, k * r);
        case OperatorKind::HelmholtzDoubleLayer: {
            // d/dn_y G with the normal oriented into the evaluation domain
            double rn = (y - x).dot(normal_y) / r * op.normal_sign();
            return -0.25 * iu * k * hankel1(1, k * r) * rn;
        }
        case OperatorKind::PseudoDifferential:
            throw Error("pseudo-differential operator has no point kernel");
    }
    return 0.0;
}

namespace {

// kernel with both points on the curve; the chord keeps the near-diagonal
// double-layer numerator (y-x).n_y from losing all significant digits
Complex kernel_on_curve(const OperatorSpec& op, const BoundaryCurve& curve, double s, double t) {
    Vec2 ch = curve.chord(s, t);  // z(t) - z(s) = y - x
    double r = ch.norm();
    // a quadrature node rounded onto the singular parameter; measure-zero
    // point of an integrable kernel
    if (r <= 0.0) return 0.0;
    const double k = op.wavenumber;
    if (op.kind == OperatorKind::HelmholtzSingleLayer) return 0.25 * iu * hankel1(0, k * r);
    double rn = ch.dot(curve.outward_normal(t)) / r * op.normal_sign();
    return -0.25 * iu * k * hankel1(1, k * r) * rn;
}

std::vector<double> base_breaks(const BoundaryCurve& curve, const std::vector<double>& knots,
                                const std::vector<double>& extra) {
    std::vector<double> breaks = knots;
    const auto& corners = curve.corners();
    breaks.insert(breaks.end(), corners.begin(), corners.end());
    breaks.insert(breaks.end(), extra.begin(), extra.end());
    if (breaks.empty()) breaks.push_back(0.0);
    return breaks;
}

std::vector<Panel> singular_panels(const BoundaryCurve& curve, std::vector<double> breaks,
                                   double s, double wavenumber, const QuadOptions& opts) {
    breaks.push_back(s);
    auto panels = split_periodic(std::move(breaks));
    panels = grade_toward(panels, s, opts.target_tol);
    // oscillation cap keeps the kernel resolvable by the fixed Gauss order
    const double cap = std::min(0.125, 8.0 / (1.0 + wavenumber * curve.max_speed()));
    // shrink panels much wider than their distance to the singular point
    return refine_by_distance(panels, [&](double a, double b) {
        double d = std::min(periodic_dist(a, s), periodic_dist(b, s));
        return std::min(cap, d > 0.0 ? 2.0 * d : b - a);
    });
}

Complex integrate_kernel(const OperatorSpec& op, const BoundaryCurve& curve,
                         const std::function<Complex(double)>& density, double s,
                         const std::vector<Panel>& panels, int gauss_order) {
    const bool dl = op.kind == OperatorKind::HelmholtzDoubleLayer;
    Complex acc = integrate_panels(panels, gauss_order, [&](double t) {
        double tw = wrap_unit(t);
        return kernel_on_curve(op, curve, s, tw) * density(tw) * curve.speed(tw);
    });
    if (dl) acc += 0.5 * density(wrap_unit(s));  // the (1/2) I part of the formulation
    return acc;
}

}  // namespace

Complex kernel_integral(const OperatorSpec& op, const BoundaryCurve& curve,
                        const std::function<Complex(double)>& density, double s,
                        const std::vector<double>& extra_breaks, const QuadOptions& opts) {
    if (op.kind == OperatorKind::PseudoDifferential)
        throw Error("kernel_integral requires a Helmholtz kind");
    s = wrap_unit(s);
    auto breaks = base_breaks(curve, extra_breaks, {});
    auto panels = singular_panels(curve, breaks, s, op.wavenumber, opts);
    Complex v = integrate_kernel(op, curve, density, s, panels, opts.gauss_order);
    if (opts.validate) {
        QuadOptions finer = opts;
        finer.target_tol = opts.target_tol * 1e-2;
        finer.validate = false;
        auto panels2 = singular_panels(curve, breaks, s, op.wavenumber, finer);
        Complex v2 = integrate_kernel(op, curve, density, s, panels2, opts.gauss_order + 8);
        if (std::abs(v - v2) > 100 * opts.target_tol * (1.0 + std::abs(v2)))
            throw QuadratureNotConverged("singular quadrature self-check failed at s=" +
                                         std::to_string(s));
    }
    return v;
}

namespace {

// Pseudo-differential rows for a uniform spline space: V phi_n(x) depends on
// n only through the residue class of the mode, so the mode sum collapses to
// N partial sums per point.
void pseudodiff_row_uniform(const OperatorSpec& op, const SplineSpace& space, double x,
                            Complex* row, double tol) {
    const int n = space.size();
    const int d = space.degree();
    const double ta = op.two_alpha;
    if (!(ta < d)) throw Error("pseudo-differential order must satisfy 2*alpha < d");
    // band from the analytic tail bound of sum |m|^{2a} |T(m)|
    double kd = std::pow(tol * (d - ta) * std::pow(pi, d + 1) / (2.0 * std::pow(double(n), d)),
                         1.0 / (ta - d));
    const int band = std::min(1 << 21, std::max(4 * n, (int)std::ceil(kd)));
    std::vector<Complex> class_sum(n, Complex(0.0));
    for (int m = -band; m <= band; ++m) {
        double w = m == 0 ? 1.0 : std::pow(std::abs((double)m), ta);
        double u = pi * m / double(n);
        double amp = std::pow(std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u, d + 1) / n;
        double ph = -u * (d + 1) + 2.0 * pi * m * x;
        class_sum[((m % n) + n) % n] += w * amp * Complex(std::cos(ph), std::sin(ph));
    }
    for (int q = 0; q < n; ++q) {
        Complex acc = 0.0;
        for (int r = 0; r < n; ++r) {
            double ph = -2.0 * pi * double(r) * q / n;
            acc += class_sum[r] * Complex(std::cos(ph), std::sin(ph));
        }
        row[q] = acc;
    }
}

}  // namespace

void boundary_apply_row(const OperatorSpec& op, const BoundaryCurve& curve,
                        const SplineSpace& space, double s, Complex* row,
                        const QuadOptions& opts) {
    const int n = space.size();
    const int d = space.degree();
    s = wrap_unit(s);

    if (op.kind == OperatorKind::PseudoDifferential) {
        if (op.two_alpha == 0.0) {  // V is the identity
            std::fill(row, row + n, Complex(0.0));
            int first;
            std::vector<double> vals(d + 1);
            space.nonzero_at(s, first, vals.data());
            for (int r = 0; r <= d; ++r) row[(first + r) % n] = vals[r];
            return;
        }
        if (space.is_uniform()) {
            pseudodiff_row_uniform(op, space, s, row, opts.target_tol);
            return;
        }
        // general mesh: mode synthesis per basis function
        const int band = 8 * n * 16;
        for (int q = 0; q < n; ++q) {
            Complex acc = 0.0;
            for (int m = -band; m <= band; ++m) {
                double w = m == 0 ? 1.0 : std::pow(std::abs((double)m), op.two_alpha);
                double ph = 2.0 * pi * m * s;
                acc += w * space.basis_fourier(q, m) * Complex(std::cos(ph), std::sin(ph));
            }
            row[q] = acc;
        }
        return;
    }

    auto breaks = base_breaks(curve, space.knots(), {});
    auto panels = singular_panels(curve, breaks, s, op.wavenumber, opts);
    const bool dl = op.kind == OperatorKind::HelmholtzDoubleLayer;
    const GaussRule& g = gauss_legendre(opts.gauss_order);

    std::fill(row, row + n, Complex(0.0));
    std::vector<double> vals(d + 1);
    for (const Panel& panel : panels) {
        double c = 0.5 * (panel.a + panel.b);
        double h = 0.5 * (panel.b - panel.a);
        if (!(h > 0.0)) continue;
        for (int q = 0; q < opts.gauss_order; ++q) {
            double t = wrap_unit(c + h * g.nodes[q]);
            Complex kv = kernel_on_curve(op, curve, s, t) * (h * g.weights[q] * curve.speed(t));
            int first;
            space.nonzero_at(t, first, vals.data());
            for (int r = 0; r <= d; ++r) row[(first + r) % n] += kv * vals[r];
        }
    }
    if (dl) {
        int first;
        space.nonzero_at(s, first, vals.data());
        for (int r = 0; r <= d; ++r) row[(first + r) % n] += 0.5 * vals[r];
    }
}

Complex boundary_apply(const OperatorSpec& op, const BoundaryCurve& curve,
                       const SplineSpace& space, const std::vector<Complex>& coeffs, double s,
                       const QuadOptions& opts) {
    if ((int)coeffs.size() != space.size())
        throw LengthMismatch("density coefficients must match space dimension");
    if (op.kind == OperatorKind::PseudoDifferential || !opts.validate) {
        std::vector<Complex> row(space.size());
        boundary_apply_row(op, curve, space, s, row.data(), opts);
        Complex acc = 0.0;
        for (int q = 0; q < space.size(); ++q) acc += row[q] * coeffs[q];
        return acc;
    }
    auto density = [&](double t) {
        int first;
        std::vector<double> vals(space.degree() + 1);
        space.nonzero_at(t, first, vals.data());
        Complex v = 0.0;
        for (int r = 0; r <= space.degree(); ++r)
            v += coeffs[(first + r) % space.size()] * vals[r];
        return v;
    };
    return kernel_integral(op, curve, density, s, space.knots(), opts);
}

Complex circle_symbol(const OperatorSpec& op, int m, double radius) {
    const int a = std::abs(m);
    const double ka = op.wavenumber * radius;
    switch (op.kind) {
        case OperatorKind::HelmholtzSingleLayer: {
            double jm = bessel_j(a, ka);
            // once J_m underflows the Bessel product J_m Y_m -> -1/(pi m);
            // keeps far-tail modes finite instead of 0 * inf
            if (jm == 0.0) return radius / (2.0 * a);
            return 0.5 * iu * pi * radius * jm * hankel1(a, ka);
        }
        case OperatorKind::HelmholtzDoubleLayer: {
            // trace of the layer potential from the side the kernel normal
            // points into; equals the full (1/2) I + D formulation
            double jp = bessel_j_prime(a, ka);
            Complex ext = jp == 0.0 && a > 0
                              ? Complex(0.5)
                              : 0.5 * iu * pi * ka * jp * hankel1(a, ka);
            return op.side == ProblemSide::Exterior ? ext : 1.0 - ext;
        }
        case OperatorKind::PseudoDifferential:
            return m == 0 ? 1.0 : std::pow(double(a), op.two_alpha);
    }
    return 0.0;
}

namespace {

// kernel of the layer potential representation at a point off the curve
Complex field_kernel(const OperatorSpec& op, const BoundaryCurve& curve, const Vec2& x,
                     double t) {
    Vec2 zy = curve.point(t);
    if (op.kind == OperatorKind::HelmholtzSingleLayer)
        return greens_kernel(op, x, zy);
    return greens_kernel(op, x, zy, curve.outward_normal(t));
}

std::vector<Panel> field_panels(const OperatorSpec& op, const BoundaryCurve& curve,
                                const std::vector<double>& breaks, const Vec2& x,
                                const QuadOptions& opts) {
    auto panels = split_periodic(breaks);
    const double vmax = curve.max_speed();
    const double cap = std::min(0.125, 8.0 / (1.0 + op.wavenumber * vmax));
    double dmin = 1e300;
    auto refined = refine_by_distance(panels, [&](double a, double b) {
        double d = std::min((curve.point(a) - x).norm(), (curve.point(b) - x).norm());
        dmin = std::min(dmin, d);
        return std::min(cap, std::max(0.5 * d / vmax, 1e-6));
    });
    if (dmin < opts.standoff)
        throw PointTooCloseToBoundary("field point within standoff of the boundary");
    return refined;
}

}  // namespace

Complex field_eval_density(const OperatorSpec& op, const BoundaryCurve& curve,
                           const std::function<Complex(double)>& density, const Vec2& x,
                           const std::vector<double>& extra_breaks, const QuadOptions& opts) {
    if (op.kind == OperatorKind::PseudoDifferential)
        throw Error("field evaluation requires a Helmholtz kind");
    auto breaks = base_breaks(curve, extra_breaks, {});
    auto panels = field_panels(op, curve, breaks, x, opts);
    return integrate_panels(panels, opts.gauss_order, [&](double t) {
        double tw = wrap_unit(t);
        return field_kernel(op, curve, x, tw) * density(tw) * curve.speed(tw);
    });
}

Complex field_eval(const OperatorSpec& op, const BoundaryCurve& curve, const SplineSpace& space,
                   const std::vector<Complex>& coeffs, const Vec2& x, const QuadOptions& opts) {
    if ((int)coeffs.size() != space.size())
        throw LengthMismatch("density coefficients must match space dimension");
    auto density = [&](double t) {
        int first;
        std::vector<double> vals(space.degree() + 1);
        space.nonzero_at(t, first, vals.data());
        Complex v = 0.0;
        for (int r = 0; r <= space.degree(); ++r)
            v += coeffs[(first + r) % space.size()] * vals[r];
        return v;
    };
    return field_eval_density(op, curve, density, x, space.knots(), opts);
}

}  // namespace oscbem
