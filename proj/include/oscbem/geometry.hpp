#pragma once

#include <vector>

#include "oscbem/types.hpp"

namespace oscbem {

enum class CurveKind { Circle, Kite, RegularPolygon, Custom };
enum class Smoothness { Smooth, PiecewiseLinear };

/// A closed plane curve with a regular 1-periodic parametrization z(t),
/// traversed counterclockwise. All computation happens on the parameter
/// domain [0,1); arclength enters only through speed(t).
class BoundaryCurve {
public:
    static BoundaryCurve circle(double radius);
    static BoundaryCurve kite();
    // Counterclockwise, first vertex at parameter 0 on the positive x-axis.
    static BoundaryCurve regular_polygon(int sides, double circumradius);
    // Equispaced point samples, trigonometric interpolation.
    static BoundaryCurve custom(std::vector<Vec2> samples);

    CurveKind kind() const { return kind_; }
    Smoothness smoothness() const { return smooth_; }

    Vec2 point(double t) const;
    /// z'(t); throws CornerParameter at polygon corners.
    Vec2 derivative(double t) const;
    double speed(double t) const;
    /// Unit normal pointing out of the enclosed region.
    Vec2 outward_normal(double t) const;
    /// z(b) - z(a) without cancellation for nearly equal parameters; the
    /// near-diagonal kernel evaluations depend on its relative accuracy.
    Vec2 chord(double a, double b) const;

    /// Corner parameters of a piecewise-linear curve, empty when smooth.
    const std::vector<double>& corners() const { return corners_; }
    double perimeter() const;
    double max_speed() const;

    double radius() const { return radius_; }
    int sides() const { return sides_; }

private:
    BoundaryCurve() = default;

    CurveKind kind_ = CurveKind::Circle;
    Smoothness smooth_ = Smoothness::Smooth;
    double radius_ = 1.0;
    int sides_ = 0;
    std::vector<Vec2> vertices_;
    std::vector<double> corners_;
    // trig interpolation data for Custom
    std::vector<Complex> fc_;   // Fourier coefficients of x+iy
};

}  // namespace oscbem
