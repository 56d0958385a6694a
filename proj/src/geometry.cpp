#include "oscbem/geometry.hpp"

#include <algorithm>

namespace oscbem {

BoundaryCurve BoundaryCurve::circle(double radius) {
    BoundaryCurve c;
    c.kind_ = CurveKind::Circle;
    c.radius_ = radius;
    return c;
}

BoundaryCurve BoundaryCurve::kite() {
    BoundaryCurve c;
    c.kind_ = CurveKind::Kite;
    return c;
}

BoundaryCurve BoundaryCurve::regular_polygon(int sides, double circumradius) {
    BoundaryCurve c;
    c.kind_ = CurveKind::RegularPolygon;
    c.smooth_ = Smoothness::PiecewiseLinear;
    c.sides_ = sides;
    c.radius_ = circumradius;
    c.vertices_.resize(sides);
    for (int j = 0; j < sides; ++j) {
        double ang = 2.0 * pi * j / sides;
        c.vertices_[j] = {circumradius * std::cos(ang), circumradius * std::sin(ang)};
    }
    c.corners_.resize(sides);
    for (int j = 0; j < sides; ++j) c.corners_[j] = double(j) / sides;
    return c;
}

BoundaryCurve BoundaryCurve::custom(std::vector<Vec2> samples) {
    BoundaryCurve c;
    c.kind_ = CurveKind::Custom;
    const int q = (int)samples.size();
    if (q < 4) throw Error("custom curve needs at least 4 samples");
    // coefficients of x+iy on the band -q/2 < m <= q/2, trapezoid analysis
    c.fc_.resize(q);
    for (int m = 0; m < q; ++m) {
        Complex acc = 0.0;
        for (int p = 0; p < q; ++p) {
            double ph = -2.0 * pi * m * p / double(q);
            acc += Complex(samples[p].x, samples[p].y) * Complex(std::cos(ph), std::sin(ph));
        }
        c.fc_[m] = acc / double(q);
    }
    return c;
}

Vec2 BoundaryCurve::point(double t) const {
    t = wrap_unit(t);
    switch (kind_) {
        case CurveKind::Circle:
            return {radius_ * std::cos(2 * pi * t), radius_ * std::sin(2 * pi * t)};
        case CurveKind::Kite:
            return {-std::sin(2 * pi * t) - std::cos(4 * pi * t), std::cos(2 * pi * t)};
        case CurveKind::RegularPolygon: {
            double u = t * sides_;
            int j = std::min((int)u, sides_ - 1);
            double s = u - j;
            const Vec2& a = vertices_[j];
            const Vec2& b = vertices_[(j + 1) % sides_];
            return a + (b - a) * s;
        }
        case CurveKind::Custom: {
            const int q = (int)fc_.size();
            Complex z = 0.0;
            for (int m = 0; m < q; ++m) {
                int mm = m <= q / 2 ? m : m - q;
                double ph = 2 * pi * mm * t;
                z += fc_[m] * Complex(std::cos(ph), std::sin(ph));
            }
            return {z.real(), z.imag()};
        }
    }
    return {};
}

Vec2 BoundaryCurve::derivative(double t) const {
    t = wrap_unit(t);
    switch (kind_) {
        case CurveKind::Circle:
            return {-2 * pi * radius_ * std::sin(2 * pi * t), 2 * pi * radius_ * std::cos(2 * pi * t)};
        case CurveKind::Kite:
            return {-2 * pi * std::cos(2 * pi * t) + 4 * pi * std::sin(4 * pi * t),
                    -2 * pi * std::sin(2 * pi * t)};
        case CurveKind::RegularPolygon: {
            double u = t * sides_;
            double frac = u - std::floor(u);
            if (frac < 1e-13 || frac > 1.0 - 1e-13)
                throw CornerParameter("derivative undefined at polygon corner t=" + std::to_string(t));
            int j = std::min((int)u, sides_ - 1);
            const Vec2& a = vertices_[j];
            const Vec2& b = vertices_[(j + 1) % sides_];
            return (b - a) * double(sides_);
        }
        case CurveKind::Custom: {
            const int q = (int)fc_.size();
            Complex z = 0.0;
            for (int m = 0; m < q; ++m) {
                int mm = m <= q / 2 ? m : m - q;
                double ph = 2 * pi * mm * t;
                z += fc_[m] * Complex(0.0, 2 * pi * mm) * Complex(std::cos(ph), std::sin(ph));
            }
            return {z.real(), z.imag()};
        }
    }
    return {};
}

double BoundaryCurve::speed(double t) const { return derivative(t).norm(); }

Vec2 BoundaryCurve::chord(double a, double b) const {
    switch (kind_) {
        case CurveKind::Circle: {
            // difference-to-product identities keep relative accuracy
            double sd = std::sin(pi * (b - a));
            double sp = std::sin(pi * (a + b));
            double cp = std::cos(pi * (a + b));
            return {-2.0 * radius_ * sd * sp, 2.0 * radius_ * sd * cp};
        }
        case CurveKind::Kite: {
            double s1 = std::sin(pi * (b - a)), s2 = std::sin(2 * pi * (b - a));
            double cp1 = std::cos(pi * (a + b)), sp1 = std::sin(pi * (a + b));
            double sp2 = std::sin(2 * pi * (a + b));
            return {-2.0 * cp1 * s1 + 2.0 * sp2 * s2, -2.0 * sp1 * s1};
        }
        case CurveKind::RegularPolygon: {
            double ta = wrap_unit(a), tb = wrap_unit(b);
            int ea = std::min((int)(ta * sides_), sides_ - 1);
            int eb = std::min((int)(tb * sides_), sides_ - 1);
            if (ea == eb) {
                const Vec2& v0 = vertices_[ea];
                const Vec2& v1 = vertices_[(ea + 1) % sides_];
                return (v1 - v0) * ((tb - ta) * sides_);
            }
            return point(tb) - point(ta);
        }
        case CurveKind::Custom: {
            const int q = (int)fc_.size();
            Complex z = 0.0;
            for (int m = 0; m < q; ++m) {
                int mm = m <= q / 2 ? m : m - q;
                double sd = std::sin(pi * mm * (b - a));
                double ph = pi * mm * (a + b);
                z += fc_[m] * (2.0 * iu * sd) * Complex(std::cos(ph), std::sin(ph));
            }
            return {z.real(), z.imag()};
        }
    }
    return {};
}

Vec2 BoundaryCurve::outward_normal(double t) const {
    Vec2 d = derivative(t);
    double s = d.norm();
    return {d.y / s, -d.x / s};
}

double BoundaryCurve::perimeter() const {
    switch (kind_) {
        case CurveKind::Circle:
            return 2 * pi * radius_;
        case CurveKind::RegularPolygon:
            return sides_ * (vertices_[1] - vertices_[0]).norm();
        default: {
            // midpoint rule, spectrally accurate for smooth periodic speed
            const int q = 4096;
            double len = 0.0;
            for (int i = 0; i < q; ++i) len += speed((i + 0.5) / q) / q;
            return len;
        }
    }
}

double BoundaryCurve::max_speed() const {
    if (kind_ == CurveKind::Circle) return 2 * pi * radius_;
    if (kind_ == CurveKind::RegularPolygon) return sides_ * (vertices_[1] - vertices_[0]).norm();
    double m = 0.0;
    for (int i = 0; i < 512; ++i) m = std::max(m, speed((i + 0.5) / 512.0));
    return m * 1.05;
}

}  // namespace oscbem
