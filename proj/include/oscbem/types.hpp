#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace oscbem {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr Complex iu{0.0, 1.0};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double a) const { return {a * x, a * y}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

// Wraps t into [0,1).
inline double wrap_unit(double t) {
    double r = t - std::floor(t);
    return r < 1.0 ? r : 0.0;
}

// Periodic distance on [0,1).
inline double periodic_dist(double a, double b) {
    double d = std::abs(wrap_unit(a) - wrap_unit(b));
    return std::min(d, 1.0 - d);
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CornerParameter : Error { using Error::Error; };
struct InsufficientResolution : Error { using Error::Error; };
struct IndexOutOfLambda : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct CoincidentPoints : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct PointTooCloseToBoundary : Error { using Error::Error; };
struct DegenerateGrid : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct NearResonantMode : Error { using Error::Error; };
struct SourceOutside : Error { using Error::Error; };
struct InsufficientPoints : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace oscbem
