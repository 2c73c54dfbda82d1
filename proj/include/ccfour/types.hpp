#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ccfour {

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt3 = std::numbers::sqrt3;
inline constexpr double inv_sqrt3 = std::numbers::inv_sqrt3;

/// Radial coordinates of bodies 2, 3 and 4 measured from the intersection of
/// the diagonals. Body 1 sits at distance 1 on the positive x-axis.
struct RadialPoint {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    [[nodiscard]] bool positive() const noexcept { return a > 0.0 && b > 0.0 && c > 0.0; }
    [[nodiscard]] bool finite() const noexcept
    {
        return std::isfinite(a) && std::isfinite(b) && std::isfinite(c);
    }

    friend bool operator==(const RadialPoint&, const RadialPoint&) = default;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 u, Vec2 v) noexcept { return {u.x + v.x, u.y + v.y}; }
    friend constexpr Vec2 operator-(Vec2 u, Vec2 v) noexcept { return {u.x - v.x, u.y - v.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) noexcept { return {s * v.x, s * v.y}; }
    friend constexpr Vec2 operator*(Vec2 v, double s) noexcept { return {s * v.x, s * v.y}; }
    Vec2& operator+=(Vec2 v) noexcept
    {
        x += v.x;
        y += v.y;
        return *this;
    }
    Vec2& operator-=(Vec2 v) noexcept
    {
        x -= v.x;
        y -= v.y;
        return *this;
    }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

[[nodiscard]] constexpr double dot(Vec2 u, Vec2 v) noexcept { return u.x * v.x + u.y * v.y; }
[[nodiscard]] constexpr double cross(Vec2 u, Vec2 v) noexcept { return u.x * v.y - u.y * v.x; }
[[nodiscard]] inline double norm(Vec2 v) noexcept { return std::hypot(v.x, v.y); }
/// Counterclockwise quarter turn.
[[nodiscard]] constexpr Vec2 perp(Vec2 v) noexcept { return {-v.y, v.x}; }

using Quad = std::array<Vec2, 4>;
using Masses = std::array<double, 4>;

// Errors. Every failure the library reports derives from ccfour::Error; the
// kind tells the CLI which exit code to use.

enum class ErrorKind { domain, degenerate, numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Input lies outside the region where the operation is defined.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

/// Geometry collapses (coincident bodies, collinear triples, vanishing
/// denominators).
class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& what) : Error(ErrorKind::degenerate, what) {}
};

/// A numerical procedure failed to produce a trustworthy answer.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

namespace detail {

[[nodiscard]] inline double cube(double x) noexcept { return x * x * x; }

[[nodiscard]] inline double clamp_unit(double x) noexcept
{
    return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x);
}

/// Relative difference with a floor on the scale so that values near zero
/// compare absolutely.
[[nodiscard]] inline double rel_diff(double x, double y, double floor = 1.0) noexcept
{
    const double scale = std::max({std::abs(x), std::abs(y), floor});
    return std::abs(x - y) / scale;
}

}  // namespace detail

}  // namespace ccfour
