#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>

#include "ccfour/types.hpp"

namespace ccfour {

/// Cartesian placement of a convex configuration in the normalized frame:
/// the diagonals meet at the origin, body 1 is at (1, 0), body 3 on the
/// negative x-axis and bodies 2, 4 on the line at angle theta.
struct PlanarConfiguration {
    Quad q{};
    double theta = 0.0;

    [[nodiscard]] const Vec2& operator[](std::size_t i) const { return q[i]; }
};

/// The six pairwise separations and their inverse cubes s_ij = r_ij^-3.
struct MutualDistances {
    double r12 = 0, r13 = 0, r14 = 0, r23 = 0, r24 = 0, r34 = 0;
    double s12 = 0, s13 = 0, s14 = 0, s23 = 0, s24 = 0, s34 = 0;

    static MutualDistances from_r(double r12, double r13, double r14, double r23, double r24,
                                  double r34) noexcept
    {
        auto inv3 = [](double r) { return 1.0 / detail::cube(r); };
        return {r12,       r13,       r14,       r23,       r24,       r34,
                inv3(r12), inv3(r13), inv3(r14), inv3(r23), inv3(r24), inv3(r34)};
    }

    /// Distance between bodies i and j, 1-based.
    [[nodiscard]] double r(int i, int j) const
    {
        if (i > j) std::swap(i, j);
        switch (i * 10 + j) {
            case 12: return r12;
            case 13: return r13;
            case 14: return r14;
            case 23: return r23;
            case 24: return r24;
            case 34: return r34;
            default: throw DomainError("invalid body pair " + std::to_string(i) + "," + std::to_string(j));
        }
    }

    [[nodiscard]] std::array<double, 6> as_array() const noexcept { return {r12, r13, r14, r23, r24, r34}; }

    [[nodiscard]] double max_r() const noexcept
    {
        double m = 0.0;
        for (double v : as_array()) m = std::max(m, v);
        return m;
    }
};

/// Signed triangle areas; A_i omits body i.
struct SignedAreas {
    double A1 = 0, A2 = 0, A3 = 0, A4 = 0;
};

namespace detail {

inline void check_angle(double theta)
{
    if (!(theta > 0.0 && theta < pi)) throw DomainError("theta must lie in (0, pi), got " + std::to_string(theta));
}

inline void check_radial(const RadialPoint& p)
{
    if (!p.finite() || p.a < 0.0 || p.b < 0.0 || p.c < 0.0)
        throw DomainError("radial coordinates must be finite and non-negative");
}

/// Half of the shoelace sum for the triangle (u, v, w).
[[nodiscard]] inline double triangle_area(Vec2 u, Vec2 v, Vec2 w) noexcept { return 0.5 * cross(v - u, w - u); }

}  // namespace detail

[[nodiscard]] inline PlanarConfiguration positions(const RadialPoint& p, double theta)
{
    detail::check_radial(p);
    detail::check_angle(theta);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return {{Vec2{1.0, 0.0}, Vec2{p.a * ct, p.a * st}, Vec2{-p.b, 0.0}, Vec2{-p.c * ct, -p.c * st}}, theta};
}

/// Closed-form distances. The law-of-cosines terms are rewritten with half
/// angles, e.g. a^2 - 2a cos(t) + 1 = (a - 1)^2 + 4a sin^2(t/2), which is the
/// same polynomial without cancellation when the two radii nearly agree.
[[nodiscard]] inline MutualDistances mutual_distances(const RadialPoint& p, double theta)
{
    detail::check_radial(p);
    detail::check_angle(theta);
    const auto [a, b, c] = p;
    const double sh = std::sin(0.5 * theta);
    const double ch = std::cos(0.5 * theta);
    const double r12 = std::sqrt((a - 1.0) * (a - 1.0) + 4.0 * a * sh * sh);
    const double r23 = std::sqrt((a - b) * (a - b) + 4.0 * a * b * ch * ch);
    const double r14 = std::sqrt((c - 1.0) * (c - 1.0) + 4.0 * c * ch * ch);
    const double r34 = std::sqrt((b - c) * (b - c) + 4.0 * b * c * sh * sh);
    return MutualDistances::from_r(r12, b + 1.0, r14, r23, a + c, r34);
}

/// Distances measured directly from Cartesian positions.
[[nodiscard]] inline MutualDistances mutual_distances(const Quad& q)
{
    auto d = [&](int i, int j) { return norm(q[i] - q[j]); };
    return MutualDistances::from_r(d(0, 1), d(0, 2), d(0, 3), d(1, 2), d(1, 3), d(2, 3));
}

/// A_i = (-1)^(i+1) times the shoelace area of the other three bodies taken
/// in ascending order. For counterclockwise labeling this gives A1, A3 > 0 and
/// A2, A4 < 0.
[[nodiscard]] inline SignedAreas signed_areas(const Quad& q) noexcept
{
    using detail::triangle_area;
    return {triangle_area(q[1], q[2], q[3]), -triangle_area(q[0], q[2], q[3]), triangle_area(q[0], q[1], q[3]),
            -triangle_area(q[0], q[1], q[2])};
}

[[nodiscard]] inline SignedAreas signed_areas(const PlanarConfiguration& config) noexcept
{
    return signed_areas(config.q);
}

/// Determinant by LU decomposition with partial pivoting.
template <std::size_t N>
[[nodiscard]] double determinant(std::array<std::array<double, N>, N> m) noexcept
{
    double det = 1.0;
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < N; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        if (m[piv][k] == 0.0) return 0.0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < N; ++i) {
            const double f = m[i][k] / m[k][k];
            for (std::size_t j = k + 1; j < N; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

/// Bordered Cayley-Menger determinant of the squared mutual distances.
/// Vanishes for planar configurations; equals 288 vol^2 for a tetrahedron.
[[nodiscard]] inline double cayley_menger(const MutualDistances& d) noexcept
{
    const double d12 = d.r12 * d.r12, d13 = d.r13 * d.r13, d14 = d.r14 * d.r14;
    const double d23 = d.r23 * d.r23, d24 = d.r24 * d.r24, d34 = d.r34 * d.r34;
    const std::array<std::array<double, 5>, 5> m{{
        {0.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 0.0, d12, d13, d14},
        {1.0, d12, 0.0, d23, d24},
        {1.0, d13, d23, 0.0, d34},
        {1.0, d14, d24, d34, 0.0},
    }};
    return determinant(m);
}

/// Cayley-Menger determinant divided by max(r_ij)^6, its homogeneity degree.
[[nodiscard]] inline double cayley_menger_scaled(const MutualDistances& d) noexcept
{
    const double m = d.max_r();
    return cayley_menger(d) / (m * m * m * m * m * m);
}

struct CrossRatio {
    std::complex<double> numerator;
    std::complex<double> denominator;
    std::complex<double> value;

    /// Zero exactly when the four bodies are concyclic. For this labeling its
    /// sign is opposite to sin(theta) (ac - b).
    [[nodiscard]] double imag_residual() const noexcept { return value.imag(); }
};

/// (z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3)) for the complexified positions.
[[nodiscard]] inline CrossRatio cross_ratio(const PlanarConfiguration& config)
{
    std::array<std::complex<double>, 4> z{};
    double scale = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        z[i] = {config.q[i].x, config.q[i].y};
        scale = std::max(scale, std::abs(z[i]));
    }
    const auto f14 = z[0] - z[3];
    const auto f23 = z[1] - z[2];
    const double tiny = 1e-14 * std::max(scale, 1.0);
    if (std::abs(f14) < tiny || std::abs(f23) < tiny)
        throw DegenerateError("cross ratio undefined: coincident bodies in the denominator");
    const auto num = (z[0] - z[2]) * (z[1] - z[3]);
    const auto den = f14 * f23;
    return {num, den, num / den};
}

}  // namespace ccfour
