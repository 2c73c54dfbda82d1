#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ccfour/types.hpp"

namespace ccfour {

/// Boundary faces of the domain, numbered as in the classification table.
enum class Face : std::uint8_t { I = 0, II, III, IV, V, VI };

inline constexpr std::array<Face, 6> all_faces{Face::I, Face::II, Face::III, Face::IV, Face::V, Face::VI};

[[nodiscard]] constexpr std::size_t index(Face f) noexcept { return static_cast<std::size_t>(f); }

[[nodiscard]] constexpr std::string_view face_name(Face f) noexcept
{
    constexpr std::array<std::string_view, 6> names{"I", "II", "III", "IV", "V", "VI"};
    return names[index(f)];
}

/// Human-readable name of the inequality whose equality case is the face.
[[nodiscard]] constexpr std::string_view constraint_name(Face f) noexcept
{
    constexpr std::array<std::string_view, 6> names{
        "face-I constraint c <= a",
        "face-II constraint b <= 1",
        "face-III constraint c < (b^2+2b)/a",
        "face-IV constraint c > (-a+sqrt(4-3a^2))/2",
        "face-V constraint b > (-1+sqrt(4a^2-3))/2",
        "face-VI constraint c > -a+sqrt(a^2+b)",
    };
    return names[index(f)];
}

inline constexpr double default_domain_tol = 1e-9;

/// Polynomial residual of each face constraint; positive inside the domain,
/// zero on the face, negative when violated.
///
///   I:   a - c                 II: 1 - b
///   III: b^2 + 2b - ac         IV: c^2 + ac + a^2 - 1
///   V:   b^2 + b + 1 - a^2     VI: c^2 + 2ac - b
///
/// IV and V are the quadratics whose larger roots give the face surfaces; for
/// positive coordinates they can only vanish when a < 1 (IV) or a > 1 (V), so
/// the conditional form of those constraints is built in.
[[nodiscard]] inline std::array<double, 6> face_residuals(const RadialPoint& p) noexcept
{
    const auto [a, b, c] = p;
    return {a - c,
            1.0 - b,
            b * b + 2.0 * b - a * c,
            c * c + a * c + a * a - 1.0,
            b * b + b + 1.0 - a * a,
            c * c + 2.0 * a * c - b};
}

[[nodiscard]] inline double face_residual(const RadialPoint& p, Face f) noexcept { return face_residuals(p)[index(f)]; }

enum class Membership : std::uint8_t { interior, boundary, outside };

[[nodiscard]] constexpr std::string_view membership_name(Membership m) noexcept
{
    switch (m) {
        case Membership::interior: return "interior";
        case Membership::boundary: return "boundary";
        case Membership::outside: return "outside";
    }
    return "?";
}

struct DomainMembership {
    Membership status = Membership::interior;
    std::vector<Face> faces;
    std::vector<Face> violated;
    std::array<double, 6> residuals{};

    [[nodiscard]] bool on(Face f) const noexcept { return std::ranges::find(faces, f) != faces.end(); }
    [[nodiscard]] bool in_closure() const noexcept { return status != Membership::outside; }
};

/// Classifies p against the six constraints. A residual within tol of zero
/// puts the point on that face; edges and vertices show up as several faces.
[[nodiscard]] inline DomainMembership contains(const RadialPoint& p, double tol = default_domain_tol)
{
    if (!p.finite() || !p.positive()) throw DomainError("radial coordinates must be positive");
    if (!(tol >= 0.0)) throw DomainError("boundary tolerance must be non-negative");
    DomainMembership m;
    m.residuals = face_residuals(p);
    for (Face f : all_faces) {
        const double r = m.residuals[index(f)];
        if (r < -tol)
            m.violated.push_back(f);
        else if (r <= tol)
            m.faces.push_back(f);
    }
    if (!m.violated.empty()) {
        m.status = Membership::outside;
        m.faces.clear();
    } else if (!m.faces.empty()) {
        m.status = Membership::boundary;
    }
    return m;
}

/// Admissible interval of cos(theta), and the matching angle interval.
struct AngleBracket {
    double k1 = 0.0;
    double k2 = 0.0;
    double theta_l = 0.0;
    double theta_u = 0.0;

    [[nodiscard]] double width() const noexcept { return k2 - k1; }
};

/// Bracket without the collapse check; k1 may exceed k2 outside the domain.
[[nodiscard]] inline AngleBracket compute_bracket(const RadialPoint& p) noexcept
{
    const auto [a, b, c] = p;
    const double k1 = std::max({(c - a) / (2.0 * b), (b - 1.0) / (2.0 * c), (a * a - b * b - 2.0 * b) / (2.0 * a),
                                (1.0 - c * c - 2.0 * a * c) / (2.0 * a)});
    const double k2 = std::min((a - c) / 2.0, (1.0 - b) / (2.0 * a));
    return {k1, k2, std::acos(detail::clamp_unit(k2)), std::acos(detail::clamp_unit(k1))};
}

/// Interval of diagonal angles for which the distance ordering
/// r13, r24 > r12 >= r14, r23 >= r34 holds.
[[nodiscard]] inline AngleBracket angle_bracket(const RadialPoint& p)
{
    if (!p.finite() || !p.positive()) throw DomainError("radial coordinates must be positive");
    const AngleBracket br = compute_bracket(p);
    if (!(br.width() > 0.0))
        throw DomainError("angle bracket collapsed (k2 - k1 = " + std::to_string(br.width()) +
                          "): point is on the boundary or outside");
    return br;
}

/// Closed-form angle on a boundary face.
[[nodiscard]] inline double boundary_theta(const RadialPoint& p, Face face, double tol = default_domain_tol)
{
    if (!p.finite() || p.a <= 0.0 || p.b < 0.0 || p.c < 0.0)
        throw DomainError("boundary_theta needs a > 0 and b, c >= 0");
    const double r = face_residual(p, face);
    if (std::abs(r) > tol)
        throw DomainError("point is not on face " + std::string(face_name(face)) +
                          " (residual " + std::to_string(r) + ")");
    switch (face) {
        case Face::I:
        case Face::II: return pi / 2.0;
        case Face::III:
        case Face::IV: return std::acos(detail::clamp_unit((p.a - p.c) / 2.0));
        case Face::V:
        case Face::VI: return std::acos(detail::clamp_unit((1.0 - p.b) / (2.0 * p.a)));
    }
    return pi / 2.0;
}

struct LabeledVertex {
    std::string_view name;
    RadialPoint point;
};

/// The five vertices of the closed domain.
[[nodiscard]] inline std::array<LabeledVertex, 5> vertices() noexcept
{
    return {{
        {"P1", {1.0, 0.0, 0.0}},
        {"P2", {inv_sqrt3, (2.0 - sqrt3) / sqrt3, inv_sqrt3}},
        {"P3", {inv_sqrt3, 1.0, inv_sqrt3}},
        {"P4", {sqrt3, 1.0, sqrt3}},
        {"P5", {sqrt3, 1.0, 2.0 - sqrt3}},
    }};
}

/// Vertex names listed for each face in the boundary table.
[[nodiscard]] inline std::array<std::string_view, 3> face_vertices(Face f) noexcept
{
    constexpr std::array<std::array<std::string_view, 3>, 6> table{{
        {"P2", "P3", "P4"},
        {"P3", "P4", "P5"},
        {"P1", "P2", "P4"},
        {"P1", "P2", "P3"},
        {"P1", "P4", "P5"},
        {"P1", "P3", "P5"},
    }};
    return table[index(f)];
}

// Projection onto the ab-plane.

struct BoundingBox {
    double a_lo = inv_sqrt3, a_hi = sqrt3;
    double b_lo = 0.0, b_hi = 1.0;
    double c_lo = 0.0, c_hi = sqrt3;

    [[nodiscard]] bool holds(const RadialPoint& p) const noexcept
    {
        return p.a >= a_lo && p.a <= a_hi && p.b >= b_lo && p.b <= b_hi && p.c >= c_lo && p.c <= c_hi;
    }
};

inline constexpr BoundingBox bounding_box{};

/// Lower edge of the projected domain: intersection of faces III and IV for
/// a <= 1, face V for a >= 1.
[[nodiscard]] inline double projection_lower(double a) noexcept
{
    if (a <= 1.0) return -1.0 + 0.5 * (a + std::sqrt(std::max(0.0, 4.0 - 3.0 * a * a)));
    return 0.5 * (-1.0 + std::sqrt(std::max(0.0, 4.0 * a * a - 3.0)));
}

/// Projection of the I/III edge; above it the upper c-bound is face I.
[[nodiscard]] inline double separator_kite_iii(double a) noexcept { return -1.0 + std::sqrt(1.0 + a * a); }

/// Projection of the IV/VI edge (a <= 1); below it the lower c-bound is face IV.
[[nodiscard]] inline double separator_iv_vi(double a) noexcept
{
    return 1.0 - 1.5 * a * a + 0.5 * a * std::sqrt(std::max(0.0, 4.0 - 3.0 * a * a));
}

enum class SubRegion : std::uint8_t { i, ii, iii, iv };

[[nodiscard]] constexpr std::string_view subregion_name(SubRegion r) noexcept
{
    constexpr std::array<std::string_view, 4> names{"i", "ii", "iii", "iv"};
    return names[static_cast<std::size_t>(r)];
}

struct ProjectionBounds {
    double c_lo = 0.0;
    double c_hi = 0.0;
    SubRegion region = SubRegion::i;
    Face lower_face = Face::VI;
    Face upper_face = Face::I;
};

/// c-interval of the closed domain above (a, b), and which pair of faces
/// bounds it.
[[nodiscard]] inline ProjectionBounds projection_bounds(double a, double b, double tol = 1e-12)
{
    if (!(a >= inv_sqrt3 - tol && a <= sqrt3 + tol)) throw DomainError("a outside [1/sqrt3, sqrt3]");
    if (!(b <= 1.0 + tol && b >= projection_lower(a) - tol))
        throw DomainError("b outside [l(a), 1]: point is not in the projection");
    ProjectionBounds pb;
    const bool upper_kite = b >= separator_kite_iii(a);
    const bool lower_iv = a < 1.0 && b < separator_iv_vi(a);
    pb.upper_face = upper_kite ? Face::I : Face::III;
    pb.lower_face = lower_iv ? Face::IV : Face::VI;
    pb.c_hi = upper_kite ? a : (b * b + 2.0 * b) / a;
    pb.c_lo = lower_iv ? 0.5 * (-a + std::sqrt(std::max(0.0, 4.0 - 3.0 * a * a))) : -a + std::sqrt(a * a + b);
    if (upper_kite)
        pb.region = lower_iv ? SubRegion::ii : SubRegion::i;
    else
        pb.region = lower_iv ? SubRegion::iii : SubRegion::iv;
    return pb;
}

struct SampleBatch {
    std::vector<RadialPoint> points;
    std::uint64_t draws = 0;

    [[nodiscard]] double acceptance_rate() const noexcept
    {
        return draws == 0 ? 0.0 : static_cast<double>(points.size()) / static_cast<double>(draws);
    }
};

/// Uniform rejection sampling of the interior from the bounding box.
/// Deterministic for a given seed.
[[nodiscard]] inline SampleBatch sample_batch(std::size_t n, std::uint64_t seed)
{
    if (n == 0) throw DomainError("sample size must be at least 1");
    std::mt19937_64 rng(seed);
    constexpr BoundingBox box = bounding_box;
    std::uniform_real_distribution<double> ua(box.a_lo, box.a_hi), ub(box.b_lo, box.b_hi), uc(box.c_lo, box.c_hi);
    SampleBatch out;
    out.points.reserve(n);
    while (out.points.size() < n) {
        RadialPoint p;
        p.a = ua(rng);
        p.b = ub(rng);
        p.c = uc(rng);
        ++out.draws;
        if (!p.positive()) continue;
        if (contains(p, 0.0).status == Membership::interior) out.points.push_back(p);
    }
    return out;
}

[[nodiscard]] inline std::vector<RadialPoint> sample(std::size_t n, std::uint64_t seed)
{
    return sample_batch(n, seed).points;
}

}  // namespace ccfour
