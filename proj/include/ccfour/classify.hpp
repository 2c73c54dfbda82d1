#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccfour/domain.hpp"
#include "ccfour/geometry.hpp"
#include "ccfour/masses.hpp"
#include "ccfour/parallel.hpp"
#include "ccfour/solver.hpp"
#include "ccfour/types.hpp"

namespace ccfour {

enum class ClassLabel : std::uint8_t {
    kite13,
    kite24,
    rhombus,
    trapezoid,
    isosceles_trapezoid,
    cocircular,
    equidiagonal,
};

inline constexpr std::array<ClassLabel, 7> all_labels{ClassLabel::kite13,     ClassLabel::kite24,
                                                      ClassLabel::rhombus,    ClassLabel::trapezoid,
                                                      ClassLabel::isosceles_trapezoid, ClassLabel::cocircular,
                                                      ClassLabel::equidiagonal};

[[nodiscard]] constexpr std::string_view label_name(ClassLabel l) noexcept
{
    constexpr std::array<std::string_view, 7> names{"kite13",     "kite24",     "rhombus",     "trapezoid",
                                                    "isosceles_trapezoid", "cocircular", "equidiagonal"};
    return names[static_cast<std::size_t>(l)];
}

[[nodiscard]] inline std::optional<ClassLabel> parse_label(std::string_view s) noexcept
{
    for (ClassLabel l : all_labels)
        if (label_name(l) == s) return l;
    return std::nullopt;
}

/// Coordinate residuals of the class equations; each vanishes on its class.
struct ClassResiduals {
    double kite13 = 0.0;        ///< c - a
    double kite24 = 0.0;        ///< 1 - b
    double trapezoid = 0.0;     ///< c - ab
    double cocircular = 0.0;    ///< b - ac
    double equidiagonal = 0.0;  ///< a - b + c - 1
    std::pair<double, double> isosceles{0.0, 0.0};  ///< (a - 1, b - c)
};

[[nodiscard]] inline ClassResiduals class_residuals(const RadialPoint& p) noexcept
{
    const auto [a, b, c] = p;
    return {c - a, 1.0 - b, c - a * b, b - a * c, a - b + c - 1.0, {a - 1.0, b - c}};
}

/// Largest |residual| among the equations defining the label.
[[nodiscard]] inline double algebraic_residual(const ClassResiduals& r, ClassLabel l) noexcept
{
    switch (l) {
        case ClassLabel::kite13: return std::abs(r.kite13);
        case ClassLabel::kite24: return std::abs(r.kite24);
        case ClassLabel::rhombus: return std::max(std::abs(r.kite13), std::abs(r.kite24));
        case ClassLabel::trapezoid: return std::abs(r.trapezoid);
        case ClassLabel::isosceles_trapezoid:
            return std::max(std::abs(r.isosceles.first), std::abs(r.isosceles.second));
        case ClassLabel::cocircular: return std::abs(r.cocircular);
        case ClassLabel::equidiagonal: return std::abs(r.equidiagonal);
    }
    return 0.0;
}

/// Circumcenter of three points; fails when they are (nearly) collinear.
[[nodiscard]] inline Vec2 circumcenter(Vec2 p, Vec2 q, Vec2 r)
{
    const Vec2 u = q - p;
    const Vec2 v = r - p;
    const double d = 2.0 * cross(u, v);
    const double scale = std::max(dot(u, u), dot(v, v));
    if (std::abs(d) <= 1e-14 * scale) throw DegenerateError("circumcenter of collinear points");
    const double uu = dot(u, u);
    const double vv = dot(v, v);
    return p + Vec2{(v.y * uu - u.y * vv) / d, (u.x * vv - v.x * uu) / d};
}

/// Geometric check of class membership computed from positions alone.
[[nodiscard]] inline double geometric_witness(const PlanarConfiguration& config, ClassLabel label)
{
    const Quad& q = config.q;
    const MutualDistances d = mutual_distances(q);
    switch (label) {
        case ClassLabel::trapezoid: {
            const Vec2 s12 = q[1] - q[0];
            const Vec2 s34 = q[3] - q[2];
            const double n = norm(s12) * norm(s34);
            if (n == 0.0) throw DegenerateError("zero-length side");
            return std::abs(cross(s12, s34)) / n;
        }
        case ClassLabel::cocircular: {
            const Vec2 center = circumcenter(q[0], q[1], q[2]);
            const double R = norm(q[0] - center);
            double spread = 0.0;
            for (const Vec2& qi : q) spread = std::max(spread, std::abs(norm(qi - center) - R) / R);
            return spread;
        }
        case ClassLabel::equidiagonal: return std::abs(d.r13 - d.r24);
        case ClassLabel::kite13: return std::max(std::abs(d.r12 - d.r14), std::abs(d.r23 - d.r34));
        case ClassLabel::kite24: return std::max(std::abs(d.r12 - d.r23), std::abs(d.r14 - d.r34));
        case ClassLabel::rhombus:
            return std::max({std::abs(d.r12 - d.r14), std::abs(d.r23 - d.r34), std::abs(d.r12 - d.r23)});
        case ClassLabel::isosceles_trapezoid: return std::max(std::abs(d.r13 - d.r24), std::abs(d.r14 - d.r23));
    }
    return 0.0;
}

struct ClassificationReport {
    std::vector<ClassLabel> labels;
    ClassResiduals residuals;
    std::vector<std::pair<ClassLabel, double>> witnesses;  ///< filled when a solved angle was supplied

    [[nodiscard]] bool has(ClassLabel l) const noexcept { return std::ranges::find(labels, l) != labels.end(); }
};

inline constexpr double default_class_tol = 1e-9;

/// Special classes a point of the closed domain belongs to. Membership is
/// decided on the coordinate equations; witnesses are diagnostics.
[[nodiscard]] inline ClassificationReport classify(const RadialPoint& p, double tol = default_class_tol,
                                                   std::optional<double> theta = std::nullopt)
{
    const DomainMembership m = contains(p, default_domain_tol);
    if (m.status == Membership::outside) throw DomainError("cannot classify a point outside the domain");
    ClassificationReport rep;
    rep.residuals = class_residuals(p);
    const auto& r = rep.residuals;
    const bool k13 = std::abs(r.kite13) < tol;
    const bool k24 = std::abs(r.kite24) < tol;
    const bool iso = std::abs(r.isosceles.first) < tol && std::abs(r.isosceles.second) < tol;
    if (k13) rep.labels.push_back(ClassLabel::kite13);
    if (k24) rep.labels.push_back(ClassLabel::kite24);
    if (k13 && k24) rep.labels.push_back(ClassLabel::rhombus);
    // The isosceles line lies on all three of the next surfaces.
    if (iso || std::abs(r.trapezoid) < tol) rep.labels.push_back(ClassLabel::trapezoid);
    if (iso) rep.labels.push_back(ClassLabel::isosceles_trapezoid);
    if (iso || std::abs(r.cocircular) < tol) rep.labels.push_back(ClassLabel::cocircular);
    if (iso || std::abs(r.equidiagonal) < tol) rep.labels.push_back(ClassLabel::equidiagonal);

    if (theta) {
        const auto config = positions(p, *theta);
        for (ClassLabel l : rep.labels) rep.witnesses.emplace_back(l, geometric_witness(config, l));
    }
    return rep;
}

// Surface meshes.

struct MeshRecord {
    RadialPoint point;
    double theta = 0.0;
    double f_residual = 0.0;
    Membership status = Membership::interior;
    std::vector<Face> faces;
    std::optional<MassDistribution> masses;  ///< absent where the limit masses vanish or are undefined
    double algebraic = 0.0;
    double witness = 0.0;
};

struct SurfaceMesh {
    ClassLabel label = ClassLabel::trapezoid;
    std::vector<MeshRecord> records;
    std::size_t clipped = 0;  ///< grid nodes outside the closed domain
};

/// Grid axes for each meshable class: the first is always a; the second is
/// b, except for kite24 where b = 1 and the grid runs over c.
struct MeshAxes {
    double u_lo, u_hi, v_lo, v_hi;
};

[[nodiscard]] inline RadialPoint surface_point(ClassLabel label, double u, double v)
{
    switch (label) {
        case ClassLabel::trapezoid: return {u, v, u * v};
        case ClassLabel::cocircular: return {u, v, v / u};
        case ClassLabel::equidiagonal: return {u, v, 1.0 - u + v};
        case ClassLabel::kite13: return {u, v, u};
        case ClassLabel::kite24: return {u, 1.0, v};
        default: throw DomainError("no surface parameterization for " + std::string(label_name(label)));
    }
}

/// Samples a class surface on a res_u x res_v grid over its (a, b) or (a, c)
/// footprint, keeps nodes in the closed domain and solves each of them.
/// Records come out in row-major grid order.
[[nodiscard]] inline SurfaceMesh surface_mesh(ClassLabel label, std::size_t res_u, std::size_t res_v)
{
    if (res_u < 2 || res_v < 2) throw DomainError("mesh resolution must be at least 2 per axis");
    const MeshAxes ax = label == ClassLabel::kite24 ? MeshAxes{inv_sqrt3, sqrt3, 0.0, sqrt3}
                                                    : MeshAxes{inv_sqrt3, sqrt3, 0.0, 1.0};
    (void)surface_point(label, 1.0, 0.5);  // rejects unsupported labels up front

    const std::size_t n = res_u * res_v;
    std::vector<std::optional<MeshRecord>> slots(n);
    parallel_for(n, [&](std::size_t k) {
        const std::size_t i = k / res_v;
        const std::size_t j = k % res_v;
        const double u = ax.u_lo + (ax.u_hi - ax.u_lo) * static_cast<double>(i) / static_cast<double>(res_u - 1);
        const double v = ax.v_lo + (ax.v_hi - ax.v_lo) * static_cast<double>(j) / static_cast<double>(res_v - 1);
        const RadialPoint p = surface_point(label, u, v);
        if (!p.positive()) return;
        const DomainMembership m = contains(p, default_domain_tol);
        if (m.status == Membership::outside) return;
        MeshRecord rec;
        rec.point = p;
        rec.status = m.status;
        rec.faces = m.faces;
        const AngleSolution sol = solve_theta(p);
        rec.theta = sol.theta;
        rec.f_residual = sol.residual;
        try {
            rec.masses = masses_at(p, sol.theta);
        } catch (const Error&) {
            rec.masses.reset();
        }
        rec.algebraic = algebraic_residual(class_residuals(p), label);
        rec.witness = geometric_witness(positions(p, sol.theta), label);
        slots[k] = std::move(rec);
    });

    SurfaceMesh mesh;
    mesh.label = label;
    for (auto& s : slots) {
        if (s)
            mesh.records.push_back(std::move(*s));
        else
            ++mesh.clipped;
    }
    return mesh;
}

[[nodiscard]] inline SurfaceMesh surface_mesh(ClassLabel label, std::size_t res)
{
    return surface_mesh(label, res, res);
}

enum class SurfaceOrdering : std::uint8_t {
    trapezoid_highest,     ///< c_trap > c_cocirc > c_equi
    equidiagonal_highest,  ///< c_equi > c_cocirc > c_trap
    coincident,            ///< all three equal (a = 1)
    mixed,
};

[[nodiscard]] constexpr std::string_view ordering_name(SurfaceOrdering o) noexcept
{
    constexpr std::array<std::string_view, 4> names{"trapezoid_highest", "equidiagonal_highest", "coincident",
                                                    "mixed"};
    return names[static_cast<std::size_t>(o)];
}

struct SurfaceOrder {
    double c_trapezoid = 0.0;
    double c_cocircular = 0.0;
    double c_equidiagonal = 0.0;
    SurfaceOrdering ordering = SurfaceOrdering::mixed;
};

/// Heights of the trapezoid, co-circular and equidiagonal surfaces above
/// (a, b) and how they stack.
[[nodiscard]] inline SurfaceOrder surface_order(double a, double b)
{
    if (!(a > 0.0)) throw DomainError("surface_order needs a > 0");
    SurfaceOrder o{a * b, b / a, 1.0 - a + b, SurfaceOrdering::mixed};
    if (a == 1.0)
        o.ordering = SurfaceOrdering::coincident;
    else if (o.c_trapezoid > o.c_cocircular && o.c_cocircular > o.c_equidiagonal)
        o.ordering = SurfaceOrdering::trapezoid_highest;
    else if (o.c_equidiagonal > o.c_cocircular && o.c_cocircular > o.c_trapezoid)
        o.ordering = SurfaceOrdering::equidiagonal_highest;
    return o;
}

}  // namespace ccfour
