#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ccfour/domain.hpp"
#include "ccfour/geometry.hpp"
#include "ccfour/types.hpp"

namespace ccfour {

namespace detail {

/// Cubes of the six distances, named by pair.
struct Cubes {
    double r12, r13, r14, r23, r24, r34;

    explicit Cubes(const MutualDistances& d) noexcept
        : r12(cube(d.r12)), r13(cube(d.r13)), r14(cube(d.r14)), r23(cube(d.r23)), r24(cube(d.r24)), r34(cube(d.r34))
    {
    }
};

[[nodiscard]] inline double pow9(double x) noexcept
{
    const double x3 = cube(x);
    return x3 * x3 * x3;
}

}  // namespace detail

/// Consistency function whose zero set (within the distance ordering) is the
/// set of convex central configurations:
///   (r24^3 - r14^3)(r13^3 - r12^3)(r23^3 - r34^3)
///     - (r12^3 - r14^3)(r24^3 - r34^3)(r13^3 - r23^3)
[[nodiscard]] inline double consistency(const MutualDistances& d) noexcept
{
    const detail::Cubes k(d);
    return (k.r24 - k.r14) * (k.r13 - k.r12) * (k.r23 - k.r34) - (k.r12 - k.r14) * (k.r24 - k.r34) * (k.r13 - k.r23);
}

[[nodiscard]] inline double F(const RadialPoint& p, double theta) { return consistency(mutual_distances(p, theta)); }

/// |F| divided by max(r_ij)^9, the homogeneity degree of F.
[[nodiscard]] inline double scaled_residual(const RadialPoint& p, double theta)
{
    const auto d = mutual_distances(p, theta);
    return std::abs(consistency(d)) / detail::pow9(d.max_r());
}

struct AlphaTerms {
    double alpha1, alpha2, alpha3, alpha4;
};

[[nodiscard]] inline AlphaTerms alpha_terms(const MutualDistances& d) noexcept
{
    const detail::Cubes k(d);
    return {
        (k.r24 - k.r14) * (k.r23 - k.r34) + (k.r24 - k.r34) * (k.r13 - k.r23),
        (k.r24 - k.r14) * (k.r13 - k.r12) + (k.r24 - k.r34) * (k.r12 - k.r14),
        (k.r24 - k.r34) * (k.r13 - k.r23) - (k.r13 - k.r12) * (k.r23 - k.r34),
        (k.r24 - k.r14) * (k.r13 - k.r12) - (k.r12 - k.r14) * (k.r13 - k.r23),
    };
}

struct BetaTerms {
    double beta1, beta2, beta3;
};

[[nodiscard]] inline BetaTerms beta_terms(const MutualDistances& d) noexcept
{
    const detail::Cubes k(d);
    return {
        (k.r13 - k.r12) * (k.r23 - k.r34) - (k.r13 - k.r23) * (k.r12 - k.r14),
        (k.r13 - k.r23) * (k.r24 - k.r34) - (k.r13 - k.r12) * (k.r23 - k.r34),
        (k.r13 - k.r23) * (k.r12 - k.r14) - (k.r13 - k.r12) * (k.r24 - k.r14),
    };
}

/// -3 sin(theta) (a r12 alpha1 + ab r23 alpha2 + c r14 alpha3 + bc r34 alpha4)
[[nodiscard]] inline double dF_dtheta(const RadialPoint& p, double theta)
{
    const auto d = mutual_distances(p, theta);
    const auto al = alpha_terms(d);
    const auto [a, b, c] = p;
    return -3.0 * std::sin(theta) *
           (a * d.r12 * al.alpha1 + a * b * d.r23 * al.alpha2 + c * d.r14 * al.alpha3 + b * c * d.r34 * al.alpha4);
}

/// 3 r24^2 beta1 + 3 r14 (c + cos theta) beta2 + 3 r34 (c - b cos theta) beta3
[[nodiscard]] inline double dF_dc(const RadialPoint& p, double theta)
{
    const auto d = mutual_distances(p, theta);
    const auto be = beta_terms(d);
    const double ct = std::cos(theta);
    return 3.0 * d.r24 * d.r24 * be.beta1 + 3.0 * d.r14 * (p.c + ct) * be.beta2 +
           3.0 * d.r34 * (p.c - p.b * ct) * be.beta3;
}

struct SolverOptions {
    double tol = 1e-13;                 ///< stop width in theta (radians)
    double domain_tol = default_domain_tol;
    double newton_switch_width = 1e-3;  ///< bisect until the bracket is this narrow
    double collapse_width = 1e-14;      ///< k2 - k1 below this takes the boundary formula
    int max_iterations = 200;
};

struct AngleSolution {
    double theta = 0.0;
    double residual = 0.0;  ///< |F| / max(r_ij)^9 at theta
    AngleBracket bracket;
    int iterations = 0;
    bool converged = false;
    std::optional<Face> boundary_face;  ///< set when the closed-form boundary angle was used
};

namespace detail {

[[nodiscard]] inline std::string violation_list(const DomainMembership& m)
{
    std::string s;
    for (Face f : m.violated) {
        if (!s.empty()) s += "; ";
        s += constraint_name(f);
    }
    return s;
}

/// Face used for the closed-form angle: kite faces first, then whichever
/// residual is smallest.
[[nodiscard]] inline Face pick_boundary_face(const DomainMembership& m)
{
    if (m.on(Face::I)) return Face::I;
    if (m.on(Face::II)) return Face::II;
    Face best = Face::III;
    double best_r = std::abs(m.residuals[index(best)]);
    for (Face f : {Face::IV, Face::V, Face::VI}) {
        const double r = std::abs(m.residuals[index(f)]);
        if (r < best_r) {
            best = f;
            best_r = r;
        }
    }
    return best;
}

}  // namespace detail

/// The unique diagonal angle making (a, b, c) a convex central configuration.
///
/// F is strictly decreasing in theta across the admissible bracket, positive
/// at theta_l and negative at theta_u. Bisection narrows the bracket, then a
/// Newton iteration that falls back to bisection whenever it would leave the
/// bracket finishes the job. A collapsed bracket means the point is on the
/// boundary, where the angle has a closed form.
[[nodiscard]] inline AngleSolution solve_theta(const RadialPoint& p, const SolverOptions& opt = {})
{
    const DomainMembership m = contains(p, opt.domain_tol);
    if (m.status == Membership::outside) throw DomainError("point outside domain: " + detail::violation_list(m));

    AngleSolution sol;
    sol.bracket = compute_bracket(p);
    if (sol.bracket.width() <= opt.collapse_width) {
        const Face f = detail::pick_boundary_face(m);
        sol.theta = boundary_theta(p, f, std::numeric_limits<double>::infinity());
        sol.boundary_face = f;
        sol.converged = true;
        sol.residual = scaled_residual(p, sol.theta);
        return sol;
    }

    double lo = sol.bracket.theta_l;
    double hi = sol.bracket.theta_u;
    int it = 0;
    while (hi - lo > opt.newton_switch_width && it < opt.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        if (F(p, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        ++it;
    }

    double x = 0.5 * (lo + hi);
    while (it < opt.max_iterations) {
        ++it;
        const double f = F(p, x);
        if (f == 0.0) {
            sol.converged = true;
            break;
        }
        if (f > 0.0)
            lo = x;
        else
            hi = x;
        const double df = dF_dtheta(p, x);
        double next = x - f / df;
        if (!(df < 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (step < opt.tol || hi - lo < opt.tol) {
            sol.converged = true;
            break;
        }
    }
    if (!sol.converged)
        throw NumericalError("theta solver did not converge in " + std::to_string(opt.max_iterations) + " iterations");
    sol.theta = x;
    sol.iterations = it;
    sol.residual = scaled_residual(p, x);
    return sol;
}

[[nodiscard]] inline AngleSolution solve_theta(const RadialPoint& p, double tol)
{
    SolverOptions opt;
    opt.tol = tol;
    return solve_theta(p, opt);
}

/// Implicit derivative of the solved angle with respect to c. Defined on the
/// interior and on face II, where it vanishes.
[[nodiscard]] inline double dtheta_dc(const RadialPoint& p, const SolverOptions& opt = {})
{
    const AngleSolution sol = solve_theta(p, opt);
    if (sol.boundary_face) {
        const DomainMembership m = contains(p, opt.domain_tol);
        if (!m.on(Face::II)) throw DomainError("dtheta/dc is only defined on the interior and on face II");
    }
    const double ft = dF_dtheta(p, sol.theta);
    if (ft == 0.0) throw NumericalError("dF/dtheta vanished at the solution");
    return -dF_dc(p, sol.theta) / ft;
}

}  // namespace ccfour
