#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccfour/classify.hpp"
#include "ccfour/domain.hpp"
#include "ccfour/dynamics.hpp"
#include "ccfour/geometry.hpp"
#include "ccfour/masses.hpp"
#include "ccfour/parallel.hpp"
#include "ccfour/solver.hpp"

namespace ccfour {

/// Outcome of one invariant over a batch of points. `worst` is the largest
/// observed metric, compared against `limit` unless the suite is a pure
/// count of failures.
struct SuiteResult {
    std::string name;
    double worst = 0.0;
    double limit = 0.0;
    std::size_t checked = 0;
    std::size_t failures = 0;

    [[nodiscard]] bool passed() const noexcept { return failures == 0 && checked > 0; }
};

struct VerifyReport {
    std::vector<SuiteResult> suites;

    [[nodiscard]] bool passed() const noexcept
    {
        return std::ranges::all_of(suites, [](const SuiteResult& s) { return s.passed(); });
    }
};

/// Five-point central difference; truncation error is O(h^4).
template <typename Fn>
[[nodiscard]] double central_difference(Fn&& f, double x, double h)
{
    return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

namespace detail {

/// Per-point metrics; NaN means "not applicable to this point".
struct PointMetrics {
    bool bracket_ok = false;
    double residual = 0.0;
    bool angle_ok = false;
    bool masses_positive = false;
    double consistency = 0.0;
    double centrality = 0.0;
    double omega_oracle = 0.0;
    double cayley_menger = 0.0;
    double distance_agreement = 0.0;
    double dF_dtheta_err = 0.0;
    double dF_dc_err = 0.0;
    bool monotone = false;
    double dtheta_dc_err = 0.0;
    bool cross_ratio_sign_ok = false;
    std::string error;
};

[[nodiscard]] inline double relative_error(double approx, double exact, double floor)
{
    return std::abs(approx - exact) / std::max(std::abs(exact), floor);
}

/// Finite-difference dtheta/dc from re-solving at perturbed c. The step
/// shrinks until every stencil point is interior.
[[nodiscard]] inline double dtheta_dc_numeric(const RadialPoint& p)
{
    double h = 1e-4 * p.c;
    auto interior = [&](double dc) { return contains({p.a, p.b, p.c + dc}, 0.0).status == Membership::interior; };
    while (!(interior(-2.0 * h) && interior(2.0 * h))) {
        h *= 0.5;
        if (h < 1e-9 * p.c) throw DomainError("point too close to the boundary for a c-stencil");
    }
    return central_difference([&](double c) { return solve_theta({p.a, p.b, c}).theta; }, p.c, h);
}

[[nodiscard]] inline PointMetrics check_point(const RadialPoint& p, double theta_probe)
{
    PointMetrics out;
    try {
        const AngleBracket br = angle_bracket(p);
        out.bracket_ok = F(p, br.theta_l) > 0.0 && F(p, br.theta_u) < 0.0;

        const AngleSolution sol = solve_theta(p);
        out.residual = sol.residual;
        out.angle_ok = sol.theta > pi / 3.0 && sol.theta <= pi / 2.0 && sol.theta >= br.theta_l - 1e-12 &&
                       sol.theta <= br.theta_u + 1e-12;

        const auto d = mutual_distances(p, sol.theta);
        const auto config = positions(p, sol.theta);
        const auto de = mutual_distances(config.q);
        const auto ra = d.as_array();
        const auto rb = de.as_array();
        for (std::size_t k = 0; k < ra.size(); ++k)
            out.distance_agreement = std::max(out.distance_agreement, std::abs(ra[k] - rb[k]) / ra[k]);
        out.cayley_menger = std::abs(cayley_menger_scaled(d));

        const MassDistribution md = masses_at(p, sol.theta);
        out.masses_positive = std::ranges::all_of(md.m, [](double m) { return m > 0.0; });
        out.consistency = md.consistency;
        out.centrality = centrality_residual(config, md).value();
        out.omega_oracle = angular_velocity(config, md, std::numeric_limits<double>::infinity()).oracle_residual;

        // Derivatives off the root, at an arbitrary angle inside the bracket.
        const double th = br.theta_l + theta_probe * (br.theta_u - br.theta_l);
        const double scale = pow9(d.max_r());
        const double h = 1e-3;
        const double fd_t = central_difference([&](double t) { return F(p, t); }, th, h);
        const double fd_c = central_difference([&](double c) { return F({p.a, p.b, c}, th); }, p.c, h * std::min(1.0, p.c / 4.0));
        out.dF_dtheta_err = relative_error(fd_t, dF_dtheta(p, th), 1e-6 * scale);
        out.dF_dc_err = relative_error(fd_c, dF_dc(p, th), 1e-6 * scale);

        const double dtc = dtheta_dc(p);
        out.monotone = dtc > 0.0;
        out.dtheta_dc_err = relative_error(dtheta_dc_numeric(p), dtc, 1e-3);

        const double cyc = p.a * p.c - p.b;
        const double im = cross_ratio(config).value.imag();
        out.cross_ratio_sign_ok = std::abs(cyc) < 1e-9 || (im > 0.0) == (cyc < 0.0);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

}  // namespace detail

/// A point on face I (c = a) or face II (b = 1). u in (0, 1) runs a across
/// (1/sqrt3, sqrt3); v in (0, 1) runs the free coordinate across the open
/// interval the other faces leave.
[[nodiscard]] inline RadialPoint kite_face_point(Face f, double u, double v)
{
    const double a = inv_sqrt3 + u * (sqrt3 - inv_sqrt3);
    if (f == Face::I) {
        const double lo = std::max(-1.0 + std::sqrt(1.0 + a * a), projection_lower(a));
        return {a, lo + v * (1.0 - lo), a};
    }
    if (f == Face::II) {
        const double lo = std::max((-a + std::sqrt(std::max(0.0, 4.0 - 3.0 * a * a))) / 2.0, -a + std::sqrt(a * a + 1.0));
        const double hi = std::min(a, 3.0 / a);
        return {a, 1.0, lo + v * (hi - lo)};
    }
    throw DomainError("kite_face_point takes face I or II");
}

/// Runs the invariant suite on n seeded interior samples plus the vertex,
/// face and dynamics checks.
[[nodiscard]] inline VerifyReport run_verification(std::size_t n, std::uint64_t seed)
{
    const std::vector<RadialPoint> pts = sample(n, seed);
    std::vector<detail::PointMetrics> metrics(pts.size());
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    std::vector<double> probes(pts.size());
    for (double& x : probes) x = unit(rng);
    parallel_for(pts.size(), [&](std::size_t i) { metrics[i] = detail::check_point(pts[i], probes[i]); });

    VerifyReport rep;
    auto flag_suite = [&](const std::string& name, auto pred) {
        SuiteResult s{name, 0.0, 0.0, 0, 0};
        for (const auto& m : metrics) {
            ++s.checked;
            if (!m.error.empty() || !pred(m)) ++s.failures;
        }
        rep.suites.push_back(s);
    };
    auto metric_suite = [&](const std::string& name, double limit, auto get) {
        SuiteResult s{name, 0.0, limit, 0, 0};
        for (const auto& m : metrics) {
            ++s.checked;
            const double v = m.error.empty() ? get(m) : std::numeric_limits<double>::infinity();
            s.worst = std::max(s.worst, v);
            if (!(v < limit)) ++s.failures;
        }
        rep.suites.push_back(s);
    };

    flag_suite("solve without error", [](const auto&) { return true; });
    flag_suite("bracket signs F(theta_l) > 0 > F(theta_u)", [](const auto& m) { return m.bracket_ok; });
    metric_suite("scaled residual at root", 1e-12, [](const auto& m) { return m.residual; });
    flag_suite("angle in (pi/3, pi/2] and inside bracket", [](const auto& m) { return m.angle_ok; });
    metric_suite("closed-form vs Euclidean distances", 1e-14, [](const auto& m) { return m.distance_agreement; });
    metric_suite("Cayley-Menger determinant (scaled)", 1e-12, [](const auto& m) { return m.cayley_menger; });
    flag_suite("four positive masses", [](const auto& m) { return m.masses_positive; });
    metric_suite("redundant mass formulas agree", 1e-8, [](const auto& m) { return m.consistency; });
    metric_suite("centrality residual", 1e-9, [](const auto& m) { return m.centrality; });
    metric_suite("angular velocity alignment", 1e-8, [](const auto& m) { return m.omega_oracle; });
    metric_suite("dF/dtheta vs finite differences", 1e-6, [](const auto& m) { return m.dF_dtheta_err; });
    metric_suite("dF/dc vs finite differences", 1e-6, [](const auto& m) { return m.dF_dc_err; });
    flag_suite("dtheta/dc > 0", [](const auto& m) { return m.monotone; });
    metric_suite("dtheta/dc vs finite differences", 1e-4, [](const auto& m) { return m.dtheta_dc_err; });
    flag_suite("cross ratio sign matches b - ac", [](const auto& m) { return m.cross_ratio_sign_ok; });

    // Vertices: each lies on the faces listed for it, to rounding.
    {
        SuiteResult s{"vertex face incidence", 0.0, 1e-14, 0, 0};
        for (const auto& v : vertices())
            for (Face f : all_faces) {
                const auto names = face_vertices(f);
                if (std::ranges::find(names, v.name) == names.end()) continue;
                ++s.checked;
                const double r = std::abs(face_residual(v.point, f));
                s.worst = std::max(s.worst, r);
                if (!(r < s.limit)) ++s.failures;
            }
        rep.suites.push_back(s);
    }

    // Kite faces: the solved angle is a right angle and the paired masses agree.
    {
        SuiteResult s{"kite faces: right angle and equal paired masses", 0.0, 1e-8, 0, 0};
        const std::size_t k = std::max<std::size_t>(2, std::min<std::size_t>(n, 100));
        for (std::size_t i = 0; i < k; ++i) {
            const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(k);
            for (Face f : {Face::I, Face::II}) {
                const RadialPoint p = kite_face_point(f, t, 0.5);
                ++s.checked;
                try {
                    const AngleSolution sol = solve_theta(p);
                    const MassDistribution md = masses_at(p, sol.theta);
                    const double pair =
                        f == Face::I ? std::abs(md[1] - md[3]) / md[1] : std::abs(md[0] - md[2]) / md[0];
                    s.worst = std::max(s.worst, pair);
                    if (!(pair < s.limit) || !(std::abs(sol.theta - pi / 2.0) < 1e-12)) ++s.failures;
                } catch (const std::exception&) {
                    ++s.failures;
                }
            }
        }
        rep.suites.push_back(s);
    }

    // Square relative equilibrium over one period.
    {
        SuiteResult s{"square relative equilibrium keeps distances", 0.0, 1e-6, 1, 0};
        try {
            const auto config = positions({1.0, 1.0, 1.0}, pi / 2.0);
            const auto md = masses_at({1.0, 1.0, 1.0}, pi / 2.0);
            const double omega = angular_velocity(config, md).omega;
            const double period = 2.0 * pi / omega;
            IntegrateOptions opt;
            opt.dt = period / 4096.0;
            opt.steps = 4096;
            opt.sample_every = 64;
            const Trajectory tr = integrate(relative_equilibrium_ic(config, md), opt);
            s.worst = tr.max_distance_deviation;
            if (!(s.worst < s.limit) || !(tr.max_energy_drift < 1e-9)) ++s.failures;
        } catch (const std::exception&) {
            ++s.failures;
        }
        rep.suites.push_back(s);
    }
    return rep;
}

}  // namespace ccfour
