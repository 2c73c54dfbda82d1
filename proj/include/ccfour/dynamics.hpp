#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ccfour/geometry.hpp"
#include "ccfour/masses.hpp"
#include "ccfour/types.hpp"

namespace ccfour {

struct SimulationState {
    Quad q{};
    Quad v{};
    Masses m{};
    double t = 0.0;
};

namespace detail {

template <typename Fn>
void for_each_pair(Fn&& fn)
{
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) fn(i, j);
}

[[nodiscard]] inline double min_separation(const Quad& q) noexcept
{
    double r = std::numeric_limits<double>::infinity();
    for_each_pair([&](std::size_t i, std::size_t j) { r = std::min(r, norm(q[i] - q[j])); });
    return r;
}

[[nodiscard]] inline std::array<double, 6> separations(const Quad& q) noexcept
{
    std::array<double, 6> r{};
    std::size_t k = 0;
    for_each_pair([&](std::size_t i, std::size_t j) { r[k++] = norm(q[i] - q[j]); });
    return r;
}

}  // namespace detail

/// U = sum_{i<j} m_i m_j / r_ij
[[nodiscard]] inline double potential(const Quad& q, const Masses& m)
{
    double u = 0.0;
    detail::for_each_pair([&](std::size_t i, std::size_t j) {
        const double r = norm(q[i] - q[j]);
        if (r < 1e-12) throw DegenerateError("coincident bodies");
        u += m[i] * m[j] / r;
    });
    return u;
}

/// I = sum_i m_i |q_i - c_m|^2
[[nodiscard]] inline double moment(const Quad& q, const Masses& m)
{
    const Vec2 cm = center_of_mass(q, m);
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const Vec2 u = q[i] - cm;
        s += m[i] * dot(u, u);
    }
    return s;
}

/// I = (1/M) sum_{i<j} m_i m_j r_ij^2; equal to moment() for any positions.
[[nodiscard]] inline double moment_pairwise(const Quad& q, const Masses& m)
{
    double s = 0.0;
    detail::for_each_pair([&](std::size_t i, std::size_t j) {
        const Vec2 d = q[i] - q[j];
        s += m[i] * m[j] * dot(d, d);
    });
    return s / (m[0] + m[1] + m[2] + m[3]);
}

[[nodiscard]] inline double potential(const SimulationState& s) { return potential(s.q, s.m); }
[[nodiscard]] inline double moment(const SimulationState& s) { return moment(s.q, s.m); }

[[nodiscard]] inline double kinetic_energy(const SimulationState& s) noexcept
{
    double k = 0.0;
    for (std::size_t i = 0; i < 4; ++i) k += 0.5 * s.m[i] * dot(s.v[i], s.v[i]);
    return k;
}

[[nodiscard]] inline double energy(const SimulationState& s) { return kinetic_energy(s) - potential(s); }

[[nodiscard]] inline double angular_momentum(const SimulationState& s) noexcept
{
    double l = 0.0;
    for (std::size_t i = 0; i < 4; ++i) l += s.m[i] * cross(s.q[i], s.v[i]);
    return l;
}

[[nodiscard]] inline Vec2 linear_momentum(const SimulationState& s) noexcept
{
    Vec2 p{};
    for (std::size_t i = 0; i < 4; ++i) p += s.m[i] * s.v[i];
    return p;
}

/// Thrown when a configuration/mass pair is not central enough to rotate
/// rigidly.
class CentralityViolation : public DomainError {
public:
    using DomainError::DomainError;
};

struct AngularVelocity {
    double omega = 0.0;
    double oracle_residual = 0.0;  ///< max_i,k |g_i + omega^2 (q_i - c_m)|_k / max_i |g_i|
};

inline constexpr double centrality_oracle_tol = 1e-8;

/// Rotation rate of the relative equilibrium, omega^2 = U / I. The value is
/// accepted only if g_i + omega^2 (q_i - c_m) vanishes for every body.
[[nodiscard]] inline AngularVelocity angular_velocity(const Quad& q, const Masses& m,
                                                      double tol = centrality_oracle_tol)
{
    const double w2 = potential(q, m) / moment(q, m);
    const Quad g = accelerations(q, m);
    const Vec2 cm = center_of_mass(q, m);
    double gmax = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const Vec2 e = g[i] + w2 * (q[i] - cm);
        gmax = std::max(gmax, norm(g[i]));
        worst = std::max({worst, std::abs(e.x), std::abs(e.y)});
    }
    AngularVelocity out{std::sqrt(w2), worst / gmax};
    if (!(out.oracle_residual <= tol))
        throw CentralityViolation("configuration is not central for these masses (alignment residual " +
                                  std::to_string(out.oracle_residual) + ")");
    return out;
}

[[nodiscard]] inline AngularVelocity angular_velocity(const PlanarConfiguration& config, const MassDistribution& m,
                                                      double tol = centrality_oracle_tol)
{
    return angular_velocity(config.q, m.m, tol);
}

/// Positions moved to the center-of-mass frame, velocities of a rigid
/// counterclockwise rotation at rate omega. No centrality check.
[[nodiscard]] inline SimulationState rigid_rotation_state(const Quad& q, const Masses& m, double omega)
{
    SimulationState s;
    s.m = m;
    const Vec2 cm = center_of_mass(q, m);
    for (std::size_t i = 0; i < 4; ++i) {
        s.q[i] = q[i] - cm;
        s.v[i] = omega * perp(s.q[i]);
    }
    return s;
}

[[nodiscard]] inline SimulationState relative_equilibrium_ic(const PlanarConfiguration& config,
                                                             const MassDistribution& m)
{
    return rigid_rotation_state(config.q, m.m, angular_velocity(config, m).omega);
}

/// Zero-velocity start in the center-of-mass frame.
[[nodiscard]] inline SimulationState rest_state(const PlanarConfiguration& config, const MassDistribution& m)
{
    return rigid_rotation_state(config.q, m.m, 0.0);
}

/// Time for a central configuration released from rest to reach total
/// collision, given lambda = omega^2 of its relative equilibrium.
[[nodiscard]] inline double collapse_time(double lambda) { return pi / (2.0 * std::sqrt(2.0 * lambda)); }

enum class Scheme : std::uint8_t {
    leapfrog,  ///< kick-drift-kick, second order
    yoshida4,  ///< three leapfrog substeps with Yoshida weights, fourth order
};

[[nodiscard]] constexpr std::string_view scheme_name(Scheme s) noexcept
{
    return s == Scheme::leapfrog ? "leapfrog" : "yoshida4";
}

struct IntegrateOptions {
    double dt = 0.0;
    std::size_t steps = 0;
    std::size_t sample_every = 1;
    Scheme scheme = Scheme::yoshida4;
    double close_encounter = 1e-6;
    double t_stop = std::numeric_limits<double>::infinity();  ///< stop once time reaches this
    bool stop_on_rebound = false;  ///< stop before the first step that increases the minimum separation
};

struct TrajectorySample {
    double t = 0.0;
    Quad q{};
    Quad v{};
    double energy_drift = 0.0;
    double angmom_drift = 0.0;
    double distance_deviation = 0.0;  ///< max_ij |r_ij(t) / r_ij(0) - 1|
    double ratio_deviation = 0.0;     ///< max_ij |(r_ij / r_12)(t) / (r_ij / r_12)(0) - 1|
};

enum class Termination : std::uint8_t { completed, close_encounter, stop_time, rebound };

[[nodiscard]] constexpr std::string_view termination_name(Termination t) noexcept
{
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::close_encounter: return "close_encounter";
        case Termination::stop_time: return "stop_time";
        case Termination::rebound: return "rebound";
    }
    return "?";
}

struct Trajectory {
    std::vector<TrajectorySample> samples;
    SimulationState final_state;
    Termination termination = Termination::completed;
    std::size_t steps_taken = 0;
    double max_energy_drift = 0.0;
    double max_angmom_drift = 0.0;
    double max_distance_deviation = 0.0;
    double max_ratio_deviation = 0.0;
};

namespace detail {

inline void kick(SimulationState& s, double h)
{
    const Quad g = accelerations(s.q, s.m);
    for (std::size_t i = 0; i < 4; ++i) s.v[i] += h * g[i];
}

inline void drift(SimulationState& s, double h)
{
    for (std::size_t i = 0; i < 4; ++i) s.q[i] += h * s.v[i];
}

inline void leapfrog_step(SimulationState& s, double h)
{
    kick(s, 0.5 * h);
    drift(s, h);
    kick(s, 0.5 * h);
}

inline void yoshida4_step(SimulationState& s, double h)
{
    static const double cbrt2 = std::cbrt(2.0);
    static const double w1 = 1.0 / (2.0 - cbrt2);
    static const double w0 = -cbrt2 / (2.0 - cbrt2);
    leapfrog_step(s, w1 * h);
    leapfrog_step(s, w0 * h);
    leapfrog_step(s, w1 * h);
}

}  // namespace detail

/// Fixed-step symplectic integration of the four-body equations (G = 1).
/// Stops early if two bodies come within `close_encounter` of each other.
/// A fixed step can jump straight over a collision, so collapse runs may
/// also ask to stop at the rebound; the state kept is the last one before it.
[[nodiscard]] inline Trajectory integrate(const SimulationState& start, const IntegrateOptions& opt)
{
    if (!(opt.dt > 0.0)) throw DomainError("time step must be positive");
    if (opt.sample_every == 0) throw DomainError("sample_every must be at least 1");

    const double e0 = energy(start);
    const double l0 = angular_momentum(start);
    const auto r0 = detail::separations(start.q);

    Trajectory tr;
    auto record = [&](const SimulationState& s) {
        TrajectorySample smp;
        smp.t = s.t;
        smp.q = s.q;
        smp.v = s.v;
        smp.energy_drift = std::abs(energy(s) - e0) / std::abs(e0);
        double lscale = std::abs(l0);
        if (lscale == 0.0)
            for (std::size_t i = 0; i < 4; ++i) lscale += s.m[i] * norm(s.q[i]) * norm(s.v[i]);
        smp.angmom_drift = lscale == 0.0 ? 0.0 : std::abs(angular_momentum(s) - l0) / lscale;
        const auto r = detail::separations(s.q);
        for (std::size_t k = 0; k < 6; ++k) {
            smp.distance_deviation = std::max(smp.distance_deviation, std::abs(r[k] / r0[k] - 1.0));
            smp.ratio_deviation =
                std::max(smp.ratio_deviation, std::abs((r[k] / r[0]) / (r0[k] / r0[0]) - 1.0));
        }
        tr.max_energy_drift = std::max(tr.max_energy_drift, smp.energy_drift);
        tr.max_angmom_drift = std::max(tr.max_angmom_drift, smp.angmom_drift);
        tr.max_distance_deviation = std::max(tr.max_distance_deviation, smp.distance_deviation);
        tr.max_ratio_deviation = std::max(tr.max_ratio_deviation, smp.ratio_deviation);
        tr.samples.push_back(smp);
    };

    SimulationState s = start;
    double prev_sep = detail::min_separation(s.q);
    record(s);
    for (std::size_t n = 1; n <= opt.steps; ++n) {
        if (s.t + opt.dt > opt.t_stop * (1.0 + 1e-12)) {
            tr.termination = Termination::stop_time;
            if (tr.samples.back().t != s.t) record(s);
            break;
        }
        SimulationState next = s;
        if (opt.scheme == Scheme::leapfrog)
            detail::leapfrog_step(next, opt.dt);
        else
            detail::yoshida4_step(next, opt.dt);
        next.t = start.t + static_cast<double>(n) * opt.dt;
        const double sep = detail::min_separation(next.q);
        if (opt.stop_on_rebound && sep > prev_sep) {
            tr.termination = Termination::rebound;
            if (tr.samples.back().t != s.t) record(s);
            break;
        }
        s = next;
        prev_sep = sep;
        tr.steps_taken = n;
        if (sep < opt.close_encounter) {
            tr.termination = Termination::close_encounter;
            record(s);
            break;
        }
        if (n % opt.sample_every == 0 || n == opt.steps) record(s);
    }
    tr.final_state = s;
    return tr;
}

}  // namespace ccfour
