#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ccfour/geometry.hpp"
#include "ccfour/types.hpp"

namespace ccfour {

enum class Normalization : std::uint8_t { m1_equals_1, sum_equals_1 };

[[nodiscard]] constexpr std::string_view normalization_name(Normalization n) noexcept
{
    return n == Normalization::m1_equals_1 ? "m1_equals_1" : "sum_equals_1";
}

struct LambdaPrime {
    double mean = 0.0;
    double spread = 0.0;  ///< max pairwise relative difference of the usable quotients
    int used = 0;         ///< how many of the three quotients had a usable denominator
};

/// The Lagrange-multiplier quotient lambda' from its three Dziobek
/// expressions. Quotients with |denominator| < 1e-14 are skipped; if all
/// three are skipped the call fails.
[[nodiscard]] inline LambdaPrime lambda_prime(const MutualDistances& d)
{
    constexpr double tiny = 1e-14;
    const std::array<std::array<double, 2>, 3> nd{{
        {d.s12 * d.s34 - d.s13 * d.s24, d.s12 + d.s34 - d.s13 - d.s24},
        {d.s12 * d.s34 - d.s14 * d.s23, d.s12 + d.s34 - d.s14 - d.s23},
        {d.s13 * d.s24 - d.s14 * d.s23, d.s13 + d.s24 - d.s14 - d.s23},
    }};
    std::vector<double> values;
    for (const auto& [num, den] : nd)
        if (std::abs(den) >= tiny) values.push_back(num / den);
    if (values.empty()) throw DegenerateError("all lambda' denominators vanish");
    LambdaPrime out;
    out.used = static_cast<int>(values.size());
    for (double v : values) out.mean += v;
    out.mean /= static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            out.spread = std::max(out.spread, detail::rel_diff(values[i], values[j], 0.0));
    return out;
}

struct MassDistribution {
    Masses m{};
    Normalization normalization = Normalization::m1_equals_1;
    double consistency = 0.0;  ///< max relative disagreement among redundant ratio formulas
    double dziobek_lambda = 0.0;
    double lambda_spread = 0.0;
    bool kite_fallback = false;  ///< m3/m1 came from the alternative product formula

    [[nodiscard]] double operator[](std::size_t i) const { return m[i]; }
    [[nodiscard]] double total() const noexcept { return m[0] + m[1] + m[2] + m[3]; }
};

struct MassOptions {
    /// |s34 - s23| below this times max(s) switches m3/m1 to the product formula.
    double kite_switch = 1e-10;
    /// Redundant formulas enter the consistency figure only when every
    /// difference factor they divide or multiply by exceeds this times max(s).
    double consistency_guard = 1e-6;
};

namespace detail {

/// A ratio together with the smallest |difference| factor it was built from,
/// relative to max(s).
struct RatioEstimate {
    double value;
    double conditioning;
};

[[nodiscard]] inline double min_abs(std::initializer_list<double> xs) noexcept
{
    double m = std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::min(m, std::abs(x));
    return m;
}

}  // namespace detail

/// Masses from the Dziobek ratio formulas.
///
///   m2/m1 = -A2 (s14 - s13) / (A1 (s23 - s24))
///   m3/m1 =  A3 (s14 - s12) / (A1 (s34 - s23))
///   m4/m1 = -A4 (s12 - s13) / (A1 (s34 - s24))
///
/// Near kite13 configurations m3/m1 is 0/0; there (and wherever it is
/// better conditioned) the product form
///   m3/m1 = A3 (s12 - s13)(s14 - s24) / (A1 (s23 - s13)(s34 - s24))
/// is used. The ratios m3/m2, m4/m2 and m4/m3 are evaluated as an
/// independent cross-check and reported as `consistency`.
[[nodiscard]] inline MassDistribution mass_ratios(const MutualDistances& d, const SignedAreas& A,
                                                  Normalization mode = Normalization::m1_equals_1,
                                                  const MassOptions& opt = {})
{
    using detail::min_abs;
    using detail::RatioEstimate;
    const double smax = std::max({d.s12, d.s13, d.s14, d.s23, d.s24, d.s34});
    if (!std::isfinite(smax)) throw DegenerateError("coincident bodies: a mutual distance is zero");
    if (A.A1 == 0.0 || A.A2 == 0.0 || A.A3 == 0.0) throw DegenerateError("a triangle area vanishes");
    auto cond = [smax](std::initializer_list<double> xs) { return min_abs(xs) / smax; };

    const RatioEstimate m21{-A.A2 * (d.s14 - d.s13) / (A.A1 * (d.s23 - d.s24)),
                            cond({d.s14 - d.s13, d.s23 - d.s24})};
    const RatioEstimate m41{-A.A4 * (d.s12 - d.s13) / (A.A1 * (d.s34 - d.s24)),
                            cond({d.s12 - d.s13, d.s34 - d.s24})};
    const RatioEstimate m31_direct{A.A3 * (d.s14 - d.s12) / (A.A1 * (d.s34 - d.s23)),
                                   cond({d.s14 - d.s12, d.s34 - d.s23})};
    const RatioEstimate m31_alt{A.A3 * (d.s12 - d.s13) * (d.s14 - d.s24) / (A.A1 * (d.s23 - d.s13) * (d.s34 - d.s24)),
                                cond({d.s12 - d.s13, d.s14 - d.s24, d.s23 - d.s13, d.s34 - d.s24})};
    const RatioEstimate m32{-A.A3 * (d.s12 - d.s24) / (A.A2 * (d.s34 - d.s13)), cond({d.s12 - d.s24, d.s34 - d.s13})};
    const RatioEstimate m42{A.A4 * (d.s23 - d.s12) / (A.A2 * (d.s34 - d.s14)), cond({d.s23 - d.s12, d.s34 - d.s14})};
    const RatioEstimate m42_alt{A.A4 * (d.s23 - d.s13) * (d.s12 - d.s24) / (A.A2 * (d.s34 - d.s13) * (d.s14 - d.s24)),
                                cond({d.s23 - d.s13, d.s12 - d.s24, d.s34 - d.s13, d.s14 - d.s24})};
    const RatioEstimate m43{-A.A4 * (d.s23 - d.s13) / (A.A3 * (d.s14 - d.s24)), cond({d.s23 - d.s13, d.s14 - d.s24})};

    const double switch_level = opt.kite_switch * smax;
    if (std::abs(d.s23 - d.s24) < switch_level || std::abs(d.s34 - d.s24) < switch_level)
        throw DegenerateError("mass ratio denominators vanish (diagonal equals a side)");

    MassDistribution out;
    RatioEstimate m31 = m31_direct;
    if (std::abs(d.s34 - d.s23) < switch_level || m31_alt.conditioning > m31_direct.conditioning) {
        if (std::abs(d.s23 - d.s13) < switch_level || std::abs(d.s34 - d.s24) < switch_level)
            throw DegenerateError("m3/m1 is undefined in every ratio formula at this point");
        m31 = m31_alt;
        out.kite_fallback = true;
    }

    const std::array<double, 3> ratios{m21.value, m31.value, m41.value};
    for (std::size_t i = 0; i < ratios.size(); ++i)
        if (!(ratios[i] > 0.0) || !std::isfinite(ratios[i]))
            throw NumericalError("non-positive mass m" + std::to_string(i + 2) + "/m1 = " + std::to_string(ratios[i]) +
                                 " (point outside the domain or numerically degenerate)");

    // Redundant routes; each comparison is skipped if either side is
    // ill-conditioned.
    double worst = 0.0;
    auto compare = [&](double x, double cx, double y, double cy) {
        if (cx >= opt.consistency_guard && cy >= opt.consistency_guard)
            worst = std::max(worst, detail::rel_diff(x, y, 0.0));
    };
    compare(m31_direct.value, m31_direct.conditioning, m31_alt.value, m31_alt.conditioning);
    compare(m31.value, m31.conditioning, m32.value * m21.value, std::min(m32.conditioning, m21.conditioning));
    compare(m41.value, m41.conditioning, m42.value * m21.value, std::min(m42.conditioning, m21.conditioning));
    compare(m42.value, m42.conditioning, m42_alt.value, m42_alt.conditioning);
    compare(m41.value, m41.conditioning, m42_alt.value * m21.value, std::min(m42_alt.conditioning, m21.conditioning));
    compare(m41.value, m41.conditioning, m43.value * m31.value, std::min(m43.conditioning, m31.conditioning));
    out.consistency = worst;

    out.m = {1.0, m21.value, m31.value, m41.value};
    out.normalization = mode;
    if (mode == Normalization::sum_equals_1) {
        const double total = out.total();
        for (double& x : out.m) x /= total;
    }
    try {
        const LambdaPrime lp = lambda_prime(d);
        out.dziobek_lambda = lp.mean;
        out.lambda_spread = lp.spread;
    } catch (const DegenerateError&) {
        out.dziobek_lambda = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

/// Masses for a solved point in (a, b, c, theta) coordinates.
[[nodiscard]] inline MassDistribution masses_at(const RadialPoint& p, double theta,
                                                Normalization mode = Normalization::m1_equals_1,
                                                const MassOptions& opt = {})
{
    const auto config = positions(p, theta);
    return mass_ratios(mutual_distances(p, theta), signed_areas(config), mode, opt);
}

struct CentralityResidual {
    double orthogonal = 0.0;  ///< max_i |sin| of the angle between g_i and q_i - c_m
    double spread = 0.0;      ///< relative spread of -g_i.(q_i - c_m) / |q_i - c_m|^2
    double lambda = 0.0;      ///< mean of those scalars (omega^2 for a central configuration)

    [[nodiscard]] double value() const noexcept { return std::max(orthogonal, spread); }
};

/// Gravitational acceleration of each body (G = 1).
[[nodiscard]] inline Quad accelerations(const Quad& q, const Masses& m)
{
    Quad g{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) continue;
            const Vec2 dq = q[j] - q[i];
            const double r = norm(dq);
            if (r < 1e-12) throw DegenerateError("coincident bodies");
            g[i] += (m[j] / (r * r * r)) * dq;
        }
    return g;
}

[[nodiscard]] inline Vec2 center_of_mass(const Quad& q, const Masses& m) noexcept
{
    Vec2 c{};
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        c += m[i] * q[i];
        total += m[i];
    }
    return (1.0 / total) * c;
}

/// Independent check that (q, m) is central: every acceleration must point
/// at the center of mass with a common factor.
[[nodiscard]] inline CentralityResidual centrality_residual(const Quad& q, const Masses& m)
{
    for (double mi : m)
        if (!(mi > 0.0)) throw DomainError("centrality check needs positive masses");
    const Quad g = accelerations(q, m);
    const Vec2 cm = center_of_mass(q, m);
    std::array<double, 4> lam{};
    CentralityResidual out;
    for (std::size_t i = 0; i < 4; ++i) {
        const Vec2 u = q[i] - cm;
        const double nu = norm(u);
        const double ng = norm(g[i]);
        if (nu < 1e-12 || ng == 0.0) throw DegenerateError("a body sits at the center of mass");
        out.orthogonal = std::max(out.orthogonal, std::abs(cross(g[i], u)) / (ng * nu));
        lam[i] = -dot(g[i], u) / (nu * nu);
    }
    const auto [lo, hi] = std::ranges::minmax(lam);
    out.lambda = (lam[0] + lam[1] + lam[2] + lam[3]) / 4.0;
    out.spread = (hi - lo) / std::abs(out.lambda);
    return out;
}

[[nodiscard]] inline CentralityResidual centrality_residual(const PlanarConfiguration& config, const MassDistribution& m)
{
    return centrality_residual(config.q, m.m);
}

/// m2/m1 along the rhombus family (a, 1, a):
///   (8a^3 - a^3 (a^2 + 1)^(3/2)) / (8a^3 - (a^2 + 1)^(3/2))
/// It tends to infinity as a -> 1/sqrt3 (m1, m3 vanish) and to 0 as a -> sqrt3.
[[nodiscard]] inline double rhombus_ratio(double a)
{
    if (!(a > inv_sqrt3 && a < sqrt3)) throw DomainError("rhombus parameter must lie in (1/sqrt3, sqrt3)");
    const double a3 = a * a * a;
    const double k = std::pow(a * a + 1.0, 1.5);
    return (8.0 * a3 - a3 * k) / (8.0 * a3 - k);
}

}  // namespace ccfour
