#pragma once

// Reference computations used only by the tests. They are written
// independently of the library code they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "ccfour/types.hpp"

namespace oracle {

/// Determinant by the Leibniz permutation sum (fine for N <= 6).
template <std::size_t N>
double leibniz_det(const std::array<std::array<double, N>, N>& m)
{
    std::array<std::size_t, N> perm{};
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double total = 0.0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j)
                if (perm[i] > perm[j]) ++inversions;
        double prod = inversions % 2 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < N; ++i) prod *= m[i][perm[i]];
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Cayley-Menger determinant straight from its definition, from six
/// squared distances s[i][j].
inline double cayley_menger_leibniz(const std::array<std::array<double, 4>, 4>& d2)
{
    std::array<std::array<double, 5>, 5> m{};
    for (std::size_t i = 1; i < 5; ++i) m[0][i] = m[i][0] = 1.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m[i + 1][j + 1] = d2[i][j];
    return leibniz_det(m);
}

/// Plain second-order central difference.
template <typename Fn>
double diff(Fn&& f, double x, double h)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Richardson-extrapolated central difference.
template <typename Fn>
double diff_richardson(Fn&& f, double x, double h)
{
    const double d1 = diff(f, x, h);
    const double d2 = diff(f, x, h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

/// Number of sign changes of f on a uniform grid of n intervals over [lo, hi].
template <typename Fn>
int sign_changes(Fn&& f, double lo, double hi, int n)
{
    int changes = 0;
    double prev = f(lo);
    for (int k = 1; k <= n; ++k) {
        const double x = lo + (hi - lo) * k / n;
        const double v = f(x);
        if ((prev > 0.0 && v < 0.0) || (prev < 0.0 && v > 0.0)) ++changes;
        if (v != 0.0) prev = v;
    }
    return changes;
}

/// Euclidean distance between two points given as coordinates.
inline double dist(double x1, double y1, double x2, double y2) { return std::sqrt((x1 - x2) * (x1 - x2) + (y1 - y2) * (y1 - y2)); }

/// Positions from the coordinate definitions, without the half-angle forms.
inline std::array<std::array<double, 2>, 4> positions(double a, double b, double c, double t)
{
    return {{{1.0, 0.0}, {a * std::cos(t), a * std::sin(t)}, {-b, 0.0}, {-c * std::cos(t), -c * std::sin(t)}}};
}

/// Consistency function evaluated from Euclidean distances.
inline double F_euclid(double a, double b, double c, double t)
{
    const auto q = positions(a, b, c, t);
    auto r3 = [&](int i, int j) {
        const double r = dist(q[i - 1][0], q[i - 1][1], q[j - 1][0], q[j - 1][1]);
        return r * r * r;
    };
    return (r3(2, 4) - r3(1, 4)) * (r3(1, 3) - r3(1, 2)) * (r3(2, 3) - r3(3, 4)) -
           (r3(1, 2) - r3(1, 4)) * (r3(2, 4) - r3(3, 4)) * (r3(1, 3) - r3(2, 3));
}

/// Frozen high-precision reference solutions: theta and masses (m1 = 1)
/// from a 50-digit solve of the central configuration equations
///   sum_j m_j (1/r_ij^3 - lambda') (q_j - q_i) = 0.
struct Reference {
    double a, b, c;
    double theta;
    std::array<double, 4> m;
    double lambda_prime;
};

inline constexpr std::array<Reference, 3> references{{
    {1.2, 0.7, 0.9, 1.5161559668161673589, {1.0, 0.76276087058222714904, 0.35074247174505892697, 0.18121106856179327175},
     0.26457756377586824822},
    {0.9, 0.72, 0.8, 1.5519285118699309699, {1.0, 0.69424327112481606991, 0.29872819169103546378, 0.4597280524408256919},
     0.3641223190955118968},
    {0.8, 0.5, 0.6, 1.4964836620134416955, {1.0, 0.49694950582214706394, 0.063389523732969983876, 0.20416478613888343481},
     0.51504902700197945016},
}};

}  // namespace oracle
