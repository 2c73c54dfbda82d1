// Solves one point of the domain, recovers the masses and checks that the
// result rotates rigidly for one period.

#include <cstdio>

#include "ccfour/dynamics.hpp"
#include "ccfour/masses.hpp"
#include "ccfour/solver.hpp"

int main()
{
    using namespace ccfour;
    const RadialPoint p{1.2, 0.7, 0.9};

    const AngleSolution sol = solve_theta(p);
    const MassDistribution m = masses_at(p, sol.theta, Normalization::sum_equals_1);
    std::printf("theta = %.17g (residual %.3g)\n", sol.theta, sol.residual);
    std::printf("masses = %.12g %.12g %.12g %.12g\n", m[0], m[1], m[2], m[3]);

    const auto config = positions(p, sol.theta);
    const double omega = angular_velocity(config, m).omega;
    IntegrateOptions opt;
    opt.dt = 2.0 * pi / omega / 4096.0;
    opt.steps = 4096;
    opt.sample_every = 512;
    const Trajectory tr = integrate(relative_equilibrium_ic(config, m), opt);
    std::printf("one period: max distance deviation %.3g, energy drift %.3g\n", tr.max_distance_deviation,
                tr.max_energy_drift);
    return tr.max_distance_deviation < 1e-6 ? 0 : 1;
}
