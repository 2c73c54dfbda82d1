// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ccfour/classify.hpp"
#include "ccfour/dynamics.hpp"
#include "ccfour/masses.hpp"
#include "ccfour/solver.hpp"
#include "ccfour/verify.hpp"
#include "oracles.hpp"

using namespace ccfour;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Bracket signs over 1000 seeded interior samples, under 10 s.
Outcome bracket_signs()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t good = 0;
    const auto pts = sample(1000, 1);
    for (const auto& p : pts) {
        const auto br = angle_bracket(p);
        if (F(p, br.theta_l) > 0.0 && F(p, br.theta_u) < 0.0) ++good;
    }
    const double dt = seconds_since(t0);
    return {good == pts.size() && dt < 10.0,
            std::to_string(good) + "/" + std::to_string(pts.size()) + " correct signs, " + fmt("%.3f s", dt)};
}

// 2. Unique root and angle bounds.
Outcome unique_root()
{
    double worst = 0.0;
    std::size_t bad_range = 0, bad_right = 0, right_angles = 0;
    for (const auto& p : sample(1000, 1)) {
        const auto sol = solve_theta(p);
        worst = std::max(worst, sol.residual);
        if (!(sol.theta > pi / 3.0 && sol.theta <= pi / 2.0)) ++bad_range;
        if (std::abs(sol.theta - pi / 2.0) < 1e-9) {
            ++right_angles;
            if (!(std::min(std::abs(p.c - p.a), std::abs(1.0 - p.b)) < 1e-7)) ++bad_right;
        }
    }
    return {worst < 1e-12 && bad_range == 0 && bad_right == 0,
            "max scaled residual " + fmt("%.2e", worst) + ", out of (pi/3, pi/2]: " + std::to_string(bad_range) +
                ", right angles " + std::to_string(right_angles) + " (away from kite faces: " +
                std::to_string(bad_right) + ")"};
}

// 3. Kite faces: right angle and paired masses.
Outcome kite_faces()
{
    double worst_angle = 0.0, worst_i = 0.0, worst_ii = 0.0;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int k = 0; k < 100; ++k) {
        const RadialPoint p1 = kite_face_point(Face::I, u(rng), u(rng));
        const RadialPoint p2 = kite_face_point(Face::II, u(rng), u(rng));
        const auto s1 = solve_theta(p1);
        const auto s2 = solve_theta(p2);
        worst_angle = std::max({worst_angle, std::abs(s1.theta - pi / 2.0), std::abs(s2.theta - pi / 2.0)});
        const auto m1 = masses_at(p1, s1.theta);
        const auto m2 = masses_at(p2, s2.theta);
        worst_i = std::max(worst_i, std::abs(m1[1] - m1[3]) / m1[1]);
        worst_ii = std::max(worst_ii, std::abs(m2[0] - m2[2]) / m2[0]);
    }
    return {worst_angle < 1e-12 && worst_i < 1e-8 && worst_ii < 1e-8,
            "|theta - pi/2| " + fmt("%.2e", worst_angle) + ", face I |m2-m4|/m2 " + fmt("%.2e", worst_i) +
                ", face II |m1-m3|/m1 " + fmt("%.2e", worst_ii)};
}

// 4. Mass positivity, formula consistency and centrality.
Outcome masses_positive()
{
    std::size_t nonpositive = 0;
    double worst_cons = 0.0, worst_cent = 0.0;
    for (const auto& p : sample(1000, 1)) {
        const double t = solve_theta(p).theta;
        const auto m = masses_at(p, t);
        for (double x : m.m)
            if (!(x > 0.0)) ++nonpositive;
        worst_cons = std::max(worst_cons, m.consistency);
        worst_cent = std::max(worst_cent, centrality_residual(positions(p, t), m).value());
    }
    return {nonpositive == 0 && worst_cons < 1e-8 && worst_cent < 1e-9,
            "non-positive masses " + std::to_string(nonpositive) + ", formula disagreement " +
                fmt("%.2e", worst_cons) + ", centrality residual " + fmt("%.2e", worst_cent)};
}

// 5. Monotonicity in c.
Outcome monotone_in_c()
{
    std::size_t nonpositive = 0;
    double worst_fd = 0.0;
    for (const auto& p : sample(100, 5)) {
        const double d = dtheta_dc(p);
        if (!(d > 0.0)) ++nonpositive;
        double h = 1e-4 * p.c;
        while (contains({p.a, p.b, p.c + h}, 0.0).status != Membership::interior ||
               contains({p.a, p.b, p.c - h}, 0.0).status != Membership::interior)
            h /= 2.0;
        const double fd = oracle::diff_richardson([&](double c) { return solve_theta({p.a, p.b, c}).theta; }, p.c, h);
        worst_fd = std::max(worst_fd, std::abs(fd - d) / std::abs(d));
    }
    double worst_face = 0.0;
    for (int k = 0; k < 20; ++k)
        worst_face = std::max(worst_face, std::abs(dtheta_dc(kite_face_point(Face::II, (k + 0.5) / 20.0, 0.5))));
    return {nonpositive == 0 && worst_fd < 1e-4 && worst_face < 1e-8,
            "dtheta/dc <= 0: " + std::to_string(nonpositive) + ", finite-difference rel. error " +
                fmt("%.2e", worst_fd) + ", face II |dtheta/dc| " + fmt("%.2e", worst_face)};
}

// 6. dF/dtheta and dF/dc against finite differences off the root.
Outcome derivatives()
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_t = 0.0, worst_c = 0.0;
    for (const auto& p : sample(1000, 6)) {
        const auto br = angle_bracket(p);
        const double t = br.theta_l + u(rng) * (br.theta_u - br.theta_l);
        const double scale = std::pow(mutual_distances(p, t).max_r(), 9);
        const double ft = oracle::diff_richardson([&](double x) { return F(p, x); }, t, 1e-3);
        const double fc = oracle::diff_richardson([&](double x) { return F({p.a, p.b, x}, t); }, p.c, 1e-3 * p.c);
        worst_t = std::max(worst_t, std::abs(ft - dF_dtheta(p, t)) / std::max(std::abs(ft), 1e-6 * scale));
        worst_c = std::max(worst_c, std::abs(fc - dF_dc(p, t)) / std::max(std::abs(fc), 1e-6 * scale));
    }
    return {worst_t < 1e-6 && worst_c < 1e-6,
            "dF/dtheta rel. error " + fmt("%.2e", worst_t) + ", dF/dc rel. error " + fmt("%.2e", worst_c)};
}

// 7. Class surfaces, Ptolemy and surface ordering.
Outcome class_surfaces()
{
    double worst_witness = 0.0, worst_ptolemy = 0.0, max_c = 0.0;
    std::size_t nodes = 0;
    for (ClassLabel l : {ClassLabel::trapezoid, ClassLabel::cocircular, ClassLabel::equidiagonal}) {
        const auto mesh = surface_mesh(l, 50);
        nodes += mesh.records.size();
        for (const auto& r : mesh.records) {
            worst_witness = std::max(worst_witness, r.witness);
            if (l == ClassLabel::cocircular) {
                const auto d = mutual_distances(r.point, r.theta);
                const double lhs = d.r13 * d.r24, rhs = d.r12 * d.r34 + d.r14 * d.r23;
                worst_ptolemy = std::max(worst_ptolemy, std::abs(lhs - rhs) / lhs);
                max_c = std::max(max_c, r.point.c);
            }
        }
    }
    std::size_t order_checked = 0, order_bad = 0;
    bool seen_below = false, seen_above = false;
    for (int i = 1; i < 100; ++i)
        for (int j = 1; j < 100; ++j) {
            const double a = inv_sqrt3 + (sqrt3 - inv_sqrt3) * i / 100.0;
            const double b = j / 100.0;
            if (a == 1.0) continue;
            const auto o = surface_order(a, b);
            bool inside = true;
            for (double c : {o.c_trapezoid, o.c_cocircular, o.c_equidiagonal})
                inside = inside && c > 0.0 && contains({a, b, c}).in_closure();
            if (!inside) continue;
            ++order_checked;
            const auto want = a < 1.0 ? SurfaceOrdering::equidiagonal_highest : SurfaceOrdering::trapezoid_highest;
            if (o.ordering != want) ++order_bad;
            (a < 1.0 ? seen_below : seen_above) = true;
        }
    const bool pass = nodes > 0 && worst_witness < 1e-8 && worst_ptolemy < 1e-9 && max_c <= 1.0 + 1e-9 &&
                      order_bad == 0 && seen_below && seen_above;
    return {pass, std::to_string(nodes) + " mesh nodes, worst witness " + fmt("%.2e", worst_witness) +
                      ", Ptolemy " + fmt("%.2e", worst_ptolemy) + ", max co-circular c " + fmt("%.6f", max_c) +
                      ", ordering " + std::to_string(order_checked - order_bad) + "/" +
                      std::to_string(order_checked)};
}

// 8. Rhombus family closed form.
Outcome rhombus_family()
{
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double a = inv_sqrt3 + 0.01 + (sqrt3 - inv_sqrt3 - 0.02) * k / 1000.0;
        const auto m = masses_at({a, 1.0, a}, pi / 2.0);
        worst = std::max(worst, std::abs(m[1] / m[0] - rhombus_ratio(a)) / rhombus_ratio(a));
    }
    const double tail = rhombus_ratio(sqrt3 - 1e-3);
    return {worst < 1e-10 && tail < 1e-2,
            "closed form vs formulas " + fmt("%.2e", worst) + ", m2/m1 at a = sqrt3 - 1e-3: " + fmt("%.3e", tail)};
}

// 9. Vertices and bounding box.
Outcome vertices_and_box()
{
    double worst_on = 0.0, least_off = INFINITY;
    for (Face f : all_faces) {
        const auto listed = face_vertices(f);
        for (const auto& v : vertices()) {
            const double r = std::abs(face_residual(v.point, f));
            if (std::ranges::find(listed, v.name) != listed.end())
                worst_on = std::max(worst_on, r);
            else
                least_off = std::min(least_off, r);
        }
    }
    const auto batch = sample_batch(100000, 9);
    std::size_t outside_box = 0;
    for (const auto& p : batch.points)
        if (!bounding_box.holds(p)) ++outside_box;
    return {worst_on < 1e-14 && least_off > 1e-3 && outside_box == 0 && batch.points.size() == 100000,
            "listed faces residual " + fmt("%.2e", worst_on) + ", unlisted faces min residual " +
                fmt("%.3f", least_off) + ", samples outside box " + std::to_string(outside_box) + "/100000"};
}

// 10. Dynamics.
Outcome dynamics()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = positions({1, 1, 1}, pi / 2.0);
    const auto md = masses_at({1, 1, 1}, pi / 2.0);
    const double omega = angular_velocity(cfg, md).omega;
    const double T = 2.0 * pi / omega;
    IntegrateOptions opt;
    opt.dt = T / 4096.0;
    opt.steps = 4096;
    opt.sample_every = 16;
    const auto re = integrate(relative_equilibrium_ic(cfg, md), opt);
    const double run_time = seconds_since(t0);

    IntegrateOptions rest;
    rest.dt = T / 4096.0;
    rest.steps = 1000000;
    rest.t_stop = collapse_time(omega * omega);
    rest.stop_on_rebound = true;
    double worst_ratio = 0.0;
    for (const RadialPoint& p : {RadialPoint{1, 1, 1}, RadialPoint{1.2, 0.7, 0.9}}) {
        const double t = solve_theta(p).theta;
        const auto c = positions(p, t);
        const auto m = masses_at(p, t);
        const double w = angular_velocity(c, m).omega;
        rest.dt = 2.0 * pi / w / 4096.0;
        rest.t_stop = collapse_time(w * w);
        worst_ratio = std::max(worst_ratio, integrate(rest_state(c, m), rest).max_ratio_deviation);
    }

    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-1, 1);
    Quad q;
    for (auto& v : q) v = {u(rng), u(rng)};
    const Masses eq{1, 1, 1, 1};
    const double wn = std::sqrt(potential(q, eq) / moment(q, eq));
    IntegrateOptions neg;
    neg.dt = 2.0 * pi / wn / 4096.0;
    neg.steps = 4096;
    neg.sample_every = 16;
    neg.close_encounter = 1e-4;
    const double control = integrate(rigid_rotation_state(q, eq, wn), neg).max_distance_deviation;

    return {re.max_distance_deviation < 1e-6 && run_time < 5.0 && worst_ratio < 1e-5 && control > 1e-3,
            "square distance deviation " + fmt("%.2e", re.max_distance_deviation) + " in " + fmt("%.3f s", run_time) +
                ", energy drift " + fmt("%.2e", re.max_energy_drift) + ", collapse ratio deviation " +
                fmt("%.2e", worst_ratio) + ", non-central control " + fmt("%.2e", control)};
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"bracket signs", bracket_signs},
        {"unique root and angle bounds", unique_root},
        {"kite faces", kite_faces},
        {"mass positivity and consistency", masses_positive},
        {"monotonicity in c", monotone_in_c},
        {"derivative correctness", derivatives},
        {"class surfaces", class_surfaces},
        {"rhombus family", rhombus_family},
        {"vertices and box", vertices_and_box},
        {"dynamics", dynamics},
    };
    const auto t0 = std::chrono::steady_clock::now();
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("[%s] %2zu %-32s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
                seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
