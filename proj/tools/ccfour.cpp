// ccfour: solve, sample, classify and simulate four-body convex central
// configurations from the command line.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccfour/classify.hpp"
#include "ccfour/dynamics.hpp"
#include "ccfour/parallel.hpp"
#include "ccfour/record.hpp"
#include "ccfour/solver.hpp"
#include "ccfour/verify.hpp"

namespace {

using namespace ccfour;

enum Exit : int { ok = 0, usage = 1, outside = 2, numerical = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path)
    {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }
    void close()
    {
        if (!file_) return;
        file_->close();
        if (!*file_) throw std::runtime_error("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

RadialPoint checked_point(double a, double b, double c)
{
    const RadialPoint p{a, b, c};
    if (!p.finite() || !p.positive()) throw UsageError("a, b and c must be positive finite numbers");
    return p;
}

Format checked_format(const std::string& s)
{
    auto f = parse_format(s);
    if (!f || *f == Format::text) throw UsageError("--format must be csv or jsonl");
    return *f;
}

// solve

struct SolveArgs {
    double a = 0, b = 0, c = 0;
    double tol = 1e-13;
    bool json = false;
    bool degrees = false;
};

int cmd_solve(const SolveArgs& args)
{
    const RadialPoint p = checked_point(args.a, args.b, args.c);
    const DomainMembership m = contains(p);
    if (m.status == Membership::outside) {
        if (args.json) {
            nlohmann::ordered_json j;
            j["a"] = p.a;
            j["b"] = p.b;
            j["c"] = p.c;
            j["status"] = "outside";
            j["violations"] = nlohmann::ordered_json::array();
            for (Face f : m.violated) j["violations"].push_back(constraint_name(f));
            std::cout << j.dump() << '\n';
        } else {
            std::cout << "status: outside\n";
            for (Face f : m.violated) std::cout << "violation: " << constraint_name(f) << '\n';
        }
        return Exit::outside;
    }
    RecordOptions opt;
    opt.solver.tol = args.tol;
    const OutputRecord r = make_record(p, opt);
    if (args.json)
        std::cout << json_line(r, args.degrees) << '\n';
    else
        std::cout << text_block(r, args.degrees);
    return Exit::ok;
}

// sample

struct SampleArgs {
    long long n = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    bool degrees = false;
};

int cmd_sample(const SampleArgs& args)
{
    if (args.n < 1) throw UsageError("sample count must be at least 1");
    const Format fmt = checked_format(args.format);
    const auto pts = sample(static_cast<std::size_t>(args.n), args.seed);
    std::vector<OutputRecord> recs(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { recs[i] = make_record(pts[i]); });
    Sink sink(args.out);
    write_records(sink.os(), recs, fmt, args.degrees);
    sink.close();
    return Exit::ok;
}

// surface

struct SurfaceArgs {
    std::string label;
    std::size_t res = 50;
    std::string out;
    std::string format = "csv";
    bool degrees = false;
};

int cmd_surface(const SurfaceArgs& args)
{
    const auto label = parse_label(args.label);
    if (!label || *label == ClassLabel::rhombus || *label == ClassLabel::isosceles_trapezoid)
        throw UsageError("surface class must be one of trapezoid, cocircular, equidiagonal, kite13, kite24");
    if (args.res < 2) throw UsageError("--res must be at least 2");
    const Format fmt = checked_format(args.format);
    const SurfaceMesh mesh = surface_mesh(*label, args.res);
    std::vector<OutputRecord> recs(mesh.records.size());
    parallel_for(recs.size(), [&](std::size_t i) { recs[i] = make_record(mesh.records[i], *label); });
    Sink sink(args.out);
    write_records(sink.os(), recs, fmt, args.degrees);
    sink.close();
    std::cerr << label_name(*label) << ": " << recs.size() << " nodes, " << mesh.clipped << " clipped\n";
    return Exit::ok;
}

// verify

struct VerifyArgs {
    long long n = 0;
    std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs& args)
{
    if (args.n < 1) throw UsageError("sample count must be at least 1");
    const VerifyReport rep = run_verification(static_cast<std::size_t>(args.n), args.seed);
    for (const SuiteResult& s : rep.suites) {
        char line[256];
        std::snprintf(line, sizeof line, "%s  %-52s worst=%-12.4g limit=%-9.3g checked=%zu failures=%zu\n",
                      s.passed() ? "PASS" : "FAIL", s.name.c_str(), s.worst, s.limit, s.checked, s.failures);
        std::cout << line;
    }
    std::cout << (rep.passed() ? "all suites passed\n" : "verification FAILED\n");
    return rep.passed() ? Exit::ok : Exit::numerical;
}

// simulate

struct SimulateArgs {
    double a = 0, b = 0, c = 0;
    double periods = 1.0;
    double dt_frac = 4096.0;
    std::string mode = "rigid";
    std::string integrator = "yoshida4";
    std::size_t sample_every = 16;
    std::string out;
    bool json = false;
};

void write_trajectory(std::ostream& os, const Trajectory& tr)
{
    os << "t";
    for (int i = 1; i <= 4; ++i) os << ",x" << i << ",y" << i;
    for (int i = 1; i <= 4; ++i) os << ",vx" << i << ",vy" << i;
    os << ",energy_drift,angmom_drift,distance_deviation,ratio_deviation\n";
    for (const TrajectorySample& s : tr.samples) {
        os << format_double(s.t);
        for (const Vec2& q : s.q) os << ',' << format_double(q.x) << ',' << format_double(q.y);
        for (const Vec2& v : s.v) os << ',' << format_double(v.x) << ',' << format_double(v.y);
        os << ',' << format_double(s.energy_drift) << ',' << format_double(s.angmom_drift) << ','
           << format_double(s.distance_deviation) << ',' << format_double(s.ratio_deviation) << '\n';
    }
}

int cmd_simulate(const SimulateArgs& args)
{
    const RadialPoint p = checked_point(args.a, args.b, args.c);
    if (args.mode != "rigid" && args.mode != "rest") throw UsageError("--mode must be rigid or rest");
    if (args.integrator != "yoshida4" && args.integrator != "leapfrog")
        throw UsageError("--integrator must be yoshida4 or leapfrog");
    if (!(args.periods > 0.0) || !(args.dt_frac >= 1.0)) throw UsageError("--periods and --dt-frac must be positive");
    if (args.sample_every < 1) throw UsageError("--sample-every must be at least 1");

    const DomainMembership m = contains(p);
    if (m.status == Membership::outside) {
        std::cerr << "outside domain:";
        for (Face f : m.violated) std::cerr << ' ' << constraint_name(f) << ';';
        std::cerr << '\n';
        return Exit::outside;
    }
    const AngleSolution sol = solve_theta(p);
    const auto config = positions(p, sol.theta);
    const MassDistribution md = masses_at(p, sol.theta);
    const AngularVelocity w = angular_velocity(config, md);
    const double period = 2.0 * pi / w.omega;

    IntegrateOptions opt;
    opt.dt = period / args.dt_frac;
    opt.scheme = args.integrator == "leapfrog" ? Scheme::leapfrog : Scheme::yoshida4;
    opt.sample_every = args.sample_every;
    SimulationState start;
    double t_collapse = std::numeric_limits<double>::quiet_NaN();
    if (args.mode == "rigid") {
        start = relative_equilibrium_ic(config, md);
        opt.steps = static_cast<std::size_t>(std::llround(args.periods * args.dt_frac));
    } else {
        start = rest_state(config, md);
        t_collapse = collapse_time(w.omega * w.omega);
        opt.t_stop = t_collapse;
        opt.stop_on_rebound = true;
        opt.steps = static_cast<std::size_t>(std::ceil(t_collapse / opt.dt)) + 1;
    }
    const Trajectory tr = integrate(start, opt);

    if (!args.out.empty()) {
        Sink sink(args.out);
        write_trajectory(sink.os(), tr);
        sink.close();
    }

    nlohmann::ordered_json j;
    j["a"] = p.a;
    j["b"] = p.b;
    j["c"] = p.c;
    j["theta"] = sol.theta;
    j["mode"] = args.mode;
    j["integrator"] = scheme_name(opt.scheme);
    j["omega"] = w.omega;
    j["period"] = period;
    j["dt"] = opt.dt;
    if (args.mode == "rest") j["collapse_time"] = t_collapse;
    j["steps"] = tr.steps_taken;
    j["t_end"] = tr.final_state.t;
    j["termination"] = termination_name(tr.termination);
    j["max_energy_drift"] = tr.max_energy_drift;
    j["max_angmom_drift"] = tr.max_angmom_drift;
    j["max_distance_deviation"] = tr.max_distance_deviation;
    j["max_ratio_deviation"] = tr.max_ratio_deviation;
    if (args.json) {
        std::cout << j.dump() << '\n';
    } else {
        for (const auto& [k, v] : j.items()) {
            std::cout << k << ": ";
            if (v.is_number_float())
                std::cout << format_double(v.get<double>());
            else if (v.is_string())
                std::cout << v.get<std::string>();
            else
                std::cout << v.dump();
            std::cout << '\n';
        }
    }
    return Exit::ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Four-body convex central configurations in (a, b, c, theta) coordinates"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "Solve the diagonal angle and masses at one point");
    s->add_option("a", solve.a)->required();
    s->add_option("b", solve.b)->required();
    s->add_option("c", solve.c)->required();
    s->add_option("--tol", solve.tol, "Angle tolerance in radians")->capture_default_str();
    s->add_flag("--json", solve.json, "Print one JSON object");
    s->add_flag("--degrees", solve.degrees, "Report the angle in degrees");

    SampleArgs smp;
    auto* sm = app.add_subcommand("sample", "Solve seeded uniform samples of the domain interior");
    sm->add_option("n", smp.n)->required();
    sm->add_option("--seed", smp.seed)->capture_default_str();
    sm->add_option("--out", smp.out, "Output file (default stdout)");
    sm->add_option("--format", smp.format, "csv or jsonl")->capture_default_str();
    sm->add_flag("--degrees", smp.degrees);

    SurfaceArgs surf;
    auto* su = app.add_subcommand("surface", "Export a class surface mesh");
    su->add_option("class", surf.label, "trapezoid, cocircular, equidiagonal, kite13 or kite24")->required();
    su->add_option("--res", surf.res, "Grid nodes per axis")->capture_default_str();
    su->add_option("--out", surf.out, "Output file (default stdout)");
    su->add_option("--format", surf.format, "csv or jsonl")->capture_default_str();
    su->add_flag("--degrees", surf.degrees);

    VerifyArgs ver;
    auto* ve = app.add_subcommand("verify", "Run the invariant suite on n seeded samples");
    ve->add_option("n", ver.n)->required();
    ve->add_option("--seed", ver.seed)->capture_default_str();

    SimulateArgs sim;
    auto* si = app.add_subcommand("simulate", "Integrate the relative equilibrium or the collapse from rest");
    si->add_option("a", sim.a)->required();
    si->add_option("b", sim.b)->required();
    si->add_option("c", sim.c)->required();
    si->add_option("--periods", sim.periods)->capture_default_str();
    si->add_option("--dt-frac", sim.dt_frac, "Steps per period")->capture_default_str();
    si->add_option("--mode", sim.mode, "rigid or rest")->capture_default_str();
    si->add_option("--integrator", sim.integrator, "yoshida4 or leapfrog")->capture_default_str();
    si->add_option("--sample-every", sim.sample_every)->capture_default_str();
    si->add_option("--out", sim.out, "Trajectory CSV file");
    si->add_flag("--json", sim.json, "Print the diagnostics as one JSON object");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (*s) return cmd_solve(solve);
        if (*sm) return cmd_sample(smp);
        if (*su) return cmd_surface(surf);
        if (*ve) return cmd_verify(ver);
        if (*si) return cmd_simulate(sim);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return Exit::usage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return Exit::outside;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return Exit::numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::numerical;
    }
    return Exit::usage;
}
