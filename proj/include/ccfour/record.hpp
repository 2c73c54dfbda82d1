#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ccfour/classify.hpp"
#include "ccfour/domain.hpp"
#include "ccfour/masses.hpp"
#include "ccfour/solver.hpp"
#include "ccfour/types.hpp"

namespace ccfour {

/// One solved point, ready for export. Masses are NaN where they vanish or
/// are undefined (faces III to VI); centrality is NaN without masses.
struct OutputRecord {
    RadialPoint point;
    double theta = 0.0;
    Masses m{};
    std::vector<ClassLabel> labels;
    double f_residual = 0.0;
    double consistency = 0.0;
    double centrality = 0.0;
    Membership status = Membership::interior;
    std::vector<Face> faces;
    /// Surface exports carry the class equation residual and geometric witness.
    std::optional<std::pair<double, double>> surface;
};

/// Column order shared by every CSV and JSON export.
inline constexpr std::array<std::string_view, 14> record_columns{
    "a", "b", "c", "theta", "m1", "m2", "m3", "m4", "labels", "f_residual", "consistency", "centrality", "status",
    "faces"};
inline constexpr std::array<std::string_view, 2> surface_columns{"class_residual", "witness"};

enum class Format : std::uint8_t { text, csv, jsonl };

[[nodiscard]] inline std::optional<Format> parse_format(std::string_view s) noexcept
{
    if (s == "text") return Format::text;
    if (s == "csv") return Format::csv;
    if (s == "jsonl" || s == "json") return Format::jsonl;
    return std::nullopt;
}

struct RecordOptions {
    SolverOptions solver{};
    Normalization normalization = Normalization::m1_equals_1;
    double class_tol = default_class_tol;
};

[[nodiscard]] inline OutputRecord make_record(const RadialPoint& p, const RecordOptions& opt = {})
{
    const AngleSolution sol = solve_theta(p, opt.solver);
    const DomainMembership dm = contains(p, opt.solver.domain_tol);
    OutputRecord r;
    r.point = p;
    r.theta = sol.theta;
    r.f_residual = sol.residual;
    r.status = dm.status;
    r.faces = dm.faces;
    r.labels = classify(p, opt.class_tol).labels;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        const MassDistribution md = masses_at(p, sol.theta, opt.normalization);
        r.m = md.m;
        r.consistency = md.consistency;
        r.centrality = centrality_residual(positions(p, sol.theta), md).value();
    } catch (const Error&) {
        r.m = {nan, nan, nan, nan};
        r.consistency = nan;
        r.centrality = nan;
    }
    return r;
}

[[nodiscard]] inline OutputRecord make_record(const MeshRecord& mr, ClassLabel label, double class_tol = default_class_tol)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    OutputRecord r;
    r.point = mr.point;
    r.theta = mr.theta;
    r.f_residual = mr.f_residual;
    r.status = mr.status;
    r.faces = mr.faces;
    r.labels = classify(mr.point, class_tol).labels;
    if (mr.masses) {
        r.m = mr.masses->m;
        r.consistency = mr.masses->consistency;
        r.centrality = centrality_residual(positions(mr.point, mr.theta), *mr.masses).value();
    } else {
        r.m = {nan, nan, nan, nan};
        r.consistency = nan;
        r.centrality = nan;
    }
    r.surface = std::pair{mr.algebraic, mr.witness};
    (void)label;
    return r;
}

/// 17 significant digits: parsing the text gives back the same double.
[[nodiscard]] inline std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

[[nodiscard]] inline std::string join_labels(const std::vector<ClassLabel>& ls)
{
    std::string s;
    for (ClassLabel l : ls) {
        if (!s.empty()) s += ';';
        s += label_name(l);
    }
    return s;
}

[[nodiscard]] inline std::string join_faces(const std::vector<Face>& fs)
{
    std::string s;
    for (Face f : fs) {
        if (!s.empty()) s += ';';
        s += face_name(f);
    }
    return s;
}

[[nodiscard]] inline double display_angle(double theta, bool degrees) noexcept
{
    return degrees ? theta * 180.0 / pi : theta;
}

[[nodiscard]] inline std::string csv_header(bool degrees = false, bool with_surface = false)
{
    std::string s;
    for (std::string_view c : record_columns) {
        if (!s.empty()) s += ',';
        s += (c == "theta" && degrees) ? std::string_view("theta_deg") : c;
    }
    if (with_surface)
        for (std::string_view c : surface_columns) (s += ',') += c;
    return s;
}

[[nodiscard]] inline std::string csv_row(const OutputRecord& r, bool degrees = false)
{
    std::string s;
    auto num = [&](double x) { (s += format_double(x)) += ','; };
    num(r.point.a);
    num(r.point.b);
    num(r.point.c);
    num(display_angle(r.theta, degrees));
    for (double m : r.m) num(m);
    (s += join_labels(r.labels)) += ',';
    num(r.f_residual);
    num(r.consistency);
    num(r.centrality);
    (s += membership_name(r.status)) += ',';
    s += join_faces(r.faces);
    if (r.surface) {
        (s += ',') += format_double(r.surface->first);
        (s += ',') += format_double(r.surface->second);
    }
    return s;
}

/// JSON object with the same keys as the CSV columns. NaN becomes null.
[[nodiscard]] inline nlohmann::ordered_json to_json(const OutputRecord& r, bool degrees = false)
{
    auto num = [](double x) -> nlohmann::ordered_json {
        if (std::isfinite(x)) return x;
        return nullptr;
    };
    nlohmann::ordered_json j;
    j["a"] = num(r.point.a);
    j["b"] = num(r.point.b);
    j["c"] = num(r.point.c);
    j[degrees ? "theta_deg" : "theta"] = num(display_angle(r.theta, degrees));
    for (std::size_t i = 0; i < 4; ++i) j["m" + std::to_string(i + 1)] = num(r.m[i]);
    j["labels"] = nlohmann::ordered_json::array();
    for (ClassLabel l : r.labels) j["labels"].push_back(label_name(l));
    j["f_residual"] = num(r.f_residual);
    j["consistency"] = num(r.consistency);
    j["centrality"] = num(r.centrality);
    j["status"] = membership_name(r.status);
    j["faces"] = nlohmann::ordered_json::array();
    for (Face f : r.faces) j["faces"].push_back(face_name(f));
    if (r.surface) {
        j["class_residual"] = num(r.surface->first);
        j["witness"] = num(r.surface->second);
    }
    return j;
}

/// One JSON object per line. nlohmann prints the shortest digit string that
/// round-trips, so values match the CSV export exactly once parsed.
[[nodiscard]] inline std::string json_line(const OutputRecord& r, bool degrees = false)
{
    return to_json(r, degrees).dump();
}

/// Writes records as CSV (header plus rows) or JSON lines.
inline void write_records(std::ostream& os, const std::vector<OutputRecord>& recs, Format fmt, bool degrees = false)
{
    if (fmt == Format::jsonl) {
        for (const auto& r : recs) os << json_line(r, degrees) << '\n';
        return;
    }
    const bool surf = !recs.empty() && recs.front().surface.has_value();
    os << csv_header(degrees, surf) << '\n';
    for (const auto& r : recs) os << csv_row(r, degrees) << '\n';
}

/// Human-readable key: value listing of one record.
[[nodiscard]] inline std::string text_block(const OutputRecord& r, bool degrees = false)
{
    std::string s;
    auto line = [&](std::string_view k, const std::string& v) {
        s += k;
        s += ": ";
        s += v;
        s += '\n';
    };
    line("a", format_double(r.point.a));
    line("b", format_double(r.point.b));
    line("c", format_double(r.point.c));
    line(degrees ? "theta_deg" : "theta", format_double(display_angle(r.theta, degrees)));
    for (std::size_t i = 0; i < 4; ++i) line("m" + std::to_string(i + 1), format_double(r.m[i]));
    line("labels", join_labels(r.labels));
    line("f_residual", format_double(r.f_residual));
    line("consistency", format_double(r.consistency));
    line("centrality", format_double(r.centrality));
    line("status", std::string(membership_name(r.status)));
    line("faces", join_faces(r.faces));
    return s;
}

}  // namespace ccfour
