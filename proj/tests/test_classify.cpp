#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "ccfour/classify.hpp"

using namespace ccfour;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("square carries every label", "[classify]")
{
    const auto rep = classify({1, 1, 1}, default_class_tol, pi / 2.0);
    for (ClassLabel l : all_labels) {
        INFO(label_name(l));
        CHECK(rep.has(l));
    }
    for (const auto& [l, w] : rep.witnesses) {
        INFO(label_name(l));
        CHECK(w < 1e-14);
    }
}

TEST_CASE("generic interior point has no label", "[classify]")
{
    CHECK(classify({1.2, 0.7, 0.9}).labels.empty());
}

TEST_CASE("labels on the kite faces", "[classify]")
{
    const auto k13 = classify({1.2, 0.7, 1.2});
    CHECK(k13.has(ClassLabel::kite13));
    CHECK_FALSE(k13.has(ClassLabel::rhombus));
    const auto k24 = classify({1.2, 1.0, 0.9});
    CHECK(k24.has(ClassLabel::kite24));
    CHECK_FALSE(k24.has(ClassLabel::kite13));
    const auto rh = classify({1.3, 1.0, 1.3});
    CHECK(rh.has(ClassLabel::rhombus));
}

TEST_CASE("isosceles trapezoids lie on three surfaces", "[classify]")
{
    const auto rep = classify({1.0, 0.5, 0.5});
    CHECK(rep.has(ClassLabel::isosceles_trapezoid));
    CHECK(rep.has(ClassLabel::trapezoid));
    CHECK(rep.has(ClassLabel::cocircular));
    CHECK(rep.has(ClassLabel::equidiagonal));
}

TEST_CASE("co-circular point passes the circumcircle witness", "[classify]")
{
    const RadialPoint p{0.9, 0.72, 0.8};
    REQUIRE(contains(p).status == Membership::interior);
    const double t = solve_theta(p).theta;
    const auto rep = classify(p, default_class_tol, t);
    REQUIRE(rep.has(ClassLabel::cocircular));
    CHECK(geometric_witness(positions(p, t), ClassLabel::cocircular) < 1e-9);
    CHECK(std::abs(cross_ratio(positions(p, t)).imag_residual()) < 1e-12);
}

TEST_CASE("trapezoid point has parallel sides", "[classify]")
{
    const RadialPoint p{1.2, 0.7, 0.84};
    const double t = solve_theta(p).theta;
    CHECK(classify(p).has(ClassLabel::trapezoid));
    CHECK(geometric_witness(positions(p, t), ClassLabel::trapezoid) < 1e-14);
    CHECK(geometric_witness(positions({1.2, 0.7, 0.9}, t), ClassLabel::trapezoid) > 1e-3);
}

TEST_CASE("circumcenter of a right triangle is the hypotenuse midpoint", "[classify]")
{
    const Vec2 c = circumcenter({0, 0}, {2, 0}, {0, 2});
    CHECK_THAT(c.x, WithinAbs(1.0, 1e-15));
    CHECK_THAT(c.y, WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(circumcenter({0, 0}, {1, 1}, {2, 2}), DegenerateError);
}

TEST_CASE("label names round-trip", "[classify]")
{
    for (ClassLabel l : all_labels) CHECK(parse_label(label_name(l)) == l);
    CHECK_FALSE(parse_label("pentagon").has_value());
}

TEST_CASE("classify rejects outside points", "[classify]")
{
    CHECK_THROWS_AS(classify({1.0, 0.1, 0.9}), DomainError);
}

TEST_CASE("class surface meshes pass their witnesses", "[classify][mesh]")
{
    for (ClassLabel l : {ClassLabel::trapezoid, ClassLabel::cocircular, ClassLabel::equidiagonal}) {
        const auto mesh = surface_mesh(l, 50);
        INFO(label_name(l));
        REQUIRE(mesh.records.size() > 100);
        CHECK(mesh.records.size() + mesh.clipped == 2500);
        for (const auto& r : mesh.records) {
            REQUIRE(r.witness < 1e-8);
            REQUIRE(std::abs(r.algebraic) < 1e-12);
            REQUIRE(r.f_residual < 1e-12);
            REQUIRE(r.status != Membership::outside);
        }
    }
}

TEST_CASE("co-circular mesh satisfies Ptolemy and stays below c = 1", "[classify][mesh]")
{
    for (const auto& r : surface_mesh(ClassLabel::cocircular, 50).records) {
        const auto d = mutual_distances(r.point, r.theta);
        const double lhs = d.r13 * d.r24;
        const double rhs = d.r12 * d.r34 + d.r14 * d.r23;
        REQUIRE_THAT(lhs, WithinRel(rhs, 1e-9));
        REQUIRE(r.point.c <= 1.0 + 1e-9);
    }
}

TEST_CASE("equidiagonal mesh has equal diagonals exactly", "[classify][mesh]")
{
    for (const auto& r : surface_mesh(ClassLabel::equidiagonal, 50).records) {
        const auto d = mutual_distances(r.point, r.theta);
        REQUIRE(std::abs(d.r13 - d.r24) < 1e-15);
    }
}

TEST_CASE("kite meshes lie on their faces", "[classify][mesh]")
{
    for (const auto& r : surface_mesh(ClassLabel::kite13, 20).records) {
        REQUIRE(r.point.a == r.point.c);
        REQUIRE(r.theta == pi / 2.0);
    }
    for (const auto& r : surface_mesh(ClassLabel::kite24, 20).records) REQUIRE(r.point.b == 1.0);
    CHECK_THROWS_AS(surface_mesh(ClassLabel::rhombus, 10), DomainError);
    CHECK_THROWS_AS(surface_mesh(ClassLabel::trapezoid, 1), DomainError);
}

TEST_CASE("mesh output is independent of the thread count", "[classify][mesh]")
{
    const auto a = surface_mesh(ClassLabel::trapezoid, 30);
    const auto b = surface_mesh(ClassLabel::trapezoid, 30);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        REQUIRE(a.records[i].point.a == b.records[i].point.a);
        REQUIRE(a.records[i].point.b == b.records[i].point.b);
        REQUIRE(a.records[i].theta == b.records[i].theta);
    }
}

TEST_CASE("surface ordering flips across a = 1", "[classify]")
{
    // Only (a, b) pairs whose three surface points are all in the closed
    // domain are compared.
    int below = 0, above = 0;
    for (int i = 1; i < 60; ++i)
        for (int j = 1; j < 60; ++j) {
            const double a = inv_sqrt3 + (sqrt3 - inv_sqrt3) * i / 60.0;
            const double b = j / 60.0;
            if (std::abs(a - 1.0) < 1e-12) continue;
            const auto o = surface_order(a, b);
            bool all_in = true;
            for (double c : {o.c_trapezoid, o.c_cocircular, o.c_equidiagonal})
                all_in = all_in && c > 0.0 && contains({a, b, c}).in_closure();
            if (!all_in) continue;
            if (a < 1.0) {
                ++below;
                REQUIRE(o.ordering == SurfaceOrdering::equidiagonal_highest);
            } else {
                ++above;
                REQUIRE(o.ordering == SurfaceOrdering::trapezoid_highest);
            }
        }
    CHECK(below > 10);
    CHECK(above > 10);
    CHECK(surface_order(1.0, 0.5).ordering == SurfaceOrdering::coincident);
}

TEST_CASE("r23 - r14 takes the sign of a - 1 on the class surfaces", "[classify][mesh][property]")
{
    for (ClassLabel l : {ClassLabel::trapezoid, ClassLabel::cocircular, ClassLabel::equidiagonal}) {
        INFO(label_name(l));
        int checked = 0;
        for (const auto& r : surface_mesh(l, 40).records) {
            if (r.point.b >= 1.0 || std::abs(r.point.a - 1.0) < 1e-9) continue;
            const auto d = mutual_distances(r.point, r.theta);
            REQUIRE((d.r23 > d.r14) == (r.point.a > 1.0));
            ++checked;
        }
        CHECK(checked > 50);
    }
}

TEST_CASE("co-circular distances scale by a and c", "[classify][mesh]")
{
    for (const auto& r : surface_mesh(ClassLabel::cocircular, 50).records) {
        const auto d = mutual_distances(r.point, r.theta);
        REQUIRE_THAT(d.r23, WithinRel(r.point.a * d.r14, 1e-10));
        REQUIRE_THAT(d.r34, WithinRel(r.point.c * d.r12, 1e-10));
    }
}
