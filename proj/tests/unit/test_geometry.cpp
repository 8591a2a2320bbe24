#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lle/error.hpp"
#include "lle/geometry.hpp"
#include "lle/quadrature.hpp"

using namespace lle::geometry;

namespace {

const double kPi = std::numbers::pi;

Region trefoil() { return Region::star({1.0, 0.0, 0.0, 0.0, 0.0, 0.2, 0.0}); }

}  // namespace

TEST_CASE("disk metrics and accessors") {
    const Region d = Region::disk(2.0);
    CHECK(std::abs(d.area() - 4.0 * kPi) < 1e-12);
    CHECK(std::abs(d.perimeter() - 4.0 * kPi) < 1e-12);
    for (double t = 0.0; t < 6.3; t += 0.7) CHECK(d.curvature(t) == doctest::Approx(0.5).epsilon(1e-15));
    const BoundaryPoint b = Region::disk(1.5).boundary(0.0);
    CHECK(b.point.x1 == doctest::Approx(1.5));
    CHECK(b.inward_normal.x1 == doctest::Approx(-1.0));
    CHECK(std::abs(b.inward_normal.x2) < 1e-15);
}

TEST_CASE("star curvature against finite differences") {
    const Region s = trefoil();
    const double h = 1e-4;
    for (double t = 0.05; t < 2.0 * kPi; t += 0.31) {
        auto x = [&](double u) { return s.boundary(u).point; };
        const Point2 xp = x(t + h), xm = x(t - h), x0 = x(t);
        const double dx = (xp.x1 - xm.x1) / (2 * h), dy = (xp.x2 - xm.x2) / (2 * h);
        const double ddx = (xp.x1 - 2 * x0.x1 + xm.x1) / (h * h), ddy = (xp.x2 - 2 * x0.x2 + xm.x2) / (h * h);
        const double kappa = (dx * ddy - dy * ddx) / std::pow(dx * dx + dy * dy, 1.5);
        CHECK(std::abs(s.curvature(t) - kappa) < 1e-6);
    }
}

TEST_CASE("star metrics") {
    const Region s = trefoil();
    // area of r = 1 + 0.2 cos 3t is pi (1 + 0.02)
    CHECK(std::abs(s.area() - kPi * 1.02) < 1e-12);
    const auto rule = lle::specfun::composite_gauss_legendre(0.0, 2.0 * kPi, kPi / 32, 20);
    const double per = rule.integrate([&](double t) { return s.boundary(t).speed; });
    CHECK(std::abs(s.perimeter() - per) < 1e-11);
    CHECK_THROWS_AS(Region::star({0.5, 0.7, 0.0}), lle::Error);
    CHECK_THROWS_AS(Region::star({1.0, 0.1}), lle::Error);
}

TEST_CASE("polygon metrics and capabilities") {
    const Region sq = Region::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(sq.area() == doctest::Approx(1.0));
    CHECK(sq.perimeter() == doctest::Approx(4.0));
    CHECK_THROWS_AS(sq.curvature(0.0), lle::Error);
    CHECK_THROWS_AS(roccaforte_second_order(sq, {{1, 0}}), lle::Error);
    CHECK_THROWS_AS(Region::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), lle::Error);
    CHECK_THROWS_AS(Region::polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), lle::Error);
}

TEST_CASE("intersection areas") {
    const Region d = Region::disk(1.0);
    CHECK(intersect_translates_area(d, {{{1, 0}}, 0.0}).removed == 0.0);
    const Region sq = Region::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    for (int k = 1; k <= 12; ++k) {
        const double e = std::ldexp(1.0, -k);
        CHECK(std::abs(intersect_translates_area(sq, {{{1, 0}}, e}).removed - e) < 1e-15);
        const double diag = intersect_translates_area(sq, {{{0.6, 0.8}}, e}).removed;
        CHECK(std::abs(diag - (1.4 * e - 0.48 * e * e)) < 1e-14);
    }
}

TEST_CASE("lens area against Monte Carlo") {
    const Region d = Region::disk(1.0);
    const TranslateFamily fam{{{1, 0}}, 0.3};
    const IntersectionArea exact = intersect_translates_area(d, fam);
    CHECK(exact.method == "lens");
    const IntersectionArea mc = intersect_translates_area_mc(d, fam, 12345, 10'000'000);
    CHECK(std::abs(exact.removed - mc.removed) < 3.0 * mc.error_estimate);
    // shard layout makes the estimate independent of the worker count
    const IntersectionArea mc2 = intersect_translates_area_mc(d, fam, 12345, 10'000'000, 3);
    CHECK(mc.removed == mc2.removed);
}

TEST_CASE("polar method against the lens formula and Monte Carlo") {
    // A disk written as a star profile goes through the polar method.
    const Region as_star = Region::star({1.0});
    const Region d = Region::disk(1.0);
    for (double e : {0.01, 0.1, 0.4}) {
        const auto p = intersect_translates_area(as_star, {{{1, 0}}, e});
        CHECK(p.method == "polar");
        CHECK(std::abs(p.removed - intersect_translates_area(d, {{{1, 0}}, e}).removed) < 1e-12);
    }
    const Region s = trefoil();
    const TranslateFamily fam{{{1, 0.2}, {-0.4, 0.9}}, 0.2};
    const auto p = intersect_translates_area(s, fam);
    const auto mc = intersect_translates_area_mc(s, fam, 99, 4'000'000);
    CHECK(std::abs(p.removed - mc.removed) < 3.5 * mc.error_estimate);
}

TEST_CASE("first-order term") {
    const Region d = Region::disk(1.0);
    CHECK(std::abs(roccaforte_first_order(d, {{0, 0}}).value) < 1e-15);
    CHECK(std::abs(roccaforte_first_order(d, {{1, 0}}).value - 2.0) < 1e-12);
    // two opposite unit vectors remove both half circles: 4
    CHECK(std::abs(roccaforte_first_order(d, {{1, 0}, {-1, 0}}).value - 4.0) < 1e-12);
    CHECK(std::abs(roccaforte_first_order(Region::disk(2.5), {{0.3, -0.4}}).value - 2.0 * 2.5 * 0.5) < 1e-12);
    CHECK(roccaforte_first_order(d, {{1, 0}, {1, 0}}).degenerate);
    // 1-D adaptive oracle for a star and two vectors
    const Region s = trefoil();
    const std::vector<Point2> v = {{1, 0.2}, {-0.4, 0.9}};
    auto f = [&](double t) {
        const BoundaryPoint b = s.boundary(t);
        double m = 0.0;
        for (const Point2& u : v) m = std::max(m, u.x1 * b.inward_normal.x1 + u.x2 * b.inward_normal.x2);
        return m * b.speed;
    };
    lle::specfun::AdaptiveOptions opt;
    opt.abs_tol = 1e-11;
    opt.max_depth = 60;
    const double oracle = lle::specfun::integrate_adaptive(f, 0.0, 2.0 * kPi, opt).value;
    CHECK(std::abs(roccaforte_first_order(s, v).value - oracle) < 1e-9);
}

TEST_CASE("rotation invariance") {
    const Region s = trefoil();
    const std::vector<Point2> v = {{1, 0.2}, {-0.4, 0.9}, {0.1, -0.7}};
    for (double phi : {0.3, 1.7, -2.2}) {
        const double c = std::cos(phi), sn = std::sin(phi);
        std::vector<Point2> w;
        for (const Point2& u : v) w.push_back({c * u.x1 - sn * u.x2, sn * u.x1 + c * u.x2});
        const Region r = s.rotated(phi);
        CHECK(std::abs(roccaforte_first_order(s, v).value - roccaforte_first_order(r, w).value) < 1e-10);
        CHECK(std::abs(roccaforte_second_order(s, v).value - roccaforte_second_order(r, w).value) < 1e-10);
        CHECK(std::abs(r.area() - s.area()) < 1e-12);
    }
}

TEST_CASE("second-order term") {
    // single vector on the unit disk: 1/2 int_{-pi/2}^{pi/2} (1 - 2 cos^2) = 0
    CHECK(std::abs(roccaforte_second_order(Region::disk(1.0), {{1, 0}}).value) < 1e-12);
    CHECK(std::abs(roccaforte_second_order(Region::disk(1.0), {{0, 0}}).value) < 1e-15);
}

TEST_CASE("expansion residuals vanish") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::vector<Region> regions = {Region::disk(1.0), trefoil(), Region::star({1.0, 0.1, -0.05, 0.0, 0.08})};
    for (const Region& region : regions) {
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<Point2> v;
            const int r = 1 + trial;
            for (int q = 0; q < r; ++q) v.push_back({u(rng), u(rng)});
            const double t1 = roccaforte_first_order(region, v).value;
            const double t2 = roccaforte_second_order(region, v).value;
            CHECK(t1 > 0.0);
            double prev1 = 1e300, prev2 = 1e300;
            for (int k = 3; k <= 9; ++k) {
                const double e = std::ldexp(1.0, -k);
                const double removed = intersect_translates_area(region, {v, e}).removed;
                const double r1 = std::abs(removed - e * t1) / e;
                const double r2 = std::abs(removed - e * t1 - e * e * t2) / (e * e);
                CHECK(r1 < prev1);
                CHECK(r2 < prev2);
                prev1 = r1;
                prev2 = r2;
            }
            CHECK(prev1 < 0.01);
            CHECK(prev2 < 0.02);
        }
    }
}
