#include "lle/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#define BOOST_GEOMETRY_NO_ROBUSTNESS
#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/math/tools/roots.hpp>

#include "lle/error.hpp"
#include "lle/parallel.hpp"
#include "lle/quadrature.hpp"

namespace lle::geometry {
namespace {

namespace bg = boost::geometry;
using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, false, false>;
using BgMulti = bg::model::multi_polygon<BgPolygon>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kProfileSamples = 4096;

BgPolygon to_bg(const Polygon& poly, Point2 shift = {}) {
    BgPolygon out;
    for (const Point2& v : poly.vertices) bg::append(out.outer(), BgPoint(v.x1 + shift.x1, v.x2 + shift.x2));
    bg::correct(out);
    return out;
}

double star_radius(const SmoothStar& s, double theta, int derivative) {
    double r = derivative == 0 ? s.coeffs[0] : 0.0;
    const std::size_t harmonics = (s.coeffs.size() - 1) / 2;
    for (std::size_t k = 1; k <= harmonics; ++k) {
        const double a = s.coeffs[2 * k - 1];
        const double b = s.coeffs[2 * k];
        const double kk = static_cast<double>(k);
        const double c = std::cos(kk * theta), sn = std::sin(kk * theta);
        switch (derivative) {
            case 0: r += a * c + b * sn; break;
            case 1: r += kk * (-a * sn + b * c); break;
            default: r += -kk * kk * (a * c + b * sn); break;
        }
    }
    return r;
}

double periodic_trapezoid(const std::function<double(double)>& f, int n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f(kTwoPi * i / n);
    return sum * kTwoPi / n;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

Region::Region(std::variant<Disk, SmoothStar, Polygon> shape) : shape_(std::move(shape)) { finalize(); }

Region Region::disk(double R, Point2 center) {
    require(std::isfinite(R) && R > 0.0, ErrorKind::Domain, "disk radius must be positive");
    return Region(Disk{center, R});
}

Region Region::star(std::vector<double> coeffs, Point2 center) {
    require(!coeffs.empty() && coeffs.size() % 2 == 1, ErrorKind::Domain,
            "star profile needs coefficients [c0, a1, b1, ..., ak, bk]");
    for (double c : coeffs) require(std::isfinite(c), ErrorKind::Domain, "star coefficient not finite");
    return Region(SmoothStar{center, std::move(coeffs)});
}

Region Region::polygon(std::vector<Point2> vertices) {
    require(vertices.size() >= 3, ErrorKind::Domain, "polygon needs at least three vertices");
    return Region(Polygon{std::move(vertices)});
}

void Region::finalize() {
    if (const auto* d = std::get_if<Disk>(&shape_)) {
        area_ = std::numbers::pi * d->R * d->R;
        perimeter_ = kTwoPi * d->R;
        max_radius_ = min_radius_ = d->R;
        return;
    }
    if (const auto* s = std::get_if<SmoothStar>(&shape_)) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int i = 0; i < kProfileSamples; ++i) {
            const double r = star_radius(*s, kTwoPi * i / kProfileSamples, 0);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        require(lo > 0.0, ErrorKind::Domain, "star profile r(theta) must be positive everywhere");
        min_radius_ = lo;
        max_radius_ = hi;
        auto area_density = [&](double t) { return 0.5 * std::pow(star_radius(*s, t, 0), 2); };
        auto arc_density = [&](double t) { return std::hypot(star_radius(*s, t, 0), star_radius(*s, t, 1)); };
        area_ = periodic_trapezoid(area_density, 2048);
        perimeter_ = periodic_trapezoid(arc_density, 2048);
        const double area_check = periodic_trapezoid(area_density, 4096);
        const double perimeter_check = periodic_trapezoid(arc_density, 4096);
        require(std::abs(area_ - area_check) < 1e-10 && std::abs(perimeter_ - perimeter_check) < 1e-10,
                ErrorKind::Accuracy, "star profile not resolved by 2048-node quadrature");
        return;
    }
    const auto& p = std::get<Polygon>(shape_);
    BgPolygon poly;
    for (const Point2& v : p.vertices) bg::append(poly.outer(), BgPoint(v.x1, v.x2));
    std::string reason;
    require(bg::is_valid(poly, reason), ErrorKind::Domain, "polygon is not simple and counterclockwise: " + reason);
    double a = 0.0, per = 0.0;
    const std::size_t n = p.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& u = p.vertices[i];
        const Point2& v = p.vertices[(i + 1) % n];
        a += u.x1 * v.x2 - v.x1 * u.x2;
        per += std::hypot(v.x1 - u.x1, v.x2 - u.x2);
    }
    require(a > 0.0, ErrorKind::Domain, "polygon vertices must be counterclockwise");
    area_ = 0.5 * a;
    perimeter_ = per;
}

std::string Region::type_name() const {
    return is_disk() ? "disk" : (is_star() ? "star" : "polygon");
}

Point2 Region::center() const {
    if (const auto* d = std::get_if<Disk>(&shape_)) return d->center;
    if (const auto* s = std::get_if<SmoothStar>(&shape_)) return s->center;
    fail(ErrorKind::Capability, "polygon has no polar description");
}

double Region::radius(double theta) const {
    if (const auto* d = std::get_if<Disk>(&shape_)) return d->R;
    if (const auto* s = std::get_if<SmoothStar>(&shape_)) return star_radius(*s, theta, 0);
    fail(ErrorKind::Capability, "polygon has no polar description");
}

double Region::radius_d1(double theta) const {
    if (is_disk()) return 0.0;
    if (const auto* s = std::get_if<SmoothStar>(&shape_)) return star_radius(*s, theta, 1);
    fail(ErrorKind::Capability, "polygon has no polar description");
}

double Region::radius_d2(double theta) const {
    if (is_disk()) return 0.0;
    if (const auto* s = std::get_if<SmoothStar>(&shape_)) return star_radius(*s, theta, 2);
    fail(ErrorKind::Capability, "polygon has no polar description");
}

BoundaryPoint Region::boundary(double theta) const {
    require(is_smooth(), ErrorKind::Capability, "boundary accessors need a smooth region (disk or star)");
    const Point2 c = center();
    const double r = radius(theta), r1 = radius_d1(theta), r2 = radius_d2(theta);
    const double ct = std::cos(theta), st = std::sin(theta);
    BoundaryPoint b;
    b.point = {c.x1 + r * ct, c.x2 + r * st};
    b.tangent = {r1 * ct - r * st, r1 * st + r * ct};
    b.speed = std::hypot(b.tangent.x1, b.tangent.x2);
    b.inward_normal = {-b.tangent.x2 / b.speed, b.tangent.x1 / b.speed};
    b.curvature = (r * r + 2.0 * r1 * r1 - r * r2) / std::pow(r * r + r1 * r1, 1.5);
    return b;
}

double Region::curvature(double theta) const { return boundary(theta).curvature; }

bool Region::contains(const Point2& p) const {
    if (const auto* d = std::get_if<Disk>(&shape_)) {
        return landau::distance_squared(p, d->center) < d->R * d->R;
    }
    if (const auto* s = std::get_if<SmoothStar>(&shape_)) {
        const double dx = p.x1 - s->center.x1, dy = p.x2 - s->center.x2;
        return std::hypot(dx, dy) < star_radius(*s, std::atan2(dy, dx), 0);
    }
    const auto& poly = std::get<Polygon>(shape_);
    return bg::within(BgPoint(p.x1, p.x2), to_bg(poly));
}

void Region::bounding_box(Point2& lo, Point2& hi) const {
    if (is_polygon()) {
        const auto& v = std::get<Polygon>(shape_).vertices;
        lo = hi = v.front();
        for (const Point2& p : v) {
            lo = {std::min(lo.x1, p.x1), std::min(lo.x2, p.x2)};
            hi = {std::max(hi.x1, p.x1), std::max(hi.x2, p.x2)};
        }
        return;
    }
    const Point2 c = center();
    const double r = max_radius_ * (1.0 + 1e-6) + 1e-12;
    lo = {c.x1 - r, c.x2 - r};
    hi = {c.x1 + r, c.x2 + r};
}

Region Region::rotated(double angle) const {
    const double ca = std::cos(angle), sa = std::sin(angle);
    auto rot = [&](Point2 p) { return Point2{ca * p.x1 - sa * p.x2, sa * p.x1 + ca * p.x2}; };
    if (const auto* d = std::get_if<Disk>(&shape_)) return disk(d->R, rot(d->center));
    if (const auto* s = std::get_if<SmoothStar>(&shape_)) {
        std::vector<double> c = s->coeffs;
        for (std::size_t k = 1; 2 * k < c.size(); ++k) {
            const double a = s->coeffs[2 * k - 1], b = s->coeffs[2 * k];
            const double ck = std::cos(k * angle), sk = std::sin(k * angle);
            c[2 * k - 1] = a * ck - b * sk;
            c[2 * k] = a * sk + b * ck;
        }
        return star(std::move(c), rot(s->center));
    }
    std::vector<Point2> v = std::get<Polygon>(shape_).vertices;
    for (Point2& p : v) p = rot(p);
    return polygon(std::move(v));
}

Region Region::scaled(double factor) const {
    require(factor > 0.0, ErrorKind::Domain, "scale factor must be positive");
    auto sc = [&](Point2 p) { return Point2{factor * p.x1, factor * p.x2}; };
    if (const auto* d = std::get_if<Disk>(&shape_)) return disk(factor * d->R, sc(d->center));
    if (const auto* s = std::get_if<SmoothStar>(&shape_)) {
        std::vector<double> c = s->coeffs;
        for (double& x : c) x *= factor;
        return star(std::move(c), sc(s->center));
    }
    std::vector<Point2> v = std::get<Polygon>(shape_).vertices;
    for (Point2& p : v) p = sc(p);
    return polygon(std::move(v));
}

namespace {

struct Piecewise {
    double value = 0.0;
    double error = 0.0;
};

// Integral over [0, 2pi) of value(theta, branch(theta)), where branch is
// piecewise constant and value is smooth for a fixed branch. Switch points
// are bracketed on a uniform sample and refined by bisection.
Piecewise integrate_branches(const std::function<int(double)>& branch,
                             const std::function<double(double, int)>& value) {
    const int n = kProfileSamples;
    std::vector<int> tag(n + 1);
    for (int i = 0; i <= n; ++i) tag[i] = branch(kTwoPi * i / n);
    std::vector<double> cuts = {0.0};
    for (int i = 0; i < n; ++i) {
        if (tag[i] == tag[i + 1]) continue;
        double a = kTwoPi * i / n, b = kTwoPi * (i + 1) / n;
        const int left = tag[i];
        for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
            const double m = 0.5 * (a + b);
            (branch(m) == left ? a : b) = m;
        }
        cuts.push_back(0.5 * (a + b));
    }
    cuts.push_back(kTwoPi);

    Piecewise out;
    const double panel = kTwoPi / 128.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double a = cuts[p], b = cuts[p + 1];
        if (b - a <= 0.0) continue;
        const int tg = branch(0.5 * (a + b));
        auto f = [&](double t) { return value(t, tg); };
        const auto fine = specfun::composite_gauss_legendre(a, b, panel, 24);
        const auto coarse = specfun::composite_gauss_legendre(a, b, panel, 12);
        const double vf = fine.integrate(f);
        const double vc = coarse.integrate(f);
        out.value += vf;
        out.error += std::abs(vf - vc);
    }
    return out;
}

bool degenerate_family(const std::vector<Point2>& vectors) {
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i + 1; j < vectors.size(); ++j)
            if (std::hypot(vectors[i].x1 - vectors[j].x1, vectors[i].x2 - vectors[j].x2) < 1e-9) return true;
    return false;
}

double dot(const Point2& a, const Point2& b) { return a.x1 * b.x1 + a.x2 * b.x2; }

// Radius along the ray from the center at angle theta where the boundary of
// region + shift is crossed; NaN when the bracket fails.
double translate_radius(const Region& region, double theta, const Point2& shift) {
    const double ct = std::cos(theta), st = std::sin(theta);
    auto g = [&](double rho) {
        const double px = rho * ct - shift.x1, py = rho * st - shift.x2;
        return std::hypot(px, py) - region.radius(std::atan2(py, px));
    };
    const double lo = 0.0;
    const double hi = region.max_radius() * 1.01 + std::hypot(shift.x1, shift.x2) + 1e-12;
    const double glo = g(lo), ghi = g(hi);
    if (!(glo < 0.0 && ghi > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                                     boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
}

// The polar method needs every translate to be star-shaped about the center.
bool polar_admissible(const Region& region, const std::vector<Point2>& shifts) {
    for (int i = 0; i < kProfileSamples; ++i) {
        const BoundaryPoint b = region.boundary(kTwoPi * i / kProfileSamples);
        const Point2 rel = {b.point.x1 - region.center().x1, b.point.x2 - region.center().x2};
        for (const Point2& w : shifts) {
            // Outward normal is -inward_normal; need <x + w - c, n_out> > 0.
            const double support = -dot({rel.x1 + w.x1, rel.x2 + w.x2}, b.inward_normal);
            if (support <= 1e-3 * region.min_radius()) return false;
        }
    }
    return true;
}

IntersectionArea polar_area(const Region& region, const std::vector<Point2>& shifts) {
    const int count = static_cast<int>(shifts.size());
    auto candidates = [&](double theta, std::vector<double>& rho) {
        rho.resize(count);
        for (int q = 0; q < count; ++q) rho[q] = translate_radius(region, theta, shifts[q]);
    };
    std::vector<double> rho;
    auto branch = [&](double theta) {
        candidates(theta, rho);
        double best = region.radius(theta);
        int tag = -1;
        for (int q = 0; q < count; ++q) {
            if (std::isnan(rho[q])) fail(ErrorKind::Numeric, "translate boundary not bracketed");
            if (rho[q] < best) {
                best = rho[q];
                tag = q;
            }
        }
        return tag;
    };
    auto removed_density = [&](double theta, int tag) {
        if (tag < 0) return 0.0;
        const double r = region.radius(theta);
        const double m = translate_radius(region, theta, shifts[tag]);
        return 0.5 * (r - m) * (r + m);
    };
    const Piecewise p = integrate_branches(branch, removed_density);
    IntersectionArea out;
    out.removed = std::max(p.value, 0.0);
    out.intersection = region.area() - out.removed;
    out.error_estimate = p.error + 1e-14 * region.area();
    out.method = "polar";
    return out;
}

}  // namespace

IntersectionArea intersect_translates_area_mc(const Region& region, const TranslateFamily& family,
                                              std::uint64_t seed, std::size_t samples, unsigned threads) {
    require(samples > 0, ErrorKind::Domain, "Monte Carlo sample count must be positive");
    Point2 lo, hi;
    region.bounding_box(lo, hi);
    const double box = (hi.x1 - lo.x1) * (hi.x2 - lo.x2);
    constexpr std::size_t shards = 64;
    std::vector<std::size_t> inside(shards, 0), kept(shards, 0);
    parallel_for(shards, threads, [&](std::size_t s) {
        const std::size_t n = samples / shards + (s < samples % shards ? 1 : 0);
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(s)));
        std::uniform_real_distribution<double> ux(lo.x1, hi.x1), uy(lo.x2, hi.x2);
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 p{ux(rng), uy(rng)};
            if (!region.contains(p)) continue;
            ++inside[s];
            bool all = true;
            for (const Point2& v : family.vectors) {
                if (!region.contains({p.x1 - family.eps * v.x1, p.x2 - family.eps * v.x2})) {
                    all = false;
                    break;
                }
            }
            if (all) ++kept[s];
        }
    });
    std::size_t in = 0, kp = 0;
    for (std::size_t s = 0; s < shards; ++s) {
        in += inside[s];
        kp += kept[s];
    }
    const double n = static_cast<double>(samples);
    const double frac_removed = static_cast<double>(in - kp) / n;
    IntersectionArea out;
    out.intersection = box * static_cast<double>(kp) / n;
    out.removed = box * frac_removed;
    out.error_estimate = box * std::sqrt(frac_removed * (1.0 - frac_removed) / n);
    out.method = "monte-carlo";
    return out;
}

IntersectionArea intersect_translates_area(const Region& region, const TranslateFamily& family,
                                           const IntersectionOptions& options) {
    require(!family.vectors.empty(), ErrorKind::Domain, "translate family needs at least one vector");
    require(family.eps >= 0.0 && std::isfinite(family.eps), ErrorKind::Domain, "eps must be non-negative");
    IntersectionArea out;
    if (family.eps == 0.0) {
        out.intersection = region.area();
        out.method = "identity";
        return out;
    }

    if (const auto* poly = std::get_if<Polygon>(&region.shape())) {
        BgMulti current;
        current.push_back(to_bg(*poly));
        for (const Point2& v : family.vectors) {
            BgMulti next;
            bg::intersection(current, to_bg(*poly, {family.eps * v.x1, family.eps * v.x2}), next);
            current = std::move(next);
        }
        out.intersection = bg::area(current);
        out.removed = region.area() - out.intersection;
        out.error_estimate = 1e-14 * region.area();
        out.method = "polygon-clip";
        return out;
    }

    if (const auto* d = std::get_if<Disk>(&region.shape()); d && family.vectors.size() == 1) {
        const Point2& v = family.vectors.front();
        const double dist = family.eps * std::hypot(v.x1, v.x2);
        const double R = d->R;
        if (dist >= 2.0 * R) {
            out.removed = region.area();
        } else {
            out.removed = 2.0 * R * R * std::asin(0.5 * dist / R) + 0.5 * dist * std::sqrt(4.0 * R * R - dist * dist);
        }
        out.intersection = region.area() - out.removed;
        out.error_estimate = 1e-15 * region.area();
        out.method = "lens";
        return out;
    }

    std::vector<Point2> shifts;
    for (const Point2& v : family.vectors) shifts.push_back({family.eps * v.x1, family.eps * v.x2});
    if (polar_admissible(region, shifts)) {
        IntersectionArea p = polar_area(region, shifts);
        if (p.error_estimate <= options.tol) return p;
        if (!options.allow_monte_carlo)
            fail(ErrorKind::Accuracy, "intersection area error " + std::to_string(p.error_estimate) +
                                          " above tolerance " + std::to_string(options.tol));
    } else if (!options.allow_monte_carlo) {
        fail(ErrorKind::Accuracy, "translates too large for the polar method and Monte Carlo is disabled");
    }
    return intersect_translates_area_mc(region, family, options.seed, options.samples, options.threads);
}

RoccaforteTerm roccaforte_first_order(const Region& region, const std::vector<Point2>& vectors) {
    require(!vectors.empty(), ErrorKind::Domain, "roccaforte: need at least one vector");
    RoccaforteTerm out;
    out.degenerate = degenerate_family(vectors);
    if (const auto* poly = std::get_if<Polygon>(&region.shape())) {
        const std::size_t n = poly->vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& a = poly->vertices[i];
            const Point2& b = poly->vertices[(i + 1) % n];
            const double len = std::hypot(b.x1 - a.x1, b.x2 - a.x2);
            const Point2 normal{-(b.x2 - a.x2) / len, (b.x1 - a.x1) / len};
            double best = 0.0;
            for (const Point2& v : vectors) best = std::max(best, dot(v, normal));
            out.value += len * best;
        }
        return out;
    }
    auto branch = [&](double theta) {
        const BoundaryPoint b = region.boundary(theta);
        double best = 0.0;
        int tag = -1;
        for (std::size_t q = 0; q < vectors.size(); ++q) {
            const double s = dot(vectors[q], b.inward_normal);
            if (s > best) {
                best = s;
                tag = static_cast<int>(q);
            }
        }
        return tag;
    };
    auto density = [&](double theta, int tag) {
        if (tag < 0) return 0.0;
        const BoundaryPoint b = region.boundary(theta);
        return dot(vectors[tag], b.inward_normal) * b.speed;
    };
    const Piecewise p = integrate_branches(branch, density);
    out.value = p.value;
    out.error_estimate = p.error;
    return out;
}

RoccaforteTerm roccaforte_second_order(const Region& region, const std::vector<Point2>& vectors) {
    require(!vectors.empty(), ErrorKind::Domain, "roccaforte: need at least one vector");
    require(region.is_smooth(), ErrorKind::Capability, "second-order term needs a smooth region");
    RoccaforteTerm out;
    out.degenerate = degenerate_family(vectors);
    auto branch = [&](double theta) {
        const BoundaryPoint b = region.boundary(theta);
        double best = 0.0;
        int tag = -1;
        for (std::size_t q = 0; q < vectors.size(); ++q) {
            const double s = dot(vectors[q], b.inward_normal);
            if (s > best) {
                best = s;
                tag = static_cast<int>(q);
            }
        }
        return tag;
    };
    auto density = [&](double theta, int tag) {
        if (tag < 0) return 0.0;
        const BoundaryPoint b = region.boundary(theta);
        const double s = dot(vectors[tag], b.inward_normal);
        return 0.5 * b.curvature * (dot(vectors[tag], vectors[tag]) - 2.0 * s * s) * b.speed;
    };
    const Piecewise p = integrate_branches(branch, density);
    out.value = p.value;
    out.error_estimate = p.error;
    return out;
}

}  // namespace lle::geometry
