#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lle/landau_kernel.hpp"

namespace lle::geometry {

using landau::Point2;

struct Disk {
    Point2 center;
    double R = 1.0;
};

// r(theta) = c0 + sum_k (a_k cos k theta + b_k sin k theta) around `center`,
// stored flat as [c0, a1, b1, a2, b2, ...].
struct SmoothStar {
    Point2 center;
    std::vector<double> coeffs;
};

// Counterclockwise, simple, without the closing duplicate vertex.
struct Polygon {
    std::vector<Point2> vertices;
};

struct BoundaryPoint {
    Point2 point;
    Point2 tangent;       // derivative with respect to theta
    Point2 inward_normal; // unit
    double speed = 0.0;   // |tangent|
    double curvature = 0.0;
};

class Region {
public:
    Region() : Region(Disk{}) {}

    static Region disk(double R, Point2 center = {});
    static Region star(std::vector<double> coeffs, Point2 center = {});
    static Region polygon(std::vector<Point2> vertices);

    const std::variant<Disk, SmoothStar, Polygon>& shape() const { return shape_; }
    bool is_disk() const { return std::holds_alternative<Disk>(shape_); }
    bool is_star() const { return std::holds_alternative<SmoothStar>(shape_); }
    bool is_polygon() const { return std::holds_alternative<Polygon>(shape_); }
    bool is_smooth() const { return !is_polygon(); }
    std::string type_name() const;

    double area() const { return area_; }
    double perimeter() const { return perimeter_; }

    // Smooth variants: polar description around center().
    Point2 center() const;
    double radius(double theta) const;
    double radius_d1(double theta) const;
    double radius_d2(double theta) const;
    double max_radius() const { return max_radius_; }
    double min_radius() const { return min_radius_; }

    // Boundary point at polar angle theta (smooth variants only).
    BoundaryPoint boundary(double theta) const;
    double curvature(double theta) const;

    bool contains(const Point2& p) const;
    void bounding_box(Point2& lo, Point2& hi) const;

    Region rotated(double angle) const;
    Region scaled(double factor) const;

private:
    explicit Region(std::variant<Disk, SmoothStar, Polygon> shape);
    void finalize();

    std::variant<Disk, SmoothStar, Polygon> shape_;
    double area_ = 0.0;
    double perimeter_ = 0.0;
    double max_radius_ = 0.0;
    double min_radius_ = 0.0;
};

struct TranslateFamily {
    std::vector<Point2> vectors;
    double eps = 0.0;
};

struct IntersectionArea {
    double intersection = 0.0;  // |Lambda_eps|
    double removed = 0.0;       // |Lambda \ Lambda_eps|
    double error_estimate = 0.0;
    std::string method;         // lens, polygon-clip, polar, monte-carlo
};

struct IntersectionOptions {
    double tol = 1e-8;
    bool allow_monte_carlo = true;
    std::uint64_t seed = 1;
    std::size_t samples = 4'000'000;
    unsigned threads = 1;
};

IntersectionArea intersect_translates_area(const Region& region, const TranslateFamily& family,
                                           const IntersectionOptions& options = {});

// Monte Carlo estimate with a fixed shard layout, so the result depends only
// on (seed, samples).
IntersectionArea intersect_translates_area_mc(const Region& region, const TranslateFamily& family,
                                              std::uint64_t seed, std::size_t samples, unsigned threads = 1);

struct RoccaforteTerm {
    double value = 0.0;
    double error_estimate = 0.0;
    bool degenerate = false;  // two vectors closer than 1e-9
};

RoccaforteTerm roccaforte_first_order(const Region& region, const std::vector<Point2>& vectors);
RoccaforteTerm roccaforte_second_order(const Region& region, const std::vector<Point2>& vectors);

}  // namespace lle::geometry
