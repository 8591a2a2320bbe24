#include "lle/region_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "lle/error.hpp"
#include "lle/linalg.hpp"
#include "lle/parallel.hpp"
#include "lle/quadrature.hpp"

namespace lle::region {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kClampTol = 1e-6;
constexpr double kClampAbort = 1e-4;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void require_smooth(const geometry::Region& region, const char* who) {
    require(region.is_smooth(), ErrorKind::Capability,
            std::string(who) + ": 2-D Nystrom needs a smooth star-shaped region, got " + region.type_name());
}

// |P(x, y)|^2 is negligible once B |x - y|^2 / 4 exceeds this.
double pair_cutoff(const MagneticSetup& setup, const LevelSelector& selector) {
    const double quarter = 45.0 + 3.0 * selector.top_level();
    return 4.0 * quarter / setup.B;
}

}  // namespace

Resolution resolve(const MagneticSetup& setup, const geometry::Region& region, double L,
                   const Resolution& resolution) {
    Resolution out = resolution;
    const int scale = static_cast<int>(std::ceil(std::sqrt(setup.B) * L * region.max_radius()));
    if (out.radial <= 0) out.radial = 12 + 3 * scale;
    if (out.angular <= 0) out.angular = 2 * out.radial;
    return out;
}

PolarRule polar_rule(const MagneticSetup& setup, const geometry::Region& region, double L,
                     const Resolution& resolution) {
    require_smooth(region, "polar_rule");
    require(L > 0.0 && std::isfinite(L), ErrorKind::Domain, "scale L must be positive");
    const Resolution res = resolve(setup, region, L, resolution);
    const auto radial = specfun::gauss_legendre(res.radial, 0.0, 1.0);
    const Point2 c = region.center();
    PolarRule rule;
    rule.radial = res.radial;
    rule.angular = res.angular;
    rule.points.reserve(static_cast<std::size_t>(res.radial) * res.angular);
    rule.weights.reserve(rule.points.capacity());
    const double dtheta = kTwoPi / res.angular;
    for (int j = 0; j < res.angular; ++j) {
        const double theta = dtheta * j;
        const double rad = L * region.radius(theta);
        const double ct = std::cos(theta), st = std::sin(theta);
        for (int i = 0; i < res.radial; ++i) {
            const double rho = radial.nodes[i];
            rule.points.push_back({L * c.x1 + rho * rad * ct, L * c.x2 + rho * rad * st});
            rule.weights.push_back(radial.weights[i] * dtheta * rho * rad * rad);
        }
    }
    return rule;
}

LocalSpectrum region_spectrum(const MagneticSetup& setup, const LevelSelector& selector,
                              const geometry::Region& region, double L, const RegionOptions& options) {
    const PolarRule rule = polar_rule(setup, region, L, options.resolution);
    const std::size_t n = rule.points.size();
    if (n > kMaxNystromDimension)
        fail(ErrorKind::Capability, "Nystrom dimension " + std::to_string(n) + " exceeds the guard of " +
                                        std::to_string(kMaxNystromDimension));
    std::vector<double> sw(n);
    for (std::size_t i = 0; i < n; ++i) sw[i] = std::sqrt(rule.weights[i]);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double cutoff = pair_cutoff(setup, selector);
    parallel_for(n, options.threads, [&](std::size_t j) {
        for (std::size_t i = j; i < n; ++i) {
            if (landau::distance_squared(rule.points[i], rule.points[j]) > cutoff) continue;
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                sw[i] * landau::kernel(setup, selector, rule.points[i], rule.points[j]) * sw[j];
        }
    });
    const std::vector<double> ev = linalg::hermitian_eigenvalues(std::move(m));

    LocalSpectrum spec;
    spec.B = setup.B;
    spec.selector = selector;
    spec.region = region;
    spec.L = L;
    spec.solver = "nystrom2d";
    spec.cutoff = options.cutoff;
    for (double mu : ev) {
        if (mu < -kClampAbort || mu > 1.0 + kClampAbort)
            fail(ErrorKind::Consistency, "Nystrom eigenvalue " + std::to_string(mu) + " outside [0, 1]");
        const double c = std::clamp(mu, 0.0, 1.0);
        if (c >= options.cutoff && c > 0.0) {
            spec.eigenvalues.push_back(c);
            spec.complements.push_back(1.0 - c);
        } else {
            ++spec.dropped_count;
            spec.dropped_max = std::max(spec.dropped_max, c);
        }
    }
    spec.settings = {{"radial_nodes", rule.radial},
                     {"angular_nodes", rule.angular},
                     {"dimension", static_cast<double>(n)},
                     {"clamp_tolerance", kClampTol},
                     {"min_raw_eigenvalue", ev.empty() ? 0.0 : ev.front()},
                     {"max_raw_eigenvalue", ev.empty() ? 0.0 : ev.back()}};
    return spec;
}

double region_trace_moment2(const MagneticSetup& setup, const LevelSelector& selector,
                            const geometry::Region& region, double L, const RegionOptions& options) {
    const PolarRule rule = polar_rule(setup, region, L, options.resolution);
    const std::size_t n = rule.points.size();
    const double cutoff = pair_cutoff(setup, selector);

    // Cell list with cells of side sqrt(cutoff).
    const double side = std::sqrt(cutoff);
    double xmin = rule.points[0].x1, ymin = rule.points[0].x2, xmax = xmin, ymax = ymin;
    for (const auto& p : rule.points) {
        xmin = std::min(xmin, p.x1);
        xmax = std::max(xmax, p.x1);
        ymin = std::min(ymin, p.x2);
        ymax = std::max(ymax, p.x2);
    }
    const int nx = static_cast<int>((xmax - xmin) / side) + 1, ny = static_cast<int>((ymax - ymin) / side) + 1;
    std::vector<std::vector<std::size_t>> cells(static_cast<std::size_t>(nx) * ny);
    auto cell_of = [&](const Point2& p) {
        const int cx = std::min(nx - 1, static_cast<int>((p.x1 - xmin) / side));
        const int cy = std::min(ny - 1, static_cast<int>((p.x2 - ymin) / side));
        return std::pair{cx, cy};
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto [cx, cy] = cell_of(rule.points[i]);
        cells[static_cast<std::size_t>(cy) * nx + cx].push_back(i);
    }

    std::vector<double> rows(n, 0.0);
    parallel_for(n, options.threads, [&](std::size_t i) {
        const auto [cx, cy] = cell_of(rule.points[i]);
        double acc = 0.0;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int ux = cx + dx, uy = cy + dy;
                if (ux < 0 || uy < 0 || ux >= nx || uy >= ny) continue;
                for (std::size_t j : cells[static_cast<std::size_t>(uy) * nx + ux]) {
                    if (landau::distance_squared(rule.points[i], rule.points[j]) > cutoff) continue;
                    acc += rule.weights[j] * std::norm(landau::kernel(setup, selector, rule.points[i], rule.points[j]));
                }
            }
        }
        rows[i] = rule.weights[i] * acc;
    });
    double sum = 0.0;
    for (double r : rows) sum += r;
    return sum;
}

std::pair<double, double> cross_hilbert_schmidt_mc(const MagneticSetup& setup, const LevelSelector& selector,
                                                   const geometry::Region& region, double L, std::uint64_t seed,
                                                   std::size_t samples, unsigned threads) {
    require(L > 0.0 && std::isfinite(L), ErrorKind::Domain, "scale L must be positive");
    require(samples >= 64, ErrorKind::Domain, "cross_hilbert_schmidt_mc: need at least 64 samples");
    const geometry::Region scaled = region.scaled(L);
    Point2 lo, hi;
    scaled.bounding_box(lo, hi);
    const double area = scaled.area();
    // Gaussian proposal for the displacement, wider than |P|^2.
    const double sigma2 = 2.0 * (selector.top_level() + 1.0) / setup.B;
    const double sigma = std::sqrt(sigma2);
    const Point2 origin{};

    constexpr std::size_t shards = 64;
    std::vector<double> sum(shards, 0.0), sum2(shards, 0.0);
    parallel_for(shards, threads, [&](std::size_t s) {
        const std::size_t count = samples / shards + (s < samples % shards ? 1 : 0);
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(s)));
        std::uniform_real_distribution<double> ux(lo.x1, hi.x1), uy(lo.x2, hi.x2);
        std::normal_distribution<double> gauss(0.0, sigma);
        for (std::size_t k = 0; k < count; ++k) {
            Point2 x;
            do {
                x = {ux(rng), uy(rng)};
            } while (!scaled.contains(x));
            const Point2 d{gauss(rng), gauss(rng)};
            double v = 0.0;
            if (!scaled.contains({x.x1 + d.x1, x.x2 + d.x2})) {
                const double r2 = d.x1 * d.x1 + d.x2 * d.x2;
                const double density = std::exp(-0.5 * r2 / sigma2) / (kTwoPi * sigma2);
                v = area * std::norm(landau::kernel(setup, selector, origin, d)) / density;
            }
            sum[s] += v;
            sum2[s] += v * v;
        }
    });
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t s = 0; s < shards; ++s) {
        s1 += sum[s];
        s2 += sum2[s];
    }
    const double mean = s1 / samples;
    const double var = std::max(0.0, s2 / samples - mean * mean);
    return {mean, std::sqrt(var / samples)};
}

void ScalingSeries::add(double L, double value) { points.emplace_back(L, value); }

void ScalingSeries::validate() const {
    require(points.size() >= 2, ErrorKind::Domain, "scaling series needs at least two points");
    for (std::size_t i = 1; i < points.size(); ++i)
        require(points[i].first > points[i - 1].first, ErrorKind::Domain, "scaling series L must increase strictly");
}

AsymptoticFit scaling_fit(const ScalingSeries& series, FitModel model) {
    series.validate();
    const std::size_t n = series.points.size();
    const int cols = model == FitModel::Linear ? 2 : 3;
    require(n >= static_cast<std::size_t>(model == FitModel::Linear ? 3 : 4), ErrorKind::Fit,
            "scaling_fit: too few points for the model");
    // Columns scaled by the largest L for conditioning; coefficients are rescaled after.
    const double scale = series.points.back().first;
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), cols);
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double u = series.points[i].first / scale;
        int c = 0;
        if (model == FitModel::Quadratic) a(i, c++) = u * u;
        a(i, c++) = u;
        a(i, c) = 1.0;
        y(i) = series.points[i].second;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    AsymptoticFit fit;
    fit.model = model;
    fit.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!(fit.condition <= 1e10))
        fail(ErrorKind::Fit, "scaling_fit: ill-conditioned window, condition number " + std::to_string(fit.condition));
    const Eigen::VectorXd x = svd.solve(y);
    int c = 0;
    if (model == FitModel::Quadratic) fit.c2 = x(c++) / (scale * scale);
    fit.c1 = x(c++) / scale;
    fit.c0 = x(c);
    const Eigen::VectorXd r = y - a * x;
    fit.residuals.assign(r.data(), r.data() + r.size());
    fit.residual_norm = r.norm();
    fit.window = {series.points.front().first, series.points.back().first};
    for (std::size_t i = 1; i < n; ++i)
        fit.slopes.push_back((series.points[i].second - series.points[i - 1].second) /
                             (series.points[i].first - series.points[i - 1].first));
    return fit;
}

LeadingTerms leading_terms(const MagneticSetup& setup, const LevelSelector& selector,
                           const geometry::Region& region, const coeffs::SpectralFunction& f) {
    LeadingTerms t;
    t.area = setup.B * region.area() * selector.level_count() * f.value_at_one() / kTwoPi;
    const auto m = selector.kind == LevelSelector::Kind::Single ? coeffs::coeff_M_ell(selector.index, f)
                                                                 : coeffs::coeff_M_le_n(selector.index, f);
    t.boundary = std::sqrt(setup.B) * region.perimeter() * m.value;
    return t;
}

LocalSpectrum spectrum_for(const MagneticSetup& setup, const LevelSelector& selector, const geometry::Region& region,
                           double L, unsigned threads) {
    if (const auto* d = std::get_if<geometry::Disk>(&region.shape()); d && d->center.x1 == 0.0 && d->center.x2 == 0.0) {
        disk::DiskOptions opts;
        opts.threads = threads;
        return disk::disk_spectrum(setup, selector, region, L, opts);
    }
    RegionOptions opts;
    opts.threads = threads;
    return region_spectrum(setup, selector, region, L, opts);
}

ScalingSeries second_order_probe(const MagneticSetup& setup, const LevelSelector& selector,
                                 const geometry::Region& region, const coeffs::SpectralFunction& f,
                                 const std::vector<double>& Ls, unsigned threads) {
    require(f.is_polynomial(), ErrorKind::Domain, "second_order_probe needs a polynomial spectral function");
    require_smooth(region, "second_order_probe");
    const LeadingTerms terms = leading_terms(setup, selector, region, f);
    ScalingSeries series;
    series.metadata = {{"f", f.name()},
                       {"selector", selector.to_string()},
                       {"B", std::to_string(setup.B)},
                       {"region", region.type_name()},
                       {"quantity", "tr f - L^2 area - L boundary"}};
    for (double L : Ls) {
        const LocalSpectrum spec = spectrum_for(setup, selector, region, L, threads);
        const double tr = disk::entropy_from_spectrum(spec, f).value;
        series.add(L, tr - L * L * terms.area - L * terms.boundary);
    }
    series.validate();
    return series;
}

}  // namespace lle::region
