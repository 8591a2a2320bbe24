#include "lle/disk_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "lle/error.hpp"
#include "lle/linalg.hpp"
#include "lle/parallel.hpp"
#include "lle/quadrature.hpp"
#include "lle/specfun.hpp"

namespace lle::disk {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kClampTol = 1e-9;
constexpr double kRankThreshold = 1e-8;

// Levels l contributing to sector k, as (level, radial index) pairs with the
// radial index |k| and shifted level l' such that the radial function is
// phi_{l', |k|}.
struct SectorLevel {
    int level;
    int shifted;
};

std::vector<SectorLevel> sector_levels(const LevelSelector& selector, int k) {
    std::vector<SectorLevel> out;
    const int lo = selector.kind == LevelSelector::Kind::Single ? selector.index : 0;
    for (int l = lo; l <= selector.index; ++l) {
        const int shifted = k >= 0 ? l : l + k;
        if (shifted >= 0) out.push_back({l, shifted});
    }
    return out;
}

// phi_{l,a}(t) = sqrt(l!/(l+a)!) t^{a/2} e^{-t/2} L_l^{(a)}(t); orthonormal in l on (0, inf) with dt.
double radial_fn(int l, int a, double t) {
    if (t <= 0.0) return (a == 0) ? specfun::laguerre(l, 0, 0.0) : 0.0;
    const double log_mag = 0.5 * a * std::log(t) - 0.5 * t + 0.5 * (std::lgamma(l + 1.0) - std::lgamma(l + a + 1.0));
    return std::exp(log_mag) * specfun::laguerre(l, a, t);
}

}  // namespace

double LocalSpectrum::trace() const {
    double sum = 0.0;
    for (double mu : eigenvalues) sum += mu;
    return sum;
}

int sector_trapezoid_nodes(const MagneticSetup& setup, const LevelSelector& selector, int k, double r, double s) {
    const double x = 0.5 * setup.B * r * s;
    const double need = 2.0 * (std::abs(k) + x + 12.0 * std::sqrt(x + 1.0) + selector.index + 20.0);
    int n = 512;
    while (n < need) n *= 2;
    return n;
}

double radial_sector_kernel(const MagneticSetup& setup, const LevelSelector& selector, int k, double r, double s) {
    require(r >= 0.0 && s >= 0.0, ErrorKind::Domain, "radial_sector_kernel: radii must be non-negative");
    const int n = sector_trapezoid_nodes(setup, selector, k, r, s);
    const landau::Point2 x{r, 0.0};
    std::complex<double> acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double phi = kTwoPi * j / n;
        const landau::Point2 y{s * std::cos(phi), s * std::sin(phi)};
        acc += landau::kernel(setup, selector, x, y) * std::polar(1.0, -static_cast<double>(k) * phi);
    }
    acc /= static_cast<double>(n);
    const double scale = std::max(std::abs(acc.real()), setup.B / kTwoPi * 1e-3);
    if (std::abs(acc.imag()) > 1e-9 * std::max(1.0, scale / (setup.B / kTwoPi)) * (setup.B / kTwoPi))
        fail(ErrorKind::Consistency, "radial_sector_kernel: imaginary residue " + std::to_string(acc.imag()));
    return acc.real();
}

double radial_sector_kernel_closed(const MagneticSetup& setup, const LevelSelector& selector, int k, double r,
                                   double s) {
    const double tr = 0.5 * setup.B * r * r, ts = 0.5 * setup.B * s * s;
    double sum = 0.0;
    for (const SectorLevel& sl : sector_levels(selector, k))
        sum += radial_fn(sl.shifted, std::abs(k), tr) * radial_fn(sl.shifted, std::abs(k), ts);
    return setup.B / kTwoPi * sum;
}

std::pair<int, int> sector_window(const MagneticSetup& setup, const LevelSelector& selector, double R_total) {
    const double t = 0.5 * setup.B * R_total * R_total;
    const int lo = -selector.index;
    const int hi = static_cast<int>(std::ceil(t + 12.0 * std::sqrt(t + 1.0) + selector.index + 20.0));
    return {lo, hi};
}

namespace {

std::vector<double> ascending(const Eigen::MatrixXd& m) {
    if (m.rows() == 1) return {m(0, 0)};
    const auto eig = linalg::jacobi_eigen(m);
    return {eig.values.data(), eig.values.data() + eig.values.size()};
}

// Gram matrices of the sector's radial functions over [0, T] and [T, inf).
void sector_grams(const std::vector<SectorLevel>& levels, int a, double T, Eigen::MatrixXd& inner,
                  Eigen::MatrixXd& outer) {
    const int d = static_cast<int>(levels.size());
    inner = Eigen::MatrixXd::Zero(d, d);
    outer = Eigen::MatrixXd::Zero(d, d);
    int top = 0;
    for (const SectorLevel& sl : levels) top = std::max(top, sl.shifted);
    const double spread = 14.0 * std::sqrt(a + top + 1.0) + 30.0;
    const double lo = std::max(0.0, a - spread);
    const double hi = a + 2.0 * top + spread;
    const double panel = 0.5 * std::max(1.0, std::sqrt(a + 1.0));
    std::vector<double> vals(d);
    auto accumulate = [&](double from, double to, Eigen::MatrixXd& target) {
        if (to <= from) return;
        const auto rule = specfun::composite_gauss_legendre(from, to, panel, 16);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            for (int p = 0; p < d; ++p) vals[p] = radial_fn(levels[p].shifted, a, rule.nodes[i]);
            for (int p = 0; p < d; ++p)
                for (int q = 0; q < d; ++q) target(p, q) += rule.weights[i] * vals[p] * vals[q];
        }
    };
    accumulate(lo, std::min(T, hi), inner);
    accumulate(std::max(T, lo), hi, outer);
}

}  // namespace

SectorSpectrum sector_spectrum(const MagneticSetup& setup, const LevelSelector& selector, int k, double R_total) {
    require(R_total > 0.0, ErrorKind::Domain, "sector_spectrum: radius must be positive");
    SectorSpectrum out;
    out.k = k;
    const std::vector<SectorLevel> levels = sector_levels(selector, k);
    if (levels.empty()) return out;
    const double T = 0.5 * setup.B * R_total * R_total;
    Eigen::MatrixXd inner, outer;
    sector_grams(levels, std::abs(k), T, inner, outer);
    const std::vector<double> mu = ascending(inner);
    const std::vector<double> nu = ascending(outer);
    const std::size_t d = mu.size();
    for (std::size_t i = 0; i < d; ++i) {
        const double a = mu[i], b = nu[d - 1 - i];
        if (a < -kClampTol || a > 1.0 + kClampTol || b < -kClampTol || b > 1.0 + kClampTol)
            fail(ErrorKind::Consistency, "sector " + std::to_string(k) + " eigenvalue " + std::to_string(a) +
                                             " outside [0, 1]");
        if (std::abs(a + b - 1.0) > 1e-10)
            fail(ErrorKind::Consistency, "sector " + std::to_string(k) + ": inner and outer Gram spectra do not add to 1");
        out.eigenvalues.push_back(std::clamp(a, 0.0, 1.0));
        out.complements.push_back(std::clamp(b, 0.0, 1.0));
    }
    return out;
}

namespace {

SectorSpectrum nystrom_sector(const MagneticSetup& setup, const LevelSelector& selector, int k, double R_total,
                              const DiskOptions& options) {
    const int nodes = options.radial_nodes > 0
                          ? options.radial_nodes
                          : 24 + 6 * static_cast<int>(std::ceil(std::sqrt(setup.B) * R_total));
    const auto rule = specfun::gauss_legendre(nodes, 0.0, R_total);
    Eigen::MatrixXd m(nodes, nodes);
    for (int i = 0; i < nodes; ++i) {
        for (int j = i; j < nodes; ++j) {
            const double r = rule.nodes[i], s = rule.nodes[j];
            const double kern = options.trapezoid_kernel ? radial_sector_kernel(setup, selector, k, r, s)
                                                         : radial_sector_kernel_closed(setup, selector, k, r, s);
            m(i, j) = m(j, i) = std::sqrt(rule.weights[i] * r * rule.weights[j] * s) * kTwoPi * kern;
        }
    }
    std::vector<double> ev = linalg::symmetric_eigenvalues(m);
    SectorSpectrum out;
    out.k = k;
    int above = 0;
    for (double v : ev) {
        if (v < -kClampTol || v > 1.0 + kClampTol)
            fail(ErrorKind::Consistency, "Nystrom sector " + std::to_string(k) + " eigenvalue " + std::to_string(v) +
                                             " outside [0, 1]");
        if (v > kRankThreshold) ++above;
        const double c = std::clamp(v, 0.0, 1.0);
        out.eigenvalues.push_back(c);
        out.complements.push_back(1.0 - c);
    }
    const int rank = static_cast<int>(sector_levels(selector, k).size());
    if (above > rank)
        fail(ErrorKind::Consistency, "Nystrom sector " + std::to_string(k) + " has " + std::to_string(above) +
                                         " eigenvalues above 1e-8, more than its rank " + std::to_string(rank));
    return out;
}

}  // namespace

LocalSpectrum disk_spectrum(const MagneticSetup& setup, const LevelSelector& selector, double R_total,
                            const DiskOptions& options) {
    return disk_spectrum(setup, selector, geometry::Region::disk(1.0), R_total, options);
}

LocalSpectrum disk_spectrum(const MagneticSetup& setup, const LevelSelector& selector,
                            const geometry::Region& region, double L, const DiskOptions& options) {
    const auto* d = std::get_if<geometry::Disk>(&region.shape());
    require(d != nullptr, ErrorKind::Capability, "disk solver needs a disk region");
    require(d->center.x1 == 0.0 && d->center.x2 == 0.0, ErrorKind::Capability,
            "disk solver needs a disk centered at the origin");
    require(L > 0.0 && std::isfinite(L), ErrorKind::Domain, "scale L must be positive");
    require(options.cutoff >= 0.0, ErrorKind::Domain, "cutoff must be non-negative");
    const double R_total = L * d->R;

    const auto [k_lo, k_hi] = sector_window(setup, selector, R_total);
    const std::size_t count = static_cast<std::size_t>(k_hi - k_lo + 1);
    std::vector<SectorSpectrum> sectors(count);
    parallel_for(count, options.threads, [&](std::size_t i) {
        const int k = k_lo + static_cast<int>(i);
        sectors[i] = options.solver == DiskSolver::Factorized ? sector_spectrum(setup, selector, k, R_total)
                                                              : nystrom_sector(setup, selector, k, R_total, options);
    });

    // The outermost sectors must already be negligible.
    for (std::size_t i = count - 3; i < count; ++i)
        for (double mu : sectors[i].eigenvalues)
            if (mu > options.cutoff)
                fail(ErrorKind::Window, "sector window exhausted: sector " + std::to_string(sectors[i].k) +
                                            " still carries eigenvalue " + std::to_string(mu));

    LocalSpectrum spec;
    spec.B = setup.B;
    spec.selector = selector;
    spec.region = region;
    spec.L = L;
    spec.solver = options.solver == DiskSolver::Factorized ? "disk-sector" : "disk-nystrom";
    spec.cutoff = options.cutoff;
    std::vector<std::tuple<double, double, int>> kept;
    for (const SectorSpectrum& s : sectors) {
        for (std::size_t j = 0; j < s.eigenvalues.size(); ++j) {
            const double mu = s.eigenvalues[j];
            if (mu >= options.cutoff && mu > 0.0) {
                kept.emplace_back(mu, s.complements[j], s.k);
            } else {
                ++spec.dropped_count;
                spec.dropped_max = std::max(spec.dropped_max, mu);
            }
        }
    }
    std::sort(kept.begin(), kept.end());
    for (const auto& [mu, co, k] : kept) {
        spec.eigenvalues.push_back(mu);
        spec.complements.push_back(co);
        spec.sectors.push_back(k);
    }
    spec.settings = {{"sector_min", static_cast<double>(k_lo)}, {"sector_max", static_cast<double>(k_hi)}};
    if (options.solver == DiskSolver::Nystrom) {
        const int nodes = options.radial_nodes > 0
                              ? options.radial_nodes
                              : 24 + 6 * static_cast<int>(std::ceil(std::sqrt(setup.B) * R_total));
        spec.settings.emplace_back("radial_nodes", nodes);
        spec.settings.emplace_back("trapezoid_kernel", options.trapezoid_kernel ? 1.0 : 0.0);
    }
    return spec;
}

double gamma_p(double a, double x) {
    require(a > 0.0 && x >= 0.0, ErrorKind::Domain, "gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        double term = 1.0 / a, sum = term, ap = a;
        for (int i = 0; i < 100000; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-17) break;
        }
        return std::min(1.0, sum * std::exp(-x + a * std::log(x) - std::lgamma(a)));
    }
    return 1.0 - gamma_q(a, x);
}

double gamma_q(double a, double x) {
    require(a > 0.0 && x >= 0.0, ErrorKind::Domain, "gamma_q: need a > 0, x >= 0");
    if (x < a + 1.0) return 1.0 - gamma_p(a, x);
    // Modified Lentz continued fraction.
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

std::vector<double> lll_disk_eigenvalues(double B, double R, int m_max, bool verify) {
    require(B > 0.0 && R > 0.0, ErrorKind::Domain, "lll_disk_eigenvalues: need B > 0 and R > 0");
    require(m_max >= 0, ErrorKind::Domain, "lll_disk_eigenvalues: m_max must be >= 0");
    const double x = 0.5 * B * R * R;
    std::vector<double> out(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) out[m] = gamma_p(m + 1.0, x);
    if (verify) {
        const MagneticSetup setup(B);
        for (int m = 0; m <= m_max; ++m) {
            const SectorSpectrum s = sector_spectrum(setup, LevelSelector::single(0), m, R);
            if (std::abs(s.eigenvalues.at(0) - out[m]) > 1e-7)
                fail(ErrorKind::Consistency, "incomplete-gamma eigenvalue for m=" + std::to_string(m) +
                                                 " disagrees with the sector solver");
        }
    }
    return out;
}

EntropyResult entropy_from_spectrum(const LocalSpectrum& spec, const coeffs::SpectralFunction& f) {
    EntropyResult out;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
        out.value += f.eval(spec.eigenvalues[i], spec.complements.empty() ? 1.0 - spec.eigenvalues[i]
                                                                          : spec.complements[i]);
    if (spec.dropped_count > 0) {
        const double edge = std::max(spec.cutoff, spec.dropped_max);
        out.cutoff_bias = static_cast<double>(spec.dropped_count) * std::abs(f(std::min(edge, 1.0)));
    }
    return out;
}

double schatten_cross_norm(const LocalSpectrum& spec, double p) {
    require(p > 0.0, ErrorKind::Domain, "schatten_cross_norm: p must be positive");
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        const double mu = spec.eigenvalues[i];
        const double co = spec.complements.empty() ? 1.0 - mu : spec.complements[i];
        const double v = mu * co;
        if (v > 0.0) sum += std::pow(v, 0.5 * p);
    }
    return sum;
}

}  // namespace lle::disk
