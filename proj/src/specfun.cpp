#include "lle/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lle/error.hpp"

namespace lle::specfun {
namespace {

void check_level(int level, const char* who) {
    require(level >= 0, ErrorKind::Domain, std::string(who) + ": level must be >= 0");
    require(level <= kMaxHermiteLevel, ErrorKind::Capability,
            std::string(who) + ": level " + std::to_string(level) + " above supported cap " +
                std::to_string(kMaxHermiteLevel));
}

}  // namespace

double hermite_poly(int level, double t) {
    check_level(level, "hermite_poly");
    if (level == 0) return 1.0;
    double h0 = 1.0, h1 = 2.0 * t;
    for (int k = 1; k < level; ++k) {
        const double h2 = 2.0 * t * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

void hermite_fns(int max_level, double t, std::span<double> out) {
    check_level(max_level, "hermite_fns");
    // psi_0 carries the normalization pi^{-1/4} e^{-t^2/2}; the normalized
    // recurrence keeps every later level at unit scale.
    out[0] = std::exp(-0.25 * std::log(std::numbers::pi) - 0.5 * t * t);
    if (max_level == 0) return;
    out[1] = std::numbers::sqrt2 * t * out[0];
    for (int k = 1; k < max_level; ++k) {
        out[k + 1] = std::sqrt(2.0 / (k + 1)) * t * out[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * out[k - 1];
    }
}

double hermite_fn(int level, double t) {
    check_level(level, "hermite_fn");
    double buf[kMaxHermiteLevel + 1];
    hermite_fns(level, t, std::span<double>(buf, level + 1));
    return buf[level];
}

std::complex<double> laguerre(int degree, int k, std::complex<double> z) {
    require(degree >= 0, ErrorKind::Domain, "laguerre: degree must be >= 0");
    require(k >= -degree, ErrorKind::Domain,
            "laguerre: superscript " + std::to_string(k) + " below -degree " + std::to_string(-degree));
    // c_j = (-1)^j binom(l+k, l-j) / j!, generated from c_l = (-1)^l / l!
    // through c_{j-1} = -c_j j (k+j) / (l-j+1).
    double c = (degree % 2 == 0 ? 1.0 : -1.0) / std::tgamma(degree + 1.0);
    std::complex<double> acc = c;
    for (int j = degree; j >= 1; --j) {
        c = -c * static_cast<double>(k + j) * j / static_cast<double>(degree - j + 1);
        acc = acc * z + c;
    }
    return acc;
}

double laguerre(int degree, int k, double x) {
    require(degree >= 0, ErrorKind::Domain, "laguerre: degree must be >= 0");
    require(k >= -degree, ErrorKind::Domain,
            "laguerre: superscript " + std::to_string(k) + " below -degree " + std::to_string(-degree));
    double c = (degree % 2 == 0 ? 1.0 : -1.0) / std::tgamma(degree + 1.0);
    double acc = c;
    for (int j = degree; j >= 1; --j) {
        c = -c * static_cast<double>(k + j) * j / static_cast<double>(degree - j + 1);
        acc = acc * x + c;
    }
    return acc;
}

double overlap_tmax(int max_level, double xi) {
    return std::max(std::abs(xi), 0.0) + 10.0 + std::sqrt(2.0 * max_level + 1.0);
}

double overlap_lambda(int level1, int level2, double xi) {
    const int top = std::max(level1, level2);
    check_level(top, "overlap_lambda");
    require(std::min(level1, level2) >= 0, ErrorKind::Domain, "overlap_lambda: level must be >= 0");
    const double tmax = overlap_tmax(top, xi);
    const double lo = std::max(xi, -tmax);
    if (lo >= tmax) return 0.0;
    double buf[kMaxHermiteLevel + 1];
    auto f = [&](double t) {
        hermite_fns(top, t, std::span<double>(buf, top + 1));
        return buf[level1] * buf[level2];
    };
    // Split at the origin and at the turning points so that each piece is
    // resolved without deep bisection.
    const double turn = std::sqrt(2.0 * top + 1.0);
    double cuts[] = {lo, -turn, 0.0, turn, tmax};
    double sum = 0.0;
    double a = lo;
    for (double c : cuts) {
        if (c <= a) continue;
        sum += integrate_adaptive(f, a, c).value;
        a = c;
    }
    return sum;
}

double lambda_ell(int level, double xi) { return overlap_lambda(level, level, xi); }

OverlapTable overlap_table(int max_level, std::vector<double> xi_grid) {
    check_level(max_level, "overlap_table");
    OverlapTable table;
    table.max_level = max_level;
    table.xi_grid = std::move(xi_grid);
    const std::size_t d = static_cast<std::size_t>(max_level) + 1;
    const std::size_t dim = d * d;
    const std::size_t count = table.xi_grid.size();
    table.values.assign(count * dim, 0.0);
    table.complements.assign(count * dim, 0.0);

    // Upper tails at |xi| by accumulating panel integrals from tmax downward.
    std::vector<double> abs_xi(count);
    for (std::size_t g = 0; g < count; ++g) abs_xi[g] = std::abs(table.xi_grid[g]);
    std::vector<std::size_t> order(count);
    for (std::size_t g = 0; g < count; ++g) order[g] = g;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return abs_xi[a] > abs_xi[b]; });

    const double top_xi = count ? abs_xi[order.front()] : 0.0;
    double upper = overlap_tmax(max_level, top_xi);
    std::vector<double> running(dim, 0.0);
    std::vector<double> tails(count * dim, 0.0);
    std::vector<double> psi(d);
    auto integrand = [&](double t, std::span<double> out) {
        hermite_fns(max_level, t, psi);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) out[i * d + j] = psi[i] * psi[j];
    };
    for (std::size_t g : order) {
        const double lo = abs_xi[g];
        if (lo < upper) {
            std::vector<double> piece = integrate_adaptive_vec(integrand, dim, lo, upper);
            for (std::size_t i = 0; i < dim; ++i) running[i] += piece[i];
            upper = lo;
        }
        std::copy(running.begin(), running.end(), tails.begin() + static_cast<std::ptrdiff_t>(g * dim));
    }

    // lambda_{ll'}(-x) = delta - (-1)^{l+l'} lambda_{ll'}(x).
    for (std::size_t g = 0; g < count; ++g) {
        const bool negative = table.xi_grid[g] < 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const double tail = tails[g * dim + i * d + j];
                const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                const double delta = (i == j) ? 1.0 : 0.0;
                const std::size_t at = table.index(static_cast<int>(i), static_cast<int>(j), g);
                if (negative) {
                    table.complements[at] = sign * tail;
                    table.values[at] = delta - sign * tail;
                } else {
                    table.values[at] = tail;
                    table.complements[at] = delta - tail;
                }
            }
        }
    }
    return table;
}

}  // namespace lle::specfun
