#include "lle/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "lle/error.hpp"

namespace lle::specfun {
namespace {

struct ReferenceRule {
    std::vector<double> x;  // on [-1, 1]
    std::vector<double> w;
};

ReferenceRule compute_reference(int n) {
    ReferenceRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess for the i-th largest root.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        bool converged = false;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = (n == 1) ? x : p1;
            double pnm1 = (n == 1) ? 1.0 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1.0);
            double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                converged = true;
                // One more derivative evaluation at the converged root.
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pn = (n == 1) ? x : p1;
                pnm1 = (n == 1) ? 1.0 : p0;
                dp = n * (x * pn - pnm1) / (x * x - 1.0);
                break;
            }
        }
        if (!converged) fail(ErrorKind::Numeric, "gauss_legendre: Newton iteration did not converge for node " + std::to_string(i));
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return rule;
}

const ReferenceRule& reference(int n) {
    static std::mutex mutex;
    static std::map<int, ReferenceRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_reference(n)).first;
    return it->second;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
    require(n >= 1, ErrorKind::Domain, "gauss_legendre: node count must be >= 1");
    require(a < b, ErrorKind::Domain, "gauss_legendre: need a < b");
    const ReferenceRule& ref = reference(n);
    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.exactness_degree = 2 * n - 1;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * ref.x[i];
        rule.weights[i] = half * ref.w[i];
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, double panel_width, int nodes_per_panel) {
    require(a < b, ErrorKind::Domain, "composite_gauss_legendre: need a < b");
    require(panel_width > 0.0, ErrorKind::Domain, "composite_gauss_legendre: panel width must be positive");
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width - 1e-12)));
    const double h = (b - a) / panels;
    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.exactness_degree = 2 * nodes_per_panel - 1;
    rule.nodes.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
    rule.weights.reserve(rule.nodes.capacity());
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double hi = (p + 1 == panels) ? b : lo + h;
        QuadratureRule panel = gauss_legendre(nodes_per_panel, lo, hi);
        rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return rule;
}

namespace {

constexpr double kRoundoff = 100.0 * std::numeric_limits<double>::epsilon();

double panel_sum(const std::function<double(double)>& f, const ReferenceRule& ref, double a, double b,
                 double* magnitude = nullptr) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < ref.x.size(); ++i) {
        const double v = ref.w[i] * f(mid + half * ref.x[i]);
        s += v;
        mag += std::abs(v);
    }
    if (magnitude) *magnitude = half * mag;
    return half * s;
}

void adapt(const std::function<double(double)>& f, const ReferenceRule& ref, double a, double b, double whole,
           double tol, int depth, const AdaptiveOptions& opt, AdaptiveResult& acc) {
    const double m = 0.5 * (a + b);
    double mag_left = 0.0, mag_right = 0.0;
    const double left = panel_sum(f, ref, a, m, &mag_left);
    const double right = panel_sum(f, ref, m, b, &mag_right);
    const double diff = std::abs(left + right - whole);
    // Below the rounding level of the panel no refinement can help.
    if (diff <= tol || diff <= std::max(kRoundoff, opt.rel_tol) * (mag_left + mag_right) || (b - a) < 1e-14 * std::max(1.0, std::abs(m))) {
        acc.value += left + right;
        acc.error_estimate += diff;
        acc.intervals += 2;
        return;
    }
    if (depth >= opt.max_depth) {
        fail(ErrorKind::Numeric, "integrate_adaptive: max depth reached on [" + std::to_string(a) + ", " +
                                     std::to_string(b) + "], local error " + std::to_string(diff));
    }
    adapt(f, ref, a, m, left, 0.5 * tol, depth + 1, opt, acc);
    adapt(f, ref, m, b, right, 0.5 * tol, depth + 1, opt, acc);
}

}  // namespace

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const AdaptiveOptions& options) {
    AdaptiveResult acc;
    if (a == b) return acc;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const ReferenceRule& ref = reference(options.nodes);
    adapt(f, ref, a, b, panel_sum(f, ref, a, b), options.abs_tol, 0, options, acc);
    acc.value *= sign;
    return acc;
}

namespace {

double panel_sum_vec(const std::function<void(double, std::span<double>)>& f, const ReferenceRule& ref, double a,
                     double b, std::vector<double>& out, std::vector<double>& scratch) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    std::fill(out.begin(), out.end(), 0.0);
    double mag = 0.0;
    for (std::size_t i = 0; i < ref.x.size(); ++i) {
        f(mid + half * ref.x[i], scratch);
        for (std::size_t d = 0; d < out.size(); ++d) {
            out[d] += ref.w[i] * scratch[d];
            mag = std::max(mag, std::abs(ref.w[i] * scratch[d]));
        }
    }
    for (double& v : out) v *= half;
    return half * mag * static_cast<double>(ref.x.size());
}

void adapt_vec(const std::function<void(double, std::span<double>)>& f, const ReferenceRule& ref, double a,
               double b, const std::vector<double>& whole, double tol, int depth, const AdaptiveOptions& opt,
               std::vector<double>& acc, double& err) {
    const std::size_t dim = whole.size();
    std::vector<double> left(dim), right(dim), scratch(dim);
    const double m = 0.5 * (a + b);
    const double mag = panel_sum_vec(f, ref, a, m, left, scratch) + panel_sum_vec(f, ref, m, b, right, scratch);
    double diff = 0.0;
    for (std::size_t d = 0; d < dim; ++d) diff = std::max(diff, std::abs(left[d] + right[d] - whole[d]));
    if (diff <= tol || diff <= std::max(kRoundoff, opt.rel_tol) * mag || (b - a) < 1e-14 * std::max(1.0, std::abs(m))) {
        for (std::size_t d = 0; d < dim; ++d) acc[d] += left[d] + right[d];
        err += diff;
        return;
    }
    if (depth >= opt.max_depth) {
        fail(ErrorKind::Numeric, "integrate_adaptive_vec: max depth reached on [" + std::to_string(a) + ", " +
                                     std::to_string(b) + "]");
    }
    adapt_vec(f, ref, a, m, left, 0.5 * tol, depth + 1, opt, acc, err);
    adapt_vec(f, ref, m, b, right, 0.5 * tol, depth + 1, opt, acc, err);
}

}  // namespace

std::vector<double> integrate_adaptive_vec(const std::function<void(double, std::span<double>)>& f,
                                           std::size_t dim, double a, double b, const AdaptiveOptions& options,
                                           double* error_estimate) {
    std::vector<double> acc(dim, 0.0);
    double err = 0.0;
    if (a != b) {
        double sign = 1.0;
        if (a > b) {
            std::swap(a, b);
            sign = -1.0;
        }
        const ReferenceRule& ref = reference(options.nodes);
        std::vector<double> whole(dim), scratch(dim);
        panel_sum_vec(f, ref, a, b, whole, scratch);
        adapt_vec(f, ref, a, b, whole, options.abs_tol, 0, options, acc, err);
        for (double& v : acc) v *= sign;
    }
    if (error_estimate) *error_estimate = err;
    return acc;
}

}  // namespace lle::specfun
