#include "lle/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "lle/error.hpp"
#include "lle/landau_kernel.hpp"
#include "lle/linalg.hpp"
#include "lle/parallel.hpp"

namespace lle::coeffs {
namespace {

constexpr double kSlack = 1e-10;

double clamp_unit(double t, const char* who) {
    if (!(t >= -kSlack && t <= 1.0 + kSlack))
        fail(ErrorKind::Domain, std::string(who) + ": argument " + std::to_string(t) + " outside [0, 1]");
    return std::clamp(t, 0.0, 1.0);
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double renyi_h(double alpha, double t, double one_minus_t) {
    require(alpha > 0.0, ErrorKind::Domain, "renyi_h: alpha must be positive");
    t = clamp_unit(t, "renyi_h");
    one_minus_t = clamp_unit(one_minus_t, "renyi_h");
    // h is symmetric under t <-> 1 - t; work with the smaller argument.
    const double u = std::min(t, one_minus_t);
    if (u == 0.0) return 0.0;
    const double log_v = std::log1p(-u);
    if (std::abs(alpha - 1.0) < 1e-8) return -xlogx(u) - (1.0 - u) * log_v;
    const double sum_minus_one = std::pow(u, alpha) + std::expm1(alpha * log_v);
    return std::log1p(sum_minus_one) / (1.0 - alpha);
}

double renyi_h(double alpha, double t) { return renyi_h(alpha, t, 1.0 - t); }

SpectralFunction::SpectralFunction(FunctionKind kind, double parameter, std::string name, double exponent,
                                   std::function<double(double, double)> f)
    : kind_(kind), parameter_(parameter), name_(std::move(name)), exponent_(exponent), f_(std::move(f)) {
    validate();
}

void SpectralFunction::validate() {
    require(exponent_ > 0.0, ErrorKind::Domain, "spectral function " + name_ + ": exponent q must be positive");
    const double at_zero = f_(0.0, 1.0);
    require(std::isfinite(at_zero) && std::abs(at_zero) < 1e-14, ErrorKind::Domain,
            "spectral function " + name_ + ": f(0) must vanish");
    value_at_one_ = f_(1.0, 0.0);
    require(std::isfinite(value_at_one_), ErrorKind::Domain, "spectral function " + name_ + ": f(1) not finite");
    double c = 0.0;
    for (int i = 1; i < 1000; ++i) {
        const double t = i / 1000.0;
        const double dev = std::abs(f_(t, 1.0 - t) - value_at_one_ * t);
        const double bound = std::pow(t * (1.0 - t), exponent_);
        require(std::isfinite(dev), ErrorKind::Domain, "spectral function " + name_ + ": not finite on (0, 1)");
        c = std::max(c, dev / bound);
    }
    holder_constant_ = c;
}

double SpectralFunction::eval(double t, double one_minus_t) const { return f_(t, one_minus_t); }

SpectralFunction SpectralFunction::renyi(double alpha) {
    require(alpha > 0.0 && std::isfinite(alpha), ErrorKind::Domain, "renyi: alpha must be positive");
    const double q = alpha < 1.0 ? alpha : (alpha == 1.0 ? 0.5 : 1.0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "renyi:%g", alpha);
    return SpectralFunction(FunctionKind::Renyi, alpha, buf, q,
                            [alpha](double t, double s) { return renyi_h(alpha, t, s); });
}

SpectralFunction SpectralFunction::monomial(int power) {
    require(power >= 1, ErrorKind::Domain, "monomial: power must be >= 1");
    return SpectralFunction(FunctionKind::Monomial, power, "monomial:" + std::to_string(power), 1.0,
                            [power](double t, double) { return std::pow(t, power); });
}

SpectralFunction SpectralFunction::gtilde() {
    return SpectralFunction(FunctionKind::GTilde, 0.0, "gtilde", 1.0, [](double t, double s) { return t * s; });
}

SpectralFunction SpectralFunction::custom(std::string name, std::function<double(double)> f, double exponent) {
    return SpectralFunction(FunctionKind::Custom, 0.0, std::move(name), exponent,
                            [f = std::move(f)](double t, double) { return f(t); });
}

SpectralFunction SpectralFunction::parse(const std::string& text) {
    if (text == "gtilde") return gtilde();
    const auto colon = text.find(':');
    if (colon == std::string::npos) fail(ErrorKind::Usage, "function spec '" + text + "' not recognized");
    const std::string head = text.substr(0, colon);
    const std::string tail = text.substr(colon + 1);
    char* end = nullptr;
    const double value = std::strtod(tail.c_str(), &end);
    if (tail.empty() || *end != '\0' || !std::isfinite(value))
        fail(ErrorKind::Usage, "function spec '" + text + "' has an invalid parameter");
    if (head == "renyi") {
        if (value <= 0.0) fail(ErrorKind::Usage, "function spec '" + text + "': alpha must be positive");
        return renyi(value);
    }
    if (head == "monomial") {
        if (value < 1.0 || value != std::floor(value) || value > 64)
            fail(ErrorKind::Usage, "function spec '" + text + "': power must be an integer in [1, 64]");
        return monomial(static_cast<int>(value));
    }
    fail(ErrorKind::Usage, "function spec '" + text + "' not recognized");
}

Eigen::MatrixXd gram_matrix(int n, double xi) {
    require(n >= 0, ErrorKind::Domain, "gram_matrix: n must be >= 0");
    Eigen::MatrixXd g(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) g(i, j) = g(j, i) = specfun::overlap_lambda(i, j, xi);
    return g;
}

namespace {

std::vector<double> ascending_eigenvalues(const Eigen::MatrixXd& m) {
    if (m.rows() == 1) return {m(0, 0)};
    const auto eig = linalg::jacobi_eigen(m);
    return {eig.values.data(), eig.values.data() + eig.values.size()};
}

GramSpectrum spectrum_from(double xi, const Eigen::MatrixXd& upper, const Eigen::MatrixXd& lower) {
    GramSpectrum spec;
    spec.xi = xi;
    std::vector<double> mu = ascending_eigenvalues(upper);
    std::vector<double> nu = ascending_eigenvalues(lower);
    const std::size_t d = mu.size();
    spec.eigenvalues.resize(d);
    spec.complements.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double a = mu[k];
        const double b = nu[d - 1 - k];
        if (a < -kSlack || a > 1.0 + kSlack || b < -kSlack || b > 1.0 + kSlack)
            fail(ErrorKind::Consistency, "gram spectrum at xi=" + std::to_string(xi) + " leaves [0, 1]: " +
                                             std::to_string(a));
        spec.eigenvalues[k] = std::clamp(a, 0.0, 1.0);
        spec.complements[k] = std::clamp(b, 0.0, 1.0);
    }
    return spec;
}

}  // namespace

GramSpectrum gram_spectrum(int n, double xi) {
    Eigen::MatrixXd upper = gram_matrix(n, xi);
    Eigen::MatrixXd lower = Eigen::MatrixXd::Identity(n + 1, n + 1) - upper;
    // The lower tail at xi is the parity-conjugated upper tail at -xi.
    Eigen::MatrixXd mirrored = gram_matrix(n, -xi);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) lower(i, j) = ((i + j) % 2 == 0 ? 1.0 : -1.0) * mirrored(i, j);
    return spectrum_from(xi, upper, lower);
}

GramSpectrum gram_spectrum(const specfun::OverlapTable& table, std::size_t g) {
    const int d = table.max_level + 1;
    Eigen::MatrixXd upper(d, d), lower(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            upper(i, j) = table.value(i, j, g);
            lower(i, j) = table.complement(i, j, g);
        }
    }
    return spectrum_from(table.xi_grid[g], upper, lower);
}

namespace {

specfun::QuadratureRule xi_rule(int n, double panel_width) {
    const double cap = 8.0 + std::sqrt(2.0 * n + 1.0);
    return specfun::composite_gauss_legendre(-cap, cap, panel_width, 16);
}

// Integrand values of M on a rule, computed in parallel and summed in index
// order so the result does not depend on the schedule.
template <class Integrand>
double integrate_on(const specfun::QuadratureRule& rule, unsigned threads, Integrand&& integrand,
                    double* edge_magnitude) {
    std::vector<double> values(rule.size());
    parallel_for(rule.size(), threads, [&](std::size_t i) { values[i] = integrand(i); });
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * values[i];
    if (edge_magnitude) *edge_magnitude = std::max(std::abs(values.front()), std::abs(values.back()));
    return sum / (2.0 * std::numbers::pi);
}

template <class Evaluate>
CoefficientResult refine(int n, const CoefficientOptions& options, Evaluate&& evaluate) {
    double width = 0.25;
    for (int round = 0; round < 6; ++round, width *= 0.5) {
        const specfun::QuadratureRule fine = xi_rule(n, width);
        const specfun::QuadratureRule coarse = xi_rule(n, 2.0 * width);
        double edge_fine = 0.0, edge_coarse = 0.0;
        const double v_fine = evaluate(fine, &edge_fine);
        const double v_coarse = evaluate(coarse, &edge_coarse);
        CoefficientResult result;
        result.value = v_fine;
        result.error_estimate = std::abs(v_fine - v_coarse) + edge_fine + 1e-15 * std::max(1.0, std::abs(v_fine));
        result.nodes = static_cast<int>(fine.size());
        if (result.error_estimate <= options.tol) return result;
    }
    fail(ErrorKind::Accuracy, "boundary coefficient did not reach tolerance " + std::to_string(options.tol));
}

}  // namespace

CoefficientResult coeff_M_ell(int level, const SpectralFunction& f, const CoefficientOptions& options) {
    require(level >= 0, ErrorKind::Domain, "coeff_M_ell: level must be >= 0");
    require(options.tol > 0.0, ErrorKind::Domain, "coeff_M_ell: tol must be positive");
    const double f1 = f.value_at_one();
    return refine(level, options, [&](const specfun::QuadratureRule& rule, double* edge) {
        const specfun::OverlapTable table = specfun::overlap_table(level, rule.nodes);
        return integrate_on(rule, options.threads, [&](std::size_t g) {
            const double lam = std::clamp(table.value(level, level, g), 0.0, 1.0);
            const double co = std::clamp(table.complement(level, level, g), 0.0, 1.0);
            return f.eval(lam, co) - f1 * lam;
        }, edge);
    });
}

CoefficientResult coeff_M_le_n(int n, const SpectralFunction& f, const CoefficientOptions& options) {
    require(n >= 0, ErrorKind::Domain, "coeff_M_le_n: n must be >= 0");
    require(options.tol > 0.0, ErrorKind::Domain, "coeff_M_le_n: tol must be positive");
    const double f1 = f.value_at_one();
    return refine(n, options, [&](const specfun::QuadratureRule& rule, double* edge) {
        const specfun::OverlapTable table = specfun::overlap_table(n, rule.nodes);
        return integrate_on(rule, options.threads, [&](std::size_t g) {
            const GramSpectrum spec = gram_spectrum(table, g);
            const std::size_t d = spec.eigenvalues.size();
            double sum = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double mu = spec.eigenvalues[k];
                sum += f.eval(mu, spec.complements[k]) - f1 * mu;
            }
            return sum;
        }, edge);
    });
}

TraceMoment trace_moment_K(int n, double xi, int m) {
    require(n >= 0, ErrorKind::Domain, "trace_moment_K: n must be >= 0");
    require(m >= 1, ErrorKind::Domain, "trace_moment_K: m must be >= 1");
    TraceMoment out;
    const GramSpectrum spec = gram_spectrum(n, xi);
    for (double mu : spec.eigenvalues) out.spectral += std::pow(mu, m);

    const Eigen::MatrixXd g = gram_matrix(n, xi);
    const int d = n + 1;
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    for (;;) {
        double prod = 1.0;
        for (int i = 0; i < m; ++i) prod *= g(idx[i], idx[(i + 1) % m]);
        out.chain += prod;
        int pos = 0;
        while (pos < m && ++idx[pos] == d) idx[pos++] = 0;
        if (pos == m) break;
    }
    if (std::abs(out.spectral - out.chain) > 1e-9)
        fail(ErrorKind::Consistency, "trace_moment_K: spectral and chain routes disagree at n=" + std::to_string(n) +
                                         ", xi=" + std::to_string(xi) + ", m=" + std::to_string(m));

    if (m == 1) {
        const double tmax = specfun::overlap_tmax(n + 2, xi);
        const double lo = std::max(xi, -tmax);
        auto diag = [n](double t) { return landau::k_kernel(n, -1e300, t, t); };
        double sum = 0.0;
        const double turn = std::sqrt(2.0 * n + 5.0);
        double a = lo;
        for (double c : {-turn, 0.0, turn, tmax}) {
            if (c <= a) continue;
            sum += specfun::integrate_adaptive(diag, a, c).value;
            a = c;
        }
        out.christoffel = sum;
        out.has_christoffel = true;
        if (std::abs(out.spectral - out.christoffel) > 1e-9)
            fail(ErrorKind::Consistency, "trace_moment_K: confluent kernel route disagrees at n=" + std::to_string(n));
    }
    return out;
}

double poly_boundary_coeff(int level, int m) {
    require(level >= 0, ErrorKind::Domain, "poly_boundary_coeff: level must be >= 0");
    require(m >= 1, ErrorKind::Domain, "poly_boundary_coeff: m must be >= 1");
    if (m == 1) return 0.0;
    const specfun::QuadratureRule rule = xi_rule(level, 0.25);
    const specfun::OverlapTable table = specfun::overlap_table(level, rule.nodes);
    double sum = 0.0;
    for (std::size_t g = 0; g < rule.size(); ++g) {
        const double lam = table.value(level, level, g);
        sum += rule.weights[g] * (std::pow(lam, m) - lam);
    }
    return sum / (2.0 * std::numbers::pi);
}

}  // namespace lle::coeffs
