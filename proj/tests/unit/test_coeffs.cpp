#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "lle/coeffs.hpp"
#include "lle/error.hpp"
#include "lle/landau_kernel.hpp"
#include "lle/linalg.hpp"
#include "lle/quadrature.hpp"
#include "lle/specfun.hpp"

using namespace lle::coeffs;

TEST_CASE("renyi entropy function") {
    for (double a : {0.5, 1.0, 2.0, 3.7}) {
        CHECK(renyi_h(a, 0.0) == 0.0);
        CHECK(renyi_h(a, 1.0) == 0.0);
        CHECK(renyi_h(a, 0.3) == doctest::Approx(renyi_h(a, 0.7)).epsilon(1e-14));
    }
    CHECK(renyi_h(1.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(renyi_h(2.0, 0.25) == doctest::Approx(std::log(8.0 / 5.0)).epsilon(1e-15));
    CHECK(renyi_h(1.0 + 1e-9, 0.3) == doctest::Approx(renyi_h(1.0, 0.3)).epsilon(1e-12));
    CHECK(renyi_h(1.0 + 1e-6, 0.3) == doctest::Approx(renyi_h(1.0, 0.3)).epsilon(1e-6));
    CHECK(renyi_h(1.0, -5e-11) == 0.0);
    CHECK_THROWS_AS(renyi_h(1.0, 1.0 + 1e-8), lle::Error);
    CHECK_THROWS_AS(renyi_h(0.0, 0.5), lle::Error);
    // complement argument keeps relative accuracy near t = 1
    const double s = 1e-20;
    CHECK(renyi_h(1.0, 1.0 - s, s) == doctest::Approx(s * (1.0 - std::log(s))).epsilon(1e-12));
}

TEST_CASE("spectral function construction") {
    const auto h = SpectralFunction::renyi(0.5);
    CHECK(h.exponent() == 0.5);
    CHECK(h.value_at_one() == 0.0);
    CHECK(std::isfinite(h.holder_constant()));
    CHECK(SpectralFunction::renyi(1.0).exponent() == 0.5);
    CHECK(SpectralFunction::renyi(2.0).exponent() == 1.0);
    CHECK(SpectralFunction::monomial(3).value_at_one() == 1.0);
    CHECK(SpectralFunction::gtilde()(0.25) == doctest::Approx(0.1875));
    CHECK(SpectralFunction::parse("renyi:2").parameter() == 2.0);
    CHECK(SpectralFunction::parse("monomial:4").kind() == FunctionKind::Monomial);
    CHECK(SpectralFunction::parse("gtilde").kind() == FunctionKind::GTilde);
    CHECK_THROWS_AS(SpectralFunction::parse("renyi:-1"), lle::Error);
    CHECK_THROWS_AS(SpectralFunction::parse("monomial:2.5"), lle::Error);
    CHECK_THROWS_AS(SpectralFunction::parse("cosine:1"), lle::Error);
    CHECK_THROWS_AS(SpectralFunction::custom("shifted", [](double t) { return 1.0 + t; }, 1.0), lle::Error);
    CHECK_THROWS_AS(SpectralFunction::custom("log", [](double t) { return std::log(t); }, 1.0), lle::Error);
}

TEST_CASE("gram matrix") {
    const Eigen::MatrixXd g0 = gram_matrix(0, 0.4);
    CHECK(g0.rows() == 1);
    CHECK(g0(0, 0) == lle::specfun::lambda_ell(0, 0.4));
    const Eigen::MatrixXd id = gram_matrix(5, -20.0);
    CHECK((id - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("gram spectrum against a Nystrom discretization of K") {
    const GramSpectrum spec = gram_spectrum(2, 0.3);
    // 3x3 reference from scipy quadrature and eigvalsh
    CHECK(std::abs(spec.eigenvalues[0] - 0.00309493) < 1e-8);
    CHECK(std::abs(spec.eigenvalues[1] - 0.28644295) < 1e-8);
    CHECK(std::abs(spec.eigenvalues[2] - 0.96347771) < 1e-8);

    const auto rule = lle::specfun::gauss_legendre(200, 0.3, 10.3);
    Eigen::MatrixXd k(200, 200);
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j < 200; ++j)
            k(i, j) = std::sqrt(rule.weights[i] * rule.weights[j]) *
                      lle::landau::k_kernel(2, 0.3, rule.nodes[i], rule.nodes[j]);
    const auto eig = lle::linalg::jacobi_eigen(k);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(eig.values(197 + i) - spec.eigenvalues[i]) < 1e-8);
    CHECK(std::abs(eig.values(196)) < 1e-8);
}

TEST_CASE("gram spectrum invariants and Nystrom trace of f") {
    const auto rule = lle::specfun::composite_gauss_legendre(-6.0, 16.0, 0.5, 12);
    for (int n = 0; n <= 4; ++n) {
        for (double xi = -6.0; xi <= 6.0; xi += 1.5) {
            const GramSpectrum spec = gram_spectrum(n, xi);
            double trace = 0.0, lam = 0.0;
            for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
                CHECK(spec.eigenvalues[k] >= 0.0);
                CHECK(spec.eigenvalues[k] <= 1.0);
                CHECK(std::abs(spec.eigenvalues[k] + spec.complements[k] - 1.0) < 1e-12);
                trace += spec.eigenvalues[k];
            }
            for (int l = 0; l <= n; ++l) lam += lle::specfun::lambda_ell(l, xi);
            CHECK(std::abs(trace - lam) < 1e-10);

            // 300-node Nystrom: nodes of the rule restricted to [xi, 16]
            std::vector<double> x, w;
            const auto local = lle::specfun::composite_gauss_legendre(std::max(xi, -8.0), 16.0, 24.0 / 25.0, 12);
            for (std::size_t i = 0; i < local.size(); ++i) {
                x.push_back(local.nodes[i]);
                w.push_back(local.weights[i]);
            }
            const int m = static_cast<int>(x.size());
            Eigen::MatrixXd k(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) k(i, j) = std::sqrt(w[i] * w[j]) * lle::landau::k_kernel(n, xi, x[i], x[j]);
            const auto eig = lle::linalg::symmetric_eigenvalues(k);
            const auto g = SpectralFunction::gtilde();
            double tr_gram = 0.0, tr_nys = 0.0;
            for (double mu : spec.eigenvalues) tr_gram += g(mu);
            for (double mu : eig) tr_nys += g(std::clamp(mu, 0.0, 1.0));
            CHECK(std::abs(tr_gram - tr_nys) < 1e-7);
        }
    }
    (void)rule;
}

TEST_CASE("boundary coefficients against dense-grid references") {
    const double m0_h1 = coeff_M_ell(0, SpectralFunction::renyi(1.0)).value;
    CHECK(std::abs(m0_h1 - 0.203) < 2e-3);
    CHECK(std::abs(m0_h1 - 0.2032908132265606) < 1e-9);
    CHECK(std::abs(coeff_M_ell(0, SpectralFunction::renyi(2.0)).value - 0.15842967484501783) < 1e-9);
    CHECK(std::abs(coeff_M_ell(0, SpectralFunction::renyi(0.5)).value - 0.27893633427066256) < 1e-8);
    const double m0_t2 = coeff_M_ell(0, SpectralFunction::monomial(2)).value;
    CHECK(m0_t2 < 0.0);
    CHECK(std::abs(m0_t2 + 0.06349363593424097) < 1e-10);
    CHECK(std::abs(coeff_M_ell(1, SpectralFunction::renyi(1.0)).value - 0.3350585866253379) < 1e-9);
    CHECK(std::abs(coeff_M_ell(1, SpectralFunction::renyi(2.0)).value - 0.28985193340919096) < 1e-9);
    CHECK(std::abs(coeff_M_le_n(1, SpectralFunction::renyi(1.0)).value - 0.3569898662769925) < 1e-9);
    CHECK(std::abs(coeff_M_le_n(1, SpectralFunction::renyi(2.0)).value - 0.2768607567229584) < 1e-9);
    CHECK(std::abs(coeff_M_le_n(1, SpectralFunction::monomial(2)).value + 0.11111386288492126) < 1e-10);
    for (int l = 0; l <= 3; ++l) CHECK(std::abs(coeff_M_ell(l, SpectralFunction::monomial(1)).value) < 1e-14);
    CHECK(std::abs(coeff_M_le_n(2, SpectralFunction::monomial(1)).value) < 1e-13);
}

TEST_CASE("M_{<=0} coincides with M_0") {
    for (double a : {0.5, 1.0, 2.0}) {
        const auto f = SpectralFunction::renyi(a);
        CHECK(std::abs(coeff_M_le_n(0, f).value - coeff_M_ell(0, f).value) < 1e-9);
    }
}

TEST_CASE("M_{<=1}(h_1) from a polynomial sandwich") {
    // Interpolant p of h_1 at Chebyshev nodes. tr p(K) is a combination of
    // trace moments tr K^m, evaluated here as a matrix polynomial in the Gram
    // matrix without any eigensolve.
    const int degree = 30;
    std::vector<double> nodes(degree + 1), c(degree + 1);
    for (int i = 0; i <= degree; ++i) {
        nodes[i] = 0.5 - 0.5 * std::cos(std::numbers::pi * (i + 0.5) / (degree + 1));
        c[i] = renyi_h(1.0, nodes[i]);
    }
    for (int j = 1; j <= degree; ++j)
        for (int i = degree; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (nodes[i] - nodes[i - j]);
    auto poly = [&](double t) {
        double v = c[degree];
        for (int i = degree - 1; i >= 0; --i) v = v * (t - nodes[i]) + c[i];
        return v;
    };
    double sup = 0.0;
    for (int i = 0; i <= 4000; ++i) sup = std::max(sup, std::abs(poly(i / 4000.0) - renyi_h(1.0, i / 4000.0)));
    const double p0 = poly(0.0), f1 = poly(1.0) - p0;

    double mp = 0.0;
    const double h = 0.02;
    for (int s = -500; s <= 500; ++s) {
        const Eigen::MatrixXd g = gram_matrix(1, s * h);
        Eigen::MatrixXd acc = c[degree] * Eigen::MatrixXd::Identity(2, 2);
        for (int i = degree - 1; i >= 0; --i)
            acc = acc * (g - nodes[i] * Eigen::MatrixXd::Identity(2, 2)) + c[i] * Eigen::MatrixXd::Identity(2, 2);
        const double weight = (s == -500 || s == 500) ? 0.5 * h : h;
        mp += weight * (acc.trace() - 2.0 * p0 - f1 * g.trace());
    }
    mp /= 2.0 * std::numbers::pi;
    const double mh = coeff_M_le_n(1, SpectralFunction::renyi(1.0)).value;
    CHECK(sup < 2e-3);
    // Pointwise |f(mu) - f(1) mu - h(mu)| <= 4 sup, two eigenvalues, and the
    // spectrum is within 1e-15 of {0, 1} outside |xi| <= 6.
    CHECK(std::abs(mp - mh) < 2.0 * 4.0 * sup * 12.0 / (2.0 * std::numbers::pi));
    CHECK(std::abs(mp - 0.3569898662769925) < 2.0 * 4.0 * sup * 12.0 / (2.0 * std::numbers::pi));
}

TEST_CASE("trace moments") {
    for (int n = 0; n <= 3; ++n) {
        for (double xi : {-1.5, 0.0, 0.7, 2.2}) {
            double lam = 0.0;
            for (int l = 0; l <= n; ++l) lam += lle::specfun::lambda_ell(l, xi);
            const TraceMoment t1 = trace_moment_K(n, xi, 1);
            CHECK(t1.has_christoffel);
            CHECK(std::abs(t1.spectral - lam) < 1e-12);
            CHECK(std::abs(t1.christoffel - lam) < 1e-10);
        }
    }
    for (int m = 1; m <= 5; ++m) {
        const double l0 = lle::specfun::lambda_ell(0, 0.4);
        CHECK(std::abs(trace_moment_K(0, 0.4, m).spectral - std::pow(l0, m)) < 1e-13);
    }
    const TraceMoment t3 = trace_moment_K(2, 0.7, 3);
    CHECK(std::abs(t3.spectral - t3.chain) < 1e-10);
    CHECK(std::abs(t3.spectral - 0.6525180650583439) < 1e-10);
    CHECK_FALSE(t3.has_christoffel);
}

TEST_CASE("polynomial boundary coefficient") {
    for (int l = 0; l <= 3; ++l) CHECK(poly_boundary_coeff(l, 1) == 0.0);
    CHECK(std::abs(poly_boundary_coeff(0, 2) - coeff_M_ell(0, SpectralFunction::monomial(2)).value) < 1e-10);
    CHECK(std::abs(poly_boundary_coeff(1, 4) + 0.19928078564141852) < 1e-9);
    for (int l = 0; l <= 2; ++l)
        for (int m = 2; m <= 4; ++m)
            CHECK(std::abs(poly_boundary_coeff(l, m) - coeff_M_ell(l, SpectralFunction::monomial(m)).value) < 1e-10);
}

TEST_CASE("decay of the f(K) - f(1) K trace norm") {
    for (int n = 0; n <= 2; ++n) {
        for (const auto& f : {SpectralFunction::gtilde(), SpectralFunction::renyi(1.0)}) {
            std::vector<double> ratio;
            for (double xi = 2.0; xi <= 6.0; xi += 0.25) {
                const GramSpectrum spec = gram_spectrum(n, xi);
                double norm = 0.0;
                for (double mu : spec.eigenvalues) norm += std::abs(f(mu) - f.value_at_one() * mu);
                ratio.push_back(norm / std::exp(-0.9 * f.exponent() * xi * xi));
            }
            double c = 0.0;
            for (double r : ratio) c = std::max(c, r);
            CHECK(std::isfinite(c));
            CHECK(ratio.back() <= c);
        }
    }
}

TEST_CASE("positivity and tolerance refinement") {
    for (int n = 0; n <= 3; ++n) {
        for (double a : {0.5, 1.0, 2.0}) {
            const auto f = SpectralFunction::renyi(a);
            const CoefficientResult r = coeff_M_le_n(n, f);
            CHECK(r.value > 0.0);
            const CoefficientResult r2 = coeff_M_le_n(n, f, {0.5e-8});
            CHECK(std::abs(r.value - r2.value) < r.error_estimate);
        }
    }
}
