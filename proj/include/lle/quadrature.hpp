#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lle::specfun {

// Nodes and positive weights on [a, b], exact for polynomials up to
// exactness_degree.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 0.0;
    int exactness_degree = 0;

    std::size_t size() const noexcept { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

// n-point Gauss-Legendre rule on [a, b]. Nodes come from Newton iteration on
// the Legendre three-term recurrence (converged to 1e-15). Throws Numeric with
// the node index if Newton fails.
QuadratureRule gauss_legendre(int n, double a, double b);

// Composite rule: [a, b] cut into panels of width <= panel_width, each carrying
// an n-point Gauss-Legendre rule.
QuadratureRule composite_gauss_legendre(double a, double b, double panel_width, int nodes_per_panel);

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    // A panel is also accepted once its error estimate drops below rel_tol
    // times its integral of |f|.
    double rel_tol = 0.0;
    int max_depth = 40;
    int nodes = 16;
};

// Recursive bisection with a Gauss-Legendre error estimate (whole interval
// versus its two halves). Throws Numeric when max_depth is reached before the
// local tolerance is met.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const AdaptiveOptions& options = {});

// Vector-valued variant: f(t, out) fills `out` (size dim); the error test uses
// the max-norm over components.
std::vector<double> integrate_adaptive_vec(const std::function<void(double, std::span<double>)>& f,
                                           std::size_t dim, double a, double b,
                                           const AdaptiveOptions& options = {},
                                           double* error_estimate = nullptr);

}  // namespace lle::specfun
