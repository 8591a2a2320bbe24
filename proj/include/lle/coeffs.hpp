#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lle/specfun.hpp"

namespace lle::coeffs {

enum class FunctionKind { Renyi, Monomial, GTilde, Custom };

// Rényi entropy function h_alpha(t); t may exceed [0, 1] by at most 1e-10.
double renyi_h(double alpha, double t);
// Same, given t and 1 - t separately so values near 1 keep full accuracy.
double renyi_h(double alpha, double t, double one_minus_t);

// A real test function f on [0, 1] with f(0) = 0 and the endpoint bound
// |f(t) - f(1) t| <= C (t (1 - t))^q.
class SpectralFunction {
public:
    static SpectralFunction renyi(double alpha);
    static SpectralFunction monomial(int power);
    static SpectralFunction gtilde();
    static SpectralFunction custom(std::string name, std::function<double(double)> f, double exponent);
    // "renyi:<alpha>", "monomial:<m>", "gtilde".
    static SpectralFunction parse(const std::string& text);

    double operator()(double t) const { return eval(t, 1.0 - t); }
    double eval(double t, double one_minus_t) const;

    FunctionKind kind() const { return kind_; }
    double parameter() const { return parameter_; }
    double value_at_one() const { return value_at_one_; }
    double exponent() const { return exponent_; }
    double holder_constant() const { return holder_constant_; }
    const std::string& name() const { return name_; }
    bool is_polynomial() const { return kind_ == FunctionKind::Monomial || kind_ == FunctionKind::GTilde; }

private:
    SpectralFunction(FunctionKind kind, double parameter, std::string name, double exponent,
                     std::function<double(double, double)> f);
    void validate();

    FunctionKind kind_;
    double parameter_ = 0.0;
    std::string name_;
    double exponent_ = 1.0;
    double value_at_one_ = 0.0;
    double holder_constant_ = 0.0;
    std::function<double(double, double)> f_;
};

// G_{ll'} = lambda_{l,l'}(xi), l, l' <= n.
Eigen::MatrixXd gram_matrix(int n, double xi);

struct GramSpectrum {
    double xi = 0.0;
    std::vector<double> eigenvalues;  // ascending, clamped to [0, 1]
    std::vector<double> complements;  // 1 - eigenvalues, computed independently
};

GramSpectrum gram_spectrum(int n, double xi);
GramSpectrum gram_spectrum(const specfun::OverlapTable& table, std::size_t grid_index);

struct CoefficientResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int nodes = 0;
};

struct CoefficientOptions {
    double tol = 1e-8;
    unsigned threads = 1;
};

CoefficientResult coeff_M_ell(int level, const SpectralFunction& f, const CoefficientOptions& options = {});
CoefficientResult coeff_M_le_n(int n, const SpectralFunction& f, const CoefficientOptions& options = {});

struct TraceMoment {
    double spectral = 0.0;       // sum of mu_k^m
    double chain = 0.0;          // multi-index product sum
    double christoffel = 0.0;    // m = 1 only: integral of the confluent kernel
    bool has_christoffel = false;
};

TraceMoment trace_moment_K(int n, double xi, int m);

// int dxi / 2pi [lambda_l^m - lambda_l].
double poly_boundary_coeff(int level, int m);

}  // namespace lle::coeffs
