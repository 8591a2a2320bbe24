#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lle/quadrature.hpp"

namespace lle::specfun {

inline constexpr int kMaxHermiteLevel = 60;

// Physicists' Hermite polynomial H_l(t) by the three-term recurrence.
double hermite_poly(int level, double t);

// Normalized Hermite function psi_l(t); orthonormal on the real line.
double hermite_fn(int level, double t);

// psi_0(t) .. psi_max_level(t) into out (size max_level + 1).
void hermite_fns(int max_level, double t, std::span<double> out);

// Generalized Laguerre polynomial L_l^{(k)}(z) from the explicit binomial sum,
// evaluated by Horner. Integer k >= -l.
std::complex<double> laguerre(int degree, int k, std::complex<double> z);
double laguerre(int degree, int k, double x);

// Upper integration limit standing in for +infinity in the overlap integrals.
double overlap_tmax(int max_level, double xi);

// lambda_l(xi) = int_xi^inf psi_l(t)^2 dt.
double lambda_ell(int level, double xi);

// lambda_{l1,l2}(xi) = int_xi^inf psi_l1(t) psi_l2(t) dt.
double overlap_lambda(int level1, int level2, double xi);

// Overlaps lambda_{l,l'}(xi) for all l, l' <= max_level on a grid of xi values,
// together with the complementary integrals over (-inf, xi).
struct OverlapTable {
    std::vector<double> xi_grid;
    int max_level = 0;
    std::vector<double> values;       // upper tail, indexed by index(l, l', g)
    std::vector<double> complements;  // lower tail, delta_{l l'} - upper

    std::size_t index(int l1, int l2, std::size_t g) const {
        const std::size_t d = static_cast<std::size_t>(max_level) + 1;
        return (g * d + static_cast<std::size_t>(l1)) * d + static_cast<std::size_t>(l2);
    }
    double value(int l1, int l2, std::size_t g) const { return values[index(l1, l2, g)]; }
    double complement(int l1, int l2, std::size_t g) const { return complements[index(l1, l2, g)]; }
};

OverlapTable overlap_table(int max_level, std::vector<double> xi_grid);

}  // namespace lle::specfun
