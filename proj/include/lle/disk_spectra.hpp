#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lle/coeffs.hpp"
#include "lle/geometry.hpp"
#include "lle/landau_kernel.hpp"

namespace lle::disk {

using landau::LevelSelector;
using landau::MagneticSetup;

// Eigenvalues of a localized projection 1_{L Lambda} P 1_{L Lambda}.
struct LocalSpectrum {
    double B = 1.0;
    LevelSelector selector;
    geometry::Region region;  // unscaled region Lambda
    double L = 1.0;
    std::string solver;
    double cutoff = 1e-12;
    std::vector<double> eigenvalues;  // ascending, clamped to [0, 1]
    std::vector<double> complements;  // 1 - eigenvalues, aligned
    std::vector<int> sectors;         // angular sector per eigenvalue, disk solvers only
    std::size_t dropped_count = 0;    // eigenvalues below cutoff
    double dropped_max = 0.0;
    std::vector<std::pair<std::string, double>> settings;

    double trace() const;
};

// (1/2pi) int P(x_r, y_{s,phi}) e^{-ik phi} dphi by the periodic trapezoid rule.
double radial_sector_kernel(const MagneticSetup& setup, const LevelSelector& selector, int k, double r, double s);
// Same quantity from the Laguerre closed form.
double radial_sector_kernel_closed(const MagneticSetup& setup, const LevelSelector& selector, int k, double r,
                                   double s);
// Trapezoid node count used for a given (k, r, s).
int sector_trapezoid_nodes(const MagneticSetup& setup, const LevelSelector& selector, int k, double r, double s);

struct SectorSpectrum {
    int k = 0;
    std::vector<double> eigenvalues;  // ascending
    std::vector<double> complements;  // aligned
};

// Spectrum of one angular sector on the disk of radius R_total.
SectorSpectrum sector_spectrum(const MagneticSetup& setup, const LevelSelector& selector, int k, double R_total);

// Inclusive window of sectors kept by disk_spectrum.
std::pair<int, int> sector_window(const MagneticSetup& setup, const LevelSelector& selector, double R_total);

enum class DiskSolver { Factorized, Nystrom };

struct DiskOptions {
    DiskSolver solver = DiskSolver::Factorized;
    double cutoff = 1e-12;
    unsigned threads = 1;
    bool trapezoid_kernel = false;  // Nystrom only: assemble through radial_sector_kernel
    int radial_nodes = 0;           // Nystrom only: 0 selects 24 + 6 ceil(sqrt(B) R)
};

LocalSpectrum disk_spectrum(const MagneticSetup& setup, const LevelSelector& selector, double R_total,
                            const DiskOptions& options = {});
// Region must be a centered disk; R_total = L * R.
LocalSpectrum disk_spectrum(const MagneticSetup& setup, const LevelSelector& selector,
                            const geometry::Region& region, double L, const DiskOptions& options = {});

// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// P(m + 1, B R^2 / 2) for m = 0..m_max. With verify set, each value is
// compared with the sector solver and a mismatch above 1e-7 throws.
std::vector<double> lll_disk_eigenvalues(double B, double R, int m_max, bool verify = true);

struct EntropyResult {
    double value = 0.0;
    double cutoff_bias = 0.0;  // bound on the contribution of dropped eigenvalues
};

EntropyResult entropy_from_spectrum(const LocalSpectrum& spec, const coeffs::SpectralFunction& f);

// sum_k (mu_k (1 - mu_k))^{p/2}
double schatten_cross_norm(const LocalSpectrum& spec, double p);

}  // namespace lle::disk
