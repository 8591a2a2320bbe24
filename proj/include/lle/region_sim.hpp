#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lle/coeffs.hpp"
#include "lle/disk_spectra.hpp"
#include "lle/geometry.hpp"
#include "lle/landau_kernel.hpp"

namespace lle::region {

using disk::LocalSpectrum;
using landau::LevelSelector;
using landau::MagneticSetup;
using landau::Point2;

constexpr std::size_t kMaxNystromDimension = 6000;

// Polar tensor rule on L * Lambda: Gauss-Legendre in the radial fraction and
// the periodic trapezoid rule in the angle. Zero selects the default
// 12 + 3 ceil(sqrt(B) L r_max) radial and twice as many angular nodes.
struct Resolution {
    int radial = 0;
    int angular = 0;
};

struct PolarRule {
    std::vector<Point2> points;
    std::vector<double> weights;
    int radial = 0;
    int angular = 0;
};

PolarRule polar_rule(const MagneticSetup& setup, const geometry::Region& region, double L,
                     const Resolution& resolution = {});
Resolution resolve(const MagneticSetup& setup, const geometry::Region& region, double L,
                   const Resolution& resolution);

struct RegionOptions {
    Resolution resolution;
    unsigned threads = 1;
    double cutoff = 1e-12;
};

// Spectrum of 1_{L Lambda} P 1_{L Lambda} for smooth regions by 2-D Nystrom.
LocalSpectrum region_spectrum(const MagneticSetup& setup, const LevelSelector& selector,
                              const geometry::Region& region, double L, const RegionOptions& options = {});

// tr (1_{L Lambda} P 1_{L Lambda})^2 = int int |P(x, y)|^2 over (L Lambda)^2 on
// the same rule as region_spectrum, without the eigensolve.
double region_trace_moment2(const MagneticSetup& setup, const LevelSelector& selector,
                            const geometry::Region& region, double L, const RegionOptions& options = {});

// int_{L Lambda} int_{outside} |P(x, y)|^2 dy dx by Monte Carlo; works for
// polygons. Returns value and standard error.
std::pair<double, double> cross_hilbert_schmidt_mc(const MagneticSetup& setup, const LevelSelector& selector,
                                                   const geometry::Region& region, double L, std::uint64_t seed,
                                                   std::size_t samples, unsigned threads = 1);

struct ScalingSeries {
    std::vector<std::pair<double, double>> points;  // (L, value)
    std::map<std::string, std::string> metadata;

    void add(double L, double value);
    void validate() const;
};

enum class FitModel { Linear, Quadratic };

struct AsymptoticFit {
    FitModel model = FitModel::Linear;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
    double residual_norm = 0.0;
    std::vector<double> residuals;
    double condition = 0.0;
    std::pair<double, double> window;
    std::vector<double> slopes;  // successive-difference slopes
};

AsymptoticFit scaling_fit(const ScalingSeries& series, FitModel model);

// Area and boundary terms of tr f(P(L Lambda)) for a Landau level selector.
struct LeadingTerms {
    double area = 0.0;      // B |Lambda| (levels) f(1) / 2 pi, coefficient of L^2
    double boundary = 0.0;  // sqrt(B) |dLambda| M(f), coefficient of L
};

LeadingTerms leading_terms(const MagneticSetup& setup, const LevelSelector& selector,
                           const geometry::Region& region, const coeffs::SpectralFunction& f);

// tr f(P(L Lambda)) through the disk solver for centered disks and the 2-D
// Nystrom solver otherwise.
LocalSpectrum spectrum_for(const MagneticSetup& setup, const LevelSelector& selector, const geometry::Region& region,
                           double L, unsigned threads = 1);

// r(L) = tr f(P(L Lambda)) - L^2 area - L boundary for each L.
ScalingSeries second_order_probe(const MagneticSetup& setup, const LevelSelector& selector,
                                 const geometry::Region& region, const coeffs::SpectralFunction& f,
                                 const std::vector<double>& Ls, unsigned threads = 1);

}  // namespace lle::region
