#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "lle/coeffs.hpp"
#include "lle/disk_spectra.hpp"
#include "lle/error.hpp"

using namespace lle::disk;
using lle::landau::LevelSelector;
using lle::landau::MagneticSetup;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("radial sector kernel agrees with the closed form and the quadrature oracle") {
    const MagneticSetup b1(1.0);
    CHECK(radial_sector_kernel(b1, LevelSelector::single(0), 1, 1.0, 2.0) ==
          doctest::Approx(0.0455986546398385888932).epsilon(1e-10));
    CHECK(radial_sector_kernel_closed(b1, LevelSelector::single(0), 1, 1.0, 2.0) ==
          doctest::Approx(0.0455986546398385888932).epsilon(1e-12));
    CHECK(radial_sector_kernel(MagneticSetup(2.0), LevelSelector::up_to(1), -1, 0.7, 1.3) ==
          doctest::Approx(0.0973891407988621513055).epsilon(1e-10));
    CHECK(radial_sector_kernel(MagneticSetup(1.5), LevelSelector::single(2), 3, 2.0, 2.5) ==
          doctest::Approx(0.0055065336544508219999).epsilon(1e-10));
    CHECK(radial_sector_kernel_closed(MagneticSetup(1.5), LevelSelector::single(2), 3, 2.0, 2.5) ==
          doctest::Approx(0.0055065336544508219999).epsilon(1e-12));
    CHECK(sector_trapezoid_nodes(b1, LevelSelector::single(0), 0, 1.0, 1.0) == 512);
    CHECK(sector_trapezoid_nodes(b1, LevelSelector::single(0), 0, 30.0, 30.0) > 512);
}

TEST_CASE("radial sector kernel at the origin and the k-sum rule") {
    const MagneticSetup setup(1.3);
    for (int k : {-2, 1, 3}) CHECK(std::abs(radial_sector_kernel(setup, LevelSelector::up_to(2), k, 0.0, 0.0)) < 1e-15);
    for (auto sel : {LevelSelector::single(0), LevelSelector::up_to(1), LevelSelector::single(2)}) {
        const double r = 2.1;
        const double target = sel.level_count() * setup.B / (2.0 * kPi);
        double sum = 0.0, err_small = 0.0;
        for (int k = -40; k <= 40; ++k) {
            sum += radial_sector_kernel(setup, sel, k, r, r);
            if (k == 5) err_small = std::abs(sum - target);
        }
        CHECK(std::abs(sum - target) < 1e-12);
        CHECK(err_small > std::abs(sum - target));
    }
}

TEST_CASE("sector spectra match the mpmath Gram oracle") {
    const MagneticSetup b1(1.0);
    auto s0 = sector_spectrum(b1, LevelSelector::single(0), 0, std::sqrt(2.0));
    REQUIRE(s0.eigenvalues.size() == 1);
    CHECK(s0.eigenvalues[0] == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
    CHECK(s0.complements[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    const double R3 = std::sqrt(6.0);  // B R^2 / 2 = 3
    auto a = sector_spectrum(b1, LevelSelector::up_to(1), 0, R3);
    REQUIRE(a.eigenvalues.size() == 2);
    CHECK(a.eigenvalues[0] == doctest::Approx(0.456906382193701300672).epsilon(1e-12));
    CHECK(a.eigenvalues[1] == doctest::Approx(0.995435865759795326555).epsilon(1e-12));
    CHECK(a.complements[1] == doctest::Approx(1.0 - 0.995435865759795326555).epsilon(1e-9));
    auto b = sector_spectrum(b1, LevelSelector::up_to(1), 2, R3);
    CHECK(b.eigenvalues[0] == doctest::Approx(0.0608919023708920935602).epsilon(1e-12));
    CHECK(b.eigenvalues[1] == doctest::Approx(0.868686127720033132384).epsilon(1e-12));
    auto c = sector_spectrum(b1, LevelSelector::up_to(1), -1, R3);
    REQUIRE(c.eigenvalues.size() == 1);
    CHECK(c.eigenvalues[0] == doctest::Approx(0.800851726528544228083).epsilon(1e-12));
    CHECK(sector_spectrum(b1, LevelSelector::up_to(1), -2, R3).eigenvalues.empty());
    auto d = sector_spectrum(b1, LevelSelector::single(1), 3, std::sqrt(10.0));
    CHECK(d.eigenvalues[0] == doctest::Approx(0.384039345166936882916).epsilon(1e-12));
}

TEST_CASE("disk spectrum trace, bounds and rank") {
    for (auto sel : {LevelSelector::single(0), LevelSelector::up_to(1), LevelSelector::single(2), LevelSelector::up_to(2)}) {
        for (double R : {1.5, 6.0, 20.0}) {
            const MagneticSetup setup(1.0);
            const auto spec = disk_spectrum(setup, sel, R);
            const double expected = sel.level_count() * setup.B * R * R / 2.0;
            CHECK(spec.trace() == doctest::Approx(expected).epsilon(1e-6));
            CHECK(std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end()));
            for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
                CHECK(spec.eigenvalues[i] >= 0.0);
                CHECK(spec.eigenvalues[i] <= 1.0);
                CHECK(spec.eigenvalues[i] + spec.complements[i] == doctest::Approx(1.0).epsilon(1e-10));
            }
        }
    }
    const MagneticSetup b2(2.0);
    const auto spec = disk_spectrum(b2, LevelSelector::up_to(1), 3.0);
    CHECK(spec.trace() == doctest::Approx(2.0 * 2.0 * 9.0 / 2.0).epsilon(1e-6));
}

TEST_CASE("Nystrom sector route agrees with the factorized route") {
    const MagneticSetup setup(1.0);
    const auto sel = LevelSelector::up_to(1);
    DiskOptions ny;
    ny.solver = DiskSolver::Nystrom;
    const auto a = disk_spectrum(setup, sel, 4.0);
    const auto b = disk_spectrum(setup, sel, 4.0, ny);
    auto big = [](const LocalSpectrum& s) {
        std::vector<double> v;
        for (double mu : s.eigenvalues)
            if (mu > 1e-6) v.push_back(mu);
        return v;
    };
    const auto va = big(a), vb = big(b);
    REQUIRE(va.size() == vb.size());
    for (std::size_t i = 0; i < va.size(); ++i) CHECK(std::abs(va[i] - vb[i]) < 1e-9);
    CHECK(b.trace() == doctest::Approx(2.0 * 8.0).epsilon(1e-6));

    ny.trapezoid_kernel = true;
    ny.radial_nodes = 30;
    const auto c = disk_spectrum(setup, LevelSelector::single(0), 2.0, ny);
    const auto d = disk_spectrum(setup, LevelSelector::single(0), 2.0);
    const auto vc = big(c), vd = big(d);
    REQUIRE(vc.size() == vd.size());
    for (std::size_t i = 0; i < vc.size(); ++i) CHECK(std::abs(vc[i] - vd[i]) < 1e-9);
}

TEST_CASE("disk spectrum is independent of the worker count") {
    const MagneticSetup setup(1.0);
    DiskOptions one, four;
    four.threads = 4;
    const auto a = disk_spectrum(setup, LevelSelector::up_to(2), 12.0, one);
    const auto b = disk_spectrum(setup, LevelSelector::up_to(2), 12.0, four);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.sectors == b.sectors);
}

TEST_CASE("large radius exhausts a fixed sector") {
    const MagneticSetup setup(1.0);
    for (auto sel : {LevelSelector::single(0), LevelSelector::up_to(1)}) {
        const auto s = sector_spectrum(setup, sel, 2, 15.0);
        CHECK(s.eigenvalues.back() > 1.0 - 1e-8);
    }
}

TEST_CASE("region overload and errors") {
    const MagneticSetup setup(1.0);
    const auto spec = disk_spectrum(setup, LevelSelector::single(0), lle::geometry::Region::disk(2.0), 3.0);
    CHECK(spec.L == 3.0);
    CHECK(spec.trace() == doctest::Approx(18.0).epsilon(1e-6));
    CHECK_THROWS_AS(disk_spectrum(setup, LevelSelector::single(0), lle::geometry::Region::star({0.0, 0.0}, {1.0, 0.1}), 2.0),
                    lle::Error);
    CHECK_THROWS_AS(disk_spectrum(setup, LevelSelector::single(0), -1.0), lle::Error);
    CHECK_THROWS_AS(sector_spectrum(setup, LevelSelector::single(0), 0, 0.0), lle::Error);
}

TEST_CASE("lowest level disk eigenvalues from the incomplete gamma function") {
    const auto v = lll_disk_eigenvalues(1.0, std::sqrt(2.0), 30);
    CHECK(v[0] == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    CHECK(v[0] == doctest::Approx(0.6321206).epsilon(1e-7));
    for (int m = 2; m < 30; ++m) CHECK(v[m] < v[m - 1]);
    const auto w = lll_disk_eigenvalues(2.0, 5.0, 80);
    const MagneticSetup setup(2.0);
    for (int m = 0; m <= 80; m += 7) {
        const auto s = sector_spectrum(setup, LevelSelector::single(0), m, 5.0);
        CHECK(std::abs(s.eigenvalues[0] - w[m]) < 1e-9);
    }
    // Series and continued fraction branches against closed forms for integer a
    for (double x : {0.3, 2.0, 7.5, 40.0}) {
        const double p3 = 1.0 - std::exp(-x) * (1.0 + x + x * x / 2.0);
        CHECK(gamma_p(3.0, x) == doctest::Approx(p3).epsilon(1e-13));
        CHECK(gamma_q(3.0, x) + gamma_p(3.0, x) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(gamma_q(1.0, 50.0) == doctest::Approx(std::exp(-50.0)).epsilon(1e-13));
    CHECK_THROWS_AS(lll_disk_eigenvalues(1.0, 1.0, -1), lle::Error);
}

TEST_CASE("entropy from spectrum") {
    const MagneticSetup setup(1.0);
    auto spec = disk_spectrum(setup, LevelSelector::up_to(1), 5.0);
    const auto id = lle::coeffs::SpectralFunction::monomial(1);
    CHECK(entropy_from_spectrum(spec, id).value == doctest::Approx(2.0 * 12.5).epsilon(1e-6));

    LocalSpectrum flat;
    flat.eigenvalues = {0.0, 0.0, 1.0, 1.0, 1.0};
    flat.complements = {1.0, 1.0, 0.0, 0.0, 0.0};
    for (double a : {0.5, 1.0, 2.0})
        CHECK(entropy_from_spectrum(flat, lle::coeffs::SpectralFunction::renyi(a)).value == 0.0);
    CHECK(schatten_cross_norm(flat, 1.0) == 0.0);

    const auto h1 = lle::coeffs::SpectralFunction::renyi(1.0);
    DiskOptions fine;
    fine.cutoff = 0.5e-12;
    const auto a = disk_spectrum(setup, LevelSelector::single(0), 20.0);
    const auto b = disk_spectrum(setup, LevelSelector::single(0), 20.0, fine);
    const auto ea = entropy_from_spectrum(a, h1), eb = entropy_from_spectrum(b, h1);
    CHECK(ea.value > 0.0);
    CHECK(std::abs(ea.value - eb.value) < 1e-6);
    CHECK(ea.cutoff_bias < 1e-6);
}

TEST_CASE("Schatten cross norm") {
    const MagneticSetup setup(1.0);
    const auto s20 = disk_spectrum(setup, LevelSelector::single(0), 20.0);
    const auto s40 = disk_spectrum(setup, LevelSelector::single(0), 40.0);
    double hs = 0.0;
    for (std::size_t i = 0; i < s20.eigenvalues.size(); ++i) hs += s20.eigenvalues[i] * s20.complements[i];
    CHECK(schatten_cross_norm(s20, 2.0) == doctest::Approx(hs).epsilon(1e-13));
    for (double p : {0.5, 1.0, 2.0}) {
        const double ratio = schatten_cross_norm(s40, p) / schatten_cross_norm(s20, p);
        CHECK(ratio >= 1.8);
        CHECK(ratio <= 2.2);
    }
    CHECK_THROWS_AS(schatten_cross_norm(s20, 0.0), lle::Error);
}
