#include "lle/landau_kernel.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "lle/error.hpp"
#include "lle/specfun.hpp"

namespace lle::landau {

MagneticSetup::MagneticSetup(double field) : B(field) {
    require(std::isfinite(field) && field > 0.0, ErrorKind::Domain, "magnetic field B must be positive");
}

LevelSelector LevelSelector::single(int level) {
    require(level >= 0, ErrorKind::Domain, "level index must be >= 0");
    return {Kind::Single, level};
}

LevelSelector LevelSelector::up_to(int top) {
    require(top >= 0, ErrorKind::Domain, "top level index must be >= 0");
    return {Kind::UpTo, top};
}

LevelSelector LevelSelector::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) fail(ErrorKind::Usage, "level selector '" + text + "' is not single:<l> or upto:<n>");
    const std::string head = text.substr(0, colon);
    const std::string tail = text.substr(colon + 1);
    char* end = nullptr;
    const long value = std::strtol(tail.c_str(), &end, 10);
    if (tail.empty() || *end != '\0' || value < 0 || value > specfun::kMaxHermiteLevel)
        fail(ErrorKind::Usage, "level selector '" + text + "' has an invalid index");
    if (head == "single") return single(static_cast<int>(value));
    if (head == "upto") return up_to(static_cast<int>(value));
    fail(ErrorKind::Usage, "level selector '" + text + "' is not single:<l> or upto:<n>");
}

std::string LevelSelector::to_string() const {
    return (kind == Kind::Single ? "single:" : "upto:") + std::to_string(index);
}

int nu_from_mu(double mu, double B) {
    require(B > 0.0, ErrorKind::Domain, "nu_from_mu: B must be positive");
    require(mu >= B, ErrorKind::Domain, "nu_from_mu: mu < B, the Fermi projection is the zero operator");
    return static_cast<int>(std::floor((mu / B - 1.0) / 2.0));
}

namespace {

std::complex<double> gauge_phase(double B, const Point2& x, const Point2& y) {
    return std::polar(1.0, 0.5 * B * symplectic(x, y));
}

}  // namespace

std::complex<double> p_ell(const MagneticSetup& setup, int level, const Point2& x, const Point2& y) {
    const double d2 = distance_squared(x, y);
    const double radial = setup.B / (2.0 * std::numbers::pi) * std::exp(-0.25 * setup.B * d2) *
                          specfun::laguerre(level, 0, 0.5 * setup.B * d2);
    return radial * gauge_phase(setup.B, x, y);
}

std::complex<double> p_le_n(const MagneticSetup& setup, int top, const Point2& x, const Point2& y) {
    const double d2 = distance_squared(x, y);
    const double radial = setup.B / (2.0 * std::numbers::pi) * std::exp(-0.25 * setup.B * d2) *
                          specfun::laguerre(top, 1, 0.5 * setup.B * d2);
    return radial * gauge_phase(setup.B, x, y);
}

std::complex<double> kernel(const MagneticSetup& setup, const LevelSelector& selector, const Point2& x,
                            const Point2& y) {
    return selector.kind == LevelSelector::Kind::Single ? p_ell(setup, selector.index, x, y)
                                                        : p_le_n(setup, selector.index, x, y);
}

double k_kernel(int n, double xi, double tau, double tau_prime) {
    require(n >= 0, ErrorKind::Domain, "k_kernel: n must be >= 0");
    if (tau < xi || tau_prime < xi) return 0.0;
    double a[specfun::kMaxHermiteLevel + 3];
    double b[specfun::kMaxHermiteLevel + 3];
    const double gap = tau - tau_prime;
    if (std::abs(gap) < 1e-7) {
        // Confluent form at the midpoint; its error is second order in the gap.
        const double mid = 0.5 * (tau + tau_prime);
        specfun::hermite_fns(n + 2, mid, std::span<double>(a, n + 3));
        return (n + 1.0) * a[n + 1] * a[n + 1] - std::sqrt((n + 1.0) * (n + 2.0)) * a[n] * a[n + 2];
    }
    specfun::hermite_fns(n + 1, tau, std::span<double>(a, n + 2));
    specfun::hermite_fns(n + 1, tau_prime, std::span<double>(b, n + 2));
    return std::sqrt(0.5 * (n + 1.0)) * (a[n + 1] * b[n] - a[n] * b[n + 1]) / gap;
}

}  // namespace lle::landau
