#pragma once

#include <complex>
#include <string>

namespace lle::landau {

struct MagneticSetup {
    double B = 1.0;

    explicit MagneticSetup(double field = 1.0);
};

// Single(l) selects one Landau level, UpTo(n) the levels 0..n.
struct LevelSelector {
    enum class Kind { Single, UpTo };
    Kind kind = Kind::Single;
    int index = 0;

    static LevelSelector single(int level);
    static LevelSelector up_to(int top);
    // "single:<l>" or "upto:<n>".
    static LevelSelector parse(const std::string& text);

    int level_count() const { return kind == Kind::Single ? 1 : index + 1; }
    int top_level() const { return index; }
    std::string to_string() const;
    bool operator==(const LevelSelector&) const = default;
};

struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

// <x|J y> = x1 y2 - x2 y1.
inline double symplectic(const Point2& x, const Point2& y) { return x.x1 * y.x2 - x.x2 * y.x1; }
inline double distance_squared(const Point2& x, const Point2& y) {
    const double d1 = x.x1 - y.x1, d2 = x.x2 - y.x2;
    return d1 * d1 + d2 * d2;
}

int nu_from_mu(double mu, double B);

std::complex<double> p_ell(const MagneticSetup& setup, int level, const Point2& x, const Point2& y);
std::complex<double> p_le_n(const MagneticSetup& setup, int top, const Point2& x, const Point2& y);
std::complex<double> kernel(const MagneticSetup& setup, const LevelSelector& selector, const Point2& x,
                            const Point2& y);

// Kernel of K_{n,xi}: sum_{l<=n} psi_l(tau) psi_l(tau') on [xi, inf)^2.
double k_kernel(int n, double xi, double tau, double tau_prime);

}  // namespace lle::landau
