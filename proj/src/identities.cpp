#include "lle/identities.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <span>

#include <boost/math/quadrature/gauss.hpp>

#include "lle/error.hpp"
#include "lle/parallel.hpp"
#include "lle/quadrature.hpp"
#include "lle/specfun.hpp"

namespace lle::identities {
namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

double dot(const Point2& a, const Point2& b) { return a.x1 * b.x1 + a.x2 * b.x2; }
Point2 J(const Point2& v) { return {v.x2, -v.x1}; }
Point2 operator+(const Point2& a, const Point2& b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
Point2 operator-(const Point2& a, const Point2& b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
Point2 operator*(double s, const Point2& a) { return {s * a.x1, s * a.x2}; }

std::vector<double> flatten(const std::vector<Point2>& pts) {
    std::vector<double> out;
    for (const auto& p : pts) {
        out.push_back(p.x1);
        out.push_back(p.x2);
    }
    return out;
}

Check finish(Check c, double error, double tol) {
    c.error = error;
    c.pass = std::isfinite(error) && error <= tol;
    c.trace.add("error", error);
    return c;
}

void require_plan(int m, int q) {
    require(m >= 2, ErrorKind::Domain, "chain length m must be >= 2");
    require(q >= 1 && q <= m - 1, ErrorKind::Domain, "branch index q must lie in [1, m-1]");
}

// Normalized Hermite polynomials H_l(x) / sqrt(2^l l!) for l = 0..n.
std::vector<double> hermite_normalized(int n, double x) {
    std::vector<double> h(static_cast<std::size_t>(n) + 1);
    h[0] = 1.0;
    if (n >= 1) h[1] = std::sqrt(2.0) * x;
    for (int k = 1; k < n; ++k)
        h[k + 1] = std::sqrt(2.0 / (k + 1)) * x * h[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * h[k - 1];
    return h;
}

}  // namespace

void Trace::add(std::string name, std::vector<double> values) { entries.emplace_back(std::move(name), std::move(values)); }

SubstitutionPlan SubstitutionPlan::make(int m, int q) {
    require_plan(m, q);
    SubstitutionPlan p;
    p.m = m;
    p.q = q;
    const int n = m - 1;
    p.S.assign(n, std::vector<long long>(n, 0));
    p.A = p.S;
    p.A_inv = p.S;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            p.S[i - 1][j - 1] = i < j ? -1 : (i == j ? 0 : 1);
            p.A[i - 1][j - 1] = ((1 <= i && i <= j && j <= q) || (q + 1 <= j && j <= i)) ? 1 : 0;
            long long inv = 0;
            if (i == j) inv = 1;
            else if (1 <= i && i == j - 1 && i <= q - 1) inv = -1;
            else if (q + 1 <= j && j == i - 1 && j <= m - 2) inv = -1;
            p.A_inv[i - 1][j - 1] = inv;
        }
    }
    p.flips.assign(n, 1);
    for (int i = q; i < n; ++i) p.flips[i] = -1;
    return p;
}

std::vector<double> SubstitutionPlan::t_from_tau(const std::vector<double>& tau, bool flip) const {
    const std::size_t n = static_cast<std::size_t>(m - 1);
    require(tau.size() == n, ErrorKind::Domain, "tau must have m-1 entries");
    std::vector<double> t(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i] += static_cast<double>(A_inv[i][j]) * tau[j];
        if (flip) t[i] *= flips[i];
    }
    return t;
}

std::vector<double> SubstitutionPlan::T_from_t(const std::vector<double>& t) const {
    const std::size_t n = static_cast<std::size_t>(m - 1);
    std::vector<double> T(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) T[i] += static_cast<double>(S[i][j]) * t[j];
    return T;
}

double SubstitutionPlan::xi_shift(const std::vector<double>& tau) const {
    return q <= m - 2 ? 0.5 * (tau.front() + tau.back()) : 0.5 * tau.front();
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    IntMatrix c(n, std::vector<long long>(p, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < p; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

long long determinant(const IntMatrix& a) {
    // Bareiss fraction-free elimination.
    IntMatrix m = a;
    const std::size_t n = m.size();
    if (n == 0) return 1;
    long long sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

Check verify_integer_plan(int m, int q) {
    const SubstitutionPlan p = SubstitutionPlan::make(m, q);
    const std::size_t n = static_cast<std::size_t>(m - 1);
    long long bad = 0;
    const IntMatrix left = multiply(p.A, p.A_inv), right = multiply(p.A_inv, p.A);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const long long id = i == j ? 1 : 0;
            bad += std::llabs(left[i][j] - id) + std::llabs(right[i][j] - id);
            bad += std::llabs(p.S[i][j] + p.S[j][i]);
        }
        bad += std::llabs(static_cast<long long>(p.flips[i]) * p.flips[i] - 1);
    }
    const long long det = determinant(p.A);
    bad += std::llabs(det - 1);
    Check c;
    c.trace.add("m", m);
    c.trace.add("q", q);
    c.trace.add("det_A", static_cast<double>(det));
    return finish(std::move(c), static_cast<double>(bad), 0.0);
}

Check verify_phase_telescoping(const Point2& x, const std::vector<Point2>& y) {
    const std::size_t m = y.size() + 1;
    require(m >= 2, ErrorKind::Domain, "phase telescoping needs m >= 2");
    std::vector<Point2> xs(m + 1);
    xs[0] = x;
    for (std::size_t i = 1; i < m; ++i) xs[i] = xs[i - 1] - y[i - 1];
    xs[m] = x;
    double lhs = 0.0, rhs = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double v = dot(xs[i], J(xs[i + 1]));
        lhs += v;
        scale += std::abs(v);
    }
    Point2 partial{};
    for (std::size_t i = 1; i + 1 < m; ++i) {
        partial = partial + y[i - 1];
        const double v = dot(partial, J(y[i]));
        rhs += v;
        scale += std::abs(v);
    }
    Check c;
    c.trace.add("x", {x.x1, x.x2});
    c.trace.add("y", flatten(y));
    c.trace.add("lhs", lhs);
    c.trace.add("rhs", rhs);
    return finish(std::move(c), std::abs(lhs - rhs) / std::max(1.0, scale), 1e-12);
}

Check verify_local_frame_reduction(const std::vector<Point2>& y, const Point2& unit_normal) {
    const std::size_t n = y.size();
    require(n >= 1, ErrorKind::Domain, "local frame reduction needs m >= 2");
    const double norm = std::hypot(unit_normal.x1, unit_normal.x2);
    require(std::abs(norm - 1.0) < 1e-12, ErrorKind::Domain, "normal must be a unit vector");
    const Point2 Jn = J(unit_normal);
    std::vector<double> z(n), t(n);
    double err = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = dot(y[i], unit_normal);
        z[i] = -dot(y[i], Jn);
        const Point2 back = (-z[i]) * Jn + t[i] * unit_normal;
        const double len2 = dot(y[i], y[i]);
        err = std::max({err, std::abs(back.x1 - y[i].x1) / std::max(1.0, std::sqrt(len2)),
                        std::abs(back.x2 - y[i].x2) / std::max(1.0, std::sqrt(len2)),
                        std::abs(len2 - z[i] * z[i] - t[i] * t[i]) / std::max(1.0, len2)});
    }
    double phase = 0.0, form = 0.0;
    Point2 partial{};
    for (std::size_t i = 1; i < n; ++i) {
        partial = partial + y[i - 1];
        const double v = dot(partial, J(y[i]));
        phase += v;
        scale += std::abs(v);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double s = i < j ? -1.0 : (i == j ? 0.0 : 1.0);
            form += z[i] * s * t[j];
        }
    err = std::max(err, std::abs(phase - form) / scale);
    Check c;
    c.trace.add("y", flatten(y));
    c.trace.add("n", {unit_normal.x1, unit_normal.x2});
    c.trace.add("z", z);
    c.trace.add("t", t);
    c.trace.add("phase", phase);
    c.trace.add("zSt", form);
    return finish(std::move(c), err, 1e-12);
}

Check verify_exponent_identity(int m, int q, double xi, const std::vector<double>& tau) {
    const SubstitutionPlan p = SubstitutionPlan::make(m, q);
    const std::vector<double> t = p.t_from_tau(tau);
    const std::vector<double> T = p.T_from_t(t);
    const double x0 = -xi - p.xi_shift(tau);
    double sumT = 0.0, sumT2 = 0.0, sumt2 = 0.0, tm = 0.0;
    for (double v : T) {
        sumT += v;
        sumT2 += v * v;
    }
    for (double v : t) {
        sumt2 += v * v;
        tm += v;
    }
    sumt2 += tm * tm;
    const double lhs = m * x0 * x0 + x0 * sumT + 0.25 * sumT2 + 0.25 * sumt2;
    double rhs = xi * xi;
    for (double v : tau) rhs += (xi + v) * (xi + v);
    Check c;
    c.trace.add("m", m);
    c.trace.add("q", q);
    c.trace.add("xi", xi);
    c.trace.add("tau", tau);
    c.trace.add("xi_original", x0);
    c.trace.add("t", t);
    c.trace.add("T", T);
    c.trace.add("lhs", lhs);
    c.trace.add("rhs", rhs);
    return finish(std::move(c), std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)), 1e-11);
}

Check verify_T_in_tau(int m, int q, const std::vector<double>& tau) {
    const SubstitutionPlan p = SubstitutionPlan::make(m, q);
    const int n = m - 1;
    auto at = [&](int j) { return tau[static_cast<std::size_t>(j - 1)]; };
    const bool boundary = q == m - 1;
    std::vector<double> pre(n), flipped(n), tilde(n), t_tilde(n);
    for (int j = 1; j <= n; ++j) {
        if (j <= q - 1) {
            pre[j - 1] = at(1) - at(j) - at(j + 1) - (boundary ? 0.0 : at(m - 1));
            flipped[j - 1] = at(1) - at(j) - at(j + 1) + (boundary ? 0.0 : at(m - 1));
            tilde[j - 1] = -at(j) - at(j + 1);
            t_tilde[j - 1] = at(j) - at(j + 1);
        } else if (j == q) {
            pre[j - 1] = at(1) - at(q) - (boundary ? 0.0 : at(m - 1));
            flipped[j - 1] = at(1) - at(q) + (boundary ? 0.0 : at(m - 1));
            tilde[j - 1] = -at(q);
            t_tilde[j - 1] = at(q);
        } else if (j == q + 1) {
            pre[j - 1] = at(1) + at(q + 1) - at(m - 1);
            flipped[j - 1] = at(1) - at(q + 1) + at(m - 1);
            tilde[j - 1] = -at(q + 1);
            t_tilde[j - 1] = -at(q + 1);
        } else {
            pre[j - 1] = at(1) + at(j - 1) + at(j) - at(m - 1);
            flipped[j - 1] = at(1) - at(j - 1) - at(j) + at(m - 1);
            tilde[j - 1] = -at(j - 1) - at(j);
            t_tilde[j - 1] = at(j - 1) - at(j);
        }
    }
    const std::vector<double> t_pre = p.t_from_tau(tau, false);
    const std::vector<double> t_flip = p.t_from_tau(tau, true);
    const std::vector<double> T_pre = p.T_from_t(t_pre);
    const std::vector<double> T_flip = p.T_from_t(t_flip);
    const double shift2 = 2.0 * p.xi_shift(tau);
    double scale = 1.0;
    for (double v : tau) scale = std::max(scale, std::abs(v));
    double err = 0.0;
    for (int j = 0; j < n; ++j) {
        err = std::max(err, std::abs(T_pre[j] - pre[j]));
        err = std::max(err, std::abs(T_flip[j] - flipped[j]));
        err = std::max(err, std::abs(T_flip[j] - shift2 - tilde[j]));
        err = std::max(err, std::abs(t_flip[j] - t_tilde[j]));
    }
    Check c;
    c.trace.add("m", m);
    c.trace.add("q", q);
    c.trace.add("tau", tau);
    c.trace.add("T", T_pre);
    c.trace.add("T_claimed", pre);
    c.trace.add("T_flipped", T_flip);
    c.trace.add("T_flipped_claimed", flipped);
    c.trace.add("T_tilde_claimed", tilde);
    c.trace.add("t_tilde", t_flip);
    return finish(std::move(c), err / scale, 1e-12);
}

Check verify_laguerre_argument_maps(int m, int q, double xi, const std::vector<double>& tau,
                                    const std::vector<double>& omega) {
    const SubstitutionPlan p = SubstitutionPlan::make(m, q);
    require(omega.size() == static_cast<std::size_t>(m), ErrorKind::Domain, "omega must have m entries");
    require(tau.size() == static_cast<std::size_t>(m - 1), ErrorKind::Domain, "tau must have m-1 entries");
    // Undo the final shift tau -> tau - xi, then the chain of the exponent identity.
    std::vector<double> chain(tau);
    for (double& v : chain) v -= xi;
    const std::vector<double> t = p.t_from_tau(chain);
    const std::vector<double> T = p.T_from_t(t);
    double tm = 0.0;
    for (double v : t) tm += v;
    const double x0 = -xi - p.xi_shift(chain);
    auto at = [&](int j) { return tau[static_cast<std::size_t>(j - 1)]; };

    double err = 0.0;
    std::vector<double> values, claims;
    for (int j = 1; j <= m; ++j) {
        const double w = omega[static_cast<std::size_t>(j - 1)];
        const double tj = j < m ? t[static_cast<std::size_t>(j - 1)] : tm;
        const cplx u = w + kI * (2.0 * x0 + T[static_cast<std::size_t>(j - 1)]);
        const cplx value = u * u + tj * tj;
        auto pair = [&](double a, double b) { return (w - 2.0 * kI * a) * (w - 2.0 * kI * b); };
        cplx claim;
        if (j <= q - 1) claim = pair(at(j), at(j + 1));
        else if (j == q) claim = pair(xi, at(q));
        else if (j == q + 1 && j <= m - 1) claim = pair(xi, at(q + 1));
        else if (j <= m - 1) claim = pair(at(j - 1), at(j));
        else claim = q <= m - 2 ? pair(at(1), at(m - 1)) : pair(xi, at(1));
        err = std::max(err, std::abs(value - claim) / std::max(1.0, std::abs(claim)));
        values.insert(values.end(), {value.real(), value.imag()});
        claims.insert(claims.end(), {claim.real(), claim.imag()});
    }
    Check c;
    c.trace.add("m", m);
    c.trace.add("q", q);
    c.trace.add("xi", xi);
    c.trace.add("tau", tau);
    c.trace.add("omega", omega);
    c.trace.add("arguments", values);
    c.trace.add("claimed", claims);
    return finish(std::move(c), err, 1e-11);
}

namespace {

using lcplx = std::complex<long double>;

template <class T>
std::complex<T> laguerre_recurrence(int n, std::complex<T> x) {
    std::complex<T> a = T(1), b = T(1) - x;
    if (n == 0) return a;
    for (int k = 1; k < n; ++k) {
        const std::complex<T> next = (T(2 * k + 1) - x) * b / T(k + 1) - T(k) / T(k + 1) * a;
        a = b;
        b = next;
    }
    return b;
}

}  // namespace

Check verify_hermite_identity(int level, double xi, double tau) {
    require(level >= 0 && level <= 12, ErrorKind::Domain, "hermite identity: level must lie in [0, 12]");
    require(std::abs(xi) <= 4.0 && std::abs(tau) <= 4.0, ErrorKind::Domain, "hermite identity: |xi|, |tau| <= 4");
    double fact = 1.0;
    for (int k = 2; k <= level; ++k) fact *= k;
    const double rhs = std::sqrt(2.0) / (std::ldexp(1.0, level) * fact) * specfun::hermite_poly(level, xi) *
                       specfun::hermite_poly(level, tau);
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    // The integrand is entire, so the line Im w = 0 may be moved to Im w = shift.
    // Pick the shift on a grid between 0 and xi + tau to minimize int |f| and thereby
    // the cancellation along the line.
    double shift = 0.0;
    auto integrand = [&]<class T>(T w) {
        const std::complex<T> z{w, static_cast<T>(shift)};
        const std::complex<T> i2{T(0), T(2)};
        return laguerre_recurrence(level, (z - i2 * static_cast<T>(xi)) * (z - i2 * static_cast<T>(tau)) / T(2)) *
               std::exp(T(-0.25) * z * z) * static_cast<T>(norm);
    };
    auto coarse_magnitude = [&] {
        static const auto rule = specfun::composite_gauss_legendre(-30.0, 30.0, 1.0, 8);
        double total = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) total += rule.weights[i] * std::abs(integrand(rule.nodes[i]));
        return total;
    };
    auto composite = [&]<unsigned N>(boost::math::quadrature::gauss<long double, N>, double width, double& mag) {
        const int panels = static_cast<int>(std::lround(60.0 / width));
        lcplx sum = 0.0L;
        long double total = 0.0L;
        for (int p = 0; p < panels; ++p) {
            const long double lo = -30.0L + 60.0L * p / panels;
            const long double hi = -30.0L + 60.0L * (p + 1) / panels;
            const long double mid = 0.5L * (lo + hi), half = 0.5L * (hi - lo);
            const auto& abscissa = boost::math::quadrature::gauss<long double, N>::abscissa();
            const auto& weights = boost::math::quadrature::gauss<long double, N>::weights();
            for (std::size_t i = 0; i < abscissa.size(); ++i) {
                const int signs = (abscissa[i] == 0.0L) ? 1 : 2;
                for (int sgn = 0; sgn < signs; ++sgn) {
                    const long double x = mid + (sgn == 0 ? 1.0L : -1.0L) * half * abscissa[i];
                    const lcplx v = integrand(x);
                    sum += half * weights[i] * v;
                    total += half * weights[i] * std::abs(v);
                }
            }
        }
        mag = static_cast<double>(total);
        return cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    };
    double best_c = 0.0, best_mag = INFINITY;
    for (int k = 0; k <= 32; ++k) {
        shift = (xi + tau) * k / 32.0;
        const double mag = coarse_magnitude();
        if (mag < best_mag) {
            best_mag = mag;
            best_c = shift;
        }
    }
    shift = best_c;
    double mag = 0.0, mag_check = 0.0;
    const cplx value = composite(boost::math::quadrature::gauss<long double, 20>{}, 1.0, mag);
    const cplx value_check = composite(boost::math::quadrature::gauss<long double, 30>{}, 0.75, mag_check);
    const double lhs = value.real();
    const double imag = value.imag();
    const double rule_gap = std::abs(value - value_check) / std::max(std::abs(rhs), 0.1);
    const double err =
        std::max({std::abs(lhs - rhs) / std::max(std::abs(rhs), 0.1), std::abs(imag) / std::max(std::abs(rhs), 0.1),
                  rule_gap});
    Check c;
    c.trace.add("level", level);
    c.trace.add("xi", xi);
    c.trace.add("tau", tau);
    c.trace.add("contour_shift", best_c);
    c.trace.add("abs_integral", mag);
    c.trace.add("rule_gap", rule_gap);
    c.trace.add("lhs", {lhs, imag});
    c.trace.add("rhs", rhs);
    return finish(std::move(c), err, 1e-9);
}

Check verify_mehler(double xi, double tau, double t) {
    require(std::abs(t) < 1.0, ErrorKind::Domain, "mehler: |t| < 1 required");
    const double closed = std::exp(2.0 * xi * tau * t / (1.0 - t) - t * t * (xi + tau) * (xi + tau) / (1.0 - t * t)) /
                          std::sqrt(1.0 - t * t);
    constexpr int cap = 200;
    const std::vector<double> a = hermite_normalized(cap + 1, xi), b = hermite_normalized(cap + 1, tau);
    // H_l(xi) H_l(tau) (t/2)^l / l! = a_l b_l t^l
    double sum = 0.0, power = 1.0;
    int used = -1;
    for (int l = 0; l <= cap; ++l) {
        const double term = a[l] * b[l] * power;
        sum += term;
        const double next = std::abs(a[l + 1] * b[l + 1] * power * t);
        if (l >= 4 && std::abs(term) + next < 1e-13 * std::max(1.0, std::abs(sum))) {
            used = l;
            break;
        }
        power *= t;
    }
    if (used < 0)
        fail(ErrorKind::Numeric, "mehler: series did not converge within 200 terms for xi=" + std::to_string(xi) +
                                     " tau=" + std::to_string(tau) + " t=" + std::to_string(t));
    Check c;
    c.trace.add("xi", xi);
    c.trace.add("tau", tau);
    c.trace.add("t", t);
    c.trace.add("terms", used + 1);
    c.trace.add("series", sum);
    c.trace.add("closed_form", closed);
    return finish(std::move(c), std::abs(sum - closed) / std::max(std::abs(closed), 1.0), 1e-9);
}

Check verify_christoffel_darboux(int n, double tau, double tau_prime) {
    require(n >= 0 && n <= 20, ErrorKind::Domain, "christoffel-darboux: n must lie in [0, 20]");
    double sum = 0.0, scale = 0.0, norm = 1.0;  // norm = 2^l l!
    for (int l = 0; l <= n; ++l) {
        if (l > 0) norm *= 2.0 * l;
        const double v = specfun::hermite_poly(l, tau) * specfun::hermite_poly(l, tau_prime) / norm;
        sum += v;
        scale += std::abs(v);
    }
    const double denom = norm * 2.0;  // 2^{n+1} n!
    double quotient;
    const bool diagonal = tau == tau_prime;
    if (diagonal) {
        const double hn = specfun::hermite_poly(n, tau), hn1 = specfun::hermite_poly(n + 1, tau),
                     hn2 = specfun::hermite_poly(n + 2, tau);
        quotient = (hn1 * hn1 - hn * hn2) / denom;
    } else {
        quotient = (specfun::hermite_poly(n + 1, tau) * specfun::hermite_poly(n, tau_prime) -
                    specfun::hermite_poly(n, tau) * specfun::hermite_poly(n + 1, tau_prime)) /
                   (denom * (tau - tau_prime));
    }
    Check c;
    c.trace.add("n", n);
    c.trace.add("tau", tau);
    c.trace.add("tau_prime", tau_prime);
    c.trace.add("sum", sum);
    c.trace.add("closed_form", quotient);
    return finish(std::move(c), std::abs(sum - quotient) / std::max(scale, 1e-300), 1e-10);
}

Check verify_laguerre_sum(int n, double t) {
    require(n >= 0, ErrorKind::Domain, "laguerre sum: n must be >= 0");
    double sum = 0.0, scale = 0.0;
    for (int l = 0; l <= n; ++l) {
        const double v = specfun::laguerre(l, 0, t);
        sum += v;
        scale += std::abs(v);
    }
    const double closed = specfun::laguerre(n, 1, t);
    Check c;
    c.trace.add("n", n);
    c.trace.add("t", t);
    c.trace.add("sum", sum);
    c.trace.add("closed_form", closed);
    return finish(std::move(c), std::abs(sum - closed) / std::max(1.0, scale), 1e-12);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t name_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
}

struct Suite {
    double tolerance;
    std::function<Check(std::mt19937_64&)> draw;
};

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::vector<Point2> random_points(std::mt19937_64& rng, std::size_t n, double spread) {
    std::normal_distribution<double> g(0.0, spread);
    std::vector<Point2> out(n);
    for (auto& p : out) p = {g(rng), g(rng)};
    return out;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::vector<double> out(n);
    for (double& v : out) v = uniform(rng, lo, hi);
    return out;
}

const std::map<std::string, Suite>& suites() {
    static const std::map<std::string, Suite> table = {
        {"phase-telescoping",
         {1e-12,
          [](std::mt19937_64& rng) {
              const int m = uniform_int(rng, 2, 8);
              const auto x = random_points(rng, 1, 3.0)[0];
              return verify_phase_telescoping(x, random_points(rng, static_cast<std::size_t>(m - 1), 3.0));
          }}},
        {"local-frame",
         {1e-12,
          [](std::mt19937_64& rng) {
              const int m = uniform_int(rng, 2, 8);
              const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
              return verify_local_frame_reduction(random_points(rng, static_cast<std::size_t>(m - 1), 3.0),
                                                  {std::cos(phi), std::sin(phi)});
          }}},
        {"exponent",
         {1e-11,
          [](std::mt19937_64& rng) {
              const int m = uniform_int(rng, 2, 8);
              const int q = uniform_int(rng, 1, m - 1);
              const double xi = uniform(rng, -4.0, 4.0);
              return verify_exponent_identity(m, q, xi, random_vector(rng, static_cast<std::size_t>(m - 1), 0.0, 4.0));
          }}},
        {"t-in-tau",
         {1e-12,
          [](std::mt19937_64& rng) {
              const int m = uniform_int(rng, 2, 8);
              const int q = uniform_int(rng, 1, m - 1);
              return verify_T_in_tau(m, q, random_vector(rng, static_cast<std::size_t>(m - 1), -4.0, 4.0));
          }}},
        {"laguerre-maps",
         {1e-11,
          [](std::mt19937_64& rng) {
              const int m = uniform_int(rng, 2, 8);
              const int q = uniform_int(rng, 1, m - 1);
              const double xi = uniform(rng, -4.0, 4.0);
              const auto tau = random_vector(rng, static_cast<std::size_t>(m - 1), 0.0, 4.0);
              return verify_laguerre_argument_maps(m, q, xi, tau,
                                                   random_vector(rng, static_cast<std::size_t>(m), -6.0, 6.0));
          }}},
        {"integer-plan",
         {0.0,
          [](std::mt19937_64& rng) {
              const int m = uniform_int(rng, 2, 8);
              return verify_integer_plan(m, uniform_int(rng, 1, m - 1));
          }}},
        {"hermite-identity",
         {1e-9,
          [](std::mt19937_64& rng) {
              const int l = uniform_int(rng, 0, 12);
              const double xi = uniform(rng, -4.0, 4.0);
              return verify_hermite_identity(l, xi, uniform(rng, -4.0, 4.0));
          }}},
        {"mehler",
         {1e-9,
          [](std::mt19937_64& rng) {
              const double xi = uniform(rng, -3.0, 3.0);
              const double tau = uniform(rng, -3.0, 3.0);
              return verify_mehler(xi, tau, uniform(rng, -0.8, 0.8));
          }}},
        {"christoffel-darboux",
         {1e-10,
          [](std::mt19937_64& rng) {
              const int n = uniform_int(rng, 0, 20);
              const double tau = uniform(rng, -4.0, 4.0);
              const bool diagonal = uniform_int(rng, 0, 9) == 0;
              return verify_christoffel_darboux(n, tau, diagonal ? tau : uniform(rng, -4.0, 4.0));
          }}},
        {"laguerre-sum",
         {1e-12,
          [](std::mt19937_64& rng) {
              const int n = uniform_int(rng, 0, 10);
              return verify_laguerre_sum(n, uniform(rng, 0.0, 40.0));
          }}},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, suite] : suites()) out.push_back(name);
        return out;
    }();
    return names;
}

bool is_suite(const std::string& name) { return suites().count(name) > 0; }

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t cases, unsigned threads) {
    const auto it = suites().find(name);
    if (it == suites().end()) fail(ErrorKind::Usage, "unknown identity suite '" + name + "'");
    const Suite& suite = it->second;
    std::vector<Check> results(cases);
    const std::uint64_t base = splitmix64(seed ^ name_hash(name));
    parallel_for(cases, threads, [&](std::size_t i) {
        std::mt19937_64 rng(splitmix64(base + i));
        results[i] = suite.draw(rng);
    });
    SuiteReport report;
    report.identity = name;
    report.cases = cases;
    report.tolerance = suite.tolerance;
    report.seed = seed;
    for (std::size_t i = 0; i < cases; ++i) {
        report.max_error = std::max(report.max_error, results[i].error);
        if (!results[i].pass) report.failures.push_back({i, results[i].error, std::move(results[i].trace)});
    }
    return report;
}

std::vector<SuiteReport> run_all(std::uint64_t seed, std::size_t cases, unsigned threads) {
    std::vector<SuiteReport> out;
    for (const auto& name : suite_names()) out.push_back(run_suite(name, seed, cases, threads));
    return out;
}

}  // namespace lle::identities
