#include "lle/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <lapacke.h>

#include "lle/error.hpp"

namespace lle::linalg {

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& input, bool want_vectors, double tol, int max_sweeps) {
    require(input.rows() == input.cols(), ErrorKind::Domain, "jacobi_eigen: matrix must be square");
    const Eigen::Index n = input.rows();
    Eigen::MatrixXd a = 0.5 * (input + input.transpose());
    Eigen::MatrixXd v;
    if (want_vectors) v = Eigen::MatrixXd::Identity(n, n);

    SymmetricEigen out;
    const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= tol * scale * 1e-3 || n < 2) {
            out.sweeps = sweep;
            break;
        }
        if (sweep + 1 == max_sweeps)
            fail(ErrorKind::Numeric, "jacobi_eigen: no convergence after " + std::to_string(max_sweeps) + " sweeps");
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Skip rotations that cannot change the diagonal in floating point.
                if (std::abs(apq) < 1e-300 ||
                    (std::abs(apq) * 1e18 < std::abs(a(p, p)) && std::abs(apq) * 1e18 < std::abs(a(q, q)))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                if (want_vectors) {
                    for (Eigen::Index k = 0; k < n; ++k) {
                        const double vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp - s * vkq;
                        v(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<Eigen::Index> order(n);
    for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
    out.values.resize(n);
    if (want_vectors) out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = a(order[i], order[i]);
        if (want_vectors) out.vectors.col(i) = v.col(order[i]);
    }
    return out;
}

std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd a) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    std::vector<double> w(static_cast<std::size_t>(n));
    if (n == 0) return w;
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
    if (info != 0) fail(ErrorKind::Numeric, "dsyevd failed with info " + std::to_string(info));
    return w;
}

std::vector<double> hermitian_eigenvalues(Eigen::MatrixXcd a) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    std::vector<double> w(static_cast<std::size_t>(n));
    if (n == 0) return w;
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n,
                                           reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
    if (info != 0) fail(ErrorKind::Numeric, "zheevd failed with info " + std::to_string(info));
    return w;
}

}  // namespace lle::linalg
