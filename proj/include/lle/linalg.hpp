#pragma once

#include <vector>

#include <Eigen/Dense>

namespace lle::linalg {

struct SymmetricEigen {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns, empty unless requested
    int sweeps = 0;
};

// Cyclic Jacobi rotations for a dense symmetric matrix.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, bool want_vectors = false, double tol = 1e-15,
                            int max_sweeps = 100);

// Eigenvalues (ascending) of large dense matrices through LAPACK divide and
// conquer. Only the lower triangle is read.
std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd a);
std::vector<double> hermitian_eigenvalues(Eigen::MatrixXcd a);

}  // namespace lle::linalg
