#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lle/landau_kernel.hpp"

namespace lle::identities {

using landau::Point2;
using IntMatrix = std::vector<std::vector<long long>>;

// Named inputs and intermediate values of one verification case.
struct Trace {
    std::vector<std::pair<std::string, std::vector<double>>> entries;
    void add(std::string name, std::vector<double> values);
    void add(std::string name, double value) { add(std::move(name), std::vector<double>{value}); }
};

struct Check {
    bool pass = true;
    double error = 0.0;
    Trace trace;
};

// Integer matrices of the change of variables, (m-1) x (m-1).
struct SubstitutionPlan {
    int m = 3;
    int q = 1;
    IntMatrix S;
    IntMatrix A;
    IntMatrix A_inv;
    std::vector<int> flips;  // diagonal of I^(q)

    static SubstitutionPlan make(int m, int q);
    // t = I A^{-1} tau
    std::vector<double> t_from_tau(const std::vector<double>& tau, bool flip = true) const;
    // T_i = sum_j S_ij t_j for i < m, T_m = 0
    std::vector<double> T_from_t(const std::vector<double>& t) const;
    // Shift applied to xi: (tau_1 + tau_{m-1}) / 2 for q <= m-2, tau_1 / 2 for q = m-1.
    double xi_shift(const std::vector<double>& tau) const;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
long long determinant(const IntMatrix& a);
// det A = 1, A A^{-1} = 1, A^{-1} A = 1, I^2 = 1 and S skew, all in integers.
Check verify_integer_plan(int m, int q);

Check verify_phase_telescoping(const Point2& x, const std::vector<Point2>& y);
Check verify_local_frame_reduction(const std::vector<Point2>& y, const Point2& unit_normal);
Check verify_exponent_identity(int m, int q, double xi, const std::vector<double>& tau);
Check verify_T_in_tau(int m, int q, const std::vector<double>& tau);
Check verify_laguerre_argument_maps(int m, int q, double xi, const std::vector<double>& tau,
                                    const std::vector<double>& omega);
Check verify_hermite_identity(int level, double xi, double tau);
Check verify_mehler(double xi, double tau, double t);
Check verify_christoffel_darboux(int n, double tau, double tau_prime);
// sum_{l <= n} L_l(t) = L_n^{(1)}(t)
Check verify_laguerre_sum(int n, double t);

struct Failure {
    std::size_t index = 0;
    double error = 0.0;
    Trace trace;
};

struct SuiteReport {
    std::string identity;
    std::size_t cases = 0;
    std::vector<Failure> failures;
    double max_error = 0.0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;

    bool passed() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
// Runs `cases` seeded random draws of one suite; case i uses a seed derived
// from (seed, suite, i), so results do not depend on the worker count.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t cases = 1000, unsigned threads = 1);
std::vector<SuiteReport> run_all(std::uint64_t seed, std::size_t cases = 1000, unsigned threads = 1);

}  // namespace lle::identities
