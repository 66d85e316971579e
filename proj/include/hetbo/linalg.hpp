#ifndef HETBO_LINALG_HPP
#define HETBO_LINALG_HPP

#include <Eigen/Dense>

namespace hetbo {

/// Lower-triangular Cholesky factor of A + jitter*I.
struct SpdFactor {
    Eigen::MatrixXd lower;
    double jitter = 0.0;

    Eigen::Index rows() const { return lower.rows(); }

    /// 2 * sum(log(diag(L))) = log det(A + jitter*I).
    double log_det() const;
};

/// Factor a symmetric matrix, escalating the diagonal jitter x10 (at most six
/// escalations) until the factorisation succeeds and L*L^T reconstructs
/// A + jitter*I to 1e-8 relative Frobenius error. A zero initial jitter
/// escalates from 1e-8 times the mean diagonal.
///
/// Throws NotSymmetricError for asymmetry beyond 1e-10 relative,
/// NotPositiveDefiniteError when the maximum jitter is exhausted.
SpdFactor cholesky_with_jitter(const Eigen::MatrixXd& a, double initial_jitter);

/// Solve (A + jitter*I) X = B through two triangular solves.
Eigen::MatrixXd solve_spd(const SpdFactor& factor, const Eigen::MatrixXd& b);

} // namespace hetbo

#endif // HETBO_LINALG_HPP
