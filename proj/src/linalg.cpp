#include "hetbo/linalg.hpp"

#include <cmath>

#include "hetbo/errors.hpp"

namespace hetbo {

double SpdFactor::log_det() const {
    return 2.0 * lower.diagonal().array().log().sum();
}

namespace {

bool factor_attempt(const Eigen::MatrixXd& a, double jitter, Eigen::MatrixXd& lower) {
    Eigen::MatrixXd shifted = a;
    shifted.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() != Eigen::Success) return false;
    lower = llt.matrixL();
    if ((lower.diagonal().array() <= 0.0).any()) return false;
    const double reconstruction_err = (lower * lower.transpose() - shifted).norm();
    return reconstruction_err <= 1e-8 * std::max(shifted.norm(), 1.0);
}

} // namespace

SpdFactor cholesky_with_jitter(const Eigen::MatrixXd& a, double initial_jitter) {
    if (a.rows() != a.cols()) throw DimensionMismatchError("cholesky_with_jitter: matrix is not square");
    const double scale = std::max(a.norm(), 1.0);
    if ((a - a.transpose()).norm() > 1e-10 * scale)
        throw NotSymmetricError("cholesky_with_jitter: input is not symmetric");

    const double mean_diag = a.diagonal().mean();
    const double jitter_base = 1e-8 * (mean_diag > 0.0 ? mean_diag : 1.0);

    SpdFactor factor;
    double jitter = initial_jitter;
    for (int attempt = 0; attempt <= 6; ++attempt) {
        if (factor_attempt(a, jitter, factor.lower)) {
            factor.jitter = jitter;
            return factor;
        }
        jitter = jitter > 0.0 ? jitter * 10.0 : jitter_base;
    }
    throw NotPositiveDefiniteError("cholesky_with_jitter: factorisation failed at maximum jitter");
}

Eigen::MatrixXd solve_spd(const SpdFactor& factor, const Eigen::MatrixXd& b) {
    if (factor.lower.rows() != b.rows())
        throw DimensionMismatchError("solve_spd: right-hand side has wrong row count");
    Eigen::MatrixXd y = factor.lower.triangularView<Eigen::Lower>().solve(b);
    return factor.lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

} // namespace hetbo
