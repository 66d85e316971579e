#ifndef HETBO_KERNEL_HPP
#define HETBO_KERNEL_HPP

#include <Eigen/Dense>

namespace hetbo {

/// Squared-exponential kernel with one lengthscale per input dimension.
struct Kernel {
    Eigen::VectorXd lengthscales; // > 0, one per dimension
    double signal_variance = 1.0; // > 0

    void validate() const;
};

/// k(x, x') = signal_variance * exp(-0.5 * sum_d ((x_d - x'_d) / l_d)^2)
double kernel_eval(const Kernel& k, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Cross-covariance matrix; entry (i, j) = kernel_eval(k, X.row(i), Y.row(j)).
/// X == Y gives a bitwise-symmetric matrix with signal_variance diagonal.
Eigen::MatrixXd gram_matrix(const Kernel& k, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

} // namespace hetbo

#endif // HETBO_KERNEL_HPP
