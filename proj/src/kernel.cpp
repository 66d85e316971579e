#include "hetbo/kernel.hpp"

#include <cmath>

#include "hetbo/errors.hpp"

namespace hetbo {

void Kernel::validate() const {
    if (lengthscales.size() == 0)
        throw DimensionMismatchError("Kernel: lengthscales must not be empty");
    if (!(lengthscales.array() > 0.0).all() || !(signal_variance > 0.0))
        throw ConfigError("Kernel: lengthscales and signal variance must be positive");
}

double kernel_eval(const Kernel& k, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != k.lengthscales.size() || y.size() != k.lengthscales.size())
        throw DimensionMismatchError("kernel_eval: input dimension does not match lengthscales");
    const double sq = ((x - y).array() / k.lengthscales.array()).square().sum();
    return k.signal_variance * std::exp(-0.5 * sq);
}

Eigen::MatrixXd gram_matrix(const Kernel& k, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    if (x.cols() != k.lengthscales.size() || y.cols() != k.lengthscales.size())
        throw DimensionMismatchError("gram_matrix: input dimension does not match lengthscales");
    Eigen::MatrixXd out(x.rows(), y.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < y.rows(); ++j) {
            const double sq = ((x.row(i) - y.row(j)).array() / k.lengthscales.transpose().array()).square().sum();
            out(i, j) = k.signal_variance * std::exp(-0.5 * sq);
        }
    }
    return out;
}

} // namespace hetbo
