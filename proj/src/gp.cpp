#include "hetbo/gp.hpp"

#include <cmath>
#include <limits>

#include "hetbo/errors.hpp"
#include "hetbo/optimize.hpp"

namespace hetbo {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double lml_value(const Eigen::VectorXd& targets, const Eigen::VectorXd& alpha, const SpdFactor& factor) {
    const auto n = static_cast<double>(targets.size());
    return -0.5 * targets.dot(alpha) - 0.5 * factor.log_det() - 0.5 * n * kLog2Pi;
}

// Shared evidence-and-gradient core. `scalar_noise` selects whether the
// gradient carries a log noise-variance entry.
LmlResult lml_core(const Kernel& kernel, const Eigen::VectorXd& noise_diagonal, bool scalar_noise,
                   double noise_variance, const Dataset& data) {
    kernel.validate();
    data.validate();
    const Eigen::Index n = data.size();
    const Eigen::Index d = data.dimension();
    if (kernel.lengthscales.size() != d)
        throw DimensionMismatchError("log_marginal_likelihood: lengthscale count does not match data");

    const Eigen::MatrixXd k_f = gram_matrix(kernel, data.inputs, data.inputs);
    Eigen::MatrixXd k_y = k_f;
    k_y.diagonal() += noise_diagonal;

    const SpdFactor factor = cholesky_with_jitter(k_y, 0.0);
    const Eigen::VectorXd alpha = solve_spd(factor, data.targets);

    LmlResult result;
    result.value = lml_value(data.targets, alpha, factor);

    // d(lml)/d(theta) = 0.5 tr((alpha alpha^T - K_y^-1) dK_y/dtheta)
    const Eigen::MatrixXd k_inv = solve_spd(factor, Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd a = alpha * alpha.transpose() - k_inv;
    const Eigen::MatrixXd b = a.cwiseProduct(k_f);

    result.gradient.resize(d + 1 + (scalar_noise ? 1 : 0));
    for (Eigen::Index dim = 0; dim < d; ++dim) {
        // dK/d(log l_dim) = K_f .* ((x_i - x_j) / l_dim)^2
        const Eigen::VectorXd col = data.inputs.col(dim) / kernel.lengthscales[dim];
        double g = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                const double diff = col[i] - col[j];
                g += b(i, j) * diff * diff;
            }
        result.gradient[dim] = 0.5 * g;
    }
    result.gradient[d] = 0.5 * b.sum(); // dK/d(log sf2) = K_f
    if (scalar_noise) result.gradient[d + 1] = 0.5 * noise_variance * a.trace();
    return result;
}

} // namespace

LmlResult log_marginal_likelihood(const Kernel& kernel, double noise_variance, const Dataset& data) {
    if (noise_variance < 0.0)
        throw ConfigError("log_marginal_likelihood: negative noise variance");
    return lml_core(kernel, Eigen::VectorXd::Constant(data.size(), noise_variance), true,
                    noise_variance, data);
}

LmlResult log_marginal_likelihood(const Kernel& kernel, const Eigen::VectorXd& noise_diagonal,
                                  const Dataset& data) {
    if (noise_diagonal.size() != data.size())
        throw DimensionMismatchError("log_marginal_likelihood: noise diagonal length mismatch");
    return lml_core(kernel, noise_diagonal, false, 0.0, data);
}

GPModel::GPModel(Kernel kernel, const Dataset& data, StandardisationTransform transform,
                 double noise_variance)
    : kernel_(std::move(kernel)),
      data_(transform.transform(data)),
      transform_(std::move(transform)),
      noise_diagonal_(Eigen::VectorXd::Constant(data.size(), noise_variance)),
      scalar_noise_(noise_variance) {
    build_cache();
}

GPModel::GPModel(Kernel kernel, const Dataset& data, StandardisationTransform transform,
                 Eigen::VectorXd noise_diagonal)
    : kernel_(std::move(kernel)),
      data_(transform.transform(data)),
      transform_(std::move(transform)),
      noise_diagonal_(std::move(noise_diagonal)) {
    if (noise_diagonal_.size() != data_.size())
        throw DimensionMismatchError("GPModel: noise diagonal length mismatch");
    build_cache();
}

void GPModel::build_cache() {
    kernel_.validate();
    data_.validate();
    Eigen::MatrixXd k_y = gram_matrix(kernel_, data_.inputs, data_.inputs);
    k_y.diagonal() += noise_diagonal_;
    factor_ = cholesky_with_jitter(k_y, 0.0);
    alpha_ = solve_spd(factor_, data_.targets);
    log_marginal_ = lml_value(data_.targets, alpha_, factor_);
}

double GPModel::noise_variance() const {
    if (!scalar_noise_) throw ConfigError("GPModel: heteroscedastic model has no scalar noise");
    return *scalar_noise_;
}

PredictiveDistribution GPModel::predict_standardised(const Eigen::MatrixXd& queries) const {
    if (queries.cols() != data_.dimension())
        throw DimensionMismatchError("predict: query dimension does not match training data");

    const Eigen::MatrixXd q_std = transform_.transform_inputs(queries);
    const Eigen::MatrixXd k_star = gram_matrix(kernel_, q_std, data_.inputs);

    PredictiveDistribution out;
    out.mean = k_star * alpha_;

    // epistemic = k(x,x) - || L^-1 k_* ||^2, clamped at zero
    const Eigen::MatrixXd w = factor_.lower.triangularView<Eigen::Lower>().solve(k_star.transpose());
    out.epistemic_variance =
        (kernel_.signal_variance - w.colwise().squaredNorm().transpose().array()).max(0.0).matrix();

    out.aleatoric_variance = scalar_noise_
                                 ? Eigen::VectorXd::Constant(queries.rows(), *scalar_noise_)
                                 : Eigen::VectorXd::Zero(queries.rows());
    out.total_variance = out.epistemic_variance + out.aleatoric_variance;
    return out;
}

PredictiveDistribution GPModel::predict(const Eigen::MatrixXd& queries) const {
    PredictiveDistribution out = predict_standardised(queries);
    const double scale = transform_.output_std * transform_.output_std;
    out.mean = transform_.untransform_targets(out.mean);
    out.epistemic_variance *= scale;
    out.aleatoric_variance *= scale;
    out.total_variance = out.epistemic_variance + out.aleatoric_variance;
    return out;
}

GPModel fit_gp(const Dataset& data, const NoiseSpec& noise, const FitOptions& options) {
    data.validate();
    const Eigen::Index d = data.dimension();
    if (noise.mode() == NoiseSpec::Mode::heteroscedastic && noise.diagonal().size() != data.size())
        throw DimensionMismatchError("fit_gp: heteroscedastic diagonal length mismatch");

    const StandardisationTransform transform = StandardisationTransform::fit(data);
    const Dataset std_data = transform.transform(data);

    const bool learn_noise = noise.mode() == NoiseSpec::Mode::learn;
    const Eigen::Index n_params = d + 1 + (learn_noise ? 1 : 0);

    Eigen::VectorXd theta0(n_params);
    if (options.initial_lengthscales.size() == 0) {
        theta0.head(d).setZero(); // log 1.0
    } else if (options.initial_lengthscales.size() == d) {
        theta0.head(d) = options.initial_lengthscales.array().log();
    } else {
        throw DimensionMismatchError("fit_gp: initial lengthscale count mismatch");
    }
    theta0[d] = std::log(options.initial_signal_variance);
    if (learn_noise) theta0[d + 1] = std::log(options.initial_noise_variance);

    // Bounds keep 9-point initial designs away from degenerate fits.
    Eigen::VectorXd lower(n_params), upper(n_params);
    lower.head(d + 1).setConstant(std::log(1e-3));
    upper.head(d + 1).setConstant(std::log(1e3));
    if (learn_noise) {
        lower[d + 1] = std::log(1e-8);
        upper[d + 1] = std::log(1e3);
    }

    const auto unpack = [&](const Eigen::VectorXd& theta) {
        Kernel k{theta.head(d).array().exp(), std::exp(theta[d])};
        const double sn2 = learn_noise  ? std::exp(theta[d + 1])
                           : noise.mode() == NoiseSpec::Mode::fixed ? noise.variance()
                                                                    : 0.0;
        return std::make_pair(k, sn2);
    };

    const auto evaluate = [&](const Eigen::VectorXd& theta) -> LmlResult {
        const auto [k, sn2] = unpack(theta);
        if (noise.mode() == NoiseSpec::Mode::heteroscedastic)
            return log_marginal_likelihood(k, noise.diagonal(), std_data);
        LmlResult r = log_marginal_likelihood(k, sn2, std_data);
        if (!learn_noise) r.gradient.conservativeResize(d + 1); // noise term is held
        return r;
    };

    // The fit contract wants a NonFiniteObjective error at a bad start; later
    // factorisation failures just repel the line search.
    const LmlResult at_start = evaluate(theta0);
    if (!std::isfinite(at_start.value))
        throw NonFiniteObjectiveError("fit_gp: marginal likelihood is non-finite at the initial point");

    const BoundedObjective objective = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
        try {
            const LmlResult r = evaluate(theta);
            grad = -r.gradient;
            return -r.value;
        } catch (const NotPositiveDefiniteError&) {
            grad.setZero(theta.size());
            return std::numeric_limits<double>::infinity();
        }
    };

    const MinimizeResult best = minimize_bounded(objective, theta0, lower, upper);
    const auto [k_best, sn2_best] = unpack(best.argmin);
    if (noise.mode() == NoiseSpec::Mode::heteroscedastic)
        return GPModel(k_best, data, transform, noise.diagonal());
    return GPModel(k_best, data, transform, sn2_best);
}

double nlpd(const PredictiveDistribution& prediction, const Eigen::VectorXd& truth) {
    if (prediction.mean.size() != truth.size())
        throw DimensionMismatchError("nlpd: prediction and truth lengths differ");
    if ((prediction.total_variance.array() <= 0.0).any())
        throw NonPositiveVarianceError("nlpd: total variance must be positive");
    const Eigen::ArrayXd v = prediction.total_variance.array();
    const Eigen::ArrayXd sq = (truth - prediction.mean).array().square();
    return (0.5 * (2.0 * M_PI * v).log() + sq / (2.0 * v)).mean();
}

} // namespace hetbo
