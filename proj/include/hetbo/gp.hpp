#ifndef HETBO_GP_HPP
#define HETBO_GP_HPP

#include <optional>

#include <Eigen/Dense>

#include "hetbo/dataset.hpp"
#include "hetbo/kernel.hpp"
#include "hetbo/linalg.hpp"

namespace hetbo {

/// Per-query Gaussian marginals. Variances are split into the epistemic part
/// (shrinks with data) and the aleatoric part (observation noise);
/// total_variance is their elementwise sum, exactly.
struct PredictiveDistribution {
    Eigen::VectorXd mean;
    Eigen::VectorXd epistemic_variance;
    Eigen::VectorXd aleatoric_variance;
    Eigen::VectorXd total_variance;
};

/// Observation-noise treatment for a GP fit. Fixed and heteroscedastic values
/// are in standardised target units (these modes exist for the
/// heteroscedastic EM loop, which works in that frame).
class NoiseSpec {
public:
    enum class Mode { learn, fixed, heteroscedastic };

    static NoiseSpec learned() { return NoiseSpec(Mode::learn, 0.0, {}); }
    static NoiseSpec fixed_variance(double variance) { return NoiseSpec(Mode::fixed, variance, {}); }
    static NoiseSpec heteroscedastic(Eigen::VectorXd diagonal) {
        return NoiseSpec(Mode::heteroscedastic, 0.0, std::move(diagonal));
    }

    Mode mode() const { return mode_; }
    double variance() const { return variance_; }
    const Eigen::VectorXd& diagonal() const { return diagonal_; }

private:
    NoiseSpec(Mode mode, double variance, Eigen::VectorXd diagonal)
        : mode_(mode), variance_(variance), diagonal_(std::move(diagonal)) {}

    Mode mode_;
    double variance_;
    Eigen::VectorXd diagonal_;
};

/// Hyperparameter initial values for marginal-likelihood maximisation.
struct FitOptions {
    Eigen::VectorXd initial_lengthscales; // empty -> 1.0 per dimension
    double initial_signal_variance = 2.5;
    double initial_noise_variance = 1.0; // scalar-noise modes only
};

/// Fitted GP with a cached factorisation of K + R (standardised frame).
/// Immutable after construction; predict/nlpd are safe to call concurrently.
class GPModel {
public:
    /// Scalar observation noise (learn/fixed fits, and hand-assembled models).
    GPModel(Kernel kernel, const Dataset& data, StandardisationTransform transform, double noise_variance);
    /// Per-training-point noise diagonal (heteroscedastic fits).
    GPModel(Kernel kernel, const Dataset& data, StandardisationTransform transform,
            Eigen::VectorXd noise_diagonal);

    const Kernel& kernel() const { return kernel_; }
    const StandardisationTransform& transform() const { return transform_; }
    const Dataset& standardised_data() const { return data_; }

    bool has_scalar_noise() const { return scalar_noise_.has_value(); }
    /// Learned/fixed noise variance in standardised units.
    double noise_variance() const;
    /// Noise variance per training point, standardised units.
    const Eigen::VectorXd& noise_diagonal() const { return noise_diagonal_; }

    /// Marginal log likelihood at the stored hyperparameters.
    double log_marginal() const { return log_marginal_; }
    double applied_jitter() const { return factor_.jitter; }

    /// Posterior marginals at query rows, original units. Aleatoric variance
    /// is the (rescaled) scalar noise; heteroscedastic models report zero
    /// here because noise at new inputs is the noise GP's job (predict_het).
    PredictiveDistribution predict(const Eigen::MatrixXd& queries) const;

    /// Same marginals in the standardised target frame. Acquisition functions
    /// and the heteroscedastic EM loop work here.
    PredictiveDistribution predict_standardised(const Eigen::MatrixXd& queries) const;

private:
    void build_cache();

    Kernel kernel_;
    Dataset data_; // standardised
    StandardisationTransform transform_;
    Eigen::VectorXd noise_diagonal_;
    std::optional<double> scalar_noise_;
    SpdFactor factor_;
    Eigen::VectorXd alpha_; // (K + R)^-1 t
    double log_marginal_ = 0.0;
};

struct LmlResult {
    double value = 0.0;
    /// Gradient over log-hyperparameters: [log l_1..d, log signal_variance,
    /// log noise_variance (scalar-noise overload only)].
    Eigen::VectorXd gradient;
};

/// Evidence and analytic gradient for scalar observation noise.
/// Expects standardised data.
LmlResult log_marginal_likelihood(const Kernel& kernel, double noise_variance, const Dataset& data);

/// Fixed-diagonal overload; the gradient excludes the (held) noise term.
LmlResult log_marginal_likelihood(const Kernel& kernel, const Eigen::VectorXd& noise_diagonal,
                                  const Dataset& data);

/// Standardise, then maximise the evidence over log-hyperparameters from the
/// FitOptions initial values (lengthscales 1.0, signal variance 2.5, noise
/// 1.0 unless overridden). Heteroscedastic noise is held fixed during the fit.
GPModel fit_gp(const Dataset& data, const NoiseSpec& noise = NoiseSpec::learned(),
               const FitOptions& options = {});

/// Mean negative log predictive density of `truth` under per-point Gaussians
/// with the prediction's mean and total variance.
double nlpd(const PredictiveDistribution& prediction, const Eigen::VectorXd& truth);

} // namespace hetbo

#endif // HETBO_GP_HPP
