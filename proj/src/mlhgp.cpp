#include "hetbo/mlhgp.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hetbo/errors.hpp"

namespace hetbo {

AuxiliaryNoiseDataset empirical_noise_estimate(const GPModel& g, const Dataset& data,
                                               int sample_count, RandomSource& rng) {
    if (sample_count < 1)
        throw ConfigError("empirical_noise_estimate: sample_count must be positive");
    data.validate();
    if (!g.has_scalar_noise() && g.noise_diagonal().size() != data.size())
        throw DimensionMismatchError("empirical_noise_estimate: model was not fitted on this data");

    const PredictiveDistribution pred = g.predict_standardised(data.inputs);
    Eigen::VectorXd sampling_variance = pred.epistemic_variance;
    if (g.has_scalar_noise())
        sampling_variance.array() += g.noise_variance();
    else
        sampling_variance += g.noise_diagonal();

    const Eigen::VectorXd targets = g.transform().transform_targets(data.targets);

    Eigen::VectorXd z(data.size());
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        const double sd = std::sqrt(std::max(0.0, sampling_variance[i]));
        double v = 0.0;
        for (int s = 0; s < sample_count; ++s) {
            const double residual = targets[i] - (pred.mean[i] + sd * rng.normal());
            v += 0.5 * residual * residual;
        }
        v /= sample_count;
        z[i] = std::log(std::max(v, 1e-8));
    }
    return {data.inputs, z};
}

HetGPModel fit_mlhgp(const Dataset& data, int em_iterations, int sample_count, RandomSource& rng) {
    data.validate();
    if (data.size() < 2)
        throw InsufficientDataError("fit_mlhgp: need at least two observations");
    if (em_iterations < 0)
        throw ConfigError("fit_mlhgp: em_iterations must be non-negative");

    GPModel mean_gp = fit_gp(data);
    if (!std::isfinite(mean_gp.log_marginal()))
        throw EMDivergedError("fit_mlhgp: non-finite marginal likelihood at the initial fit");

    std::optional<GPModel> noise_gp;
    std::vector<Eigen::VectorXd> noise_history;
    noise_history.reserve(static_cast<std::size_t>(std::max(em_iterations, 0)));

    for (int iter = 0; iter < em_iterations; ++iter) {
        const AuxiliaryNoiseDataset aux = empirical_noise_estimate(mean_gp, data, sample_count, rng);
        GPModel g2 = fit_gp(Dataset{aux.inputs, aux.z});

        Eigen::VectorXd r = g2.predict(data.inputs).mean.array().exp();

        FitOptions warm;
        warm.initial_lengthscales = mean_gp.kernel().lengthscales;
        warm.initial_signal_variance = mean_gp.kernel().signal_variance;
        GPModel g3 = fit_gp(data, NoiseSpec::heteroscedastic(r), warm);

        if (!std::isfinite(g2.log_marginal()) || !std::isfinite(g3.log_marginal()))
            throw EMDivergedError("fit_mlhgp: non-finite marginal likelihood at iteration " +
                                  std::to_string(iter + 1));

        noise_history.push_back(std::move(r));
        noise_gp = std::move(g2);
        mean_gp = std::move(g3);
    }

    return HetGPModel{std::move(mean_gp), std::move(noise_gp), data, em_iterations,
                      std::move(noise_history)};
}

Eigen::VectorXd predicted_noise_variance(const HetGPModel& model, const Eigen::MatrixXd& queries) {
    if (queries.cols() != model.training_data.dimension())
        throw DimensionMismatchError("predict_het: query dimension does not match training data");
    if (model.noise_gp)
        return model.noise_gp->predict(queries).mean.array().exp();
    return Eigen::VectorXd::Constant(queries.rows(), model.mean_gp.noise_variance());
}

PredictiveDistribution predict_het_standardised(const HetGPModel& model,
                                                const Eigen::MatrixXd& queries) {
    PredictiveDistribution out = model.mean_gp.predict_standardised(queries);
    out.aleatoric_variance = predicted_noise_variance(model, queries);
    out.total_variance = out.epistemic_variance + out.aleatoric_variance;
    return out;
}

PredictiveDistribution predict_het(const HetGPModel& model, const Eigen::MatrixXd& queries) {
    PredictiveDistribution out = predict_het_standardised(model, queries);
    const StandardisationTransform& tf = model.mean_gp.transform();
    const double scale = tf.output_std * tf.output_std;
    out.mean = tf.untransform_targets(out.mean);
    out.epistemic_variance *= scale;
    out.aleatoric_variance *= scale;
    out.total_variance = out.epistemic_variance + out.aleatoric_variance;
    return out;
}

} // namespace hetbo
