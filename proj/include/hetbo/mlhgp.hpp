#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hetbo/dataset.hpp"
#include "hetbo/gp.hpp"
#include "hetbo/random.hpp"

namespace hetbo {

// Auxiliary regression targets for the noise process: z_i is the log of the
// empirical noise-variance estimate at training input i, expressed in the
// mean GP's standardised output frame.
struct AuxiliaryNoiseDataset {
    Eigen::MatrixXd inputs;
    Eigen::VectorXd z;
};

// Mean process plus noise process produced by the alternating fit.
// noise_history holds the noise diagonal handed to the mean fit at each
// iteration (standardised units). noise_gp is absent when the fit degenerates
// to a homoscedastic wrap (em_iterations == 0).
struct HetGPModel {
    GPModel mean_gp;
    std::optional<GPModel> noise_gp;
    Dataset training_data;
    int em_iterations_run = 0;
    std::vector<Eigen::VectorXd> noise_history;
};

// Monte-Carlo estimate of the per-point noise variance: draw sample_count
// values from the posterior predictive at each training input and average
// 0.5 * (target - sample)^2, flooring at 1e-8 before taking logs.
AuxiliaryNoiseDataset empirical_noise_estimate(const GPModel& g, const Dataset& data,
                                               int sample_count, RandomSource& rng);

// Alternating fit: homoscedastic mean fit, then em_iterations rounds of
// {estimate empirical noise, fit the noise GP to its logs, refit the mean GP
// with the predicted noise diagonal}. No early exit; the mean kernel is
// warm-started across rounds.
HetGPModel fit_mlhgp(const Dataset& data, int em_iterations, int sample_count, RandomSource& rng);

// r(x): predicted aleatoric noise variance, standardised output units.
Eigen::VectorXd predicted_noise_variance(const HetGPModel& model, const Eigen::MatrixXd& queries);

PredictiveDistribution predict_het_standardised(const HetGPModel& model,
                                                const Eigen::MatrixXd& queries);
PredictiveDistribution predict_het(const HetGPModel& model, const Eigen::MatrixXd& queries);

} // namespace hetbo
