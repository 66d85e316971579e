#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hetbo/acquisition.hpp"
#include "hetbo/dataset.hpp"
#include "hetbo/random.hpp"

namespace hetbo {

/// Synthetic benchmark: latent function g, noise standard deviation s(x) >= 0,
/// and the scoring objective f = g - s (maximisation) or g + s (minimisation).
/// The optimiser only ever observes noisy draws; f is for reporting.
struct NoisyObjective {
    enum class Composition { g_minus_s, g_plus_s };

    std::function<double(const Eigen::VectorXd&)> g;
    std::function<double(const Eigen::VectorXd&)> s;
    BoxDomain domain;
    Sense sense = Sense::minimise;
    Composition composition = Composition::g_plus_s;

    double score(const Eigen::VectorXd& x) const {
        return composition == Composition::g_minus_s ? g(x) - s(x) : g(x) + s(x);
    }
};

/// Finite evaluation pool with per-point pseudo-noise; each point can be
/// consumed once. Single-owner per campaign (queries mutate consumption).
struct TabularObjective {
    Dataset pool;
    std::vector<int> initial_indices;
    Eigen::VectorXd pseudo_noise; // variance per pool point
    std::vector<bool> consumed;
    Sense sense = Sense::minimise;

    Eigen::Index unconsumed_count() const;
    /// The rows handed to the optimiser before any query.
    Dataset initial_data() const;
};

struct NoisyEvaluation {
    double observed = 0.0;
    double score = 0.0;
};

struct TabularEvaluation {
    double observed = 0.0;
    double score = 0.0;
    int index = -1;
};

/// 1D sinusoid with a linear trend and noise growing linearly in x:
/// g(x) = sin(x) + 0.2x, s(x) = 0.25x on [0, 10], maximised. The noise
/// penalty makes the earlier of g's two maxima the better target.
NoisyObjective sin_problem();

/// Branin-Hoo with a quadratic-plus-linear noise surface
/// s(x) = 1.4 x1^2 + 0.3 x2 on the canonical domain, minimised.
NoisyObjective branin_problem();

/// Loads a pool CSV (inputs..., target), picks init_count random initial
/// rows, and attaches pseudo-noise estimates. sense = minimise.
TabularObjective soil_problem(const std::string& pool_file, int init_count, RandomSource& rng);

/// Same construction from an in-memory pool.
TabularObjective tabular_from_pool(Dataset pool, int init_count, RandomSource& rng);

/// Noise-variance estimates for a pool with no replicates: squared residuals
/// from a homoscedastic GP fit, smoothed by Gaussian-kernel weights of the
/// given bandwidth (input units).
Eigen::VectorXd pseudo_noise_oracle(const Dataset& pool, double kernel_bandwidth);

/// One noisy draw t = g(x) + s(x) * standard normal, plus the true score.
NoisyEvaluation query_noisy(const NoisyObjective& objective, const Eigen::VectorXd& x,
                            RandomSource& rng);

/// Maps x to the nearest unconsumed pool row (first index wins ties), marks
/// it consumed, and scores it as target + sqrt(pseudo_noise).
TabularEvaluation query_tabular(TabularObjective& objective, const Eigen::VectorXd& x);

/// `count` uniform-random domain points with one noisy draw each.
Dataset sample_noisy_dataset(const NoisyObjective& objective, int count, RandomSource& rng);

/// Synthetic stand-in for the soil pool: two dips in the target over
/// [0.8, 1.8]. The shallow dip sits inside the noisy region (its lucky low
/// draws lure noise-blind minimisation), the deeper dip is quiet and is the
/// genuine optimum under the target + sqrt(pseudo-noise) score.
Dataset make_synthetic_soil_pool(int count, RandomSource& rng);

} // namespace hetbo
