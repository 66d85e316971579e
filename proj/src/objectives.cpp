#include "hetbo/objectives.hpp"

#include <cmath>
#include <limits>

#include "hetbo/csv.hpp"
#include "hetbo/errors.hpp"
#include "hetbo/gp.hpp"

namespace hetbo {

Eigen::Index TabularObjective::unconsumed_count() const {
    Eigen::Index count = 0;
    for (const bool used : consumed)
        if (!used) ++count;
    return count;
}

Dataset TabularObjective::initial_data() const {
    Dataset data;
    data.inputs.resize(static_cast<Eigen::Index>(initial_indices.size()), pool.dimension());
    data.targets.resize(static_cast<Eigen::Index>(initial_indices.size()));
    for (std::size_t i = 0; i < initial_indices.size(); ++i) {
        data.inputs.row(static_cast<Eigen::Index>(i)) = pool.inputs.row(initial_indices[i]);
        data.targets[static_cast<Eigen::Index>(i)] = pool.targets[initial_indices[i]];
    }
    return data;
}

NoisyObjective sin_problem() {
    NoisyObjective objective;
    objective.g = [](const Eigen::VectorXd& x) { return std::sin(x[0]) + 0.2 * x[0]; };
    objective.s = [](const Eigen::VectorXd& x) { return 0.25 * x[0]; };
    objective.domain = {Eigen::VectorXd::Constant(1, 0.0), Eigen::VectorXd::Constant(1, 10.0)};
    objective.sense = Sense::maximise;
    objective.composition = NoisyObjective::Composition::g_minus_s;
    return objective;
}

NoisyObjective branin_problem() {
    NoisyObjective objective;
    objective.g = [](const Eigen::VectorXd& x) {
        const double x1 = x[0];
        const double x2 = x[1];
        const double a = x2 - 5.1 * x1 * x1 / (4.0 * M_PI * M_PI) + 5.0 * x1 / M_PI - 6.0;
        return a * a + 10.0 * (1.0 - 1.0 / (8.0 * M_PI)) * std::cos(x1) + 10.0;
    };
    objective.s = [](const Eigen::VectorXd& x) { return 1.4 * x[0] * x[0] + 0.3 * x[1]; };
    Eigen::VectorXd lower(2), upper(2);
    lower << -5.0, 0.0;
    upper << 10.0, 15.0;
    objective.domain = {lower, upper};
    objective.sense = Sense::minimise;
    objective.composition = NoisyObjective::Composition::g_plus_s;
    return objective;
}

Eigen::VectorXd pseudo_noise_oracle(const Dataset& pool, double kernel_bandwidth) {
    pool.validate();
    if (pool.size() < 2)
        throw InsufficientDataError("pseudo_noise_oracle: need at least two pool points");
    if (!(kernel_bandwidth > 0.0))
        throw ConfigError("pseudo_noise_oracle: bandwidth must be positive");

    const GPModel gp = fit_gp(pool);
    const Eigen::VectorXd residual_sq =
        (pool.targets - gp.predict(pool.inputs).mean).array().square();

    const double inv_two_bw_sq = 1.0 / (2.0 * kernel_bandwidth * kernel_bandwidth);
    Eigen::VectorXd smoothed(pool.size());
    for (Eigen::Index i = 0; i < pool.size(); ++i) {
        double weighted = 0.0;
        double total_weight = 0.0;
        for (Eigen::Index j = 0; j < pool.size(); ++j) {
            const double dist_sq = (pool.inputs.row(i) - pool.inputs.row(j)).squaredNorm();
            const double w = std::exp(-dist_sq * inv_two_bw_sq);
            weighted += w * residual_sq[j];
            total_weight += w;
        }
        smoothed[i] = weighted / total_weight; // self-weight 1 keeps this > 0
    }
    return smoothed;
}

TabularObjective tabular_from_pool(Dataset pool, int init_count, RandomSource& rng) {
    pool.validate();
    if (init_count < 1) throw ConfigError("tabular objective: init_count must be positive");
    if (pool.size() < init_count + 1)
        throw InsufficientDataError("tabular objective: pool must exceed the initial design");

    // Bandwidth: 10% of the mean per-dimension input range.
    const Eigen::VectorXd range =
        pool.inputs.colwise().maxCoeff() - pool.inputs.colwise().minCoeff();
    const double bandwidth = 0.1 * range.mean();

    TabularObjective objective;
    objective.pseudo_noise = pseudo_noise_oracle(pool, bandwidth);
    objective.initial_indices = rng.sample_indices(static_cast<int>(pool.size()), init_count);
    objective.consumed.assign(static_cast<std::size_t>(pool.size()), false);
    for (const int index : objective.initial_indices)
        objective.consumed[static_cast<std::size_t>(index)] = true;
    objective.pool = std::move(pool);
    objective.sense = Sense::minimise;
    return objective;
}

TabularObjective soil_problem(const std::string& pool_file, int init_count, RandomSource& rng) {
    return tabular_from_pool(read_xy_csv(pool_file), init_count, rng);
}

NoisyEvaluation query_noisy(const NoisyObjective& objective, const Eigen::VectorXd& x,
                            RandomSource& rng) {
    if (!objective.domain.contains(x))
        throw OutOfDomainError("query_noisy: point outside the objective domain");
    NoisyEvaluation evaluation;
    evaluation.observed = objective.g(x) + objective.s(x) * rng.normal();
    evaluation.score = objective.score(x);
    return evaluation;
}

TabularEvaluation query_tabular(TabularObjective& objective, const Eigen::VectorXd& x) {
    if (x.size() != objective.pool.dimension())
        throw DimensionMismatchError("query_tabular: point dimension does not match the pool");

    Eigen::Index nearest = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < objective.pool.size(); ++i) {
        if (objective.consumed[static_cast<std::size_t>(i)]) continue;
        const double dist = (objective.pool.inputs.row(i).transpose() - x).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            nearest = i;
        }
    }
    if (nearest < 0) throw PoolExhaustedError("query_tabular: every pool point is consumed");

    objective.consumed[static_cast<std::size_t>(nearest)] = true;
    TabularEvaluation evaluation;
    evaluation.observed = objective.pool.targets[nearest];
    evaluation.score =
        evaluation.observed + std::sqrt(std::max(0.0, objective.pseudo_noise[nearest]));
    evaluation.index = static_cast<int>(nearest);
    return evaluation;
}

Dataset sample_noisy_dataset(const NoisyObjective& objective, int count, RandomSource& rng) {
    if (count < 1) throw ConfigError("sample_noisy_dataset: count must be positive");
    Dataset data;
    data.inputs.resize(count, objective.domain.dimension());
    data.targets.resize(count);
    for (Eigen::Index i = 0; i < count; ++i) {
        const Eigen::VectorXd x = rng.uniform_vector(objective.domain.lower, objective.domain.upper);
        data.inputs.row(i) = x.transpose();
        data.targets[i] = objective.g(x) + objective.s(x) * rng.normal();
    }
    return data;
}

Dataset make_synthetic_soil_pool(int count, RandomSource& rng) {
    if (count < 2) throw ConfigError("make_synthetic_soil_pool: need at least two points");
    Dataset pool;
    pool.inputs.resize(count, 1);
    pool.targets.resize(count);
    // Two dips: a shallow decoy inside the noisy region and a deeper quiet
    // optimum, so that chasing lucky draws is objectively worse than finding
    // the low-noise minimum under the score = target + sqrt(pseudo-noise) rule.
    for (Eigen::Index i = 0; i < count; ++i) {
        const double x = rng.uniform(0.8, 1.8);
        const double decoy = (x - 1.0) / 0.12;
        const double optimum = (x - 1.6) / 0.22;
        const double mean = 0.5 - 0.12 * std::exp(-decoy * decoy) - 0.3 * std::exp(-optimum * optimum);
        const double noisy_region = (x - 1.0) / 0.25;
        const double sd = 0.08 * std::exp(-noisy_region * noisy_region) + 0.01;
        pool.inputs(i, 0) = x;
        pool.targets[i] = mean + sd * rng.normal();
    }
    return pool;
}

} // namespace hetbo
