#include "hetbo/bo_loop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hetbo/errors.hpp"
#include "hetbo/gp.hpp"
#include "hetbo/mlhgp.hpp"

namespace hetbo {

namespace {

// Decorrelates observation noise from the surrogate/acquisition stream.
constexpr std::uint64_t kNoiseStreamSalt = 0x9E3779B97F4A7C15ULL;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void append_row(CampaignRecord& record, Dataset& observations, bool maximise,
                const Eigen::VectorXd& x, double observed, double score) {
    const Eigen::Index n = observations.size();
    observations.inputs.conservativeResize(n + 1, Eigen::NoChange);
    observations.inputs.row(n) = x.transpose();
    observations.targets.conservativeResize(n + 1);
    observations.targets[n] = observed;

    CampaignRow row;
    row.iteration = static_cast<int>(n);
    row.x = x;
    row.observed = observed;
    row.score = score;
    if (record.rows.empty()) {
        row.incumbent = observed;
        row.best_score = score;
    } else {
        const CampaignRow& prev = record.rows.back();
        row.incumbent =
            maximise ? std::max(prev.incumbent, observed) : std::min(prev.incumbent, observed);
        row.best_score =
            maximise ? std::max(prev.best_score, score) : std::min(prev.best_score, score);
    }
    record.rows.push_back(std::move(row));
}

// Refit the configured surrogate on everything seen so far and maximise the
// acquisition. Incumbent: extremal observed target, earliest index on ties.
AcquisitionResult suggest_next(const CampaignConfig& config, const Dataset& observations,
                               Sense sense, const BoxDomain& domain, RandomSource& rng) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < observations.size(); ++i) {
        const bool improves = sense == Sense::maximise
                                  ? observations.targets[i] > observations.targets[best]
                                  : observations.targets[i] < observations.targets[best];
        if (improves) best = i;
    }
    const Incumbent incumbent{observations.targets[best],
                              observations.inputs.row(best).transpose()};

    AcquisitionSpec spec = config.acquisition;
    spec.sense = sense;

    if (config.surrogate == CampaignConfig::Surrogate::mlhgp) {
        const HetGPModel model =
            fit_mlhgp(observations, config.em_iterations, config.sample_count, rng);
        return maximise_acquisition(spec, model, incumbent, domain, rng);
    }
    const GPModel model = fit_gp(observations);
    if (spec.kind == AcquisitionKind::aei)
        spec.noise_std = std::sqrt(model.noise_variance());
    return maximise_acquisition(spec, model, incumbent, domain, rng);
}

BoxDomain pool_bounding_box(const Dataset& pool) {
    BoxDomain box{pool.inputs.colwise().minCoeff().transpose(),
                  pool.inputs.colwise().maxCoeff().transpose()};
    for (Eigen::Index d = 0; d < box.dimension(); ++d)
        if (!(box.upper[d] - box.lower[d] > 0.0)) {
            box.lower[d] -= 0.5;
            box.upper[d] += 0.5;
        }
    return box;
}

ReplicateAggregate aggregate_records(std::vector<CampaignRecord> records) {
    ReplicateAggregate aggregate;
    const std::size_t rows = records.front().rows.size();
    for (const CampaignRecord& record : records)
        if (record.rows.size() != rows)
            throw ConfigError("run_replicates: campaigns disagree on evaluation count");

    const auto n = static_cast<double>(records.size());
    aggregate.mean_best.resize(static_cast<Eigen::Index>(rows));
    aggregate.standard_error.setZero(static_cast<Eigen::Index>(rows));
    for (std::size_t k = 0; k < rows; ++k) {
        double mean = 0.0;
        for (const CampaignRecord& record : records) mean += record.rows[k].best_score;
        mean /= n;
        aggregate.mean_best[static_cast<Eigen::Index>(k)] = mean;
        if (records.size() > 1) {
            double ss = 0.0;
            for (const CampaignRecord& record : records) {
                const double diff = record.rows[k].best_score - mean;
                ss += diff * diff;
            }
            aggregate.standard_error[static_cast<Eigen::Index>(k)] =
                std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        }
    }
    aggregate.records = std::move(records);
    return aggregate;
}

} // namespace

void CampaignConfig::validate() const {
    if (budget < 0) throw ConfigError("campaign: budget must be non-negative");
    if (init_design_size < 1) throw ConfigError("campaign: init_design_size must be positive");
    if (em_iterations < 0) throw ConfigError("campaign: em_iterations must be non-negative");
    if (sample_count < 1) throw ConfigError("campaign: sample_count must be positive");
    acquisition.validate();
    const bool noise_aware = acquisition.kind == AcquisitionKind::het_aei ||
                             acquisition.kind == AcquisitionKind::anpei;
    if (noise_aware && surrogate == Surrogate::homoscedastic)
        throw ConfigError("campaign: het-AEI and ANPEI need the heteroscedastic surrogate");
}

CampaignRecord run_campaign(const CampaignConfig& config, const NoisyObjective& objective) {
    config.validate();
    objective.domain.validate();
    const auto start = std::chrono::steady_clock::now();

    RandomSource rng(config.seed);
    RandomSource noise_rng(config.seed ^ kNoiseStreamSalt);
    const bool maximise = objective.sense == Sense::maximise;

    CampaignRecord record;
    Dataset observations;
    observations.inputs.resize(0, objective.domain.dimension());
    observations.targets.resize(0);

    for (int i = 0; i < config.init_design_size; ++i) {
        const Eigen::VectorXd x =
            rng.uniform_vector(objective.domain.lower, objective.domain.upper);
        const NoisyEvaluation evaluation = query_noisy(objective, x, noise_rng);
        append_row(record, observations, maximise, x, evaluation.observed, evaluation.score);
    }

    for (int iter = 0; iter < config.budget; ++iter) {
        const AcquisitionResult suggestion =
            suggest_next(config, observations, objective.sense, objective.domain, rng);
        const NoisyEvaluation evaluation = query_noisy(objective, suggestion.argmax, noise_rng);
        append_row(record, observations, maximise, suggestion.argmax, evaluation.observed,
                   evaluation.score);
    }

    record.best_score = record.rows.back().best_score;
    record.wall_seconds = elapsed_seconds(start);
    return record;
}

CampaignRecord run_campaign(const CampaignConfig& config, TabularObjective objective) {
    config.validate();
    objective.pool.validate();
    if (objective.initial_indices.empty())
        throw ConfigError("campaign: tabular objective has no initial design");
    const auto start = std::chrono::steady_clock::now();

    RandomSource rng(config.seed);
    const bool maximise = objective.sense == Sense::maximise;
    const BoxDomain domain = pool_bounding_box(objective.pool);

    CampaignRecord record;
    Dataset observations;
    observations.inputs.resize(0, objective.pool.dimension());
    observations.targets.resize(0);

    for (const int index : objective.initial_indices) {
        const double observed = objective.pool.targets[index];
        const double score =
            observed + std::sqrt(std::max(0.0, objective.pseudo_noise[index]));
        append_row(record, observations, maximise,
                   objective.pool.inputs.row(index).transpose(), observed, score);
    }

    for (int iter = 0; iter < config.budget; ++iter) {
        const AcquisitionResult suggestion =
            suggest_next(config, observations, objective.sense, domain, rng);
        const TabularEvaluation evaluation = query_tabular(objective, suggestion.argmax);
        append_row(record, observations, maximise,
                   objective.pool.inputs.row(evaluation.index).transpose(), evaluation.observed,
                   evaluation.score);
    }

    record.best_score = record.rows.back().best_score;
    record.wall_seconds = elapsed_seconds(start);
    return record;
}

ReplicateAggregate run_replicates(CampaignConfig config, const std::vector<std::uint64_t>& seeds,
                                  const NoisyObjectiveFactory& objective_factory) {
    if (seeds.empty()) throw ConfigError("run_replicates: need at least one seed");
    std::vector<CampaignRecord> records;
    records.reserve(seeds.size());
    for (const std::uint64_t seed : seeds) {
        config.seed = seed;
        records.push_back(run_campaign(config, objective_factory(seed)));
    }
    return aggregate_records(std::move(records));
}

ReplicateAggregate run_replicates(CampaignConfig config, const std::vector<std::uint64_t>& seeds,
                                  const TabularObjectiveFactory& objective_factory) {
    if (seeds.empty()) throw ConfigError("run_replicates: need at least one seed");
    std::vector<CampaignRecord> records;
    records.reserve(seeds.size());
    for (const std::uint64_t seed : seeds) {
        config.seed = seed;
        records.push_back(run_campaign(config, objective_factory(seed)));
    }
    return aggregate_records(std::move(records));
}

} // namespace hetbo
