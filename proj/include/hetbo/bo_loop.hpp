#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "hetbo/acquisition.hpp"
#include "hetbo/objectives.hpp"

namespace hetbo {

/// One optimisation campaign's settings. `budget` counts evaluations after
/// the initial design. em_iterations / sample_count drive the
/// heteroscedastic surrogate refits.
struct CampaignConfig {
    enum class Surrogate { homoscedastic, mlhgp };

    Surrogate surrogate = Surrogate::homoscedastic;
    AcquisitionSpec acquisition;
    int budget = 30;
    int init_design_size = 9;
    std::uint64_t seed = 0;
    int em_iterations = 10;
    int sample_count = 100;

    /// Throws ConfigError on bad counts or on pairing a noise-aware
    /// acquisition (het-AEI, ANPEI) with the homoscedastic surrogate.
    void validate() const;
};

/// One evaluation: the point queried, what was observed, the scoring value,
/// and the running incumbent / best score after this row. `iteration` is the
/// global evaluation index (initial design included, 0-based).
struct CampaignRow {
    int iteration = 0;
    Eigen::VectorXd x;
    double observed = 0.0;
    double score = 0.0;
    double incumbent = 0.0;
    double best_score = 0.0;
};

struct CampaignRecord {
    std::vector<CampaignRow> rows;
    double best_score = 0.0;
    double wall_seconds = 0.0;
};

/// Sequential loop: uniform-random initial design, then `budget` rounds of
/// {refit surrogate from scratch, maximise the acquisition, query}. Fully
/// deterministic given the seed; observation noise uses a stream derived
/// from it.
CampaignRecord run_campaign(const CampaignConfig& config, const NoisyObjective& objective);

/// Pool-backed variant: the initial design is the objective's initial index
/// set and suggestions map to the nearest unconsumed pool row. Throws
/// PoolExhaustedError when the budget exceeds the remaining pool.
CampaignRecord run_campaign(const CampaignConfig& config, TabularObjective objective);

using NoisyObjectiveFactory = std::function<NoisyObjective(std::uint64_t seed)>;
using TabularObjectiveFactory = std::function<TabularObjective(std::uint64_t seed)>;

/// Per-seed campaigns plus the per-evaluation mean and standard error
/// (sample std / sqrt(#seeds); zero for a single seed) of best-so-far score.
struct ReplicateAggregate {
    std::vector<CampaignRecord> records;
    Eigen::VectorXd mean_best;
    Eigen::VectorXd standard_error;
};

ReplicateAggregate run_replicates(CampaignConfig config, const std::vector<std::uint64_t>& seeds,
                                  const NoisyObjectiveFactory& objective_factory);
ReplicateAggregate run_replicates(CampaignConfig config, const std::vector<std::uint64_t>& seeds,
                                  const TabularObjectiveFactory& objective_factory);

} // namespace hetbo
