#include "hetbo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetbo/errors.hpp"
#include "hetbo/normal.hpp"

namespace hetbo {

void AcquisitionSpec::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ConfigError("AcquisitionSpec: alpha must lie in [0, 1]");
    if (!(noise_std >= 0.0))
        throw ConfigError("AcquisitionSpec: noise_std must be non-negative");
}

double expected_improvement(double mu, double sigma_total, double eta, Sense sense) {
    const double u = sense == Sense::minimise ? eta - mu : mu - eta;
    if (sigma_total <= 0.0) return std::max(0.0, u);
    const double z = u / sigma_total;
    return std::max(0.0, u * std_normal_cdf(z) + sigma_total * std_normal_pdf(z));
}

double augmented_ei(double mu, double sigma_total, double eta, double noise_std, Sense sense) {
    const double ei = expected_improvement(mu, sigma_total, eta, sense);
    const double denom = std::sqrt(sigma_total * sigma_total + noise_std * noise_std);
    const double multiplier = denom > 0.0 ? 1.0 - noise_std / denom : 1.0;
    return ei * multiplier;
}

double het_augmented_ei(double mu, double sigma_total, double eta, double noise_variance,
                        Sense sense) {
    const double ei = expected_improvement(mu, sigma_total, eta, sense);
    const double denom = std::sqrt(sigma_total * sigma_total + noise_variance);
    const double multiplier = denom > 0.0 ? 1.0 - std::sqrt(noise_variance) / denom : 1.0;
    return ei * multiplier;
}

double anpei(double mu, double sigma_total, double eta, double noise_variance, double alpha,
             Sense sense) {
    return alpha * expected_improvement(mu, sigma_total, eta, sense) -
           (1.0 - alpha) * std::sqrt(noise_variance);
}

Eigen::MatrixXd acquisition_candidates(const BoxDomain& domain, RandomSource& rng) {
    domain.validate();
    const Eigen::Index d = domain.dimension();

    Eigen::Index grid_count = 0;
    if (d == 1) grid_count = 1000;
    if (d == 2) grid_count = 50 * 50;
    constexpr Eigen::Index random_count = 256;

    Eigen::MatrixXd candidates(grid_count + random_count, d);
    if (d == 1) {
        for (Eigen::Index i = 0; i < grid_count; ++i)
            candidates(i, 0) = domain.lower[0] + (domain.upper[0] - domain.lower[0]) *
                                                     static_cast<double>(i) /
                                                     static_cast<double>(grid_count - 1);
    } else if (d == 2) {
        Eigen::Index row = 0;
        for (Eigen::Index i = 0; i < 50; ++i)
            for (Eigen::Index j = 0; j < 50; ++j, ++row) {
                candidates(row, 0) =
                    domain.lower[0] + (domain.upper[0] - domain.lower[0]) * static_cast<double>(i) / 49.0;
                candidates(row, 1) =
                    domain.lower[1] + (domain.upper[1] - domain.lower[1]) * static_cast<double>(j) / 49.0;
            }
    }
    for (Eigen::Index i = 0; i < random_count; ++i)
        candidates.row(grid_count + i) = rng.uniform_vector(domain.lower, domain.upper).transpose();
    return candidates;
}

namespace {

// Scores all candidates against standardised predictive moments and the
// standardised incumbent; first index wins ties.
AcquisitionResult pick_best(const AcquisitionSpec& spec, const Eigen::MatrixXd& candidates,
                            const PredictiveDistribution& pred, double eta,
                            const Eigen::VectorXd& noise_variance) {
    double best = -std::numeric_limits<double>::infinity();
    Eigen::Index best_index = 0;
    for (Eigen::Index i = 0; i < candidates.rows(); ++i) {
        const double sigma = std::sqrt(std::max(0.0, pred.total_variance[i]));
        double value = 0.0;
        switch (spec.kind) {
        case AcquisitionKind::ei:
            value = expected_improvement(pred.mean[i], sigma, eta, spec.sense);
            break;
        case AcquisitionKind::aei:
            value = augmented_ei(pred.mean[i], sigma, eta, spec.noise_std, spec.sense);
            break;
        case AcquisitionKind::het_aei:
            value = het_augmented_ei(pred.mean[i], sigma, eta, noise_variance[i], spec.sense);
            break;
        case AcquisitionKind::anpei:
            value = anpei(pred.mean[i], sigma, eta, noise_variance[i], spec.alpha, spec.sense);
            break;
        }
        if (value > best) {
            best = value;
            best_index = i;
        }
    }
    return {candidates.row(best_index).transpose(), best};
}

bool needs_noise_variance(AcquisitionKind kind) {
    return kind == AcquisitionKind::het_aei || kind == AcquisitionKind::anpei;
}

} // namespace

AcquisitionResult maximise_acquisition(const AcquisitionSpec& spec, const GPModel& surrogate,
                                       const Incumbent& incumbent, const BoxDomain& domain,
                                       RandomSource& rng) {
    spec.validate();
    const Eigen::MatrixXd candidates = acquisition_candidates(domain, rng);
    const PredictiveDistribution pred = surrogate.predict_standardised(candidates);
    const double eta = surrogate.transform().transform_target(incumbent.value);
    const Eigen::VectorXd noise_variance =
        needs_noise_variance(spec.kind)
            ? Eigen::VectorXd::Constant(candidates.rows(), surrogate.noise_variance())
            : Eigen::VectorXd::Zero(candidates.rows());
    return pick_best(spec, candidates, pred, eta, noise_variance);
}

AcquisitionResult maximise_acquisition(const AcquisitionSpec& spec, const HetGPModel& surrogate,
                                       const Incumbent& incumbent, const BoxDomain& domain,
                                       RandomSource& rng) {
    spec.validate();
    const Eigen::MatrixXd candidates = acquisition_candidates(domain, rng);
    const PredictiveDistribution pred = predict_het_standardised(surrogate, candidates);
    const double eta = surrogate.mean_gp.transform().transform_target(incumbent.value);
    return pick_best(spec, candidates, pred, eta, pred.aleatoric_variance);
}

} // namespace hetbo
