#pragma once

#include <Eigen/Dense>

#include "hetbo/dataset.hpp"
#include "hetbo/gp.hpp"
#include "hetbo/mlhgp.hpp"
#include "hetbo/random.hpp"

namespace hetbo {

enum class Sense { minimise, maximise };

enum class AcquisitionKind { ei, aei, het_aei, anpei };

/// Which acquisition to score candidates with. `alpha` weights the
/// noise-penalised scalarisation; `noise_std` is the fixed aleatoric level
/// used by augmented EI, in standardised target units.
struct AcquisitionSpec {
    AcquisitionKind kind = AcquisitionKind::ei;
    Sense sense = Sense::minimise;
    double alpha = 0.5;
    double noise_std = 0.0;

    /// Throws ConfigError when alpha is outside [0, 1] or noise_std < 0.
    void validate() const;
};

/// Best observed target so far (original units) and where it was seen.
struct Incumbent {
    double value = 0.0;
    Eigen::VectorXd location;
};

/// Expected improvement over eta under a Gaussian with the given moments.
/// sigma_total = 0 degenerates to max(0, improvement of the mean).
double expected_improvement(double mu, double sigma_total, double eta, Sense sense);

/// EI damped by 1 - noise_std / sqrt(sigma_total^2 + noise_std^2);
/// the multiplier is 1 when both terms are zero.
double augmented_ei(double mu, double sigma_total, double eta, double noise_std, Sense sense);

/// EI damped by 1 - sqrt(r) / sqrt(sigma_total^2 + r), where r is the
/// predicted aleatoric noise variance at the candidate.
double het_augmented_ei(double mu, double sigma_total, double eta, double noise_variance,
                        Sense sense);

/// alpha * EI - (1 - alpha) * sqrt(r); may be negative.
double anpei(double mu, double sigma_total, double eta, double noise_variance, double alpha,
             Sense sense);

/// Deterministic candidate set: an axis-aligned grid (1D: 1000 points,
/// 2D: 50x50, higher dimensions: none) followed by 256 uniform draws from
/// rng. Exposed so tests can reproduce the optimiser's choices exactly.
Eigen::MatrixXd acquisition_candidates(const BoxDomain& domain, RandomSource& rng);

struct AcquisitionResult {
    Eigen::VectorXd argmax;
    double value = 0.0;
};

/// Scores every candidate in standardised target units and returns the best
/// (ties broken by lowest candidate index). On a homoscedastic surrogate the
/// heteroscedastic acquisitions see the constant learned noise variance.
AcquisitionResult maximise_acquisition(const AcquisitionSpec& spec, const GPModel& surrogate,
                                       const Incumbent& incumbent, const BoxDomain& domain,
                                       RandomSource& rng);
AcquisitionResult maximise_acquisition(const AcquisitionSpec& spec, const HetGPModel& surrogate,
                                       const Incumbent& incumbent, const BoxDomain& domain,
                                       RandomSource& rng);

} // namespace hetbo
