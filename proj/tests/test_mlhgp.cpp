#include "doctest.h"

#include "hetbo/dataset.hpp"
#include "hetbo/errors.hpp"
#include "hetbo/gp.hpp"
#include "hetbo/kernel.hpp"
#include "hetbo/mlhgp.hpp"
#include "hetbo/objectives.hpp"
#include "hetbo/random.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace hetbo;

namespace {

Kernel unit_kernel(double signal_variance) {
    Kernel k;
    k.lengthscales = Eigen::VectorXd::Constant(1, 1.0);
    k.signal_variance = signal_variance;
    return k;
}

Dataset heteroscedastic_sine(int n, RandomSource& rng) {
    Dataset data;
    data.inputs.resize(n, 1);
    data.targets.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = rng.uniform(0.0, 10.0);
        data.inputs(i, 0) = x;
        data.targets[i] = std::sin(x) + 0.2 * x + 0.25 * x * rng.normal();
    }
    return data;
}

bool bitwise_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

// Spearman rank correlation; values are continuous so ties are immaterial.
double spearman(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const auto ranks = [](const Eigen::VectorXd& v) {
        std::vector<int> order(v.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int i, int j) { return v[i] < v[j]; });
        Eigen::VectorXd r(v.size());
        for (int pos = 0; pos < static_cast<int>(order.size()); ++pos)
            r[order[pos]] = static_cast<double>(pos);
        return r;
    };
    const Eigen::VectorXd ra = ranks(a), rb = ranks(b);
    const Eigen::VectorXd ca = ra.array() - ra.mean();
    const Eigen::VectorXd cb = rb.array() - rb.mean();
    return ca.dot(cb) / std::sqrt(ca.squaredNorm() * cb.squaredNorm());
}

} // namespace

TEST_CASE("empirical noise estimate floors a collapsed posterior at log 1e-8") {
    // One noiseless observation: the posterior predictive at the training
    // input is a point mass on the target, so every sampled residual is zero.
    Dataset data;
    data.inputs = Eigen::MatrixXd::Zero(1, 1);
    data.targets = Eigen::VectorXd::Constant(1, 0.7);

    const GPModel g(unit_kernel(1.0), data, StandardisationTransform::identity(1), 0.0);
    RandomSource rng(3);
    const AuxiliaryNoiseDataset aux = empirical_noise_estimate(g, data, 64, rng);

    REQUIRE(aux.z.size() == 1);
    CHECK(aux.z[0] == std::log(1e-8));
    CHECK(bitwise_equal(aux.inputs, data.inputs));
}

TEST_CASE("empirical noise estimate converges to the analytic expectation") {
    // Single point, unit kernel, unit noise: the posterior at the training
    // input has mean 1 and sampling variance 1.5 against a target of 2, so
    // E[v] = 0.5 ((t - mu)^2 + s^2) = 1.25.
    Dataset data;
    data.inputs = Eigen::MatrixXd::Zero(1, 1);
    data.targets = Eigen::VectorXd::Constant(1, 2.0);

    const GPModel g(unit_kernel(1.0), data, StandardisationTransform::identity(1), 1.0);
    RandomSource rng(11);
    const AuxiliaryNoiseDataset aux = empirical_noise_estimate(g, data, 20000, rng);
    CHECK(std::exp(aux.z[0]) == doctest::Approx(1.25).epsilon(0.05));
}

TEST_CASE("empirical noise estimate is deterministic given the seed") {
    RandomSource data_rng(5);
    const Dataset data = heteroscedastic_sine(25, data_rng);
    const GPModel g = fit_gp(data);

    RandomSource rng_a(9), rng_b(9);
    const AuxiliaryNoiseDataset a = empirical_noise_estimate(g, data, 50, rng_a);
    const AuxiliaryNoiseDataset b = empirical_noise_estimate(g, data, 50, rng_b);
    CHECK(bitwise_equal(a.z, b.z));

    CHECK_THROWS_AS(empirical_noise_estimate(g, data, 0, rng_a), ConfigError);
}

TEST_CASE("zero alternating iterations produce a homoscedastic wrap") {
    RandomSource rng(7);
    const Dataset data = heteroscedastic_sine(30, rng);

    RandomSource fit_rng(1);
    const HetGPModel model = fit_mlhgp(data, 0, 50, fit_rng);
    CHECK(model.em_iterations_run == 0);
    CHECK_FALSE(model.noise_gp.has_value());
    CHECK(model.noise_history.empty());

    // r(x) degenerates to the learned scalar noise everywhere.
    Eigen::MatrixXd queries(3, 1);
    queries << 1.0, 5.0, 9.0;
    const Eigen::VectorXd r = predicted_noise_variance(model, queries);
    for (int i = 0; i < 3; ++i) CHECK(r[i] == model.mean_gp.noise_variance());
}

TEST_CASE("alternating fit runs the requested number of rounds and stays consistent") {
    RandomSource rng(13);
    const Dataset data = heteroscedastic_sine(40, rng);

    RandomSource fit_rng(2);
    const HetGPModel model = fit_mlhgp(data, 3, 60, fit_rng);
    CHECK(model.em_iterations_run == 3);
    REQUIRE(model.noise_gp.has_value());
    REQUIRE(model.noise_history.size() == 3);

    // The mean GP's diagonal is the last entry of the history, and both must
    // equal the noise GP's prediction at the training inputs.
    const Eigen::VectorXd& last = model.noise_history.back();
    CHECK((model.mean_gp.noise_diagonal() - last).cwiseAbs().maxCoeff() == 0.0);

    const Eigen::VectorXd recomputed = predicted_noise_variance(model, data.inputs);
    CHECK((recomputed - last).cwiseAbs().maxCoeff() < 1e-12 * last.cwiseAbs().maxCoeff());

    // Every stored diagonal is strictly positive (exponentiated log noise).
    for (const Eigen::VectorXd& r : model.noise_history) CHECK(r.minCoeff() > 0.0);
}

TEST_CASE("alternating fit is bitwise deterministic given the seed") {
    RandomSource rng(17);
    const Dataset data = heteroscedastic_sine(30, rng);

    RandomSource fit_a(4), fit_b(4);
    const HetGPModel a = fit_mlhgp(data, 2, 40, fit_a);
    const HetGPModel b = fit_mlhgp(data, 2, 40, fit_b);

    REQUIRE(a.noise_history.size() == b.noise_history.size());
    for (std::size_t i = 0; i < a.noise_history.size(); ++i)
        CHECK(bitwise_equal(a.noise_history[i], b.noise_history[i]));

    Eigen::MatrixXd queries(5, 1);
    queries << 0.0, 2.5, 5.0, 7.5, 10.0;
    const PredictiveDistribution pa = predict_het(a, queries);
    const PredictiveDistribution pb = predict_het(b, queries);
    CHECK(bitwise_equal(pa.mean, pb.mean));
    CHECK(bitwise_equal(pa.total_variance, pb.total_variance));
}

TEST_CASE("predicted noise tracks an input-scaled noise profile") {
    // Noise standard deviation grows linearly in x; the fitted r(x) should
    // recover the ordering even if the scale is off.
    RandomSource rng(19);
    Dataset data;
    const int n = 100;
    data.inputs.resize(n, 1);
    data.targets.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = 10.0 * i / (n - 1.0);
        data.inputs(i, 0) = x;
        data.targets[i] = std::sin(x) + 0.2 * x + 0.25 * x * rng.normal();
    }

    RandomSource fit_rng(6);
    const HetGPModel model = fit_mlhgp(data, 10, 100, fit_rng);
    const Eigen::VectorXd r = predicted_noise_variance(model, data.inputs);

    Eigen::VectorXd true_variance(n);
    for (int i = 0; i < n; ++i) {
        const double s = 0.25 * data.inputs(i, 0);
        true_variance[i] = s * s;
    }
    CHECK(spearman(r, true_variance) > 0.5);
}

TEST_CASE("heteroscedastic prediction assembles its variances consistently") {
    RandomSource rng(23);
    const Dataset data = heteroscedastic_sine(35, rng);
    RandomSource fit_rng(8);
    const HetGPModel model = fit_mlhgp(data, 2, 50, fit_rng);

    Eigen::MatrixXd queries(7, 1);
    for (int i = 0; i < 7; ++i) queries(i, 0) = 1.4 * i;

    const PredictiveDistribution std_frame = predict_het_standardised(model, queries);
    const Eigen::VectorXd r = predicted_noise_variance(model, queries);
    CHECK(bitwise_equal(std_frame.aleatoric_variance, r));
    CHECK((std_frame.total_variance - std_frame.epistemic_variance - r).cwiseAbs().maxCoeff() <
          1e-15);
    for (int i = 0; i < 7; ++i)
        CHECK(std_frame.total_variance[i] >= std_frame.epistemic_variance[i]);

    // Original-unit prediction scales variances by the squared output spread
    // and untransforms the mean.
    const PredictiveDistribution raw = predict_het(model, queries);
    const StandardisationTransform& tf = model.mean_gp.transform();
    const double scale = tf.output_std * tf.output_std;
    for (int i = 0; i < 7; ++i) {
        CHECK(raw.mean[i] ==
              doctest::Approx(tf.untransform_target(std_frame.mean[i])).epsilon(1e-12));
        CHECK(raw.aleatoric_variance[i] == doctest::Approx(r[i] * scale).epsilon(1e-12));
    }

    Eigen::MatrixXd bad(1, 2);
    bad << 0.0, 0.0;
    CHECK_THROWS_AS(predicted_noise_variance(model, bad), DimensionMismatchError);
}

TEST_CASE("alternating fit rejects degenerate configuration") {
    RandomSource rng(29);
    const Dataset data = heteroscedastic_sine(10, rng);
    RandomSource fit_rng(1);
    CHECK_THROWS_AS(fit_mlhgp(data, -1, 50, fit_rng), ConfigError);

    Dataset tiny;
    tiny.inputs = Eigen::MatrixXd::Zero(1, 1);
    tiny.targets = Eigen::VectorXd::Zero(1);
    CHECK_THROWS_AS(fit_mlhgp(tiny, 1, 50, fit_rng), InsufficientDataError);
}

TEST_CASE("flat-noise data yields a nearly flat fitted noise profile") {
    // Homoscedastic ground truth: the learned r(x) must not invent large
    // noise-rate variation across the inputs.
    RandomSource rng(31);
    Dataset data;
    const int n = 60;
    data.inputs.resize(n, 1);
    data.targets.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = rng.uniform(0.0, 10.0);
        data.inputs(i, 0) = x;
        data.targets[i] = std::sin(x) + 0.2 * x + 0.5 * rng.normal();
    }

    RandomSource fit_rng(1);
    const HetGPModel model = fit_mlhgp(data, 10, 100, fit_rng);
    const Eigen::VectorXd r = predicted_noise_variance(model, data.inputs);
    CHECK(r.maxCoeff() / r.minCoeff() < 20.0);
}
