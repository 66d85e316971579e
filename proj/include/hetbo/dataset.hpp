#ifndef HETBO_DATASET_HPP
#define HETBO_DATASET_HPP

#include <Eigen/Dense>

namespace hetbo {

/// Observations (inputs row-wise, one scalar target per row).
struct Dataset {
    Eigen::MatrixXd inputs;  // n x d
    Eigen::VectorXd targets; // n

    Eigen::Index size() const { return inputs.rows(); }
    Eigen::Index dimension() const { return inputs.cols(); }

    /// Throws DimensionMismatchError on shape problems or non-finite entries.
    void validate() const;
};

/// Affine map taking raw observations into the model's internal frame:
/// inputs shifted/scaled per dimension, targets standardised to zero mean
/// and unit variance. Degenerate scales fall back to 1.
struct StandardisationTransform {
    Eigen::VectorXd input_shift;
    Eigen::VectorXd input_scale;
    double output_mean = 0.0;
    double output_std = 1.0;

    static StandardisationTransform fit(const Dataset& data);
    static StandardisationTransform identity(Eigen::Index dimension);

    Eigen::MatrixXd transform_inputs(const Eigen::MatrixXd& x) const;
    Eigen::MatrixXd untransform_inputs(const Eigen::MatrixXd& x) const;
    Eigen::VectorXd transform_targets(const Eigen::VectorXd& t) const;
    Eigen::VectorXd untransform_targets(const Eigen::VectorXd& t) const;
    double transform_target(double t) const { return (t - output_mean) / output_std; }
    double untransform_target(double t) const { return t * output_std + output_mean; }

    Dataset transform(const Dataset& data) const;
};

/// Axis-aligned box, lower < upper per dimension.
struct BoxDomain {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    Eigen::Index dimension() const { return lower.size(); }

    /// Throws EmptyDomainError when degenerate or non-finite.
    void validate() const;
    bool contains(const Eigen::VectorXd& x) const;
};

} // namespace hetbo

#endif // HETBO_DATASET_HPP
