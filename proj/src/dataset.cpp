#include "hetbo/dataset.hpp"

#include <cmath>

#include "hetbo/errors.hpp"

namespace hetbo {

void Dataset::validate() const {
    if (inputs.rows() < 1) throw DimensionMismatchError("Dataset: needs at least one observation");
    if (inputs.rows() != targets.size())
        throw DimensionMismatchError("Dataset: input row count does not match target count");
    if (!inputs.allFinite() || !targets.allFinite())
        throw DimensionMismatchError("Dataset: non-finite entries");
}

StandardisationTransform StandardisationTransform::fit(const Dataset& data) {
    data.validate();
    const auto n = static_cast<double>(data.size());
    StandardisationTransform t;
    t.input_shift = data.inputs.colwise().mean();
    Eigen::MatrixXd centred = data.inputs.rowwise() - t.input_shift.transpose();
    t.input_scale = (centred.array().square().colwise().sum() / n).sqrt();
    for (Eigen::Index i = 0; i < t.input_scale.size(); ++i) {
        if (!(t.input_scale[i] > 1e-12)) t.input_scale[i] = 1.0;
    }
    t.output_mean = data.targets.mean();
    const double var = (data.targets.array() - t.output_mean).square().sum() / n;
    t.output_std = std::sqrt(var);
    if (!(t.output_std > 1e-12)) t.output_std = 1.0;
    return t;
}

StandardisationTransform StandardisationTransform::identity(Eigen::Index dimension) {
    StandardisationTransform t;
    t.input_shift = Eigen::VectorXd::Zero(dimension);
    t.input_scale = Eigen::VectorXd::Ones(dimension);
    return t;
}

Eigen::MatrixXd StandardisationTransform::transform_inputs(const Eigen::MatrixXd& x) const {
    return (x.rowwise() - input_shift.transpose()).array().rowwise() / input_scale.transpose().array();
}

Eigen::MatrixXd StandardisationTransform::untransform_inputs(const Eigen::MatrixXd& x) const {
    return (x.array().rowwise() * input_scale.transpose().array()).matrix().rowwise() + input_shift.transpose();
}

Eigen::VectorXd StandardisationTransform::transform_targets(const Eigen::VectorXd& t) const {
    return (t.array() - output_mean) / output_std;
}

Eigen::VectorXd StandardisationTransform::untransform_targets(const Eigen::VectorXd& t) const {
    return (t.array() * output_std + output_mean).matrix();
}

Dataset StandardisationTransform::transform(const Dataset& data) const {
    return {transform_inputs(data.inputs), transform_targets(data.targets)};
}

void BoxDomain::validate() const {
    if (lower.size() == 0 || lower.size() != upper.size())
        throw EmptyDomainError("BoxDomain: empty or mismatched bounds");
    if (!lower.allFinite() || !upper.allFinite() || (lower.array() >= upper.array()).any())
        throw EmptyDomainError("BoxDomain: bounds must be finite with lower < upper");
}

bool BoxDomain::contains(const Eigen::VectorXd& x) const {
    if (x.size() != lower.size()) return false;
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

} // namespace hetbo
