#ifndef HETBO_OPTIMIZE_HPP
#define HETBO_OPTIMIZE_HPP

#include <functional>

#include <Eigen/Dense>

namespace hetbo {

/// Objective callback: fills `gradient` (resized by the caller) and returns
/// the value at `x`.
using BoundedObjective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& gradient)>;

struct MinimizeOptions {
    double gradient_tolerance = 1e-5; // infinity norm of the projected gradient
    int max_iterations = 200;
    int memory = 8; // stored curvature pairs
};

struct MinimizeResult {
    Eigen::VectorXd argmin;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Box-constrained quasi-Newton minimisation: limited-memory BFGS directions
/// restricted to the inactive coordinates, with projected backtracking line
/// search. Returns the best feasible point seen, so the result never exceeds
/// the start value. Throws NonFiniteObjectiveError when the objective is
/// NaN/Inf at the start point.
MinimizeResult minimize_bounded(const BoundedObjective& objective,
                                const Eigen::VectorXd& start,
                                const Eigen::VectorXd& lower,
                                const Eigen::VectorXd& upper,
                                const MinimizeOptions& options = {});

} // namespace hetbo

#endif // HETBO_OPTIMIZE_HPP
