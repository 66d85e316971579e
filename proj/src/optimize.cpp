#include "hetbo/optimize.hpp"

#include <cmath>
#include <deque>

#include "hetbo/errors.hpp"

namespace hetbo {

namespace {

Eigen::VectorXd clamp_to_box(const Eigen::VectorXd& x, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    return x.cwiseMax(lo).cwiseMin(hi);
}

// Gradient with the components that push outward across an active bound
// zeroed; steps built from it stay feasible in those coordinates.
Eigen::VectorXd masked_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                                const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    Eigen::VectorXd m = g;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if ((x[i] <= lo[i] && g[i] > 0.0) || (x[i] >= hi[i] && g[i] < 0.0)) m[i] = 0.0;
    }
    return m;
}

struct CurvaturePair {
    Eigen::VectorXd s;
    Eigen::VectorXd y;
    double rho;
};

// Standard two-loop recursion for the L-BFGS direction -H*g.
Eigen::VectorXd lbfgs_direction(const Eigen::VectorXd& g, const std::deque<CurvaturePair>& pairs) {
    Eigen::VectorXd q = g;
    std::vector<double> alpha(pairs.size());
    for (std::size_t i = pairs.size(); i-- > 0;) {
        alpha[i] = pairs[i].rho * pairs[i].s.dot(q);
        q -= alpha[i] * pairs[i].y;
    }
    if (!pairs.empty()) {
        const auto& last = pairs.back();
        q *= last.s.dot(last.y) / last.y.squaredNorm();
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double beta = pairs[i].rho * pairs[i].y.dot(q);
        q += (alpha[i] - beta) * pairs[i].s;
    }
    return -q;
}

} // namespace

MinimizeResult minimize_bounded(const BoundedObjective& objective,
                                const Eigen::VectorXd& start,
                                const Eigen::VectorXd& lower,
                                const Eigen::VectorXd& upper,
                                const MinimizeOptions& options) {
    if (start.size() != lower.size() || start.size() != upper.size())
        throw DimensionMismatchError("minimize_bounded: bound dimensions do not match start");

    Eigen::VectorXd x = clamp_to_box(start, lower, upper);
    Eigen::VectorXd grad(x.size());
    double fx = objective(x, grad);
    if (!std::isfinite(fx) || !grad.allFinite())
        throw NonFiniteObjectiveError("minimize_bounded: objective is non-finite at the start point");

    MinimizeResult best{x, fx, 0, false};
    std::deque<CurvaturePair> pairs;

    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        const Eigen::VectorXd projected = x - clamp_to_box(x - grad, lower, upper);
        if (projected.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
            best.converged = true;
            break;
        }

        const Eigen::VectorXd gm = masked_gradient(x, grad, lower, upper);
        Eigen::VectorXd dir = lbfgs_direction(gm, pairs);
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (gm[i] == 0.0 && grad[i] != 0.0) dir[i] = 0.0;
        }
        if (dir.dot(gm) > -1e-12 * dir.norm() * gm.norm()) dir = -gm;

        // Projected backtracking with Armijo acceptance on the clipped step.
        double step = 1.0;
        bool accepted = false;
        Eigen::VectorXd x_next, grad_next(x.size());
        double f_next = fx;
        while (step > 1e-20) {
            x_next = clamp_to_box(x + step * dir, lower, upper);
            const Eigen::VectorXd delta = x_next - x;
            if (delta.lpNorm<Eigen::Infinity>() == 0.0) break;
            f_next = objective(x_next, grad_next);
            if (std::isfinite(f_next) && grad_next.allFinite() &&
                f_next <= fx + 1e-4 * grad.dot(delta)) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        const Eigen::VectorXd s = x_next - x;
        const Eigen::VectorXd y = grad_next - grad;
        const double sy = s.dot(y);
        if (sy > 1e-10 * s.norm() * y.norm()) {
            pairs.push_back({s, y, 1.0 / sy});
            if (static_cast<int>(pairs.size()) > options.memory) pairs.pop_front();
        }

        x = x_next;
        fx = f_next;
        grad = grad_next;
        if (fx < best.value) {
            best.argmin = x;
            best.value = fx;
        }
    }

    best.iterations = iter;
    return best;
}

} // namespace hetbo
