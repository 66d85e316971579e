#ifndef HETBO_RANDOM_HPP
#define HETBO_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace hetbo {

/// Seedable random source with a reproducible draw sequence.
///
/// std::mt19937_64 output is fully specified by the standard, and the
/// uniform/normal transforms below are fixed arithmetic, so equal seeds give
/// bitwise-equal streams for the same build. The std::*_distribution adaptors
/// are deliberately avoided; their algorithms are implementation-defined.
///
/// Single-owner: one instance per campaign seed, never shared across
/// concurrently running campaigns.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform draw in [0, 1) with 53 bits of mantissa.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; consumes two uniforms per draw.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.283185307179586477 * u2);
    }

    Eigen::VectorXd uniform_vector(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
        Eigen::VectorXd out(lo.size());
        for (Eigen::Index i = 0; i < lo.size(); ++i) out[i] = uniform(lo[i], hi[i]);
        return out;
    }

    /// `count` distinct indices drawn from {0, ..., n-1} (partial Fisher-Yates).
    std::vector<int> sample_indices(int n, int count) {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        std::vector<int> picked;
        picked.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count && i < n; ++i) {
            const auto j = static_cast<std::size_t>(i) +
                           static_cast<std::size_t>(next_u64() % static_cast<std::uint64_t>(n - i));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            picked.push_back(pool[static_cast<std::size_t>(i)]);
        }
        return picked;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace hetbo

#endif // HETBO_RANDOM_HPP
