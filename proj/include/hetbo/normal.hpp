#ifndef HETBO_NORMAL_HPP
#define HETBO_NORMAL_HPP

#include <cmath>

namespace hetbo {

/// Standard normal density.
template <typename Scalar>
Scalar std_normal_pdf(Scalar z) {
    constexpr Scalar inv_sqrt_2pi = Scalar(0.3989422804014326779L);
    return inv_sqrt_2pi * std::exp(Scalar(-0.5) * z * z);
}

/// Standard normal CDF via erfc; absolute error well below 1e-10.
template <typename Scalar>
Scalar std_normal_cdf(Scalar z) {
    constexpr Scalar inv_sqrt_2 = Scalar(0.7071067811865475244L);
    return Scalar(0.5) * std::erfc(-z * inv_sqrt_2);
}

} // namespace hetbo

#endif // HETBO_NORMAL_HPP
