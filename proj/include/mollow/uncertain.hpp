#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace mollow {

/// Scalar with a symmetric 1-sigma uncertainty. The unit is carried by
/// context; arithmetic assumes independent errors and first-order
/// (linearized) propagation.
struct UncertainValue {
    double value = 0.0;
    double sigma = 0.0;

    UncertainValue() = default;
    UncertainValue(double v, double s = 0.0) : value(v), sigma(s) {
        if (sigma < 0.0)
            throw std::invalid_argument("UncertainValue: sigma must be >= 0");
    }

    UncertainValue operator+(const UncertainValue& o) const {
        return {value + o.value, std::hypot(sigma, o.sigma)};
    }
    UncertainValue operator-(const UncertainValue& o) const {
        return {value - o.value, std::hypot(sigma, o.sigma)};
    }
    UncertainValue operator*(double c) const {
        return {value * c, sigma * std::abs(c)};
    }
    UncertainValue operator/(double c) const {
        return {value / c, sigma / std::abs(c)};
    }
    UncertainValue operator-() const { return {-value, sigma}; }

    /// Push through a differentiable map: sigma_out = |f'(value)| * sigma.
    UncertainValue mapped(double fOfValue, double fPrimeAtValue) const {
        return {fOfValue, std::abs(fPrimeAtValue) * sigma};
    }
};

inline UncertainValue operator*(double c, const UncertainValue& u) { return u * c; }

enum class SigmaMode { Quadrature, Linear };

/// Sum of independent terms; sigmas combine in quadrature.
/// An empty list yields 0 +- 0.
inline UncertainValue combineQuadrature(std::span<const UncertainValue> terms) {
    double v = 0.0, s2 = 0.0;
    for (const auto& t : terms) {
        v += t.value;
        s2 += t.sigma * t.sigma;
    }
    return {v, std::sqrt(s2)};
}

/// Same sum, but sigmas add linearly (worst-case correlated errors).
inline UncertainValue combineLinear(std::span<const UncertainValue> terms) {
    double v = 0.0, s = 0.0;
    for (const auto& t : terms) {
        v += t.value;
        s += t.sigma;
    }
    return {v, s};
}

inline UncertainValue combine(std::span<const UncertainValue> terms, SigmaMode mode) {
    return mode == SigmaMode::Quadrature ? combineQuadrature(terms)
                                         : combineLinear(terms);
}

inline UncertainValue combineQuadrature(const std::vector<UncertainValue>& terms) {
    return combineQuadrature(std::span<const UncertainValue>(terms));
}
inline UncertainValue combineLinear(const std::vector<UncertainValue>& terms) {
    return combineLinear(std::span<const UncertainValue>(terms));
}

} // namespace mollow
