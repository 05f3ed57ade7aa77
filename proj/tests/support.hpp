#pragma once

#include <cmath>
#include <random>

#include "affinelab/tensor_core.hpp"

namespace testing {

using affinelab::LinearForm;
using affinelab::LinearMap2;
using affinelab::TypeAConnection;

inline TypeAConnection random_connection(std::mt19937_64& rng, double range = 3.0) {
    std::uniform_real_distribution<double> u(-range, range);
    return {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
}

/// Invertible map with entries in [-2, 2] and condition number below 20.
inline LinearMap2 random_map(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2, 2);
    for (;;) {
        const LinearMap2 t{u(rng), u(rng), u(rng), u(rng)};
        const Eigen::JacobiSVD<Eigen::Matrix2d> svd(t.matrix());
        const auto s = svd.singularValues();
        if (s(1) > 0.25 && s(0) / s(1) < 20) return t;
    }
}

inline LinearForm random_form(std::mt19937_64& rng, double range = 2.0) {
    std::uniform_real_distribution<double> u(-range, range);
    return {u(rng), u(rng)};
}

inline bool rel_close(double x, double y, double tol) { return std::abs(x - y) <= tol * (1 + std::max(std::abs(x), std::abs(y))); }

}  // namespace testing
