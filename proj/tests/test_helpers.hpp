#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "cvq/fock.hpp"

namespace cvq::testing {

// Random normalized state with zero padding rows/columns at the window edge so
// ladder growth never trips the tail check.
inline TwoModeState make_random_state(unsigned seed, int rows, int cols, int pad = 3) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    TwoModeState state;
    state.coeffs = Eigen::MatrixXcd::Zero(rows, cols);
    for (int n = 0; n + pad < rows; ++n) {
        for (int m = 0; m + pad < cols; ++m) {
            state.coeffs(n, m) = std::complex<double>(dist(gen), dist(gen));
        }
    }
    state.trunc_a = rows - 1;
    state.trunc_b = cols - 1;
    state.coeffs /= std::sqrt(state.coeffs.squaredNorm());
    state.normalized = true;
    return state;
}

} // namespace cvq::testing
