#pragma once

#include <Eigen/Dense>

namespace cvq {

// Gauss-Hermite rule for ∫ f(x) e^{-x²} dx on the real line.
struct GaussHermiteRule {
    Eigen::VectorXd nodes;   // ascending
    Eigen::VectorXd weights; // sum = sqrt(pi)
};

// Golub-Welsch construction via the symmetric tridiagonal Jacobi matrix.
GaussHermiteRule gauss_hermite(int order);

} // namespace cvq
