#include "cvq/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "cvq/errors.hpp"

namespace cvq {

GaussHermiteRule gauss_hermite(int order) {
    if (order < 1) throw std::invalid_argument("gauss_hermite order must be >= 1");

    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        double off = std::sqrt(k / 2.0);
        jacobi(k - 1, k) = off;
        jacobi(k, k - 1) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("gauss_hermite: Jacobi eigen decomposition failed");
    }

    GaussHermiteRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights.resize(order);
    const double sqrt_pi = std::sqrt(M_PI);
    for (int i = 0; i < order; ++i) {
        double first = solver.eigenvectors()(0, i);
        rule.weights[i] = sqrt_pi * first * first;
    }
    return rule;
}

} // namespace cvq
