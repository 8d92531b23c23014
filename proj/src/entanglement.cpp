#include "cvq/entanglement.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace cvq {

SchmidtSpectrum schmidt_decompose(const TwoModeState& state) {
    double norm_sq = state.norm_squared();
    if (std::abs(norm_sq - 1.0) > 1e-10) {
        throw std::invalid_argument("schmidt_decompose expects a normalized state");
    }

    const Eigen::MatrixXcd& c = state.coeffs;
    Eigen::VectorXd sv;
    Eigen::MatrixXcd u, v;
    if (std::min(c.rows(), c.cols()) <= 64) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
        sv = svd.singularValues();
        u = svd.matrixU();
        v = svd.matrixV();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
        sv = svd.singularValues();
        u = svd.matrixU();
        v = svd.matrixV();
    }

    double residual =
        (c - u * sv.asDiagonal() * v.adjoint()).cwiseAbs().maxCoeff();
    if (!(residual < 1e-10)) {
        throw NumericalError("schmidt_decompose: reconstruction residual " +
                             std::to_string(residual));
    }
    double total = sv.squaredNorm();
    if (std::abs(total - 1.0) > 1e-10) {
        throw NumericalError("schmidt_decompose: spectrum mass deviates from one by " +
                             std::to_string(total - 1.0));
    }
    return {sv};
}

double entropy_of_entanglement(const SchmidtSpectrum& spectrum) {
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < spectrum.values.size(); ++i) {
        double c = spectrum.values[i];
        if (c < kSchmidtDropTol) continue;
        double p = c * c;
        entropy -= p * std::log2(p);
    }
    return std::max(entropy, 0.0);
}

double entanglement_entropy(const TwoModeState& state) {
    return entropy_of_entanglement(schmidt_decompose(state));
}

double tmss_entropy_closed_form(double s) {
    if (s == 0.0) return 0.0;
    double ch2 = std::cosh(s) * std::cosh(s);
    double sh2 = std::sinh(s) * std::sinh(s);
    return ch2 * std::log2(ch2) - sh2 * std::log2(sh2);
}

} // namespace cvq
