#pragma once

#include <Eigen/Dense>

#include "cvq/fock.hpp"

namespace cvq {

// Schmidt coefficients of a pure two-mode state: the singular values of the
// coefficient matrix, sorted descending.
struct SchmidtSpectrum {
    Eigen::VectorXd values;
};

// Coefficients below this are dropped before the entropy sum; they sit under
// the truncation error floor and would only contribute log-of-zero noise.
inline constexpr double kSchmidtDropTol = 1e-12;

SchmidtSpectrum schmidt_decompose(const TwoModeState& state);

// E = -Σ c² log2 c², with 0 log 0 = 0.
double entropy_of_entanglement(const SchmidtSpectrum& spectrum);
double entanglement_entropy(const TwoModeState& state);

// cosh²s log2(cosh²s) - sinh²s log2(sinh²s)
double tmss_entropy_closed_form(double s);

} // namespace cvq
