#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "cvq/fock.hpp"

namespace cvq {

// First and second moments of the mode operators under a normalized state,
// enough to assemble any quadratic quadrature combination.
struct QuadratureMoments {
    std::complex<double> mean_a{}; // <a>
    std::complex<double> mean_b{}; // <b>
    double n_a = 0.0;              // <a†a>
    double n_b = 0.0;              // <b†b>
    std::complex<double> aa{};     // <a²>
    std::complex<double> bb{};     // <b²>
    std::complex<double> ab{};     // <ab>
    std::complex<double> ab_dag{}; // <ab†>
};

QuadratureMoments quadrature_moments(const TwoModeState& state);

// Total variance Δ²(x_A - x_B) + Δ²(p_A + p_B) with x = (a + a†)/√2,
// p = (a - a†)/(i√2). Equals 2 on any product of vacua; 2 is the separable
// bound, values below 2 certify entanglement.
double epr_total_variance(const QuadratureMoments& m);

// Hyperbolic building blocks of the closed-form variance for
// (tA a + rA a†)(tB b + rB b†)|TMSS>.
struct EprClosedFormTerms {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double D = 0.0;
    double M = 0.0; // A² + B² + C² + D²
};

EprClosedFormTerms epr_closed_terms(const SqueezeParam& sq, SuperpositionOp op_a,
                                    SuperpositionOp op_b);

// Closed-form EPR variance of the both-mode operated state; cross-check of the
// moment route (the moment route is the production path).
double epr_closed_form(const SqueezeParam& sq, SuperpositionOp op_a, SuperpositionOp op_b);

// Photon-number entangled states: Σ d_n |n,n> (diagonal) or Σ e_n |n,n+1>
// (ladder), real coefficients, truncation N.
enum class PnesKind { diagonal, ladder };

struct PnesSpec {
    PnesKind kind = PnesKind::diagonal;
    Eigen::VectorXd coeffs; // d_0..d_N or e_0..e_N
    int truncation = 0;
};

// Closed-form EPR variance 2 - 4 Σ n (d_{n-1} - d_n) d_n / Σ d_n² for the
// diagonal class.
double pnes_epr_value(const PnesSpec& spec);

// Assemble the normalized state on a padded window.
TwoModeState pnes_state(const PnesSpec& spec);

// Minimize the EPR variance over real coefficients at fixed truncation.
// Diagonal: Rayleigh-quotient eigenproblem on a symmetric tridiagonal matrix
// (value 2 - 4 λ_max, vector = top eigenvector). Ladder: derivative-free
// simplex search on the generic moment route.
std::pair<PnesSpec, double> pnes_optimize(PnesKind kind, int truncation);

} // namespace cvq
