#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cvq/fock.hpp"

namespace cvq {

// Arguments of the two-mode characteristic function C(λ2, λ3) = <D(λ2) ⊗ D(λ3)>
// together with the squeezing-frame combinations used by the closed form.
struct CharFnPoint {
    std::complex<double> lambda2{};
    std::complex<double> lambda3{};
    std::complex<double> alpha{}; // λ2 cosh s - λ3* sinh s
    std::complex<double> beta{};  // λ3 cosh s - λ2* sinh s
};

CharFnPoint make_char_point(const SqueezeParam& sq, std::complex<double> lambda2,
                            std::complex<double> lambda3);

// Gaussian characteristic function of the plain two-mode squeezed vacuum.
std::complex<double> char_fn_tmss(const SqueezeParam& sq, const CharFnPoint& p);

// Closed form for (tA a + rA a†)(tB b + rB b†)|TMSS>; value 1 at the origin.
std::complex<double> char_fn_closed(const SqueezeParam& sq, SuperpositionOp op_a,
                                    SuperpositionOp op_b, const CharFnPoint& p);

// Number-basis matrix of the displacement operator D(ξ), dims x dims, built
// from associated Laguerre polynomials.
Eigen::MatrixXcd displacement_matrix(std::complex<double> xi, int dims);

// <D(λ2) ⊗ D(λ3)> for an arbitrary normalized truncated state. Checks that the
// truncated displacement matrices stay unitary on the state's support.
std::complex<double> char_fn_numeric(const TwoModeState& state, const CharFnPoint& p);

struct FidelityResult {
    double fidelity = 0.0;
    double s = 0.0;
    double r = 0.0;
    int quadrature_order = 0;
    double est_error = 0.0; // difference between successive quadrature orders
};

// Average fidelity of teleporting coherent states at unity gain,
// F = (1/π) ∫ d²λ C_in(λ) C_E(λ*, λ) C_in(-λ), via the closed characteristic
// function and a two-dimensional Gauss-Hermite rule (order per axis; the
// reported value uses the doubled order, est_error the order difference).
FidelityResult average_fidelity(const SqueezeParam& sq, SuperpositionOp op_a,
                                SuperpositionOp op_b, int order = 40);

FidelityResult average_fidelity_tmss(const SqueezeParam& sq, int order = 40);

// Same integral for an arbitrary resource state through char_fn_numeric; the
// input coherent amplitude gamma is kept explicit in the integrand so the
// amplitude-independence of the protocol can be verified numerically.
FidelityResult average_fidelity_numeric(const TwoModeState& state,
                                        std::complex<double> gamma = {}, int order = 40);

// Exact Fock-basis overlap route: for a resource Σ c_nm |n,m>, the same
// average fidelity reduces to a closed double sum with selection rule
// n - n' = m - m'. Production path for states outside the coherent class.
double fidelity_fock(const TwoModeState& state);

// 1 / (1 + e^{-2s})
double tmss_fidelity_closed_form(double s);

} // namespace cvq
