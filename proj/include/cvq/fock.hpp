#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <utility>

#include "cvq/errors.hpp"

namespace cvq {

struct SqueezeParam {
    double s = 0.0;
    double lambda = 0.0; // tanh(s)
    explicit SqueezeParam(double s_value);
};

// Coherent superposition t*a + r*a† of annihilation and creation on one mode.
// Real non-negative amplitudes with t² + r² = 1; r=0 is plain subtraction,
// r=1 plain addition.
struct SuperpositionOp {
    double t = 1.0;
    double r = 0.0;
    SuperpositionOp(double t_value, double r_value);
    static SuperpositionOp from_r(double r_value); // t = sqrt(1 - r²)
    static SuperpositionOp subtraction() { return {1.0, 0.0}; }
    static SuperpositionOp addition() { return {0.0, 1.0}; }
};

struct TruncationPolicy {
    int n_max = 60;          // floor for the per-mode photon cutoff
    double tail_tol = 1e-12; // acceptable relative probability mass near the cutoff
    bool auto_grow = true;   // raise the cutoff with lambda to keep tails below tail_tol
};

enum class Mode { A, B };
enum class LadderKind { annihilate, create };

// Pure two-mode state on a truncated Fock window:
// coeffs(n, m) multiplies |n>_A |m>_B, dims (trunc_a+1) x (trunc_b+1).
struct TwoModeState {
    Eigen::MatrixXcd coeffs;
    int trunc_a = 0;
    int trunc_b = 0;
    bool normalized = false;

    double norm_squared() const { return coeffs.squaredNorm(); }
    // |c|² mass in the last two rows plus last two columns, relative to norm².
    double relative_tail_mass() const;
};

inline constexpr double kZeroStateThreshold = 1e-14;

// sqrt(1-λ²) Σ λⁿ |n,n>, λ = tanh s, renormalized on the truncated window.
TwoModeState make_tmss(const SqueezeParam& sq, const TruncationPolicy& policy = {});

// Standard ladder action on one mode. annihilate keeps the window
// (c'(n,m) = sqrt(n+1) c(n+1,m) on mode A); create grows it by one photon
// (c'(n,m) = sqrt(n) c(n-1,m)). Result is flagged unnormalized.
TwoModeState apply_ladder(const TwoModeState& state, Mode mode, LadderKind kind,
                          const TruncationPolicy& policy = {});

// t * annihilate + r * create on one mode; unnormalized.
TwoModeState apply_superposition(const TwoModeState& state, Mode mode, SuperpositionOp op,
                                 const TruncationPolicy& policy = {});

// Returns the unit-norm state and the squared norm of the input.
std::pair<TwoModeState, double> normalize(const TwoModeState& state);

// Named operated states, all assembled through the ladder pipeline:
//   sub_A            a |TMSS>
//   sub_B            b |TMSS>
//   sub_AB           a b |TMSS>
//   addsub_AB        a a† b b† |TMSS>   (per-mode add-then-subtract)
//   addsub_addsub_AB a b a† b† |TMSS>   (same operator, interleaved order)
//   coherent_A       (t a + r a†) |TMSS>
//   coherent_AB      (t a + r a†)(t b + r b†) |TMSS>
enum class ReferenceState {
    sub_A,
    sub_B,
    sub_AB,
    addsub_AB,
    addsub_addsub_AB,
    coherent_A,
    coherent_AB,
};

TwoModeState build_reference_state(ReferenceState name, const SqueezeParam& sq,
                                   std::optional<SuperpositionOp> op = std::nullopt,
                                   const TruncationPolicy& policy = {});

// Normalization constants of the operated two-mode squeezed states, written so
// the measured pipeline norms obey
//   ||a |TMSS>||²          = (1-λ²) λ² / m1
//   ||a b |TMSS>||²        = (1-λ²) λ² / m2
//   ||a a† b b† |TMSS>||²  = (1-λ²)    / m3
//   ||(tA a + rA a†)(tB b + rB b†) |TMSS>||² = (1-λ²) / N.
double norm_const_m1(double lambda);
double norm_const_m2(double lambda);
double norm_const_m3(double lambda);
double norm_const_N(double lambda, SuperpositionOp op_a, SuperpositionOp op_b);

} // namespace cvq
