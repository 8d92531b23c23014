#include "cvq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cvq {

namespace {

constexpr int kTruncationCap = 4096;

void check_tail(const TwoModeState& state, const TruncationPolicy& policy, const char* op_name) {
    double tail = state.relative_tail_mass();
    if (tail > policy.tail_tol) {
        throw TruncationError(std::string(op_name) + ": relative tail mass " +
                              std::to_string(tail) + " exceeds tolerance " +
                              std::to_string(policy.tail_tol) +
                              (policy.auto_grow ? "" : " (auto_grow disabled)"));
    }
}

// Smallest n with λ^{2n} (n+1)^4 < tol; the quartic weight dominates the
// operator factors picked up by tails of second-moment sums after up to two
// photon additions per mode.
int required_cutoff(double lambda, double tol) {
    if (lambda <= 0.0) return 2;
    const double log_lambda = std::log(lambda);
    const double log_tol = std::log(tol);
    for (int n = 2; n <= kTruncationCap; ++n) {
        if (2.0 * n * log_lambda + 4.0 * std::log(n + 1.0) < log_tol) return n;
    }
    throw TruncationError("required Fock cutoff exceeds " + std::to_string(kTruncationCap) +
                          " for lambda=" + std::to_string(lambda));
}

} // namespace

SqueezeParam::SqueezeParam(double s_value) : s(s_value), lambda(std::tanh(s_value)) {
    if (!(s_value >= 0.0) || !std::isfinite(s_value)) {
        throw std::invalid_argument("squeezing parameter must be finite and >= 0");
    }
}

SuperpositionOp::SuperpositionOp(double t_value, double r_value) : t(t_value), r(r_value) {
    if (t < 0.0 || r < 0.0 || t > 1.0 || r > 1.0 ||
        std::abs(t * t + r * r - 1.0) > 1e-12) {
        throw std::invalid_argument("superposition op requires t, r in [0,1] with t^2 + r^2 = 1");
    }
}

SuperpositionOp SuperpositionOp::from_r(double r_value) {
    if (r_value < 0.0 || r_value > 1.0) {
        throw std::invalid_argument("superposition ratio r must lie in [0,1]");
    }
    return {std::sqrt(std::max(0.0, 1.0 - r_value * r_value)), r_value};
}

double TwoModeState::relative_tail_mass() const {
    const auto rows = coeffs.rows();
    const auto cols = coeffs.cols();
    double total = coeffs.squaredNorm();
    if (total <= 0.0) return 0.0;
    double tail = 0.0;
    const auto row_block = std::min<Eigen::Index>(2, rows);
    const auto col_block = std::min<Eigen::Index>(2, cols);
    tail += coeffs.bottomRows(row_block).squaredNorm();
    tail += coeffs.rightCols(col_block).squaredNorm();
    tail -= coeffs.bottomRightCorner(row_block, col_block).squaredNorm();
    return tail / total;
}

TwoModeState make_tmss(const SqueezeParam& sq, const TruncationPolicy& policy) {
    if (policy.n_max < 2 || policy.tail_tol <= 0.0) {
        throw std::invalid_argument("truncation policy requires n_max >= 2 and tail_tol > 0");
    }
    int trunc = policy.n_max;
    if (policy.auto_grow) {
        trunc = std::max(trunc, required_cutoff(sq.lambda, policy.tail_tol));
    } else if (std::pow(sq.lambda, 2.0 * policy.n_max) >= policy.tail_tol) {
        throw TruncationError("make_tmss: geometric tail above tolerance at fixed n_max");
    }

    TwoModeState state;
    state.trunc_a = trunc;
    state.trunc_b = trunc;
    state.coeffs = Eigen::MatrixXcd::Zero(trunc + 1, trunc + 1);
    double amplitude = std::sqrt(1.0 - sq.lambda * sq.lambda);
    for (int n = 0; n <= trunc; ++n) {
        state.coeffs(n, n) = amplitude;
        amplitude *= sq.lambda;
    }
    state.coeffs /= std::sqrt(state.coeffs.squaredNorm());
    state.normalized = true;
    return state;
}

TwoModeState apply_ladder(const TwoModeState& state, Mode mode, LadderKind kind,
                          const TruncationPolicy& policy) {
    // Mode B actions are mode A actions on the transpose.
    if (mode == Mode::B) {
        TwoModeState flipped;
        flipped.coeffs = state.coeffs.transpose();
        flipped.trunc_a = state.trunc_b;
        flipped.trunc_b = state.trunc_a;
        TwoModeState result = apply_ladder(flipped, Mode::A, kind, policy);
        TwoModeState out;
        out.coeffs = result.coeffs.transpose();
        out.trunc_a = result.trunc_b;
        out.trunc_b = result.trunc_a;
        out.normalized = false;
        return out;
    }

    const auto rows = state.coeffs.rows();
    const auto cols = state.coeffs.cols();
    TwoModeState out;
    out.trunc_b = state.trunc_b;
    out.normalized = false;
    if (kind == LadderKind::annihilate) {
        out.trunc_a = state.trunc_a;
        out.coeffs = Eigen::MatrixXcd::Zero(rows, cols);
        for (Eigen::Index n = 0; n + 1 < rows; ++n) {
            out.coeffs.row(n) = std::sqrt(double(n + 1)) * state.coeffs.row(n + 1);
        }
    } else {
        out.trunc_a = state.trunc_a + 1;
        out.coeffs = Eigen::MatrixXcd::Zero(rows + 1, cols);
        for (Eigen::Index n = 1; n <= rows; ++n) {
            out.coeffs.row(n) = std::sqrt(double(n)) * state.coeffs.row(n - 1);
        }
        check_tail(out, policy, "apply_ladder(create)");
    }
    return out;
}

TwoModeState apply_superposition(const TwoModeState& state, Mode mode, SuperpositionOp op,
                                 const TruncationPolicy& policy) {
    if (op.r == 0.0) return apply_ladder(state, mode, LadderKind::annihilate, policy);
    if (op.t == 0.0) return apply_ladder(state, mode, LadderKind::create, policy);

    TwoModeState down = apply_ladder(state, mode, LadderKind::annihilate, policy);
    TwoModeState up = apply_ladder(state, mode, LadderKind::create, policy);
    TwoModeState out = up;
    out.coeffs *= op.r;
    out.coeffs.topLeftCorner(down.coeffs.rows(), down.coeffs.cols()) += op.t * down.coeffs;
    out.normalized = false;
    check_tail(out, policy, "apply_superposition");
    return out;
}

std::pair<TwoModeState, double> normalize(const TwoModeState& state) {
    double norm_sq = state.coeffs.squaredNorm();
    if (norm_sq < kZeroStateThreshold) {
        throw ZeroStateError("normalize: squared norm " + std::to_string(norm_sq) +
                             " below zero-state threshold");
    }
    if (state.normalized && std::abs(norm_sq - 1.0) <= 1e-12) {
        return {state, norm_sq};
    }
    TwoModeState out = state;
    out.coeffs /= std::sqrt(norm_sq);
    out.normalized = true;
    return {out, norm_sq};
}

TwoModeState build_reference_state(ReferenceState name, const SqueezeParam& sq,
                                   std::optional<SuperpositionOp> op,
                                   const TruncationPolicy& policy) {
    const TwoModeState tmss = make_tmss(sq, policy);
    auto down = [&](const TwoModeState& st, Mode m) {
        return apply_ladder(st, m, LadderKind::annihilate, policy);
    };
    auto up = [&](const TwoModeState& st, Mode m) {
        return apply_ladder(st, m, LadderKind::create, policy);
    };

    TwoModeState raw;
    switch (name) {
    case ReferenceState::sub_A:
        raw = down(tmss, Mode::A);
        break;
    case ReferenceState::sub_B:
        raw = down(tmss, Mode::B);
        break;
    case ReferenceState::sub_AB:
        raw = down(down(tmss, Mode::A), Mode::B);
        break;
    case ReferenceState::addsub_AB:
        raw = down(up(down(up(tmss, Mode::A), Mode::A), Mode::B), Mode::B);
        break;
    case ReferenceState::addsub_addsub_AB:
        raw = down(down(up(up(tmss, Mode::B), Mode::A), Mode::B), Mode::A);
        break;
    case ReferenceState::coherent_A:
        if (!op) throw std::invalid_argument("coherent_A requires a superposition op");
        raw = apply_superposition(tmss, Mode::A, *op, policy);
        break;
    case ReferenceState::coherent_AB:
        if (!op) throw std::invalid_argument("coherent_AB requires a superposition op");
        raw = apply_superposition(apply_superposition(tmss, Mode::A, *op, policy), Mode::B, *op,
                                  policy);
        break;
    default:
        throw std::invalid_argument("unknown reference state");
    }
    return normalize(raw).first;
}

double norm_const_m1(double lambda) {
    double one_minus = 1.0 - lambda * lambda;
    return one_minus * one_minus;
}

double norm_const_m2(double lambda) {
    double l2 = lambda * lambda;
    double one_minus = 1.0 - l2;
    return one_minus * one_minus * one_minus / (1.0 + l2);
}

double norm_const_m3(double lambda) {
    double l2 = lambda * lambda;
    double one_minus = 1.0 - l2;
    double poly = 1.0 + 11.0 * l2 + 11.0 * l2 * l2 + l2 * l2 * l2;
    return std::pow(one_minus, 5) / poly;
}

double norm_const_N(double lambda, SuperpositionOp op_a, SuperpositionOp op_b) {
    double l2 = lambda * lambda;
    double one_minus = 1.0 - l2;
    double cross = op_a.t * op_b.r + op_a.r * op_b.t;
    double diag = op_a.t * op_b.t * l2 + op_a.r * op_b.r;
    double denom = l2 * (1.0 + cross * cross) + diag * diag;
    return one_minus * one_minus * one_minus / denom;
}

} // namespace cvq
