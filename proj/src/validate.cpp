#include "cvq/validate.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "cvq/entanglement.hpp"
#include "cvq/epr.hpp"
#include "cvq/teleport.hpp"

namespace cvq {

namespace {

using std::abs;

CheckResult make_result(std::string name, double measured, double tolerance) {
    return {std::move(name), measured <= tolerance, measured, tolerance};
}

CheckResult check_epr_two_routes(const RunConfig& config) {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        double s = 0.05 + 0.95 * i / 19.0;
        for (int j = 0; j < 20; ++j) {
            double r = j / 19.0;
            SuperpositionOp op = SuperpositionOp::from_r(r);
            TwoModeState state = build_reference_state(ReferenceState::coherent_AB,
                                                       SqueezeParam(s), op, config.truncation);
            double via_moments = epr_total_variance(quadrature_moments(state));
            double via_closed = epr_closed_form(SqueezeParam(s), op, op);
            worst = std::max(worst, abs(via_moments - via_closed));
        }
    }
    return make_result("epr moment route vs closed form", worst, 1e-9);
}

CheckResult check_norm_constants(const RunConfig& config) {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        double s = 0.1 + 0.25 * i;
        SqueezeParam sq(s);
        const double lam = sq.lambda;
        const double gauss = 1.0 - lam * lam;
        TwoModeState tmss = make_tmss(sq, config.truncation);

        double n1 = apply_ladder(tmss, Mode::A, LadderKind::annihilate).norm_squared();
        worst = std::max(worst, abs(n1 / (gauss * lam * lam / norm_const_m1(lam)) - 1.0));

        double n2 = apply_ladder(apply_ladder(tmss, Mode::A, LadderKind::annihilate), Mode::B,
                                 LadderKind::annihilate)
                        .norm_squared();
        worst = std::max(worst, abs(n2 / (gauss * lam * lam / norm_const_m2(lam)) - 1.0));

        double n3 =
            apply_ladder(apply_ladder(apply_ladder(apply_ladder(tmss, Mode::A, LadderKind::create),
                                                   Mode::A, LadderKind::annihilate),
                                      Mode::B, LadderKind::create),
                         Mode::B, LadderKind::annihilate)
                .norm_squared();
        worst = std::max(worst, abs(n3 / (gauss / norm_const_m3(lam)) - 1.0));

        for (double ra : {0.0, 0.3, 0.8}) {
            for (double rb : {0.2, 0.6}) {
                SuperpositionOp oa = SuperpositionOp::from_r(ra);
                SuperpositionOp ob = SuperpositionOp::from_r(rb);
                double n4 =
                    apply_superposition(apply_superposition(tmss, Mode::A, oa), Mode::B, ob)
                        .norm_squared();
                worst = std::max(worst, abs(n4 / (gauss / norm_const_N(lam, oa, ob)) - 1.0));
            }
        }
    }
    return make_result("ladder-pipeline norms vs closed constants", worst, 1e-9);
}

CheckResult check_tmss_entropy(const RunConfig& config) {
    double worst = 0.0;
    for (double s : {0.05, 0.2, 0.5, 0.8, 1.2}) {
        double svd = entanglement_entropy(make_tmss(SqueezeParam(s), config.truncation));
        worst = std::max(worst, abs(svd - tmss_entropy_closed_form(s)));
    }
    return make_result("tmss entropy svd vs closed form", worst, 1e-8);
}

CheckResult check_tmss_epr(const RunConfig& config) {
    double worst = 0.0;
    for (double s : {0.05, 0.2, 0.5, 0.8, 1.2}) {
        double value =
            epr_total_variance(quadrature_moments(make_tmss(SqueezeParam(s), config.truncation)));
        worst = std::max(worst, abs(value - 2.0 * std::exp(-2.0 * s)));
    }
    return make_result("tmss epr variance vs 2e^{-2s}", worst, 1e-8);
}

CheckResult check_tmss_fidelity(const RunConfig& config) {
    double worst = 0.0;
    for (double s : {0.05, 0.3, 0.7, 1.1}) {
        SqueezeParam sq(s);
        double expected = tmss_fidelity_closed_form(s);
        double via_fock = fidelity_fock(make_tmss(sq, config.truncation));
        double via_quad = average_fidelity_tmss(sq, config.quad_order).fidelity;
        worst = std::max(worst, abs(via_fock - expected));
        worst = std::max(worst, abs(via_quad - expected));
    }
    return make_result("tmss teleport fidelity, both routes vs closed form", worst, 1e-8);
}

CheckResult check_char_fn(const RunConfig& config) {
    double worst = 0.0;
    std::mt19937 rng(20260825);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::pair<double, double> setups[] = {{0.2, 0.4}, {0.6, 0.7}};
    for (auto [s, r] : setups) {
        SqueezeParam sq(s);
        SuperpositionOp op = SuperpositionOp::from_r(r);
        TwoModeState state = build_reference_state(ReferenceState::coherent_AB, sq, op,
                                                   config.truncation);
        for (int k = 0; k < 25; ++k) {
            std::complex<double> l2(unit(rng), unit(rng));
            std::complex<double> l3(unit(rng), unit(rng));
            CharFnPoint p = make_char_point(sq, l2, l3);
            std::complex<double> closed = char_fn_closed(sq, op, op, p);
            std::complex<double> numeric = char_fn_numeric(state, p);
            worst = std::max(worst, abs(closed - numeric));
        }
    }
    return make_result("characteristic function closed vs fock numeric", worst, 1e-8);
}

CheckResult check_schmidt_small_lambda(const RunConfig& config) {
    const double s = 1e-3;
    SqueezeParam sq(s);
    const double lam = sq.lambda;
    double worst = 0.0;

    auto spectrum_of = [&](ReferenceState which, std::optional<SuperpositionOp> op) {
        TwoModeState state = build_reference_state(which, sq, op, config.truncation);
        return schmidt_decompose(state).values;
    };

    {
        auto sv = spectrum_of(ReferenceState::addsub_AB, std::nullopt);
        double n = std::sqrt(1.0 + 16.0 * lam * lam);
        worst = std::max(worst, abs(sv[0] - 1.0 / n) / (1.0 / n));
        worst = std::max(worst, abs(sv[1] - 4.0 * lam / n) / (4.0 * lam / n));
    }
    {
        const double r = 0.4;
        auto sv = spectrum_of(ReferenceState::coherent_A, SuperpositionOp::from_r(r));
        double n = std::sqrt(r * r + lam * lam * (1.0 + r * r));
        double big = r / n;
        double small = lam * std::sqrt(1.0 + r * r) / n;
        worst = std::max(worst, abs(sv[0] - big) / big);
        worst = std::max(worst, abs(sv[1] - small) / small);
    }
    {
        const double r = 0.4;
        auto sv = spectrum_of(ReferenceState::coherent_AB, SuperpositionOp::from_r(r));
        double n = std::sqrt(r * r * r * r + lam * lam * (1.0 + r * r) * (1.0 + r * r));
        double big = r * r / n;
        double small = lam * (1.0 + r * r) / n;
        worst = std::max(worst, abs(sv[0] - big) / big);
        worst = std::max(worst, abs(sv[1] - small) / small);
    }
    return make_result("leading schmidt coefficients at small squeezing", worst, 1e-4);
}

CheckResult check_commutator(const RunConfig& config) {
    (void)config;
    double worst = 0.0;
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 4 + trial % 3;
        int cols = 5 + trial % 2;
        Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(rows + 3, cols + 3);
        for (int n = 0; n < rows; ++n) {
            for (int m = 0; m < cols; ++m) c(n, m) = {gauss(rng), gauss(rng)};
        }
        c /= std::sqrt(c.squaredNorm());
        TwoModeState psi{c, int(c.rows()) - 1, int(c.cols()) - 1, true};
        for (Mode mode : {Mode::A, Mode::B}) {
            TwoModeState down_up = apply_ladder(apply_ladder(psi, mode, LadderKind::create), mode,
                                                LadderKind::annihilate);
            TwoModeState up_down = apply_ladder(apply_ladder(psi, mode, LadderKind::annihilate),
                                                mode, LadderKind::create);
            Eigen::MatrixXcd diff = down_up.coeffs - up_down.coeffs;
            diff.topLeftCorner(c.rows(), c.cols()) -= c;
            worst = std::max(worst, diff.norm());
        }
    }
    return make_result("ladder commutator identity on random states", worst, 1e-10);
}

CheckResult check_pnes_optimum(const RunConfig& config) {
    (void)config;
    auto [spec, best] = pnes_optimize(PnesKind::diagonal, 2);
    double worst = abs(pnes_epr_value(spec) - best);

    // a coarse simplex scan must not beat the eigenvalue route
    double grid_best = 10.0;
    for (int i = 0; i <= 60; ++i) {
        for (int j = 0; j <= 60; ++j) {
            Eigen::VectorXd d(3);
            d << 1.0, i / 20.0, j / 20.0;
            PnesSpec trial{PnesKind::diagonal, d, spec.truncation};
            grid_best = std::min(grid_best, pnes_epr_value(trial));
        }
    }
    worst = std::max(worst, std::max(0.0, best - grid_best));
    return make_result("pnes optimum self-consistency and grid bound", worst, 1e-6);
}

CheckResult check_fidelity_two_routes(const RunConfig& config) {
    SqueezeParam sq(0.2);
    SuperpositionOp op = SuperpositionOp::from_r(0.5);
    TwoModeState state =
        build_reference_state(ReferenceState::coherent_AB, sq, op, config.truncation);
    double via_fock = fidelity_fock(state);
    double via_quad = average_fidelity(sq, op, op, config.quad_order).fidelity;
    return make_result("teleport fidelity fock kernel vs quadrature", abs(via_fock - via_quad),
                       1e-8);
}

} // namespace

std::vector<CheckResult> run_validation(const RunConfig& config) {
    std::vector<CheckResult> results;
    results.push_back(check_epr_two_routes(config));
    results.push_back(check_norm_constants(config));
    results.push_back(check_tmss_entropy(config));
    results.push_back(check_tmss_epr(config));
    results.push_back(check_tmss_fidelity(config));
    results.push_back(check_char_fn(config));
    results.push_back(check_schmidt_small_lambda(config));
    results.push_back(check_commutator(config));
    results.push_back(check_pnes_optimum(config));
    results.push_back(check_fidelity_two_routes(config));
    return results;
}

} // namespace cvq
