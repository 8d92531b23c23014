#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "cvq/sweep.hpp"

using namespace cvq;

TEST_CASE("strategy and metric names round-trip") {
    for (Strategy st : {Strategy::tmss, Strategy::sub_A, Strategy::sub_AB, Strategy::addsub_AB,
                        Strategy::coherent_A, Strategy::coherent_AB}) {
        auto parsed = parse_strategy(to_string(st));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == st);
    }
    for (Metric m : {Metric::entropy, Metric::epr, Metric::fidelity}) {
        auto parsed = parse_metric(to_string(m));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == m);
    }
    CHECK(!parse_strategy("squeezed").has_value());
    CHECK(!parse_metric("negativity").has_value());
    CHECK(parse_figure("3b").has_value());
    CHECK(parse_figure("fig3b") == parse_figure("3b"));
    CHECK(!parse_figure("7").has_value());
    CHECK(strategy_uses_r(Strategy::coherent_A));
    CHECK(strategy_uses_r(Strategy::coherent_AB));
    CHECK(!strategy_uses_r(Strategy::addsub_AB));
}

TEST_CASE("metric dispatch matches the underlying routes at a fixed point") {
    RunConfig config;
    // decoupling witness: classically useful fidelity with no EPR correlation
    double epr = evaluate_metric(Metric::epr, Strategy::coherent_AB, 0.2, 0.5, config);
    double fid = evaluate_metric(Metric::fidelity, Strategy::coherent_AB, 0.2, 0.5, config);
    CHECK(epr == doctest::Approx(2.29599659972).epsilon(1e-9));
    CHECK(fid == doctest::Approx(0.549629892004).epsilon(1e-9));
    CHECK(epr > 2.0);
    CHECK(fid > 0.5);
}

TEST_CASE("r-optimization: entropy at s = 0.1 reaches the frozen optimum") {
    auto [r_star, value] = optimize_r(Metric::entropy, 0.1, Strategy::coherent_AB, {});
    CHECK(value == doctest::Approx(1.0070).epsilon(2e-3));
    CHECK(r_star == doctest::Approx(0.3011).epsilon(2e-2));
    // local optimality of the reported point
    RunConfig config;
    CHECK(evaluate_metric(Metric::entropy, Strategy::coherent_AB, 0.1, r_star + 2e-3, config) <=
          value + 1e-12);
    CHECK(evaluate_metric(Metric::entropy, Strategy::coherent_AB, 0.1, r_star - 2e-3, config) <=
          value + 1e-12);
}

TEST_CASE("r-optimization: one-mode entropy optimum stays just above one ebit") {
    auto [r_star, value] = optimize_r(Metric::entropy, 0.1, Strategy::coherent_A, {});
    CHECK(value == doctest::Approx(1.0038).epsilon(2e-3));
    CHECK(r_star == doctest::Approx(0.099).epsilon(3e-2));
}

TEST_CASE("r-optimization: fidelity at s = 0.01 reaches the frozen optimum") {
    auto [r_star, value] = optimize_r(Metric::fidelity, 0.01, Strategy::coherent_AB, {});
    CHECK(value == doctest::Approx(0.6498).epsilon(3e-3));
    CHECK(r_star == doctest::Approx(0.0770).epsilon(3e-2));
}

TEST_CASE("r-optimization: strong squeezing collapses the epr optimum to subtraction") {
    auto [r_star, value] = optimize_r(Metric::epr, 1.0, Strategy::coherent_AB, {});
    CHECK(r_star == doctest::Approx(0.0).epsilon(1e-9));
    double sub_value = evaluate_metric(Metric::epr, Strategy::sub_AB, 1.0, 0.0, {});
    CHECK(value == doctest::Approx(sub_value).epsilon(1e-12));
    CHECK_THROWS_AS(optimize_r(Metric::epr, 0.5, Strategy::sub_AB, {}), std::invalid_argument);
}

TEST_CASE("threshold: plain addition needs s = 0.3782 to restore epr entanglement") {
    ThresholdQuery query;
    query.metric = Metric::epr;
    query.strategy = Strategy::coherent_AB;
    query.target = 2.0;
    query.fixed_r = 1.0;
    CHECK(find_threshold(query, {}) == doctest::Approx(0.378154).epsilon(1e-3));
}

TEST_CASE("threshold: plain addition needs s = 0.3047 to beat classical teleportation") {
    ThresholdQuery query;
    query.metric = Metric::fidelity;
    query.strategy = Strategy::coherent_AB;
    query.target = 0.5;
    query.fixed_r = 1.0;
    CHECK(find_threshold(query, {}) == doctest::Approx(0.304689).epsilon(1e-3));
}

TEST_CASE("threshold: subtraction is entangled immediately, the threshold degenerates") {
    ThresholdQuery query;
    query.metric = Metric::epr;
    query.strategy = Strategy::coherent_AB;
    query.target = 2.0;
    query.fixed_r = 0.0;
    double s_star = find_threshold(query, {});
    CHECK(s_star == doctest::Approx(query.s_lo).epsilon(1e-12));
}

TEST_CASE("threshold: no bracket means a bracket error") {
    ThresholdQuery query;
    query.metric = Metric::epr;
    query.strategy = Strategy::tmss;
    query.target = 2.0;
    query.s_lo = 0.1;
    query.s_hi = 1.0;
    CHECK_THROWS_AS(find_threshold(query, {}), BracketError);
}

TEST_CASE("crossovers between optimized strategies sit at the frozen squeezings") {
    SUBCASE("epr: coherent envelope vs addsub") {
        CHECK(find_crossover(Metric::epr, Strategy::coherent_AB, Strategy::addsub_AB, 0.01, 0.2,
                             {}) == doctest::Approx(0.05589).epsilon(2e-3));
    }
    SUBCASE("epr: addsub vs subtraction") {
        CHECK(find_crossover(Metric::epr, Strategy::addsub_AB, Strategy::sub_AB, 0.1, 0.6, {}) ==
              doctest::Approx(0.32377).epsilon(2e-3));
    }
    SUBCASE("fidelity: coherent envelope vs addsub") {
        CHECK(find_crossover(Metric::fidelity, Strategy::coherent_AB, Strategy::addsub_AB, 0.01,
                             0.2, {}) == doctest::Approx(0.07586).epsilon(2e-3));
    }
    SUBCASE("fidelity: addsub vs subtraction") {
        CHECK(find_crossover(Metric::fidelity, Strategy::addsub_AB, Strategy::sub_AB, 0.2, 0.8,
                             {}) == doctest::Approx(0.44457).epsilon(2e-3));
    }
}

TEST_CASE("boundary crossovers where the optimized envelope folds into its endpoint") {
    SUBCASE("epr: coherent advantage over subtraction ends near 0.147") {
        CHECK(find_crossover(Metric::epr, Strategy::coherent_AB, Strategy::sub_AB, 0.05, 0.5,
                             {}) == doctest::Approx(0.14742).epsilon(2e-3));
    }
    SUBCASE("fidelity: coherent advantage over subtraction ends near 0.186") {
        CHECK(find_crossover(Metric::fidelity, Strategy::coherent_AB, Strategy::sub_AB, 0.05, 0.5,
                             {}) == doctest::Approx(0.18559).epsilon(2e-3));
    }
    SUBCASE("entropy: coherent advantage over subtraction ends near 0.318") {
        CHECK(find_crossover(Metric::entropy, Strategy::coherent_AB, Strategy::sub_AB, 0.05, 0.6,
                             {}) == doctest::Approx(0.31784).epsilon(2e-3));
    }
}

TEST_CASE("crossover without a crossing raises a bracket error") {
    CHECK_THROWS_AS(
        find_crossover(Metric::entropy, Strategy::sub_AB, Strategy::tmss, 0.1, 0.8, {}),
        BracketError);
}

TEST_CASE("metrics are stable under doubling the truncation window") {
    RunConfig base;
    RunConfig doubled;
    doubled.truncation.n_max = 2 * base.truncation.n_max;
    for (Metric m : {Metric::entropy, Metric::epr, Metric::fidelity}) {
        double v1 = evaluate_metric(m, Strategy::coherent_AB, 0.5, 0.3, base);
        double v2 = evaluate_metric(m, Strategy::coherent_AB, 0.5, 0.3, doubled);
        CHECK(std::abs(v1 - v2) < 1e-10);
    }
}

TEST_CASE("single-mode coherent operation never helps teleportation") {
    RunConfig config;
    for (double s : {0.1, 0.3}) {
        double base = evaluate_metric(Metric::fidelity, Strategy::tmss, s, 0.0, config);
        for (double r : {0.0, 0.2, 0.5, 0.8}) {
            CHECK(evaluate_metric(Metric::fidelity, Strategy::coherent_A, s, r, config) <
                  base + 1e-12);
        }
    }
}

TEST_CASE("figure sweeps are deterministic across worker counts") {
    RunConfig serial;
    serial.grid_r = 7;
    serial.workers = 1;
    RunConfig parallel = serial;
    parallel.workers = 4;
    auto a = run_figure_sweep(FigureId::fig3b, serial);
    auto b = run_figure_sweep(FigureId::fig3b, parallel);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == 14); // two squeezing slices x seven ratios
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].s == b[i].s);
        CHECK(a[i].r == b[i].r);
        CHECK(a[i].strategy == b[i].strategy);
        CHECK(a[i].metric == b[i].metric);
        CHECK(a[i].value == b[i].value);
    }
}

TEST_CASE("r-axis figures replicate constant strategies across the grid") {
    RunConfig config;
    config.grid_r = 5;
    auto records = run_figure_sweep(FigureId::fig1b, config);
    REQUIRE(records.size() == 6 * 5);
    double tmss_value = -1.0;
    int tmss_rows = 0;
    for (const auto& rec : records) {
        CHECK(rec.metric == "entropy");
        CHECK(rec.s == 0.1);
        if (rec.strategy == "tmss") {
            if (tmss_rows == 0) tmss_value = rec.value;
            CHECK(rec.value == tmss_value);
            ++tmss_rows;
        }
    }
    CHECK(tmss_rows == 5);
}

TEST_CASE("pnes figure carries the truncation in the squeezing column") {
    auto records = run_figure_sweep(FigureId::fig4, {});
    REQUIRE(records.size() == 18);
    double diag_at[9], ladder_at[9];
    for (const auto& rec : records) {
        CHECK(rec.r == kNoR);
        CHECK(rec.metric == "epr");
        int n = int(rec.s);
        REQUIRE(n >= 0);
        REQUIRE(n <= 8);
        (rec.strategy == "pnes_diagonal" ? diag_at : ladder_at)[n] = rec.value;
    }
    CHECK(diag_at[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(diag_at[2] == doctest::Approx(0.8315491).epsilon(1e-6));
    CHECK(ladder_at[0] == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(ladder_at[1] == doctest::Approx(6.0 - 2.0 * std::sqrt(3.0)).epsilon(1e-6));
    // the same-photon class is strictly better at every truncation
    for (int n = 0; n <= 8; ++n) CHECK(diag_at[n] < ladder_at[n]);
}

TEST_CASE("s-axis figures mark optimized rows with the chosen ratio") {
    RunConfig config;
    config.grid_s = 4;
    auto records = run_figure_sweep(FigureId::fig3a, config);
    REQUIRE(records.size() == 5 * 4);
    for (const auto& rec : records) {
        if (rec.strategy == "coherent_AB") {
            CHECK(rec.r >= 0.0);
            CHECK(rec.r <= 1.0);
        } else {
            CHECK(rec.r == kNoR);
        }
    }
}
