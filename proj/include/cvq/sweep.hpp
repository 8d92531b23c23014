#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvq/fock.hpp"

namespace cvq {

enum class Strategy { tmss, sub_A, sub_AB, addsub_AB, coherent_A, coherent_AB };
enum class Metric { entropy, epr, fidelity };

std::string to_string(Strategy strategy);
std::string to_string(Metric metric);
std::optional<Strategy> parse_strategy(const std::string& name);
std::optional<Metric> parse_metric(const std::string& name);

// Whether the strategy carries the superposition ratio r.
bool strategy_uses_r(Strategy strategy);

struct RunConfig;

// Assembles the strategy's resource state at the given squeezing; r is ignored
// unless the strategy carries it.
TwoModeState build_strategy_state(Strategy strategy, double s, double r,
                                  const RunConfig& config);

// One figure/table row. The r column is the sentinel -1 when the strategy has
// no r parameter and the row is not plotted against r.
inline constexpr double kNoR = -1.0;

struct SweepRecord {
    double s = 0.0;
    double r = kNoR;
    std::string strategy;
    std::string metric;
    double value = 0.0;
};

struct RunConfig {
    TruncationPolicy truncation{};
    int quad_order = 40;
    int grid_s = 101;
    int grid_r = 101;
    std::string out_dir = "figures";
    int workers = 0; // 0 selects hardware concurrency
    std::complex<double> gamma{}; // teleport input amplitude, verification only
};

// Single-point metric evaluation. EPR always goes through the Fock-moment
// route; fidelity uses the closed characteristic-function quadrature for the
// coherent class (sub_AB, coherent_AB) and the Fock overlap kernel otherwise;
// entropy always goes through the Schmidt/SVD path.
double evaluate_metric(Metric metric, Strategy strategy, double s, double r,
                       const RunConfig& config = {});

// Coarse 101-point scan over r in [0,1] plus golden-section refinement of the
// best bracket (|Δr| < 1e-6, ties resolved toward smaller r). EPR is
// minimized; entropy and fidelity are maximized.
std::pair<double, double> optimize_r(Metric metric, double s, Strategy strategy,
                                     const RunConfig& config = {});

struct ThresholdQuery {
    Metric metric = Metric::epr;
    Strategy strategy = Strategy::coherent_AB;
    double target = 2.0;
    std::optional<double> fixed_r; // nullopt: optimize r at every s
    double s_lo = 1e-4;
    double s_hi = 1.0;
};

// Bisection for value(s) = target to |Δs| < 1e-5. A bracket endpoint already
// at the target (within tolerance) is returned directly, which covers the
// degenerate threshold at the origin.
double find_threshold(const ThresholdQuery& query, const RunConfig& config = {});

// Location where strategy a stops (or starts) being better than strategy b,
// to |Δs| < 1e-4. Transversal crossings are bisected on the sign change of
// the difference of (r-optimized) curves. When one curve is the optimized
// envelope of the other (difference one-signed), the boundary where the
// advantage falls below a small δ is bisected instead.
double find_crossover(Metric metric, Strategy a, Strategy b, double s_lo, double s_hi,
                      const RunConfig& config = {});

enum class FigureId { fig1a, fig1b, fig2, fig3a, fig3b, fig4, fig5, fig6a, fig6b };

std::optional<FigureId> parse_figure(const std::string& name);
std::string to_string(FigureId figure);

// Deterministic figure datasets; row order is fixed, evaluation order is not
// (rows are independent and sharded over workers by index).
std::vector<SweepRecord> run_figure_sweep(FigureId figure, const RunConfig& config = {});

} // namespace cvq
