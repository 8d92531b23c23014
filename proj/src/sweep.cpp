#include "cvq/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "cvq/entanglement.hpp"
#include "cvq/epr.hpp"
#include "cvq/teleport.hpp"

namespace cvq {

namespace {

constexpr double kGolden = 0.6180339887498949; // (sqrt(5) - 1) / 2
constexpr double kRTol = 1e-6;
constexpr double kThresholdSTol = 1e-5;
constexpr double kCrossoverSTol = 1e-5;
constexpr double kMinS = 1e-6; // pipelines degenerate at exactly s = 0

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> xs(count);
    if (count == 1) {
        xs[0] = lo;
        return xs;
    }
    for (int i = 0; i < count; ++i) xs[i] = lo + (hi - lo) * i / double(count - 1);
    return xs;
}

} // namespace

TwoModeState build_strategy_state(Strategy strategy, double s, double r,
                                  const RunConfig& config) {
    SqueezeParam sq(s);
    const TruncationPolicy& policy = config.truncation;
    switch (strategy) {
    case Strategy::tmss:
        return make_tmss(sq, policy);
    case Strategy::sub_A:
        return build_reference_state(ReferenceState::sub_A, sq, std::nullopt, policy);
    case Strategy::sub_AB:
        return build_reference_state(ReferenceState::sub_AB, sq, std::nullopt, policy);
    case Strategy::addsub_AB:
        return build_reference_state(ReferenceState::addsub_AB, sq, std::nullopt, policy);
    case Strategy::coherent_A:
        return build_reference_state(ReferenceState::coherent_A, sq,
                                     SuperpositionOp::from_r(r), policy);
    case Strategy::coherent_AB:
        return build_reference_state(ReferenceState::coherent_AB, sq,
                                     SuperpositionOp::from_r(r), policy);
    }
    throw std::invalid_argument("unknown strategy");
}

namespace {

double fidelity_value(Strategy strategy, double s, double r, const RunConfig& config) {
    SqueezeParam sq(s);
    if (config.gamma != std::complex<double>{}) {
        TwoModeState state = build_strategy_state(strategy, s, r, config);
        return average_fidelity_numeric(state, config.gamma, config.quad_order).fidelity;
    }
    switch (strategy) {
    case Strategy::sub_AB:
        return average_fidelity(sq, SuperpositionOp::subtraction(),
                                SuperpositionOp::subtraction(), config.quad_order)
            .fidelity;
    case Strategy::coherent_AB: {
        SuperpositionOp op = SuperpositionOp::from_r(r);
        return average_fidelity(sq, op, op, config.quad_order).fidelity;
    }
    default:
        return fidelity_fock(build_strategy_state(strategy, s, r, config));
    }
}

std::vector<SweepRecord> parallel_map(const std::vector<std::function<SweepRecord()>>& jobs,
                                      int workers) {
    const int count = static_cast<int>(jobs.size());
    std::vector<SweepRecord> out(count);
    int pool_size = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    pool_size = std::max(1, std::min(pool_size, count));

    if (pool_size == 1) {
        for (int i = 0; i < count; ++i) out[i] = jobs[i]();
        return out;
    }

    std::vector<std::exception_ptr> errors(pool_size);
    std::vector<std::thread> pool;
    pool.reserve(pool_size);
    for (int k = 0; k < pool_size; ++k) {
        pool.emplace_back([&, k] {
            try {
                for (int i = k; i < count; i += pool_size) out[i] = jobs[i]();
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

void sort_records(std::vector<SweepRecord>& records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const SweepRecord& x, const SweepRecord& y) {
                         if (x.strategy != y.strategy) return x.strategy < y.strategy;
                         if (x.s != y.s) return x.s < y.s;
                         return x.r < y.r;
                     });
}

} // namespace

std::string to_string(Strategy strategy) {
    switch (strategy) {
    case Strategy::tmss: return "tmss";
    case Strategy::sub_A: return "sub_A";
    case Strategy::sub_AB: return "sub_AB";
    case Strategy::addsub_AB: return "addsub_AB";
    case Strategy::coherent_A: return "coherent_A";
    case Strategy::coherent_AB: return "coherent_AB";
    }
    return "?";
}

std::string to_string(Metric metric) {
    switch (metric) {
    case Metric::entropy: return "entropy";
    case Metric::epr: return "epr";
    case Metric::fidelity: return "fidelity";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(const std::string& name) {
    for (Strategy st : {Strategy::tmss, Strategy::sub_A, Strategy::sub_AB, Strategy::addsub_AB,
                        Strategy::coherent_A, Strategy::coherent_AB}) {
        if (to_string(st) == name) return st;
    }
    return std::nullopt;
}

std::optional<Metric> parse_metric(const std::string& name) {
    for (Metric m : {Metric::entropy, Metric::epr, Metric::fidelity}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

bool strategy_uses_r(Strategy strategy) {
    return strategy == Strategy::coherent_A || strategy == Strategy::coherent_AB;
}

double evaluate_metric(Metric metric, Strategy strategy, double s, double r,
                       const RunConfig& config) {
    switch (metric) {
    case Metric::entropy:
        return entanglement_entropy(build_strategy_state(strategy, s, r, config));
    case Metric::epr:
        return epr_total_variance(quadrature_moments(build_strategy_state(strategy, s, r, config)));
    case Metric::fidelity:
        return fidelity_value(strategy, s, r, config);
    }
    throw std::invalid_argument("unknown metric");
}

std::pair<double, double> optimize_r(Metric metric, double s, Strategy strategy,
                                     const RunConfig& config) {
    if (!strategy_uses_r(strategy)) {
        throw std::invalid_argument("optimize_r requires a coherent-operation strategy");
    }
    const bool maximize = metric != Metric::epr;
    auto value_at = [&](double r) { return evaluate_metric(metric, strategy, s, r, config); };
    auto better = [&](double lhs, double rhs) { return maximize ? lhs > rhs : lhs < rhs; };

    // coarse scan; strict comparison keeps the smaller r on ties
    const int coarse_points = 101;
    int best_index = 0;
    double best_value = value_at(0.0);
    std::vector<double> grid(coarse_points);
    grid[0] = 0.0;
    for (int i = 1; i < coarse_points; ++i) {
        grid[i] = i / double(coarse_points - 1);
        double v = value_at(grid[i]);
        if (better(v, best_value)) {
            best_value = v;
            best_index = i;
        }
    }

    double lo = grid[std::max(0, best_index - 1)];
    double hi = grid[std::min(coarse_points - 1, best_index + 1)];
    double c = hi - kGolden * (hi - lo);
    double d = lo + kGolden * (hi - lo);
    double fc = value_at(c);
    double fd = value_at(d);
    while (hi - lo > kRTol) {
        if (better(fc, fd)) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kGolden * (hi - lo);
            fc = value_at(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kGolden * (hi - lo);
            fd = value_at(d);
        }
    }
    double refined_r = 0.5 * (lo + hi);
    double refined_value = value_at(refined_r);
    if (better(refined_value, best_value)) {
        return {refined_r, refined_value};
    }
    return {grid[best_index], best_value};
}

namespace {

double curve_value(Metric metric, Strategy strategy, std::optional<double> fixed_r, double s,
                   const RunConfig& config) {
    s = std::max(s, kMinS);
    if (strategy_uses_r(strategy) && !fixed_r) {
        return optimize_r(metric, s, strategy, config).second;
    }
    double r = fixed_r.value_or(0.0);
    return evaluate_metric(metric, strategy, s, r, config);
}

} // namespace

double find_threshold(const ThresholdQuery& query, const RunConfig& config) {
    if (!(query.s_lo < query.s_hi)) {
        throw BracketError("find_threshold: bracket must satisfy s_lo < s_hi");
    }
    auto g = [&](double s) {
        return curve_value(query.metric, query.strategy, query.fixed_r, s, config) -
               query.target;
    };
    double g_lo = g(query.s_lo);
    double g_hi = g(query.s_hi);

    // generous enough that a curve grazing the target at an endpoint (the
    // degenerate threshold-at-zero case, slope about 4) is detected there
    const double end_tol = 1e-3 * std::max(1.0, std::abs(query.target));
    if (std::abs(g_lo) <= end_tol) return query.s_lo;
    if (std::abs(g_hi) <= end_tol) return query.s_hi;
    if (g_lo * g_hi > 0.0) {
        throw BracketError("find_threshold: endpoints do not straddle the target");
    }

    // the bracketed segment must cross the target exactly once
    int sign_changes = 0;
    double prev = g_lo;
    for (double s : linspace(query.s_lo, query.s_hi, 11)) {
        double value = (s == query.s_lo) ? g_lo : (s == query.s_hi ? g_hi : g(s));
        if (prev != 0.0 && value != 0.0 && (prev > 0.0) != (value > 0.0)) ++sign_changes;
        prev = value;
    }
    if (sign_changes > 1) {
        throw BracketError("find_threshold: segment crosses the target more than once");
    }

    double lo = query.s_lo;
    double hi = query.s_hi;
    bool lo_positive = g_lo > 0.0;
    while (hi - lo > kThresholdSTol) {
        double mid = 0.5 * (lo + hi);
        double value = g(mid);
        if ((value > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double find_crossover(Metric metric, Strategy a, Strategy b, double s_lo, double s_hi,
                      const RunConfig& config) {
    if (!(s_lo < s_hi)) throw BracketError("find_crossover: bracket must satisfy s_lo < s_hi");

    auto value_of = [&](Strategy st, double s) {
        return curve_value(metric, st, std::nullopt, s, config);
    };
    auto diff = [&](double s) { return value_of(a, s) - value_of(b, s); };

    double vb_lo = value_of(b, s_lo);
    double vb_hi = value_of(b, s_hi);
    double d_lo = value_of(a, s_lo) - vb_lo;
    double d_hi = value_of(a, s_hi) - vb_hi;

    // transversal crossing: plain bisection on the sign of the difference
    if (d_lo != 0.0 && d_hi != 0.0 && (d_lo > 0.0) != (d_hi > 0.0)) {
        double lo = s_lo;
        double hi = s_hi;
        bool lo_positive = d_lo > 0.0;
        while (hi - lo > kCrossoverSTol) {
            double mid = 0.5 * (lo + hi);
            if ((diff(mid) > 0.0) == lo_positive) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }

    // boundary of an optimized envelope against its own endpoint curve: the
    // difference is one-signed and decays to zero; bisect on the advantage
    // dropping below δ
    const double direction = (metric == Metric::epr) ? -1.0 : 1.0;
    const double delta =
        1e-9 * std::max({1.0, std::abs(vb_lo), std::abs(vb_hi)});
    auto advantage_above = [&](double d_val) { return direction * d_val > delta; };

    bool p_lo = advantage_above(d_lo);
    bool p_hi = advantage_above(d_hi);
    if (p_lo == p_hi) {
        throw BracketError("find_crossover: strategies do not cross inside the bracket");
    }
    double lo = s_lo;
    double hi = s_hi;
    while (hi - lo > kCrossoverSTol) {
        double mid = 0.5 * (lo + hi);
        if (advantage_above(diff(mid)) == p_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<FigureId> parse_figure(const std::string& name) {
    for (FigureId id : {FigureId::fig1a, FigureId::fig1b, FigureId::fig2, FigureId::fig3a,
                        FigureId::fig3b, FigureId::fig4, FigureId::fig5, FigureId::fig6a,
                        FigureId::fig6b}) {
        if (to_string(id) == name || ("fig" + to_string(id)) == name) return id;
    }
    return std::nullopt;
}

std::string to_string(FigureId figure) {
    switch (figure) {
    case FigureId::fig1a: return "1a";
    case FigureId::fig1b: return "1b";
    case FigureId::fig2: return "2";
    case FigureId::fig3a: return "3a";
    case FigureId::fig3b: return "3b";
    case FigureId::fig4: return "4";
    case FigureId::fig5: return "5";
    case FigureId::fig6a: return "6a";
    case FigureId::fig6b: return "6b";
    }
    return "?";
}

std::vector<SweepRecord> run_figure_sweep(FigureId figure, const RunConfig& config) {
    std::vector<std::function<SweepRecord()>> jobs;

    auto point_job = [&](Metric metric, Strategy strategy, double s, double r,
                         bool plot_against_r) {
        jobs.push_back([=, &config]() {
            SweepRecord rec;
            rec.s = s;
            rec.strategy = to_string(strategy);
            rec.metric = to_string(metric);
            if (strategy_uses_r(strategy)) {
                rec.r = r;
                rec.value = evaluate_metric(metric, strategy, s, r, config);
            } else {
                // constant curves on r-axis figures are replicated per abscissa
                rec.r = plot_against_r ? r : kNoR;
                rec.value = evaluate_metric(metric, strategy, s, 0.0, config);
            }
            return rec;
        });
    };
    auto optimized_job = [&](Metric metric, Strategy strategy, double s) {
        jobs.push_back([=, &config]() {
            auto [best_r, value] = optimize_r(metric, s, strategy, config);
            return SweepRecord{s, best_r, to_string(strategy), to_string(metric), value};
        });
    };

    const std::vector<double> s_axis = linspace(0.01, 1.0, config.grid_s);
    const std::vector<double> r_axis = linspace(0.0, 1.0, config.grid_r);

    switch (figure) {
    case FigureId::fig1a:
        for (Strategy st : {Strategy::tmss, Strategy::sub_A, Strategy::sub_AB,
                            Strategy::addsub_AB}) {
            for (double s : s_axis) point_job(Metric::entropy, st, s, kNoR, false);
        }
        for (Strategy st : {Strategy::coherent_A, Strategy::coherent_AB}) {
            for (double s : s_axis) optimized_job(Metric::entropy, st, s);
        }
        break;
    case FigureId::fig1b:
        for (Strategy st : {Strategy::tmss, Strategy::sub_A, Strategy::sub_AB,
                            Strategy::addsub_AB, Strategy::coherent_A, Strategy::coherent_AB}) {
            for (double r : r_axis) point_job(Metric::entropy, st, 0.1, r, true);
        }
        break;
    case FigureId::fig2:
        for (double s : s_axis) {
            for (double r : r_axis) point_job(Metric::epr, Strategy::coherent_AB, s, r, true);
        }
        break;
    case FigureId::fig3a:
        for (Strategy st : {Strategy::tmss, Strategy::sub_A, Strategy::sub_AB,
                            Strategy::addsub_AB}) {
            for (double s : s_axis) point_job(Metric::epr, st, s, kNoR, false);
        }
        for (double s : s_axis) optimized_job(Metric::epr, Strategy::coherent_AB, s);
        break;
    case FigureId::fig3b:
        for (double s : {0.01, 0.06}) {
            for (double r : r_axis) point_job(Metric::epr, Strategy::coherent_AB, s, r, true);
        }
        break;
    case FigureId::fig4:
        for (PnesKind kind : {PnesKind::diagonal, PnesKind::ladder}) {
            for (int n = 0; n <= 8; ++n) {
                jobs.push_back([=]() {
                    auto [spec, value] = pnes_optimize(kind, n);
                    (void)spec;
                    SweepRecord rec;
                    rec.s = double(n);
                    rec.r = kNoR;
                    rec.strategy =
                        kind == PnesKind::diagonal ? "pnes_diagonal" : "pnes_ladder";
                    rec.metric = "epr";
                    rec.value = value;
                    return rec;
                });
            }
        }
        break;
    case FigureId::fig5:
        for (double s : s_axis) {
            for (double r : r_axis) {
                point_job(Metric::fidelity, Strategy::coherent_AB, s, r, true);
            }
        }
        break;
    case FigureId::fig6a:
        for (Strategy st : {Strategy::tmss, Strategy::sub_A, Strategy::sub_AB,
                            Strategy::addsub_AB}) {
            for (double s : s_axis) point_job(Metric::fidelity, st, s, kNoR, false);
        }
        for (double s : s_axis) optimized_job(Metric::fidelity, Strategy::coherent_AB, s);
        break;
    case FigureId::fig6b:
        for (Strategy st : {Strategy::tmss, Strategy::sub_A, Strategy::sub_AB,
                            Strategy::addsub_AB, Strategy::coherent_AB}) {
            for (double r : r_axis) point_job(Metric::fidelity, st, 0.01, r, true);
        }
        break;
    }

    std::vector<SweepRecord> records = parallel_map(jobs, config.workers);
    sort_records(records);
    return records;
}

} // namespace cvq
