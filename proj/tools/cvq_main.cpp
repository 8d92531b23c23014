#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cvq/csv.hpp"
#include "cvq/sweep.hpp"
#include "cvq/validate.hpp"

namespace {

namespace fs = std::filesystem;
using namespace cvq;

struct GlobalOpts {
    int n_max = 60;
    double tail_tol = 1e-12;
    int quad_order = 40;
    std::string grid = "101x101";
    std::string out_dir = "figures";
    int workers = 0;
};

RunConfig to_config(const GlobalOpts& g) {
    RunConfig config;
    config.truncation.n_max = g.n_max;
    config.truncation.tail_tol = g.tail_tol;
    config.quad_order = g.quad_order;
    config.out_dir = g.out_dir;
    config.workers = g.workers;
    int rows = 0, cols = 0;
    if (std::sscanf(g.grid.c_str(), "%dx%d", &rows, &cols) != 2 || rows < 2 || cols < 2) {
        throw CLI::ValidationError("--grid", "expected SxR with S,R >= 2, e.g. 101x101");
    }
    config.grid_s = rows;
    config.grid_r = cols;
    return config;
}

Strategy strategy_arg(const std::string& name) {
    auto st = parse_strategy(name);
    if (!st) throw std::invalid_argument("unknown strategy '" + name + "'");
    return *st;
}

Metric metric_arg(const std::string& name) {
    auto m = parse_metric(name);
    if (!m) throw std::invalid_argument("unknown metric '" + name + "'");
    return *m;
}

std::string figure_file_stem(FigureId figure, const SweepRecord& rec) {
    std::string stem = "fig" + to_string(figure);
    switch (figure) {
    case FigureId::fig2:
    case FigureId::fig5:
        return stem;
    case FigureId::fig3b:
        return stem + "_s" + format_g12(rec.s);
    default:
        return stem + "_" + rec.strategy;
    }
}

int run_figure(FigureId figure, const RunConfig& config) {
    std::vector<SweepRecord> records = run_figure_sweep(figure, config);

    // one file per curve/surface, keyed off the per-record stem
    std::map<std::string, CsvTable> tables;
    std::vector<std::string> order;
    for (const SweepRecord& rec : records) {
        std::string stem = figure_file_stem(figure, rec);
        auto [it, inserted] = tables.try_emplace(stem);
        if (inserted) {
            it->second.header = kSweepHeader;
            order.push_back(stem);
        }
        it->second.rows.push_back(record_to_row(rec));
    }

    fs::create_directories(config.out_dir);
    for (const std::string& stem : order) {
        fs::path path = fs::path(config.out_dir) / (stem + ".csv");
        write_csv_atomic(path.string(), tables.at(stem));
        std::cout << path.string() << "\n";
    }
    return 0;
}

int run_eval(Metric metric, Strategy strategy, double s, std::optional<double> r,
             const std::vector<double>& gamma, RunConfig config) {
    if (strategy_uses_r(strategy) && !r) {
        throw std::invalid_argument("strategy " + to_string(strategy) + " requires --r");
    }
    if (!gamma.empty()) config.gamma = {gamma[0], gamma[1]};
    double r_value = r.value_or(0.0);
    double value = evaluate_metric(metric, strategy, s, r_value, config);

    SweepRecord rec{s, r ? *r : kNoR, to_string(strategy), to_string(metric), value};
    for (size_t i = 0; i < kSweepHeader.size(); ++i)
        std::cout << (i ? "," : "") << kSweepHeader[i];
    std::cout << "\n";
    auto row = record_to_row(rec);
    for (size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
    std::cout << "\n";
    return 0;
}

int run_threshold(Metric metric, Strategy strategy, double target, std::optional<double> r,
                  bool optimize, double s_lo, double s_hi, const RunConfig& config) {
    if (strategy_uses_r(strategy)) {
        if (optimize == bool(r)) {
            throw std::invalid_argument("coherent strategies need exactly one of --r/--optimize");
        }
    }
    ThresholdQuery query;
    query.metric = metric;
    query.strategy = strategy;
    query.target = target;
    query.fixed_r = optimize ? std::nullopt : r;
    query.s_lo = s_lo;
    query.s_hi = s_hi;
    std::cout << format_g12(find_threshold(query, config)) << "\n";
    return 0;
}

int run_crossover(Metric metric, Strategy a, Strategy b, double s_lo, double s_hi,
                  const RunConfig& config) {
    std::cout << format_g12(find_crossover(metric, a, b, s_lo, s_hi, config)) << "\n";
    return 0;
}

int run_validate(const RunConfig& config) {
    bool all_passed = true;
    for (const CheckResult& check : run_validation(config)) {
        all_passed = all_passed && check.passed;
        std::printf("%s  %-55s measured %.3e  tol %.0e\n", check.passed ? "PASS" : "FAIL",
                    check.name.c_str(), check.measured, check.tolerance);
    }
    std::printf("%s\n", all_passed ? "validation passed" : "validation FAILED");
    return all_passed ? 0 : 1;
}

int run_state(Strategy strategy, double s, std::optional<double> r, const std::string& out,
              const RunConfig& config) {
    if (strategy_uses_r(strategy) && !r) {
        throw std::invalid_argument("strategy " + to_string(strategy) + " requires --r");
    }
    TwoModeState state = build_strategy_state(strategy, s, r.value_or(0.0), config);

    CsvTable table;
    table.header = {"n_a", "n_b", "re", "im"};
    for (int n = 0; n < state.coeffs.rows(); ++n) {
        for (int m = 0; m < state.coeffs.cols(); ++m) {
            std::complex<double> c = state.coeffs(n, m);
            table.rows.push_back({std::to_string(n), std::to_string(m), format_g12(c.real()),
                                  format_g12(c.imag())});
        }
    }
    if (out.empty()) {
        auto emit = [](const std::vector<std::string>& row) {
            for (size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
            std::cout << "\n";
        };
        emit(table.header);
        for (const auto& row : table.rows) emit(row);
    } else {
        if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
        write_csv_atomic(out, table);
        std::cout << out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-mode entangled state toolkit: entanglement entropy, EPR correlation and "
                 "teleportation fidelity for photon-operated squeezed vacua"};
    app.require_subcommand(1);

    GlobalOpts globals;
    app.add_option("--n-max", globals.n_max, "photon-number cutoff floor per mode")
        ->capture_default_str();
    app.add_option("--tail-tol", globals.tail_tol, "relative tail mass allowed at the cutoff")
        ->capture_default_str();
    app.add_option("--quad-order", globals.quad_order, "Gauss-Hermite order per axis")
        ->capture_default_str();
    app.add_option("--grid", globals.grid, "sweep grid as SxR, e.g. 101x101")
        ->capture_default_str();
    app.add_option("--out-dir", globals.out_dir, "output directory for figure CSV files")
        ->capture_default_str();
    app.add_option("--workers", globals.workers, "worker threads (0 = hardware concurrency)")
        ->capture_default_str();
    app.set_config("--config", "", "read defaults from an INI/TOML file");

    auto* figure_cmd = app.add_subcommand("figure", "sweep one figure dataset to CSV files");
    std::string figure_name;
    figure_cmd->add_option("id", figure_name, "figure id: 1a 1b 2 3a 3b 4 5 6a 6b")->required();
    figure_cmd->fallthrough();

    auto* eval_cmd = app.add_subcommand("eval", "evaluate one metric at a single point");
    std::string eval_metric, eval_strategy;
    double eval_s = 0.0;
    std::optional<double> eval_r;
    std::vector<double> eval_gamma;
    eval_cmd->add_option("--metric", eval_metric, "entropy | epr | fidelity")->required();
    eval_cmd->add_option("--strategy", eval_strategy,
                         "tmss | sub_A | sub_AB | addsub_AB | coherent_A | coherent_AB")
        ->required();
    eval_cmd->add_option("--s", eval_s, "squeezing parameter")->required();
    eval_cmd->add_option("--r", eval_r, "superposition ratio in [0,1]");
    eval_cmd
        ->add_option("--gamma", eval_gamma,
                     "teleport input amplitude re im (fidelity only; numeric route)")
        ->expected(2);
    eval_cmd->fallthrough();

    auto* threshold_cmd =
        app.add_subcommand("threshold", "squeezing where a metric reaches a target value");
    std::string th_metric, th_strategy;
    double th_target = 0.0, th_lo = 1e-4, th_hi = 1.0;
    std::optional<double> th_r;
    bool th_optimize = false;
    threshold_cmd->add_option("--metric", th_metric)->required();
    threshold_cmd->add_option("--strategy", th_strategy)->required();
    threshold_cmd->add_option("--target", th_target)->required();
    threshold_cmd->add_option("--r", th_r, "fix the superposition ratio");
    threshold_cmd->add_flag("--optimize", th_optimize, "optimize r at every squeezing");
    threshold_cmd->add_option("--s-lo", th_lo)->capture_default_str();
    threshold_cmd->add_option("--s-hi", th_hi)->capture_default_str();
    threshold_cmd->fallthrough();

    auto* crossover_cmd =
        app.add_subcommand("crossover", "squeezing where two strategies exchange rank");
    std::string cr_metric, cr_a, cr_b;
    double cr_lo = 1e-4, cr_hi = 1.0;
    crossover_cmd->add_option("--metric", cr_metric)->required();
    crossover_cmd->add_option("--a", cr_a, "first strategy (optimized over r if coherent)")
        ->required();
    crossover_cmd->add_option("--b", cr_b, "second strategy")->required();
    crossover_cmd->add_option("--s-lo", cr_lo)->capture_default_str();
    crossover_cmd->add_option("--s-hi", cr_hi)->capture_default_str();
    crossover_cmd->fallthrough();

    auto* validate_cmd =
        app.add_subcommand("validate", "cross-check closed forms against numerical routes");
    validate_cmd->fallthrough();

    auto* state_cmd = app.add_subcommand("state", "dump a resource state's Fock coefficients");
    std::string st_strategy, st_out;
    double st_s = 0.0;
    std::optional<double> st_r;
    state_cmd->add_option("--strategy", st_strategy)->required();
    state_cmd->add_option("--s", st_s)->required();
    state_cmd->add_option("--r", st_r);
    state_cmd->add_option("--out", st_out, "write CSV here instead of stdout");
    state_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig config = to_config(globals);
        if (figure_cmd->parsed()) {
            auto id = parse_figure(figure_name);
            if (!id) throw std::invalid_argument("unknown figure id '" + figure_name + "'");
            return run_figure(*id, config);
        }
        if (eval_cmd->parsed()) {
            return run_eval(metric_arg(eval_metric), strategy_arg(eval_strategy), eval_s, eval_r,
                            eval_gamma, config);
        }
        if (threshold_cmd->parsed()) {
            return run_threshold(metric_arg(th_metric), strategy_arg(th_strategy), th_target,
                                 th_r, th_optimize, th_lo, th_hi, config);
        }
        if (crossover_cmd->parsed()) {
            return run_crossover(metric_arg(cr_metric), strategy_arg(cr_a), strategy_arg(cr_b),
                                 cr_lo, cr_hi, config);
        }
        if (validate_cmd->parsed()) {
            return run_validate(config);
        }
        if (state_cmd->parsed()) {
            return run_state(strategy_arg(st_strategy), st_s, st_r, st_out, config);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
