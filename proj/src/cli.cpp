#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "risopt/harness.hpp"

namespace risopt {

namespace {

std::string format_sig9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

/// Default output location: RISOPT_OUT_DIR when set, else the working directory.
std::string default_out(const std::string& filename) {
    const char* dir = std::getenv("RISOPT_OUT_DIR");
    if (dir && *dir) return std::string(dir) + "/" + filename;
    return filename;
}

ArrayGeometry square_ris(int elements, double spacing) {
    int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(elements))));
    while (side > 1 && elements % side != 0) --side;
    return ArrayGeometry{elements / side, side, spacing};
}

struct SummaryRow {
    int n_ris;
    int num_users;
    std::string kappa_br;
    Method method;
    MethodSummary stats;
    int trials;
};

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "n_ris,num_users,kappa_br,method,mean_sum_rate_bits,stderr_bits,mean_wall_time_s,trials\n";
    for (const auto& r : rows) {
        out << r.n_ris << ',' << r.num_users << ',' << r.kappa_br << ',' << method_name(r.method)
            << ',' << format_sig9(r.stats.mean_bits) << ',' << format_sig9(r.stats.stderr_bits)
            << ',' << format_sig9(r.stats.mean_wall_time_s) << ',' << r.trials << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void print_summary(const std::vector<SummaryRow>& rows) {
    std::printf("%6s %5s %8s %16s %14s %12s\n", "N", "K", "kappa_br", "method", "mean_bits", "stderr");
    for (const auto& r : rows) {
        std::printf("%6d %5d %8s %16s %14.6f %12.6f\n", r.n_ris, r.num_users, r.kappa_br.c_str(),
                    method_name(r.method).c_str(), r.stats.mean_bits, r.stats.stderr_bits);
    }
}

std::vector<Method> parse_method_list(const std::string& csv) {
    std::vector<Method> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(method_from_name(item));
    }
    return out;
}

int run_subcommand(const std::string& config_path, int trials, std::int64_t seed,
                   const std::string& out_path, const std::string& methods, int threads,
                   bool timing) {
    ScenarioConfig cfg = config_path.empty() ? ScenarioConfig{} : load_config(config_path);
    if (trials > 0) cfg.trials = trials;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (!methods.empty()) cfg.methods = parse_method_list(methods);
    cfg.measure_wall_time = timing;
    cfg.validate();

    const ExperimentResult result = run_experiment(cfg, threads);
    emit_csv(result.records, out_path);

    std::vector<SummaryRow> rows;
    for (const Method m : cfg.methods)
        rows.push_back({cfg.ris_elements(), cfg.num_users,
                        cfg.kappa_br.pure_los ? "inf" : format_sig9(cfg.kappa_br.value), m,
                        result.summary.at(m), cfg.trials});
    print_summary(rows);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

ScenarioConfig fig_base_config(int trials, std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.bs = ArrayGeometry{8, 4, 0.5};
    cfg.kappa_d = KFactor::ricean(1.0);
    cfg.kappa_ru = KFactor::ricean(1.0);
    cfg.kappa_br = KFactor::los();
    cfg.trials = trials;
    cfg.seed = seed;
    return cfg;
}

int fig2_subcommand(int trials, std::int64_t seed, const std::string& out_path,
                    std::vector<int> n_list, int threads, bool timing) {
    const std::uint64_t master = seed >= 0 ? static_cast<std::uint64_t>(seed) : 1;
    std::vector<SummaryRow> rows;
    int cell = 0;
    for (const int users : {2, 5}) {
        for (const int n : n_list) {
            ScenarioConfig cfg = fig_base_config(trials, derive_seed(master, static_cast<std::uint64_t>(cell++), 97));
            cfg.num_users = users;
            cfg.ris = square_ris(n, 0.2);
            cfg.quantizer_bits = 2;
            cfg.measure_wall_time = timing;
            const ExperimentResult result = run_experiment(cfg, threads);
            for (const Method m : cfg.methods)
                rows.push_back({n, users, "inf", m, result.summary.at(m), trials});
        }
    }
    write_summary_csv(rows, out_path);
    print_summary(rows);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int fig3_subcommand(int trials, std::int64_t seed, const std::string& out_path,
                    std::vector<int> k_list, std::vector<int> n_list, int threads, bool timing) {
    const std::uint64_t master = seed >= 0 ? static_cast<std::uint64_t>(seed) : 1;
    std::vector<SummaryRow> rows;
    int cell = 0;
    for (const bool pure : {true, false}) {
        for (const int n : n_list) {
            for (const int users : k_list) {
                ScenarioConfig cfg = fig_base_config(trials, derive_seed(master, static_cast<std::uint64_t>(cell++), 98));
                cfg.kappa_br = pure ? KFactor::los() : KFactor::ricean(1.0);
                cfg.num_users = users;
                cfg.ris = square_ris(n, 0.2);
                cfg.methods = {Method::NumericalBaseline, Method::AlternatingOpt, Method::LowerBound};
                cfg.measure_wall_time = timing;
                const ExperimentResult result = run_experiment(cfg, threads);
                for (const Method m : cfg.methods)
                    rows.push_back({n, users, pure ? "inf" : "1", m, result.summary.at(m), trials});
            }
        }
    }
    write_summary_csv(rows, out_path);
    print_summary(rows);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int fig4_subcommand(int trials, std::int64_t seed, const std::string& out_path, int threads) {
    const std::uint64_t master = seed >= 0 ? static_cast<std::uint64_t>(seed) : 1;

    struct TraceRow {
        int users, n;
        AOTraceRecord rec;
    };
    std::vector<TraceRow> all;
    std::size_t max_len = 0;
    int cell = 0;
    for (const int users : {2, 4}) {
        for (const int n : {100, 121, 144}) {
            ScenarioConfig cfg = fig_base_config(trials, derive_seed(master, static_cast<std::uint64_t>(cell++), 99));
            cfg.num_users = users;
            cfg.ris = square_ris(n, 0.2);
            for (auto& rec : collect_ao_traces(cfg, threads)) {
                max_len = std::max(max_len, rec.rate_bits.size());
                all.push_back({users, n, std::move(rec)});
            }
        }
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << "num_users,n_ris,drop,seed";
    for (std::size_t s = 0; s < max_len; ++s) out << ",rate_sweep_" << s;
    out << '\n';
    for (const auto& row : all) {
        out << row.users << ',' << row.n << ',' << row.rec.drop << ',' << row.rec.seed;
        // Converged traces are padded with their final value.
        for (std::size_t s = 0; s < max_len; ++s) {
            const std::size_t idx = std::min(s, row.rec.rate_bits.size() - 1);
            out << ',' << format_sig9(row.rec.rate_bits[idx]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + out_path);
    std::printf("wrote %s (%zu traces)\n", out_path.c_str(), all.size());
    return 0;
}

int calibrate_subcommand(const std::string& config_path, double target_db, int trials,
                         std::int64_t seed) {
    ScenarioConfig cfg;
    if (!config_path.empty()) {
        cfg = load_config(config_path);
    } else {
        // Single-user reference geometry: 64-antenna BS, 100-element RIS,
        // fully scattered user links, pure LOS RIS-BS link.
        cfg.bs = ArrayGeometry{8, 8, 0.5};
        cfg.ris = ArrayGeometry{10, 10, 0.2};
        cfg.num_users = 1;
        cfg.kappa_d = KFactor::ricean(0.0);
        cfg.kappa_ru = KFactor::ricean(0.0);
        cfg.kappa_br = KFactor::los();
    }
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    const double p = calibrate_reference_power(cfg, target_db, trials);
    std::printf("calibrated reference power: %.2f dB (target %.2f dB, %d trials)\n", p, target_db,
                trials);
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"RIS phase design for multi-user uplink: bounds, alternating optimization, and Monte-Carlo experiments"};
    app.require_subcommand(1);

    std::string config_path, out_path, methods;
    int trials = -1;
    std::int64_t seed = -1;
    int threads = 1;
    bool timing = false;

    auto add_common = [&](CLI::App* sub, const std::string& out_default) {
        sub->add_option("--config", config_path, "scenario config file");
        sub->add_option("--trials", trials, "Monte-Carlo drops per configuration");
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--out", out_path, "output CSV path")->default_val(default_out(out_default));
        sub->add_option("--threads", threads, "worker threads (results are thread-count independent)");
        sub->add_flag("--timing", timing, "record wall-clock times (breaks byte determinism)");
    };

    CLI::App* run = app.add_subcommand("run", "run an arbitrary configured scenario");
    add_common(run, "run.csv");
    run->add_option("--methods", methods, "comma-separated method subset");

    CLI::App* fig2 = app.add_subcommand("fig2", "sum-rate vs RIS size, all methods");
    add_common(fig2, "fig2.csv");
    std::vector<int> fig2_n = {16, 36, 64, 100};
    fig2->add_option("--n-list", fig2_n, "RIS sizes to sweep");

    CLI::App* fig3 = app.add_subcommand("fig3", "sum-rate vs user count, pure and dominant LOS");
    add_common(fig3, "fig3.csv");
    std::vector<int> fig3_k = {2, 3, 4, 5, 6};
    std::vector<int> fig3_n = {64, 144};
    fig3->add_option("--k-list", fig3_k, "user counts to sweep");
    fig3->add_option("--n-list", fig3_n, "RIS sizes to sweep");

    CLI::App* fig4 = app.add_subcommand("fig4", "AO per-sweep convergence traces");
    add_common(fig4, "fig4.csv");

    CLI::App* calibrate = app.add_subcommand("calibrate", "bisect the reference power to a target mean channel power");
    double target_db = 0.0;
    calibrate->add_option("--config", config_path, "scenario config file");
    calibrate->add_option("--target-db", target_db, "target mean per-user channel power (dB)");
    calibrate->add_option("--trials", trials, "Monte-Carlo drops per probe");
    calibrate->add_option("--seed", seed, "master seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed())
            return run_subcommand(config_path, trials, seed, out_path, methods, threads, timing);
        if (fig2->parsed())
            return fig2_subcommand(trials > 0 ? trials : 500, seed, out_path, fig2_n, threads, timing);
        if (fig3->parsed())
            return fig3_subcommand(trials > 0 ? trials : 500, seed, out_path, fig3_k, fig3_n, threads, timing);
        if (fig4->parsed())
            return fig4_subcommand(trials > 0 ? trials : 500, seed, out_path, threads);
        if (calibrate->parsed())
            return calibrate_subcommand(config_path, target_db, trials > 0 ? trials : 200, seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}

}  // namespace risopt
