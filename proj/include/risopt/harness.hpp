#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "risopt/config.hpp"
#include "risopt/optim.hpp"

namespace risopt {

/// One (drop, method) result row.
struct ExperimentRecord {
    int drop = 0;
    Method method = Method::Random;
    double sum_rate_bits = 0.0;
    double wall_time_s = 0.0;
    int sweeps = -1;            // AO only; -1 elsewhere
    std::uint64_t seed = 0;     // channel seed of the drop
};

struct MethodSummary {
    double mean_bits = 0.0;
    double stderr_bits = 0.0;
    double mean_wall_time_s = 0.0;
    int count = 0;
};

struct ExperimentResult {
    std::vector<ExperimentRecord> records;          // drop-major, configured method order
    std::map<Method, MethodSummary> summary;
};

/// Run every configured method over `trials` independent drops. Achievable
/// designs are always scored by the direct sum-rate of the true channel; the
/// upper bound is recorded as the bound value itself. Per-drop seeds derive
/// from the master seed by counter, so results are identical for any thread
/// count. For pure-LOS RIS-BS drops, any achievable rate exceeding the bound
/// aborts with the offending seed in the message.
ExperimentResult run_experiment(const ScenarioConfig& config, int threads = 1);

struct AOTraceRecord {
    int drop = 0;
    std::uint64_t seed = 0;
    std::vector<double> rate_bits;  // sum-rate after each accepted sweep, index 0 = start
};

/// AO convergence traces (in bits) for every drop of the scenario.
std::vector<AOTraceRecord> collect_ao_traces(const ScenarioConfig& config, int threads = 1);

/// Mean per-user total channel power (dB) with the RIS set to identity
/// coefficients, averaged over `trials` drops at the configured seed.
double mean_channel_power_db(const ScenarioConfig& config, int trials);

/// Bisect the reference power so the mean per-user channel power hits
/// target_db within 0.1 dB. The search range must bracket the target.
double calibrate_reference_power(const ScenarioConfig& config, double target_db, int trials,
                                 double search_lo_db = -40.0, double search_hi_db = 120.0);

/// Fixed-schema CSV: "drop,method,sum_rate_bits,wall_time_s,sweeps,seed",
/// 9-significant-digit values, newline-terminated, drop-major order.
void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path);

std::string records_to_csv(const std::vector<ExperimentRecord>& records);

/// Entry point behind the `risopt` binary; see the README for subcommands.
int cli_main(const std::vector<std::string>& args);

}  // namespace risopt
