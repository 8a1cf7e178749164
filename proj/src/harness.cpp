#include "risopt/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "risopt/channel.hpp"
#include "risopt/separation.hpp"

namespace risopt {

namespace {

// Stream tags so that adding or removing methods never shifts the draws of
// another stream.
constexpr std::uint64_t kChannelTag = 0;
constexpr std::uint64_t kRandomMethodTag = 1;
constexpr std::uint64_t kBaselineMethodTag = 2;

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Index-addressed parallel loop; output slots are preassigned so the
/// result is independent of scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct DropOutcome {
    std::vector<ExperimentRecord> records;
};

DropOutcome run_drop(const ScenarioConfig& config, int drop_index) {
    const std::uint64_t channel_seed = derive_seed(config.seed, static_cast<std::uint64_t>(drop_index), kChannelTag);
    RngStream channel_rng(channel_seed);
    const ChannelSet ch = draw_channel_set(channel_rng, config);
    const SeparatedChannel sep = separate(ch);

    const bool pure_los = config.kappa_br.pure_los;
    double bound_bits = 0.0;
    bool bound_known = false;

    auto bound_value = [&]() {
        if (!bound_known) {
            bound_bits = upper_bound(sep);
            bound_known = true;
        }
        return bound_bits;
    };

    // The lower bound feeds its quantized variant; computed at most once.
    ComplexVector lb;
    bool lb_known = false;
    auto lb_value = [&]() {
        if (!lb_known) {
            lb = lower_bound_phases(sep);
            lb_known = true;
        }
        return lb;
    };

    DropOutcome out;
    for (const Method m : config.methods) {
        ExperimentRecord rec;
        rec.drop = drop_index;
        rec.method = m;
        rec.seed = channel_seed;

        const auto start = std::chrono::steady_clock::now();
        switch (m) {
            case Method::Random: {
                RngStream rng(derive_seed(config.seed, static_cast<std::uint64_t>(drop_index), kRandomMethodTag));
                const ComplexVector x = random_phases(rng, config.ris_elements());
                rec.sum_rate_bits = sum_rate_direct(assemble_global(ch, x));
                break;
            }
            case Method::LowerBound: {
                rec.sum_rate_bits = sum_rate_direct(assemble_global(ch, lb_value()));
                break;
            }
            case Method::LowerBoundQuantized: {
                const ComplexVector x = quantize_phases(lb_value(), config.quantizer_bits);
                rec.sum_rate_bits = sum_rate_direct(assemble_global(ch, x));
                break;
            }
            case Method::AlternatingOpt: {
                const AOResult res = ao_optimize(sep, config.ao_epsilon, config.ao_max_sweeps);
                rec.sum_rate_bits = sum_rate_direct(assemble_global(ch, res.x));
                rec.sweeps = res.trace.sweeps;
                break;
            }
            case Method::NumericalBaseline: {
                RngStream rng(derive_seed(config.seed, static_cast<std::uint64_t>(drop_index), kBaselineMethodTag));
                const ComplexVector x =
                    numerical_baseline(sep, config.baseline_restarts, config.baseline_steps, rng);
                rec.sum_rate_bits = sum_rate_direct(assemble_global(ch, x));
                break;
            }
            case Method::UpperBound: {
                rec.sum_rate_bits = bound_value();
                break;
            }
        }
        rec.wall_time_s = config.measure_wall_time ? elapsed_s(start) : 0.0;

        if (pure_los && m != Method::UpperBound && rec.sum_rate_bits > bound_value() + 1e-9) {
            throw std::runtime_error("bound violation: method " + method_name(m) + " rate " +
                                     std::to_string(rec.sum_rate_bits) + " exceeds upper bound " +
                                     std::to_string(bound_value()) + " at drop seed " +
                                     std::to_string(channel_seed));
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

ExperimentResult run_experiment(const ScenarioConfig& config, int threads) {
    config.validate();

    std::vector<DropOutcome> outcomes(static_cast<std::size_t>(config.trials));
    parallel_for(config.trials, threads,
                 [&](int i) { outcomes[static_cast<std::size_t>(i)] = run_drop(config, i); });

    ExperimentResult result;
    result.records.reserve(static_cast<std::size_t>(config.trials) * config.methods.size());
    for (auto& o : outcomes)
        for (auto& r : o.records) result.records.push_back(std::move(r));

    for (const Method m : config.methods) {
        MethodSummary s;
        double sum = 0.0, sum_sq = 0.0, time_sum = 0.0;
        for (const auto& r : result.records) {
            if (r.method != m) continue;
            sum += r.sum_rate_bits;
            sum_sq += r.sum_rate_bits * r.sum_rate_bits;
            time_sum += r.wall_time_s;
            ++s.count;
        }
        if (s.count > 0) {
            s.mean_bits = sum / s.count;
            const double var = std::max(0.0, sum_sq / s.count - s.mean_bits * s.mean_bits);
            s.stderr_bits = s.count > 1 ? std::sqrt(var / (s.count - 1)) : 0.0;
            s.mean_wall_time_s = time_sum / s.count;
        }
        result.summary[m] = s;
    }
    return result;
}

std::vector<AOTraceRecord> collect_ao_traces(const ScenarioConfig& config, int threads) {
    config.validate();
    std::vector<AOTraceRecord> traces(static_cast<std::size_t>(config.trials));
    parallel_for(config.trials, threads, [&](int i) {
        const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(i), kChannelTag);
        RngStream rng(seed);
        const ChannelSet ch = draw_channel_set(rng, config);
        const SeparatedChannel sep = separate(ch);
        const QuadraticModel model = quadratic_model(sep);
        const AOResult res = ao_optimize(sep, config.ao_epsilon, config.ao_max_sweeps);

        AOTraceRecord rec;
        rec.drop = i;
        rec.seed = seed;
        rec.rate_bits.reserve(res.trace.objective.size());
        for (const double obj : res.trace.objective) rec.rate_bits.push_back(model.rate_bits(obj));
        traces[static_cast<std::size_t>(i)] = std::move(rec);
    });
    return traces;
}

double mean_channel_power_db(const ScenarioConfig& config, int trials) {
    if (trials < 1) throw std::invalid_argument("mean_channel_power_db: trials must be at least 1");
    double power_sum = 0.0;
    long users = 0;
    for (int i = 0; i < trials; ++i) {
        RngStream rng(derive_seed(config.seed, static_cast<std::uint64_t>(i), kChannelTag));
        const ChannelSet ch = draw_channel_set(rng, config);
        const ComplexMatrix h = assemble_global(ch, ComplexVector::Ones(config.ris_elements()));
        power_sum += h.squaredNorm();
        users += config.num_users;
    }
    return 10.0 * std::log10(power_sum / static_cast<double>(users));
}

double calibrate_reference_power(const ScenarioConfig& config, double target_db, int trials,
                                 double search_lo_db, double search_hi_db) {
    config.validate();
    if (search_lo_db >= search_hi_db)
        throw std::invalid_argument("calibrate_reference_power: empty search range");

    auto power_at = [&](double p_db) {
        ScenarioConfig c = config;
        c.gain_direct.reference_power_db = p_db;
        c.gain_ris_user.reference_power_db = p_db;
        return mean_channel_power_db(c, trials);
    };

    double lo = search_lo_db, hi = search_hi_db;
    double f_lo = power_at(lo) - target_db;
    double f_hi = power_at(hi) - target_db;
    if (f_lo > 0.0 || f_hi < 0.0)
        throw std::domain_error("calibrate_reference_power: search range does not bracket the target");

    // Mean power is monotone increasing in P, so plain bisection suffices.
    while (hi - lo > 0.05) {
        const double mid = 0.5 * (lo + hi);
        if (power_at(mid) - target_db < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

std::string format_sig9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream out;
    out << "drop,method,sum_rate_bits,wall_time_s,sweeps,seed\n";
    for (const auto& r : records) {
        out << r.drop << ',' << method_name(r.method) << ',' << format_sig9(r.sum_rate_bits) << ','
            << format_sig9(r.wall_time_s) << ',';
        if (r.sweeps >= 0) out << r.sweeps;
        out << ',' << r.seed << '\n';
    }
    return out.str();
}

void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_csv: cannot open for writing: " + path);
    out << records_to_csv(records);
    if (!out)
        throw std::runtime_error("emit_csv: write failed: " + path);
}

}  // namespace risopt
