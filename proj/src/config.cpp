#include "risopt/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace risopt {

void ArrayGeometry::validate(const std::string& what) const {
    if (n_y < 1 || n_z < 1)
        throw std::invalid_argument(what + ": array dimensions must be positive");
    if (spacing <= 0.0)
        throw std::invalid_argument(what + ": element spacing must be positive");
}

void RayParams::validate(const std::string& what) const {
    if (clusters < 1 || subrays < 1)
        throw std::invalid_argument(what + ": cluster and subray counts must be at least 1");
    if (central_az_std_deg <= 0.0 || subray_az_std_deg <= 0.0 || central_el_scale_deg <= 0.0 ||
        subray_el_scale_deg <= 0.0)
        throw std::invalid_argument(what + ": angle spreads must be positive");
}

RayParams narrow_ray_params() {
    RayParams p;
    p.clusters = 3;
    p.subrays = 16;
    p.central_az_mean_deg = 0.0;
    p.central_az_std_deg = 14.4;
    p.subray_az_std_deg = 6.24;
    p.central_el_scale_deg = 1.9;
    p.subray_el_scale_deg = 1.37;
    return p;
}

void LinkGainParams::validate(const std::string& what) const {
    if (pathloss_exponent < 0.0)
        throw std::invalid_argument(what + ": pathloss exponent must be nonnegative");
    if (shadow_std_db < 0.0)
        throw std::invalid_argument(what + ": shadow fading std must be nonnegative");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Random: return "random";
        case Method::LowerBound: return "lower_bound";
        case Method::LowerBoundQuantized: return "lower_bound_qb";
        case Method::AlternatingOpt: return "ao";
        case Method::NumericalBaseline: return "numerical";
        case Method::UpperBound: return "upper_bound";
    }
    throw std::logic_error("method_name: unknown method");
}

Method method_from_name(const std::string& name) {
    if (name == "random") return Method::Random;
    if (name == "lower_bound") return Method::LowerBound;
    if (name == "lower_bound_qb") return Method::LowerBoundQuantized;
    if (name == "ao") return Method::AlternatingOpt;
    if (name == "numerical") return Method::NumericalBaseline;
    if (name == "upper_bound") return Method::UpperBound;
    throw std::invalid_argument("unknown method name: " + name);
}

void ScenarioConfig::validate() const {
    bs.validate("bs array");
    ris.validate("ris array");
    if (num_users < 1) throw std::invalid_argument("num_users must be at least 1");
    ray_direct.validate("ray_direct");
    ray_ris_user.validate("ray_ris_user");
    ray_ris_bs.validate("ray_ris_bs");
    gain_direct.validate("gain_direct");
    gain_ris_user.validate("gain_ris_user");
    if (cell_radius_m <= 0.0)
        throw std::invalid_argument("cell radius must be positive");
    if (exclusion_radius_m < 0.0 || exclusion_radius_m >= cell_radius_m)
        throw std::invalid_argument("exclusion radius must lie in [0, cell radius)");
    if (bs_ris_distance_m <= 0.0)
        throw std::invalid_argument("bs-ris distance must be positive");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (methods.empty()) throw std::invalid_argument("method list must be nonempty");
    if (quantizer_bits < 1) throw std::invalid_argument("quantizer bits must be at least 1");
    if (ao_epsilon <= 0.0) throw std::invalid_argument("ao_epsilon must be positive");
    if (ao_max_sweeps < 1) throw std::invalid_argument("ao_max_sweeps must be at least 1");
    if (baseline_restarts < 1) throw std::invalid_argument("baseline_restarts must be at least 1");
    if (baseline_steps < 1) throw std::invalid_argument("baseline_steps must be at least 1");
    if (!kappa_br.pure_los && kappa_br.value <= 0.0)
        throw std::invalid_argument("kappa_br must be positive or pure LOS");
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': bad numeric value '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': bad integer value '" + value + "'");
    }
}

KFactor parse_kfactor(const std::string& key, const std::string& value) {
    if (value == "inf" || value == "los") return KFactor::los();
    return KFactor::ricean(parse_double(key, value));
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "bs_cols") cfg.bs.n_y = parse_int(key, value);
        else if (key == "bs_rows") cfg.bs.n_z = parse_int(key, value);
        else if (key == "bs_spacing") cfg.bs.spacing = parse_double(key, value);
        else if (key == "ris_cols") cfg.ris.n_y = parse_int(key, value);
        else if (key == "ris_rows") cfg.ris.n_z = parse_int(key, value);
        else if (key == "ris_spacing") cfg.ris.spacing = parse_double(key, value);
        else if (key == "num_users") cfg.num_users = parse_int(key, value);
        else if (key == "kappa_d") cfg.kappa_d = parse_kfactor(key, value);
        else if (key == "kappa_ru") cfg.kappa_ru = parse_kfactor(key, value);
        else if (key == "kappa_br") cfg.kappa_br = parse_kfactor(key, value);
        else if (key == "direct_clusters") cfg.ray_direct.clusters = parse_int(key, value);
        else if (key == "direct_subrays") cfg.ray_direct.subrays = parse_int(key, value);
        else if (key == "direct_central_az_mean_deg") cfg.ray_direct.central_az_mean_deg = parse_double(key, value);
        else if (key == "direct_central_az_std_deg") cfg.ray_direct.central_az_std_deg = parse_double(key, value);
        else if (key == "direct_subray_az_std_deg") cfg.ray_direct.subray_az_std_deg = parse_double(key, value);
        else if (key == "direct_central_el_scale_deg") cfg.ray_direct.central_el_scale_deg = parse_double(key, value);
        else if (key == "direct_subray_el_scale_deg") cfg.ray_direct.subray_el_scale_deg = parse_double(key, value);
        else if (key == "ris_user_clusters") cfg.ray_ris_user.clusters = parse_int(key, value);
        else if (key == "ris_user_subrays") cfg.ray_ris_user.subrays = parse_int(key, value);
        else if (key == "ris_user_central_az_mean_deg") cfg.ray_ris_user.central_az_mean_deg = parse_double(key, value);
        else if (key == "ris_user_central_az_std_deg") cfg.ray_ris_user.central_az_std_deg = parse_double(key, value);
        else if (key == "ris_user_subray_az_std_deg") cfg.ray_ris_user.subray_az_std_deg = parse_double(key, value);
        else if (key == "ris_user_central_el_scale_deg") cfg.ray_ris_user.central_el_scale_deg = parse_double(key, value);
        else if (key == "ris_user_subray_el_scale_deg") cfg.ray_ris_user.subray_el_scale_deg = parse_double(key, value);
        else if (key == "ris_bs_clusters") cfg.ray_ris_bs.clusters = parse_int(key, value);
        else if (key == "ris_bs_subrays") cfg.ray_ris_bs.subrays = parse_int(key, value);
        else if (key == "ris_bs_central_az_mean_deg") cfg.ray_ris_bs.central_az_mean_deg = parse_double(key, value);
        else if (key == "ris_bs_central_az_std_deg") cfg.ray_ris_bs.central_az_std_deg = parse_double(key, value);
        else if (key == "ris_bs_subray_az_std_deg") cfg.ray_ris_bs.subray_az_std_deg = parse_double(key, value);
        else if (key == "ris_bs_central_el_scale_deg") cfg.ray_ris_bs.central_el_scale_deg = parse_double(key, value);
        else if (key == "ris_bs_subray_el_scale_deg") cfg.ray_ris_bs.subray_el_scale_deg = parse_double(key, value);
        else if (key == "reference_power_db") {
            cfg.gain_direct.reference_power_db = parse_double(key, value);
            cfg.gain_ris_user.reference_power_db = cfg.gain_direct.reference_power_db;
        }
        else if (key == "pathloss_exp_direct") cfg.gain_direct.pathloss_exponent = parse_double(key, value);
        else if (key == "pathloss_exp_ris_user") cfg.gain_ris_user.pathloss_exponent = parse_double(key, value);
        else if (key == "shadow_std_direct_db") cfg.gain_direct.shadow_std_db = parse_double(key, value);
        else if (key == "shadow_std_ris_user_db") cfg.gain_ris_user.shadow_std_db = parse_double(key, value);
        else if (key == "cell_radius_m") cfg.cell_radius_m = parse_double(key, value);
        else if (key == "exclusion_radius_m") cfg.exclusion_radius_m = parse_double(key, value);
        else if (key == "bs_ris_distance_m") cfg.bs_ris_distance_m = parse_double(key, value);
        else if (key == "trials") cfg.trials = parse_int(key, value);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
        else if (key == "quantizer_bits") cfg.quantizer_bits = parse_int(key, value);
        else if (key == "ao_epsilon") cfg.ao_epsilon = parse_double(key, value);
        else if (key == "ao_max_sweeps") cfg.ao_max_sweeps = parse_int(key, value);
        else if (key == "baseline_restarts") cfg.baseline_restarts = parse_int(key, value);
        else if (key == "baseline_steps") cfg.baseline_steps = parse_int(key, value);
        else if (key == "measure_wall_time") cfg.measure_wall_time = parse_int(key, value) != 0;
        else if (key == "methods") {
            cfg.methods.clear();
            std::istringstream ms(value);
            std::string item;
            while (std::getline(ms, item, ',')) {
                item = trim(item);
                if (!item.empty()) cfg.methods.push_back(method_from_name(item));
            }
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace risopt
