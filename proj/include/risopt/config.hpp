#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace risopt {

/// Uniform rectangular array in the y-z plane, element spacing in wavelengths.
struct ArrayGeometry {
    int n_y = 1;
    int n_z = 1;
    double spacing = 0.5;

    int size() const { return n_y * n_z; }
    void validate(const std::string& what) const;
};

/// Clustered ray model parameters. Angle spreads are in degrees: azimuth
/// central angles are Gaussian, all other offsets two-sided exponential.
struct RayParams {
    int clusters = 20;
    int subrays = 20;
    double central_az_mean_deg = 0.0;
    double central_az_std_deg = 31.64;
    double subray_az_std_deg = 24.25;
    double central_el_scale_deg = 6.12;
    double subray_el_scale_deg = 1.84;

    void validate(const std::string& what) const;
};

/// Narrow-spread defaults for the RIS-BS link.
RayParams narrow_ray_params();

/// Distance-based link gain: P * X * d^(-gamma) with log-normal shadowing X.
struct LinkGainParams {
    double reference_power_db = 45.0;
    double pathloss_exponent = 3.5;
    double shadow_std_db = 0.0;

    void validate(const std::string& what) const;
};

/// Ricean-style K-factor. Pure LOS is an explicit mode, not a large float.
struct KFactor {
    double value = 1.0;
    bool pure_los = false;

    static KFactor ricean(double kappa) {
        if (kappa < 0.0) throw std::invalid_argument("KFactor: kappa must be nonnegative");
        return KFactor{kappa, false};
    }
    static KFactor los() { return KFactor{0.0, true}; }

    /// Amplitude weight of the LOS ray.
    double eta() const { return pure_los ? 1.0 : std::sqrt(value / (1.0 + value)); }
    /// Amplitude weight of the scattered sum.
    double zeta() const { return pure_los ? 0.0 : std::sqrt(1.0 / (1.0 + value)); }
};

enum class Method {
    Random,
    LowerBound,
    LowerBoundQuantized,
    AlternatingOpt,
    NumericalBaseline,
    UpperBound,
};

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// Full scenario description for one Monte-Carlo experiment.
struct ScenarioConfig {
    ArrayGeometry bs{8, 4, 0.5};
    ArrayGeometry ris{8, 8, 0.2};
    int num_users = 2;

    KFactor kappa_d = KFactor::ricean(1.0);
    KFactor kappa_ru = KFactor::ricean(1.0);
    KFactor kappa_br = KFactor::los();

    RayParams ray_direct;
    RayParams ray_ris_user;
    RayParams ray_ris_bs = narrow_ray_params();

    LinkGainParams gain_direct{45.0, 3.5, 0.0};
    LinkGainParams gain_ris_user{45.0, 2.0, 0.0};

    double cell_radius_m = 50.0;
    double exclusion_radius_m = 5.0;
    double bs_ris_distance_m = 10.0;

    int trials = 500;
    std::uint64_t seed = 1;
    std::vector<Method> methods = {Method::Random, Method::LowerBound, Method::LowerBoundQuantized,
                                   Method::AlternatingOpt, Method::NumericalBaseline,
                                   Method::UpperBound};
    int quantizer_bits = 2;

    double ao_epsilon = 1e-6;
    int ao_max_sweeps = 100;
    int baseline_restarts = 4;
    int baseline_steps = 300;

    /// Wall-clock measurement is inherently run-dependent; it is off by
    /// default so emitted CSV bytes are a pure function of (config, seed).
    bool measure_wall_time = false;

    int bs_antennas() const { return bs.size(); }
    int ris_elements() const { return ris.size(); }

    /// Throws std::invalid_argument on any inconsistent field.
    void validate() const;
};

/// Parse a plain-text "key = value" config file ('#' starts a comment).
/// Unknown keys are rejected. Missing keys keep their defaults.
ScenarioConfig load_config(const std::string& path);

/// Same grammar, from an in-memory string.
ScenarioConfig parse_config(const std::string& text);

}  // namespace risopt
