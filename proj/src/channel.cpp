#include "risopt/channel.hpp"

#include <cmath>

namespace risopt {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

double clamp_elevation(double theta, long* clamp_events) {
    if (theta < 0.0) {
        if (clamp_events) ++*clamp_events;
        return 0.0;
    }
    if (theta > M_PI) {
        if (clamp_events) ++*clamp_events;
        return M_PI;
    }
    return theta;
}

/// Annulus sample by rejection: uniform over the disk, retried until the
/// point clears the exclusion radius. Radii scale the uniform draw directly,
/// so doubling both radii doubles every accepted distance.
double sample_annulus_distance(RngStream& rng, double exclusion_m, double cell_m) {
    for (;;) {
        const double d = cell_m * std::sqrt(rng.uniform());
        if (d >= exclusion_m) return d;
    }
}

struct RayOffsets {
    double el_central, az_central;
};

}  // namespace

ComplexVector steering_vector(const ArrayGeometry& geom, double elevation, double azimuth) {
    geom.validate("steering_vector");
    const double phase_y = 2.0 * M_PI * geom.spacing * std::sin(elevation) * std::sin(azimuth);
    const double phase_z = 2.0 * M_PI * geom.spacing * std::cos(elevation);

    ComplexVector v(geom.size());
    for (int iy = 0; iy < geom.n_y; ++iy) {
        for (int iz = 0; iz < geom.n_z; ++iz) {
            v(iy * geom.n_z + iz) = std::polar(1.0, iy * phase_y + iz * phase_z);
        }
    }
    return v;
}

UserDrop draw_user_drop(RngStream& rng, const ScenarioConfig& config) {
    config.validate();
    UserDrop drop;
    const int k = config.num_users;
    drop.dist_bs_m.resize(k);
    drop.dist_ris_m.resize(k);
    drop.los_bs.resize(k);
    drop.los_ris.resize(k);

    for (int u = 0; u < k; ++u) {
        drop.dist_bs_m[u] = sample_annulus_distance(rng, config.exclusion_radius_m, config.cell_radius_m);
        drop.dist_ris_m[u] = sample_annulus_distance(rng, config.exclusion_radius_m, config.cell_radius_m);
        drop.los_bs[u] = {rng.uniform(0.0, M_PI), rng.uniform(-M_PI / 2.0, M_PI / 2.0)};
        drop.los_ris[u] = {rng.uniform(0.0, M_PI), rng.uniform(-M_PI / 2.0, M_PI / 2.0)};
    }

    drop.bs_ris_distance_m = config.bs_ris_distance_m;
    const double theta_dep = rng.uniform(70.0 * kDegToRad, 90.0 * kDegToRad);
    drop.ris_bs_departure = {theta_dep, rng.uniform(-30.0 * kDegToRad, 30.0 * kDegToRad)};
    drop.ris_bs_arrival = {M_PI - theta_dep, rng.uniform(-30.0 * kDegToRad, 30.0 * kDegToRad)};
    return drop;
}

double link_gain(const LinkGainParams& params, double distance_m, RngStream& rng) {
    params.validate("link_gain");
    if (distance_m <= 0.0)
        throw std::domain_error("link_gain: distance must be positive");
    const double ref = std::pow(10.0, params.reference_power_db / 10.0);
    double shadow = 1.0;
    if (params.shadow_std_db > 0.0)
        shadow = std::pow(10.0, params.shadow_std_db * rng.normal() / 10.0);
    return ref * shadow * std::pow(distance_m, -params.pathloss_exponent);
}

ComplexMatrix synth_ray_channel(RngStream& rng, const ArrayGeometry& geom, const RayParams& ray,
                                const std::vector<double>& link_gains,
                                const std::vector<LosAngles>& los, const KFactor& kappa,
                                long* clamp_events) {
    geom.validate("synth_ray_channel");
    ray.validate("synth_ray_channel");
    if (link_gains.size() != los.size())
        throw std::invalid_argument("synth_ray_channel: per-user gains and angles must align");

    const int users = static_cast<int>(link_gains.size());
    const double eta = kappa.eta();
    const double zeta = kappa.zeta();
    const double az_mean = ray.central_az_mean_deg * kDegToRad;
    const double az_central_std = ray.central_az_std_deg * kDegToRad;
    const double az_subray_scale = ray.subray_az_std_deg * kDegToRad;
    const double el_central_scale = ray.central_el_scale_deg * kDegToRad;
    const double el_subray_scale = ray.subray_el_scale_deg * kDegToRad;

    ComplexMatrix h = ComplexMatrix::Zero(geom.size(), users);
    for (int u = 0; u < users; ++u) {
        const double gain = link_gains[static_cast<std::size_t>(u)];
        const LosAngles base = los[static_cast<std::size_t>(u)];
        ComplexVector col = eta * std::sqrt(gain) * steering_vector(geom, base.elevation, base.azimuth);

        if (zeta > 0.0) {
            // Equal split keeps the ray powers summing to the link gain.
            const double ray_power = gain / (ray.clusters * ray.subrays);
            const double ray_amp = std::sqrt(ray_power);
            for (int c = 0; c < ray.clusters; ++c) {
                const double el_central = rng.laplace(el_central_scale);
                const double az_central = rng.normal(az_mean, az_central_std);
                for (int s = 0; s < ray.subrays; ++s) {
                    const double el = clamp_elevation(
                        base.elevation + el_central + rng.laplace(el_subray_scale), clamp_events);
                    const double az = base.azimuth + az_central + rng.laplace(az_subray_scale);
                    const Complex coeff = ray_amp * std::polar(1.0, rng.phase());
                    col += zeta * coeff * steering_vector(geom, el, az);
                }
            }
        }
        h.col(u) = col;
    }
    return h;
}

ComplexMatrix synth_hbr(RngStream& rng, const ArrayGeometry& bs, const ArrayGeometry& ris,
                        const UserDrop& drop, const RayParams& ray, const KFactor& kappa,
                        long* clamp_events) {
    bs.validate("synth_hbr");
    ris.validate("synth_hbr");
    if (!kappa.pure_los && kappa.value <= 0.0)
        throw std::invalid_argument("synth_hbr: kappa must be positive or pure LOS");
    const double d = drop.bs_ris_distance_m;
    if (d <= 0.0)
        throw std::domain_error("synth_hbr: bs-ris distance must be positive");

    const ComplexVector a_bs =
        steering_vector(bs, drop.ris_bs_arrival.elevation, drop.ris_bs_arrival.azimuth);
    const ComplexVector a_ris =
        steering_vector(ris, drop.ris_bs_departure.elevation, drop.ris_bs_departure.azimuth);

    if (kappa.pure_los) {
        const double beta = 1.0 / (d * d);
        return std::sqrt(beta) * a_bs * a_ris.adjoint();
    }

    const double eta = kappa.eta();
    const double zeta = kappa.zeta();
    const double beta = 1.0 / (d * d * eta * eta);
    ComplexMatrix h = eta * std::sqrt(beta) * a_bs * a_ris.adjoint();

    ray.validate("synth_hbr");
    const double az_mean = ray.central_az_mean_deg * kDegToRad;
    const double az_central_std = ray.central_az_std_deg * kDegToRad;
    const double az_subray_scale = ray.subray_az_std_deg * kDegToRad;
    const double el_central_scale = ray.central_el_scale_deg * kDegToRad;
    const double el_subray_scale = ray.subray_el_scale_deg * kDegToRad;

    const double ray_amp = std::sqrt(beta / (ray.clusters * ray.subrays));
    for (int c = 0; c < ray.clusters; ++c) {
        const RayOffsets arr{rng.laplace(el_central_scale), rng.normal(az_mean, az_central_std)};
        const RayOffsets dep{rng.laplace(el_central_scale), rng.normal(az_mean, az_central_std)};
        for (int s = 0; s < ray.subrays; ++s) {
            const double el_a = clamp_elevation(
                drop.ris_bs_arrival.elevation + arr.el_central + rng.laplace(el_subray_scale),
                clamp_events);
            const double az_a = drop.ris_bs_arrival.azimuth + arr.az_central + rng.laplace(az_subray_scale);
            const double el_d = clamp_elevation(
                drop.ris_bs_departure.elevation + dep.el_central + rng.laplace(el_subray_scale),
                clamp_events);
            const double az_d = drop.ris_bs_departure.azimuth + dep.az_central + rng.laplace(az_subray_scale);
            const Complex coeff = ray_amp * std::polar(1.0, rng.phase());
            h.noalias() += (zeta * coeff) * steering_vector(bs, el_a, az_a) *
                           steering_vector(ris, el_d, az_d).adjoint();
        }
    }
    return h;
}

ComplexMatrix assemble_global(const ChannelSet& ch, const ComplexVector& x) {
    if (ch.ris_bs.cols() != ch.ue_ris.rows() || ch.ris_bs.rows() != ch.ue_bs.rows() ||
        ch.ue_ris.cols() != ch.ue_bs.cols())
        throw std::invalid_argument("assemble_global: channel dimensions do not conform");
    if (x.size() != ch.ris_bs.cols())
        throw std::invalid_argument("assemble_global: phase vector length must match RIS size");
    return ch.ue_bs + ch.ris_bs * x.conjugate().asDiagonal() * ch.ue_ris;
}

ChannelSet draw_channel_set(RngStream& rng, const ScenarioConfig& config) {
    ChannelSet ch;
    ch.kappa_d = config.kappa_d;
    ch.kappa_ru = config.kappa_ru;
    ch.kappa_br = config.kappa_br;
    ch.drop = draw_user_drop(rng, config);

    const int users = config.num_users;
    std::vector<double> gains_bs(users), gains_ris(users);
    for (int u = 0; u < users; ++u)
        gains_bs[static_cast<std::size_t>(u)] = link_gain(config.gain_direct, ch.drop.dist_bs_m[static_cast<std::size_t>(u)], rng);
    for (int u = 0; u < users; ++u)
        gains_ris[static_cast<std::size_t>(u)] = link_gain(config.gain_ris_user, ch.drop.dist_ris_m[static_cast<std::size_t>(u)], rng);

    ch.ue_bs = synth_ray_channel(rng, config.bs, config.ray_direct, gains_bs, ch.drop.los_bs,
                                 config.kappa_d, &ch.elevation_clamps);
    ch.ue_ris = synth_ray_channel(rng, config.ris, config.ray_ris_user, gains_ris, ch.drop.los_ris,
                                  config.kappa_ru, &ch.elevation_clamps);
    ch.ris_bs = synth_hbr(rng, config.bs, config.ris, ch.drop, config.ray_ris_bs, config.kappa_br,
                          &ch.elevation_clamps);
    return ch;
}

}  // namespace risopt
