#pragma once

#include <vector>

#include "risopt/config.hpp"
#include "risopt/rng.hpp"
#include "risopt/types.hpp"

namespace risopt {

struct LosAngles {
    double elevation = 0.0;  // radians, [0, pi]
    double azimuth = 0.0;    // radians
};

/// Geometry of one Monte-Carlo user placement.
struct UserDrop {
    std::vector<double> dist_bs_m;    // per-user UE-BS distance
    std::vector<double> dist_ris_m;   // per-user UE-RIS distance
    std::vector<LosAngles> los_bs;    // per-user LOS angles seen at the BS
    std::vector<LosAngles> los_ris;   // per-user LOS angles seen at the RIS
    double bs_ris_distance_m = 0.0;
    LosAngles ris_bs_arrival;         // at the BS
    LosAngles ris_bs_departure;       // at the RIS
};

/// One drop's channel matrices plus the parameters that produced them.
struct ChannelSet {
    ComplexMatrix ue_bs;    // M x K
    ComplexMatrix ue_ris;   // N x K
    ComplexMatrix ris_bs;   // M x N
    UserDrop drop;
    KFactor kappa_d, kappa_ru, kappa_br;
    long elevation_clamps = 0;  // diagnostic: out-of-range elevation draws
};

/// URA response: Kronecker product of the y phase ramp (2*pi*m*d*sin(th)*sin(ph))
/// and the z phase ramp (2*pi*m*d*cos(th)). Every entry has unit modulus and
/// the first entry is exactly 1.
ComplexVector steering_vector(const ArrayGeometry& geom, double elevation, double azimuth);

/// Sample one user placement: distances by uniform-area disk sampling with
/// rejection inside the exclusion radius, LOS angle laws as configured
/// topology (uniform elevation/azimuth for UE links; narrow elevation band
/// and mirrored arrival for the RIS-BS link).
UserDrop draw_user_drop(RngStream& rng, const ScenarioConfig& config);

/// Linear power gain P * X * d^(-gamma); X is log-normal with the given
/// dB-domain std (X = 1 when shadow_std_db = 0).
double link_gain(const LinkGainParams& params, double distance_m, RngStream& rng);

/// One clustered ray-based channel matrix, one column per user:
///   col_k = eta * sqrt(gain_k) * a(LOS_k) + zeta * sum_{c,s} g_cs * a(LOS_k + offsets)
/// with equal ray-power split and uniform random ray phases. Scattered ray
/// angles are LOS-centered; elevations are clamped to [0, pi] and clamp
/// events are counted in *clamp_events when provided.
ComplexMatrix synth_ray_channel(RngStream& rng, const ArrayGeometry& geom, const RayParams& ray,
                                const std::vector<double>& link_gains,
                                const std::vector<LosAngles>& los, const KFactor& kappa,
                                long* clamp_events = nullptr);

/// RIS-BS channel. Pure LOS: sqrt(beta) * a_bs * a_ris^H with beta = d^(-2).
/// Dominant LOS: LOS term plus narrow-spread scattered outer products, with
/// beta = d^(-2) / eta^2 so the total mean power matches the pure LOS case.
ComplexMatrix synth_hbr(RngStream& rng, const ArrayGeometry& bs, const ArrayGeometry& ris,
                        const UserDrop& drop, const RayParams& ray, const KFactor& kappa,
                        long* clamp_events = nullptr);

/// Full channel for the given RIS coefficients: ue_bs + ris_bs * diag(conj(x)) * ue_ris.
/// x stores conjugated RIS phases, so the applied reflection is diag(conj(x)).
ComplexMatrix assemble_global(const ChannelSet& ch, const ComplexVector& x);

/// One complete Monte-Carlo drop from a single seeded stream.
ChannelSet draw_channel_set(RngStream& rng, const ScenarioConfig& config);

}  // namespace risopt
