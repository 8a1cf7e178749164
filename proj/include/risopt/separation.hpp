#pragma once

#include <Eigen/Cholesky>

#include "risopt/channel.hpp"
#include "risopt/numerics.hpp"
#include "risopt/types.hpp"

namespace risopt {

/// Channel-separated form of one drop. Confines the RIS-dependent part of
/// the channel to a single row vector w(x) = w_direct + phase_map^H x, so the
/// sum-rate becomes log2|gram| + log2(1 + w^H gram^-1 w). Exact when the
/// RIS-BS channel is rank-1; otherwise the best rank-1 surrogate.
struct SeparatedChannel {
    ComplexMatrix gram;       // K x K, I + Hd^H (I - bs_dir bs_dir^H / M) Hd
    ComplexVector w_direct;   // K, RIS-independent part of the separated row
    ComplexMatrix phase_map;  // N x K, maps RIS coefficients into the row
    ComplexVector bs_dir;     // M, dominant BS-side direction (norm sqrt(M))
    ComplexVector ris_dir;    // N, dominant RIS-side direction (norm sqrt(N))
    double gain = 0.0;        // realized sqrt(M * beta) of the rank-1 link

    // Cached once at construction; gram never changes afterwards.
    Eigen::LLT<ComplexMatrix> gram_llt;
    double log2_det_gram = 0.0;

    int num_users() const { return static_cast<int>(gram.rows()); }
    int ris_elements() const { return static_cast<int>(phase_map.rows()); }
};

/// Build the separated form from the dominant singular triple of the RIS-BS
/// channel. Throws std::domain_error when that channel is identically zero.
SeparatedChannel separate(const ChannelSet& ch);

/// w(x) = w_direct + phase_map^H x for unit-modulus x (validated to 1e-9).
ComplexVector compose_row(const SeparatedChannel& sep, const ComplexVector& x);

/// log2 |I_K + H^H H| with unit symbol energy and unit noise power.
double sum_rate_direct(const ComplexMatrix& h);

/// log2|gram| + log2(1 + w^H gram^-1 w); equals sum_rate_direct of the
/// assembled channel whenever the RIS-BS channel is exactly rank-1.
double sum_rate_separated(const SeparatedChannel& sep, const ComplexVector& x);

/// The scalar quadratic form w^H gram^-1 w >= 0.
double quadratic_objective(const SeparatedChannel& sep, const ComplexVector& x);

}  // namespace risopt
