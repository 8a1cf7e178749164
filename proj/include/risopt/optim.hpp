#pragma once

#include <optional>
#include <vector>

#include "risopt/rng.hpp"
#include "risopt/separation.hpp"
#include "risopt/types.hpp"

namespace risopt {

/// Quadratic model of the separated objective,
///   q(x) = constant + x^H quad x + 2 Re{x^H lin},
/// precomputed once per drop and shared by the optimizers and the bound.
struct QuadraticModel {
    ComplexMatrix quad;   // N x N Hermitian PSD
    ComplexVector lin;    // N
    double constant = 0.0;
    double log2_det_gram = 0.0;

    double objective(const ComplexVector& x) const;
    /// Sum-rate in bits implied by the objective value.
    double rate_bits(double objective_value) const;
    double rate_bits(const ComplexVector& x) const { return rate_bits(objective(x)); }
    /// d(rate)/d(psi_n) for x_n = exp(j psi_n), in bits per radian.
    RealVector phase_gradient(const ComplexVector& x) const;
};

QuadraticModel quadratic_model(const SeparatedChannel& sep);

struct RelaxedPhases {
    ComplexVector x;          // norm^2 = N, not unit modulus in general
    double eigenvalue = 0.0;  // dominant eigenvalue of the reduced problem
    bool degenerate = false;  // RIS map was zero; x is all-ones
};

/// Norm-relaxed optimum: sqrt(N)-scaled image of the dominant eigenvector of
/// the K x K reduced problem, a maximal eigenvector of the full N x N
/// quadratic form restricted to the RIS map's range.
RelaxedPhases relaxed_solution(const SeparatedChannel& sep);

/// Element-wise phase projection of the relaxed solution onto the unit
/// circle (the closest feasible design in l1). Zero entries map to 1.
ComplexVector lower_bound_phases(const SeparatedChannel& sep);

struct AOTrace {
    std::vector<double> objective;  // value after each accepted sweep, non-decreasing
    int sweeps = 0;
    bool converged = false;
    double epsilon = 0.0;
};

struct AOResult {
    ComplexVector x;
    AOTrace trace;
};

/// Cyclic per-element updates x_n <- exp(j * angle(b_n^H x_(-n) + lin_n)),
/// each the exact maximizer of the objective over one coefficient. Stops
/// when a full sweep gains less than epsilon. A zero update argument leaves
/// the coefficient unchanged.
AOResult ao_optimize(const SeparatedChannel& sep, double epsilon = 1e-6, int max_sweeps = 100,
                     std::optional<ComplexVector> x0 = std::nullopt);

/// Triangle-inequality bound on the separated sum-rate over all feasible
/// phase vectors, in bits.
double upper_bound(const SeparatedChannel& sep);

/// Snap each phase to the nearest member of the 2^bits uniform codebook
/// (circular distance, ties toward the smaller codeword index).
ComplexVector quantize_phases(const ComplexVector& x, int bits);

/// i.i.d. phases uniform on [0, 2*pi).
ComplexVector random_phases(RngStream& rng, int n);

/// Gradient-ascent benchmark on the exact separated sum-rate with
/// backtracking line search and multi-start. Replaces an interior-point
/// solver as the numerical reference; the first start is x0 when given,
/// all-ones otherwise, and the remaining starts are random.
ComplexVector numerical_baseline(const SeparatedChannel& sep, int restarts, int steps,
                                 RngStream& rng, std::optional<ComplexVector> x0 = std::nullopt);

}  // namespace risopt
