#pragma once

#include <stdexcept>
#include <string>

#include "risopt/types.hpp"

namespace risopt {

/// Thrown when an iterative kernel exhausts its iteration budget. Carries
/// the best iterate so callers can inspect or accept it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double value, ComplexVector iterate)
        : std::runtime_error(msg), best_value(value), best_iterate(std::move(iterate)) {}

    double best_value;
    ComplexVector best_iterate;
};

struct EigPair {
    double value = 0.0;
    ComplexVector vector;
};

/// Dominant eigenpair of a Hermitian matrix by shifted power iteration.
///
/// The shift by ||A||_F makes the spectrum nonnegative so the iteration
/// tracks the algebraically largest eigenvalue. Deterministic all-ones start.
/// The eigenvector is unit norm with its first nonzero entry rotated to the
/// nonnegative real axis. Residual guarantee: ||A v - lambda v|| <= tol * ||A||_F.
EigPair hermitian_max_eigpair(const ComplexMatrix& a, double tol = 1e-9, int max_iter = 5000);

/// log2 |A| for Hermitian positive definite A, via Cholesky.
/// Throws std::domain_error if the factorization hits a nonpositive pivot.
double logdet_hpd(const ComplexMatrix& a);

/// Solve A y = b for Hermitian positive definite A, via Cholesky.
ComplexVector solve_hpd(const ComplexMatrix& a, const ComplexVector& b);

struct Rank1Svd {
    double value = 0.0;      // dominant singular value
    ComplexVector left;      // unit norm
    ComplexVector right;     // unit norm
    bool degenerate = false; // zero input
};

/// Dominant singular triple (d1, u1, v1), so d1 * u1 * v1^H is the best
/// rank-1 approximation of A. Computed by power iteration on the smaller
/// Gram matrix. The zero matrix is flagged degenerate with d1 = 0.
Rank1Svd rank1_svd(const ComplexMatrix& a, double tol = 1e-9);

}  // namespace risopt
