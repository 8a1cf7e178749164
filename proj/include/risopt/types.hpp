#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace risopt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }
inline bool all_finite(const ComplexVector& v) { return v.allFinite(); }

inline void require_finite(const ComplexMatrix& a, const std::string& what) {
    if (!a.allFinite())
        throw std::invalid_argument(what + ": non-finite entries");
}

inline void require_finite(const ComplexVector& v, const std::string& what) {
    if (!v.allFinite())
        throw std::invalid_argument(what + ": non-finite entries");
}

/// Frobenius norm of A - A^H, zero for exactly Hermitian input.
inline double hermitian_defect(const ComplexMatrix& a) {
    return (a - a.adjoint()).norm();
}

inline void require_hermitian(const ComplexMatrix& a, double tol, const std::string& what) {
    if (a.rows() != a.cols())
        throw std::invalid_argument(what + ": matrix not square");
    const double scale = std::max(a.norm(), 1e-300);
    if (hermitian_defect(a) > tol * scale)
        throw std::invalid_argument(what + ": matrix not Hermitian within tolerance");
}

}  // namespace risopt
