#include "risopt/numerics.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace risopt {

namespace {

/// Rotate v so its first entry of nonnegligible modulus lies on the
/// nonnegative real axis. Fixes the arbitrary complex phase of eigenvectors
/// and singular vectors; returns the applied rotation.
Complex fix_phase(ComplexVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double m = std::abs(v(i));
        if (m > 1e-14) {
            const Complex rot = std::conj(v(i)) / m;
            v *= rot;
            return rot;
        }
    }
    return Complex(1.0, 0.0);
}

}  // namespace

EigPair hermitian_max_eigpair(const ComplexMatrix& a, double tol, int max_iter) {
    require_finite(a, "hermitian_max_eigpair");
    if (a.rows() < 1 || a.rows() != a.cols())
        throw std::invalid_argument("hermitian_max_eigpair: matrix must be square and at least 1x1");
    require_hermitian(a, tol, "hermitian_max_eigpair");
    if (max_iter < 1)
        throw std::invalid_argument("hermitian_max_eigpair: max_iter must be positive");

    const Eigen::Index n = a.rows();
    const double norm_a = a.norm();
    const double shift = norm_a;  // |lambda_i| <= ||A||_F, so A + shift*I >= 0

    ComplexVector v = ComplexVector::Ones(n) / std::sqrt(static_cast<double>(n));
    double value = 0.0;

    for (int iter = 0; iter < max_iter; ++iter) {
        ComplexVector w = a * v + shift * v;
        const double rayleigh = v.dot(w).real();  // Eigen dot conjugates the left arg
        const double residual = (w - rayleigh * v).norm();
        value = rayleigh - shift;
        if (residual <= tol * std::max(norm_a, 1e-300)) {
            fix_phase(v);
            return {value, v};
        }
        const double wn = w.norm();
        if (wn == 0.0) {
            // A v = -shift v exactly; only possible when shift = 0, i.e. A = 0.
            fix_phase(v);
            return {value, v};
        }
        v = w / wn;
    }
    fix_phase(v);
    throw ConvergenceError("hermitian_max_eigpair: no convergence in max_iter", value, v);
}

double logdet_hpd(const ComplexMatrix& a) {
    require_finite(a, "logdet_hpd");
    require_hermitian(a, 1e-9, "logdet_hpd");

    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("logdet_hpd: matrix not positive definite");

    double log2det = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const double pivot = l(i, i).real();
        if (pivot <= 0.0)
            throw std::domain_error("logdet_hpd: nonpositive Cholesky pivot");
        log2det += 2.0 * std::log2(pivot);
    }
    return log2det;
}

ComplexVector solve_hpd(const ComplexMatrix& a, const ComplexVector& b) {
    require_finite(a, "solve_hpd");
    require_finite(b, "solve_hpd");
    require_hermitian(a, 1e-9, "solve_hpd");
    if (a.cols() != b.size())
        throw std::invalid_argument("solve_hpd: dimension mismatch");

    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("solve_hpd: matrix not positive definite");
    return llt.solve(b);
}

Rank1Svd rank1_svd(const ComplexMatrix& a, double tol) {
    require_finite(a, "rank1_svd");
    if (a.rows() < 1 || a.cols() < 1)
        throw std::invalid_argument("rank1_svd: empty matrix");

    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();

    if (a.norm() == 0.0) {
        Rank1Svd out;
        out.left = ComplexVector::Zero(m);
        out.left(0) = 1.0;
        out.right = ComplexVector::Zero(n);
        out.right(0) = 1.0;
        out.degenerate = true;
        return out;
    }

    Rank1Svd out;
    // Power-iterate the smaller Gram matrix; recover the other side by one product.
    if (m <= n) {
        ComplexMatrix gram = a * a.adjoint();
        gram = 0.5 * (gram + gram.adjoint());
        const EigPair eig = hermitian_max_eigpair(gram, tol, 10000);
        out.value = std::sqrt(std::max(eig.value, 0.0));
        out.left = eig.vector;
        ComplexVector w = a.adjoint() * out.left;
        out.right = w / w.norm();
    } else {
        ComplexMatrix gram = a.adjoint() * a;
        gram = 0.5 * (gram + gram.adjoint());
        const EigPair eig = hermitian_max_eigpair(gram, tol, 10000);
        out.value = std::sqrt(std::max(eig.value, 0.0));
        out.right = eig.vector;
        ComplexVector w = a * out.right;
        out.left = w / w.norm();
    }

    // Keep d1 * u1 * v1^H invariant: rotate both sides by the phase that
    // puts the first nonzero entry of u1 on the nonnegative real axis.
    ComplexVector& u = out.left;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        const double mod = std::abs(u(i));
        if (mod > 1e-14) {
            const Complex rot = std::conj(u(i)) / mod;
            out.left *= rot;
            out.right *= rot;
            break;
        }
    }
    return out;
}

}  // namespace risopt
