#include "risopt/separation.hpp"

#include <cmath>

namespace risopt {

namespace {

void require_unit_modulus(const ComplexVector& x, const char* what) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (std::abs(std::abs(x(i)) - 1.0) > 1e-9)
            throw std::invalid_argument(std::string(what) + ": phase vector entries must be unit modulus");
    }
}

}  // namespace

SeparatedChannel separate(const ChannelSet& ch) {
    if (ch.ris_bs.norm() == 0.0)
        throw std::domain_error("separate: RIS-BS channel is zero, nothing to separate");

    const Rank1Svd svd = rank1_svd(ch.ris_bs);
    if (svd.degenerate)
        throw std::domain_error("separate: degenerate RIS-BS channel");

    const double m = static_cast<double>(ch.ris_bs.rows());
    const double n = static_cast<double>(ch.ris_bs.cols());

    SeparatedChannel sep;
    sep.bs_dir = std::sqrt(m) * svd.left;
    sep.ris_dir = std::sqrt(n) * svd.right;
    sep.gain = svd.value / std::sqrt(n);

    // gram = I + Hd^H Hd - c c^H with c = Hd^H u1; the projector form avoids
    // building the M x M deflation explicitly.
    const ComplexVector c = ch.ue_bs.adjoint() * svd.left;
    ComplexMatrix gram = ch.ue_bs.adjoint() * ch.ue_bs;
    gram.noalias() -= c * c.adjoint();
    gram += ComplexMatrix::Identity(gram.rows(), gram.cols());
    sep.gram = 0.5 * (gram + gram.adjoint());

    sep.w_direct = c;
    sep.phase_map = sep.gain * (sep.ris_dir.conjugate().asDiagonal() * ch.ue_ris);

    sep.gram_llt.compute(sep.gram);
    if (sep.gram_llt.info() != Eigen::Success)
        throw std::domain_error("separate: gram factorization failed");
    double log2det = 0.0;
    for (Eigen::Index i = 0; i < sep.gram.rows(); ++i)
        log2det += 2.0 * std::log2(sep.gram_llt.matrixLLT()(i, i).real());
    sep.log2_det_gram = log2det;
    return sep;
}

ComplexVector compose_row(const SeparatedChannel& sep, const ComplexVector& x) {
    if (x.size() != sep.phase_map.rows())
        throw std::invalid_argument("compose_row: phase vector length must match RIS size");
    require_unit_modulus(x, "compose_row");
    return sep.w_direct + sep.phase_map.adjoint() * x;
}

double sum_rate_direct(const ComplexMatrix& h) {
    if (h.size() == 0) return 0.0;
    ComplexMatrix gram = h.adjoint() * h;
    gram += ComplexMatrix::Identity(gram.rows(), gram.cols());
    return logdet_hpd(0.5 * (gram + gram.adjoint()));
}

double sum_rate_separated(const SeparatedChannel& sep, const ComplexVector& x) {
    const ComplexVector w = compose_row(sep, x);
    const ComplexVector y = sep.gram_llt.solve(w);
    const double quad = w.dot(y).real();
    return sep.log2_det_gram + std::log2(1.0 + quad);
}

double quadratic_objective(const SeparatedChannel& sep, const ComplexVector& x) {
    const ComplexVector w = compose_row(sep, x);
    const ComplexVector y = sep.gram_llt.solve(w);
    return w.dot(y).real();
}

}  // namespace risopt
