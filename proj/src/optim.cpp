#include "risopt/optim.hpp"

#include <cassert>
#include <cmath>

namespace risopt {

namespace {

constexpr double kLog2E = 1.4426950408889634;  // 1 / ln 2

ComplexVector unit_circle_project(const ComplexVector& v) {
    ComplexVector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double m = std::abs(v(i));
        out(i) = (m == 0.0) ? Complex(1.0, 0.0) : v(i) / m;
    }
    return out;
}

}  // namespace

double QuadraticModel::objective(const ComplexVector& x) const {
    const ComplexVector qx = quad * x;
    return constant + x.dot(qx).real() + 2.0 * x.dot(lin).real();
}

double QuadraticModel::rate_bits(double objective_value) const {
    return log2_det_gram + std::log2(1.0 + objective_value);
}

RealVector QuadraticModel::phase_gradient(const ComplexVector& x) const {
    const ComplexVector qx = quad * x;
    const ComplexVector r = qx + lin;
    const double q = constant + x.dot(qx).real() + 2.0 * x.dot(lin).real();
    RealVector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        g(i) = 2.0 * (std::conj(x(i)) * r(i)).imag();
    return g * (kLog2E / (1.0 + q));
}

QuadraticModel quadratic_model(const SeparatedChannel& sep) {
    QuadraticModel m;
    // quad = Zp Q^-1 Zp^H and lin = Zp Q^-1 w1, via one K-sized solve block.
    const ComplexMatrix solved = sep.gram_llt.solve(sep.phase_map.adjoint());
    ComplexMatrix quad = sep.phase_map * solved;
    m.quad = 0.5 * (quad + quad.adjoint());
    m.lin = sep.phase_map * sep.gram_llt.solve(sep.w_direct);
    m.constant = sep.w_direct.dot(sep.gram_llt.solve(sep.w_direct)).real();
    m.log2_det_gram = sep.log2_det_gram;
    return m;
}

RelaxedPhases relaxed_solution(const SeparatedChannel& sep) {
    const Eigen::Index n = sep.phase_map.rows();
    RelaxedPhases out;
    if (sep.phase_map.norm() == 0.0) {
        out.x = ComplexVector::Ones(n);
        out.degenerate = true;
        return out;
    }

    // Reduce the N x N eigenproblem to K x K: the dominant eigenvector of
    // Q^-1 Zp^H Zp equals L^-H s where s is the dominant eigenvector of the
    // Hermitian L^-1 (Zp^H Zp) L^-H and Q = L L^H.
    ComplexMatrix gram_map = sep.phase_map.adjoint() * sep.phase_map;
    gram_map = 0.5 * (gram_map + gram_map.adjoint());
    const auto& llt = sep.gram_llt;
    const ComplexMatrix l = llt.matrixL();
    ComplexMatrix t = l.triangularView<Eigen::Lower>().solve(gram_map);
    ComplexMatrix sym = l.triangularView<Eigen::Lower>().solve(t.adjoint()).adjoint();
    sym = 0.5 * (sym + sym.adjoint());

    const EigPair eig = hermitian_max_eigpair(sym, 1e-11, 20000);
    const ComplexVector reduced = l.adjoint().triangularView<Eigen::Upper>().solve(eig.vector);
    ComplexVector lifted = sep.phase_map * reduced;
    const double lifted_norm = lifted.norm();
    if (lifted_norm == 0.0) {
        out.x = ComplexVector::Ones(n);
        out.degenerate = true;
        return out;
    }
    out.x = std::sqrt(static_cast<double>(n)) * lifted / lifted_norm;
    out.eigenvalue = eig.value;
    return out;
}

ComplexVector lower_bound_phases(const SeparatedChannel& sep) {
    return unit_circle_project(relaxed_solution(sep).x);
}

AOResult ao_optimize(const SeparatedChannel& sep, double epsilon, int max_sweeps,
                     std::optional<ComplexVector> x0) {
    if (epsilon <= 0.0)
        throw std::invalid_argument("ao_optimize: epsilon must be positive");
    if (max_sweeps < 1)
        throw std::invalid_argument("ao_optimize: max_sweeps must be at least 1");

    const QuadraticModel model = quadratic_model(sep);
    const Eigen::Index n = model.quad.rows();

    ComplexVector x = x0 ? std::move(*x0) : ComplexVector::Ones(n);
    if (x.size() != n)
        throw std::invalid_argument("ao_optimize: start vector length must match RIS size");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(std::abs(x(i)) - 1.0) > 1e-9)
            throw std::invalid_argument("ao_optimize: start vector must be unit modulus");
    }

    AOResult result;
    result.trace.epsilon = epsilon;
    result.trace.objective.push_back(model.objective(x));

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        ComplexVector coupled = model.quad * x;  // kept current within the sweep
        for (Eigen::Index i = 0; i < n; ++i) {
            const Complex update_arg = coupled(i) - model.quad(i, i) * x(i) + model.lin(i);
            if (update_arg == Complex(0.0, 0.0)) continue;  // objective flat in this coordinate
            const Complex x_new = update_arg / std::abs(update_arg);
#ifndef NDEBUG
            // Per-element gain 2 Re{x^* arg} is maximized at |arg|.
            assert(std::abs(update_arg) + 1e-9 * (1.0 + std::abs(update_arg)) >=
                   (std::conj(x(i)) * update_arg).real());
#endif
            coupled += model.quad.col(i) * (x_new - x(i));
            x(i) = x_new;
        }
        ++result.trace.sweeps;

        const double obj = model.objective(x);
        const double gain = obj - result.trace.objective.back();
        if (gain <= 0.0) {
            // Coordinate updates cannot lose; a measured decrease is
            // evaluation roundoff, so treat the sweep as converged.
            result.trace.converged = true;
            break;
        }
        result.trace.objective.push_back(obj);
        if (gain < epsilon) {
            result.trace.converged = true;
            break;
        }
    }
    result.x = std::move(x);
    return result;
}

double upper_bound(const SeparatedChannel& sep) {
    const QuadraticModel model = quadratic_model(sep);
    const double quad_mass = model.quad.cwiseAbs().sum();
    const double lin_mass = model.lin.cwiseAbs().sum();
    return model.log2_det_gram + std::log2(model.constant + quad_mass + 2.0 * lin_mass + 1.0);
}

ComplexVector quantize_phases(const ComplexVector& x, int bits) {
    if (bits < 1 || bits > 24)
        throw std::invalid_argument("quantize_phases: bits must be in [1, 24]");
    const int levels = 1 << bits;
    const double step = 2.0 * M_PI / levels;

    ComplexVector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double phase = std::arg(x(i));
        if (phase < 0.0) phase += 2.0 * M_PI;
        int best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int m = 0; m < levels; ++m) {
            double d = std::abs(phase - m * step);
            d = std::min(d, 2.0 * M_PI - d);
            if (d < best_dist - 1e-15) {  // strict improvement; ties keep the smaller index
                best_dist = d;
                best = m;
            }
        }
        out(i) = std::polar(1.0, best * step);
    }
    return out;
}

ComplexVector random_phases(RngStream& rng, int n) {
    if (n < 1)
        throw std::invalid_argument("random_phases: n must be at least 1");
    ComplexVector x(n);
    for (int i = 0; i < n; ++i) x(i) = std::polar(1.0, rng.phase());
    return x;
}

namespace {

/// One gradient-ascent run from a feasible start; returns the final iterate.
ComplexVector ascend(const QuadraticModel& model, ComplexVector x, int steps) {
    const Eigen::Index n = x.size();
    RealVector psi(n);
    for (Eigen::Index i = 0; i < n; ++i) psi(i) = std::arg(x(i));

    auto rebuild = [&](const RealVector& angles) {
        ComplexVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = std::polar(1.0, angles(i));
        return v;
    };

    double f = model.rate_bits(x);
    double step_size = 1.0;
    for (int it = 0; it < steps; ++it) {
        const RealVector g = model.phase_gradient(x);
        const double gnorm2 = g.squaredNorm();
        if (gnorm2 < 1e-20 * (1.0 + f * f)) break;

        // Backtracking from a gently growing trial step.
        step_size = std::min(step_size * 2.0, 1e3);
        bool accepted = false;
        while (step_size > 1e-14) {
            const RealVector trial = psi + step_size * g;
            const ComplexVector xt = rebuild(trial);
            const double ft = model.rate_bits(xt);
            if (ft > f + 1e-4 * step_size * gnorm2) {
                psi = trial;
                x = xt;
                f = ft;
                accepted = true;
                break;
            }
            step_size *= 0.5;
        }
        if (!accepted) break;
    }
    return x;
}

}  // namespace

ComplexVector numerical_baseline(const SeparatedChannel& sep, int restarts, int steps,
                                 RngStream& rng, std::optional<ComplexVector> x0) {
    if (restarts < 1)
        throw std::invalid_argument("numerical_baseline: restarts must be at least 1");
    if (steps < 1)
        throw std::invalid_argument("numerical_baseline: steps must be at least 1");

    const QuadraticModel model = quadratic_model(sep);
    const Eigen::Index n = model.quad.rows();

    ComplexVector best;
    double best_obj = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        ComplexVector start;
        if (r == 0)
            start = x0 ? *x0 : ComplexVector::Ones(n);
        else
            start = random_phases(rng, static_cast<int>(n));
        const ComplexVector xr = ascend(model, std::move(start), steps);
        const double obj = model.objective(xr);
        if (obj > best_obj) {
            best_obj = obj;
            best = xr;
        }
    }
    return best;
}

}  // namespace risopt
