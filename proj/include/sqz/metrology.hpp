#pragma once

// Quantum Fisher information restricted to collective-spin generators.

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "sqz/dicke.hpp"

namespace sqz {

/// Mixed state of a fixed number of particles in the Dicke basis.
struct SpinDensity {
    int n = 0;
    CMatrix rho;

    SpinDensity() = default;
    SpinDensity(int particles, CMatrix matrix) : n(particles), rho(std::move(matrix)) {
        detail::require(n >= 0, "particle count must be non-negative");
        detail::require(rho.rows() == n + 1 && rho.cols() == n + 1, "density must be (n+1)x(n+1)");
    }

    static SpinDensity pure(const DickeState &psi) {
        return {psi.n, psi.amp * psi.amp.adjoint()};
    }

    static SpinDensity maximally_mixed(int n) {
        return {n, CMatrix::Identity(n + 1, n + 1) / double(n + 1)};
    }

    double trace() const { return rho.trace().real(); }

    struct Spectrum {
        Eigen::VectorXd eigenvalues;
        CMatrix eigenvectors;
    };

    Spectrum spectrum() const {
        const CMatrix herm = 0.5 * (rho + rho.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
        detail::require(es.info() == Eigen::Success, "eigendecomposition failed");
        return {es.eigenvalues(), es.eigenvectors()};
    }

    /// Checks unit trace, hermiticity and positivity; throws "invalid density".
    void validate(double trace_tol = 1e-10, double herm_tol = 1e-12, double psd_tol = 1e-10) const {
        const bool ok_trace = std::abs(trace() - 1.0) <= trace_tol;
        const bool ok_herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff() <= herm_tol;
        const bool ok_psd = rho.rows() == 0 || spectrum().eigenvalues.minCoeff() >= -psd_tol;
        detail::require(ok_trace && ok_herm && ok_psd, "invalid density");
    }
};

struct QfiResult {
    double fq = 0.0;
    /// Optimal generator as coefficients over (sx, sy, sz).
    Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
    /// Covariance matrix for pure input, Gamma_Q for mixed input.
    Eigen::Matrix3d gamma = Eigen::Matrix3d::Zero();
};

namespace detail {

inline QfiResult top_eigenpair(const Eigen::Matrix3d &gamma, double scale) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (gamma + gamma.transpose()));
    QfiResult r;
    r.fq = scale * es.eigenvalues()(2);
    r.axis = es.eigenvectors().col(2).normalized();
    r.gamma = gamma;
    return r;
}

}  // namespace detail

/// Symmetrised covariance matrix Cov[S_i, S_j] of a pure state.
inline Eigen::Matrix3d covariance_matrix(const DickeState &psi) {
    detail::require(psi.n >= 1, "empty ensemble");
    const SpinOperatorTriple s = collective_spin_ops(psi.n);
    const CVector v[3] = {s.sx * psi.amp, s.sy * psi.amp, s.sz * psi.amp};
    Eigen::Vector3d mean;
    for (int i = 0; i < 3; ++i) {
        mean(i) = psi.amp.dot(v[i]).real();
    }
    Eigen::Matrix3d g;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // <S_i S_j> = (S_i psi)^dagger (S_j psi); its real part is the
            // symmetrised second moment.
            g(i, j) = v[i].dot(v[j]).real() - mean(i) * mean(j);
        }
    }
    return g;
}

/// F_Q = 4 lambda_max(Gamma); the eigenvector is the most sensitive axis.
inline QfiResult qfi_pure(const DickeState &psi) {
    return detail::top_eigenpair(covariance_matrix(psi), 4.0);
}

/// Pairs of eigenvalues with q + q' at or below this are dropped from Gamma_Q.
inline constexpr double kSpectralCutoff = 1e-12;

/// Gamma_Q of a mixed state: 2 sum (q-q')^2/(q+q') <k'|S_i|k><k|S_j|k'>.
inline Eigen::Matrix3d gamma_q(const SpinDensity &state) {
    detail::require(state.n >= 1, "empty ensemble");
    const auto spec = state.spectrum();
    detail::require(spec.eigenvalues.minCoeff() >= -1e-10, "invalid density");
    const SpinOperatorTriple s = collective_spin_ops(state.n);
    const CMatrix &vecs = spec.eigenvectors;
    // Operators in the eigenbasis: (V^dagger S V)(k', k) = <k'|S|k>.
    const CMatrix ops[3] = {vecs.adjoint() * s.sx * vecs, vecs.adjoint() * s.sy * vecs,
                            vecs.adjoint() * s.sz * vecs};
    const Eigen::Index d = spec.eigenvalues.size();
    RMatrix weight = RMatrix::Zero(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            const double q = spec.eigenvalues(a), qp = spec.eigenvalues(b);
            const double sum = q + qp;
            if (sum > kSpectralCutoff) {
                weight(a, b) = (q - qp) * (q - qp) / sum;
            }
        }
    }
    Eigen::Matrix3d g;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            // sum_{k,k'} w(k,k') <k'|S_i|k> <k|S_j|k'>
            double acc = 0.0;
            for (Eigen::Index k = 0; k < d; ++k) {
                for (Eigen::Index kp = 0; kp < d; ++kp) {
                    const double w = weight(k, kp);
                    if (w != 0.0) {
                        acc += w * (ops[i](kp, k) * ops[j](k, kp)).real();
                    }
                }
            }
            g(i, j) = g(j, i) = 2.0 * acc;
        }
    }
    return g;
}

inline QfiResult qfi_mixed(const SpinDensity &state) {
    return detail::top_eigenpair(gamma_q(state), 1.0);
}

/// Probability-weighted direct sum of densities with differing particle
/// numbers.
struct BlockMixture {
    struct Block {
        double weight = 0.0;
        SpinDensity rho;
    };
    std::vector<Block> blocks;

    double total_weight() const {
        double w = 0.0;
        for (const auto &b : blocks) {
            w += b.weight;
        }
        return w;
    }

    double mean_particles() const {
        double m = 0.0;
        for (const auto &b : blocks) {
            m += b.weight * b.rho.n;
        }
        return m;
    }
};

struct BlockQfiResult {
    QfiResult qfi;
    double mean_particles = 0.0;
    /// fq / sum_b p_b N_b
    double density = 0.0;
};

/// The generator acts blockwise, so Gamma_Q of the direct sum is the
/// weighted sum of per-block Gamma_Q with one common optimal axis.
inline BlockQfiResult qfi_block_mixture(const BlockMixture &mix) {
    detail::require(!mix.blocks.empty(), "empty mixture");
    detail::require(std::abs(mix.total_weight() - 1.0) <= 1e-10, "block weights must sum to 1");
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    for (const auto &b : mix.blocks) {
        detail::require(b.weight >= 0.0, "negative block weight");
        if (b.weight > 0.0 && b.rho.n >= 1) {
            g += b.weight * gamma_q(b.rho);
        }
    }
    BlockQfiResult r;
    r.qfi = detail::top_eigenpair(g, 1.0);
    r.mean_particles = mix.mean_particles();
    detail::require(r.mean_particles > 0.0, "mixture has no particles");
    r.density = r.qfi.fq / r.mean_particles;
    return r;
}

/// Quantum Cramer-Rao bound 1/sqrt(v F_Q).
inline double cramer_rao(double fq, double repetitions) {
    detail::require(fq > 0.0, "no sensitivity");
    detail::require(repetitions >= 1.0, "need at least one measurement");
    return 1.0 / std::sqrt(repetitions * fq);
}

}  // namespace sqz
