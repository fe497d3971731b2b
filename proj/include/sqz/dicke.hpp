#pragma once

// Dicke-basis linear algebra for symmetric N-spin states.
//
// Conventions used throughout the library:
//   * basis index k runs from 0 (all spins down) to n (all spins up);
//   * sz |k> = (k - n/2) |k>;
//   * rotations are z-y-z Euler rotations with the third angle fixed to 0,
//     D(phi, theta) = exp(-i phi sz) exp(-i theta sy).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "sqz/error.hpp"

namespace sqz {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// ln C(n, k); -infinity when k lies outside [0, n].
inline double log_binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Pure symmetric state of n spins, amplitudes indexed by excitation number.
struct DickeState {
    int n = 0;
    CVector amp;

    DickeState() = default;
    DickeState(int particles, CVector amplitudes) : n(particles), amp(std::move(amplitudes)) {
        detail::require(n >= 0, "particle count must be non-negative");
        detail::require(amp.size() == n + 1, "amplitude vector must have length n+1");
    }

    static DickeState basis(int n, int k) {
        detail::require(k >= 0 && k <= n, "excitation index out of range");
        CVector a = CVector::Zero(n + 1);
        a(k) = 1.0;
        return {n, std::move(a)};
    }

    double norm() const { return amp.norm(); }

    DickeState &normalize() {
        const double nrm = amp.norm();
        detail::require(nrm > 0.0 && std::isfinite(nrm), "cannot normalize a null state");
        amp /= nrm;
        return *this;
    }
};

/// |<a|b>|, the phase-insensitive overlap used for all state equality checks.
inline double overlap_modulus(const DickeState &a, const DickeState &b) {
    detail::require(a.n == b.n, "overlap of states with different particle numbers");
    return std::abs(a.amp.dot(b.amp));
}

struct SpinOperatorTriple {
    CMatrix sx;
    CMatrix sy;
    CMatrix sz;
};

/// Eigenvalue of sz on |k> for n particles.
inline double magnetic_number(int n, int k) { return k - 0.5 * n; }

/// Coefficient of s+ |k> = c |k+1>.
inline double raising_coefficient(int n, int k) {
    const double j = 0.5 * n;
    const double m = magnetic_number(n, k);
    return std::sqrt(std::max(0.0, j * (j + 1.0) - m * (m + 1.0)));
}

inline SpinOperatorTriple collective_spin_ops(int n) {
    detail::require(n >= 1, "empty ensemble");
    const int d = n + 1;
    CMatrix splus = CMatrix::Zero(d, d);
    CMatrix sz = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        sz(k, k) = magnetic_number(n, k);
        if (k + 1 < d) {
            splus(k + 1, k) = raising_coefficient(n, k);
        }
    }
    const CMatrix sminus = splus.adjoint();
    const cplx i(0.0, 1.0);
    return {(splus + sminus) * 0.5, (splus - sminus) / (2.0 * i), sz};
}

/// Polar/azimuthal description of a measurement axis.
struct RotationSpec {
    double polar = 0.0;
    double azimuth = 0.0;

    static RotationSpec from_vector(const Eigen::Vector3d &v) {
        const double nrm = v.norm();
        detail::require(nrm > 0.0 && std::isfinite(nrm), "axis vector must be non-zero");
        const Eigen::Vector3d u = v / nrm;
        double phi = std::atan2(u.y(), u.x());
        if (phi < 0.0) {
            phi += 2.0 * std::numbers::pi;
        }
        if (phi >= 2.0 * std::numbers::pi) {
            phi = 0.0;
        }
        return {std::acos(std::clamp(u.z(), -1.0, 1.0)), phi};
    }

    Eigen::Vector3d unit_vector() const {
        return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
                std::cos(polar)};
    }

    void validate() const {
        detail::require(std::isfinite(polar) && std::isfinite(azimuth), "non-finite rotation angle");
        detail::require(polar >= 0.0 && polar <= std::numbers::pi, "polar angle outside [0, pi]");
        detail::require(azimuth >= 0.0 && azimuth < 2.0 * std::numbers::pi,
                        "azimuthal angle outside [0, 2pi)");
    }
};

namespace axes {
inline RotationSpec plus_z() { return {0.0, 0.0}; }
inline RotationSpec plus_x() { return {std::numbers::pi / 2, 0.0}; }
inline RotationSpec plus_y() { return {std::numbers::pi / 2, std::numbers::pi / 2}; }
}  // namespace axes

/// Wigner small-d matrix d^j_{m',m}(beta) = <j m'| exp(-i beta jy) |j m>, with
/// rows m' and columns m ascending from -j to j. `twice_j` is 2j.
///
/// Built by adding one spin-1/2 at a time: the n-particle symmetric state
/// decomposes exactly into (n-1)-particle Dicke states times one qubit, so each
/// step is a weighted sum of four entries of the previous matrix with weights
/// bounded by one. No factorials or alternating sums appear.
inline RMatrix wigner_d_matrix(int twice_j, double beta) {
    detail::require(twice_j >= 0, "2j must be a non-negative integer");
    detail::require(std::isfinite(beta), "rotation angle must be finite");
    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);
    // Single-qubit rotation exp(-i beta sy) in the (down, up) basis.
    const double u00 = c, u11 = c, u10 = -s, u01 = s;

    RMatrix prev = RMatrix::Ones(1, 1);
    for (int n = 1; n <= twice_j; ++n) {
        RMatrix cur = RMatrix::Zero(n + 1, n + 1);
        const double inv_n = 1.0 / n;
        for (int kp = 0; kp <= n; ++kp) {
            for (int k = 0; k <= n; ++k) {
                double v = 0.0;
                if (kp > 0 && k > 0) {
                    v += std::sqrt(double(kp) * k) * prev(kp - 1, k - 1) * u11;
                }
                if (kp > 0 && k < n) {
                    v += std::sqrt(double(kp) * (n - k)) * prev(kp - 1, k) * u10;
                }
                if (kp < n && k > 0) {
                    v += std::sqrt(double(n - kp) * k) * prev(kp, k - 1) * u01;
                }
                if (kp < n && k < n) {
                    v += std::sqrt(double(n - kp) * (n - k)) * prev(kp, k) * u00;
                }
                cur(kp, k) = v * inv_n;
            }
        }
        prev = std::move(cur);
    }
    return prev;
}

/// Rows l of the returned matrix are the bras <l|_dir expanded over the
/// standard basis, i.e. entry (l, k) = <l|_dir |k>.
///
/// The rotated basis state is |l>_dir = D(phi, theta)|l>; each basis vector
/// carries a convention-dependent phase that cancels in probabilities and
/// conditional density matrices but not in the global phase of a
/// conditional pure state.
inline CMatrix rotated_dicke_basis(int n, const RotationSpec &dir) {
    detail::require(n >= 0, "particle count must be non-negative");
    detail::require(std::isfinite(dir.polar) && std::isfinite(dir.azimuth), "non-finite rotation angle");
    const RMatrix d = wigner_d_matrix(n, dir.polar);
    CMatrix bras(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
        const cplx phase = std::polar(1.0, dir.azimuth * magnetic_number(n, k));
        for (int l = 0; l <= n; ++l) {
            bras(l, k) = phase * d(k, l);
        }
    }
    return bras;
}

inline Eigen::RowVectorXcd rotated_dicke_bra(int n, int l, const RotationSpec &dir) {
    detail::require(l >= 0 && l <= n, "excitation index out of range");
    return rotated_dicke_basis(n, dir).row(l);
}

/// Expectation value <psi| op |psi> for a Hermitian operator.
inline double expectation(const DickeState &psi, const CMatrix &op) {
    return psi.amp.dot(op * psi.amp).real();
}

}  // namespace sqz
