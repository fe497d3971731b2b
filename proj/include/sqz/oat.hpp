#pragma once

// One-axis-twisted states, their squeezing frame, and the two-mode state
// produced by splitting the ensemble 50:50.

#include <cmath>
#include <numbers>
#include <vector>

#include "sqz/dicke.hpp"

namespace sqz {

/// Total particle number and dimensionless twisting strength mu = 2 chi t.
struct OATParameters {
    int n = 0;
    double mu = 0.0;

    void validate() const {
        detail::require(n >= 1, "particle count must be at least 1");
        detail::require(std::isfinite(mu), "twisting strength must be finite");
    }
};

/// Phase picked up by |k> under exp(-i (mu/2) sz^2), written with the
/// excitation-count offset (n_total/2 - k).
inline cplx twisting_phase(double mu, double half_total_minus_k) {
    return std::polar(1.0, -0.5 * mu * half_total_minus_k * half_total_minus_k);
}

inline DickeState oat_state(const OATParameters &p) {
    p.validate();
    CVector amp(p.n + 1);
    const double log_norm = -0.5 * p.n * std::numbers::ln2;
    for (int k = 0; k <= p.n; ++k) {
        const double mag = std::exp(0.5 * log_binomial(p.n, k) + log_norm);
        amp(k) = mag * twisting_phase(p.mu, 0.5 * p.n - k);
    }
    DickeState s(p.n, std::move(amp));
    s.normalize();
    return s;
}

/// Spin coherent state of n particles along +x.
inline DickeState coherent_x(int n) { return oat_state({n, 0.0}); }

/// Angle of the squeezing axis z' measured in the y-z plane.
///
/// Evaluated with the two-argument arctangent so the N = 2 case (vanishing
/// denominator) and the branch change near mu = pi pick the axis that
/// actually minimises the variance.
inline double theta_star(const OATParameters &p) {
    p.validate();
    detail::require(p.n >= 2, "frame undefined for fewer than two particles");
    const double num = 4.0 * std::sin(0.5 * p.mu) * std::pow(std::cos(0.5 * p.mu), p.n - 2);
    const double den = 1.0 - std::pow(std::cos(p.mu), p.n - 2);
    return 0.5 * std::atan2(num, den);
}

/// Squeezing frame (x', y', z') plus an in-plane measurement angle measured
/// from z' towards y'.
struct MeasurementFrame {
    double theta_star = 0.0;
    double theta_a = 0.0;

    static MeasurementFrame of(const OATParameters &p, double theta_a = 0.0) {
        return {sqz::theta_star(p), theta_a};
    }

    Eigen::Vector3d x_prime() const { return Eigen::Vector3d::UnitX(); }
    Eigen::Vector3d z_prime() const { return {0.0, -std::sin(theta_star), std::cos(theta_star)}; }
    Eigen::Vector3d y_prime() const { return {0.0, std::cos(theta_star), std::sin(theta_star)}; }

    /// sin(theta_a) y' + cos(theta_a) z'
    Eigen::Vector3d direction() const {
        return std::sin(theta_a) * y_prime() + std::cos(theta_a) * z_prime();
    }

    RotationSpec rotation() const { return RotationSpec::from_vector(direction()); }
};

/// Amplitudes of the split state, stored as one (n_a+1) x (n_b+1) matrix per
/// value of n_a: block(n_a)(k_a, k_b).
class SplitState {
public:
    SplitState() = default;
    SplitState(OATParameters params, std::vector<CMatrix> blocks)
        : params_(params), blocks_(std::move(blocks)) {}

    int n() const { return params_.n; }
    double mu() const { return params_.mu; }
    const OATParameters &params() const { return params_; }

    const CMatrix &block(int n_a) const {
        detail::require(n_a >= 0 && n_a <= n(), "n_a out of range");
        return blocks_[static_cast<std::size_t>(n_a)];
    }

    cplx amp(int n_a, int k_a, int k_b) const {
        const CMatrix &b = block(n_a);
        detail::require(k_a >= 0 && k_a < b.rows() && k_b >= 0 && k_b < b.cols(), "index out of range");
        return b(k_a, k_b);
    }

    double squared_norm() const {
        double total = 0.0;
        for (const auto &b : blocks_) {
            total += b.squaredNorm();
        }
        return total;
    }

private:
    OATParameters params_;
    std::vector<CMatrix> blocks_;
};

inline SplitState split_state(const OATParameters &p) {
    p.validate();
    const int n = p.n;
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(n) + 1);
    const double log_prefactor = -n * std::numbers::ln2;
    for (int n_a = 0; n_a <= n; ++n_a) {
        const int n_b = n - n_a;
        CMatrix b(n_a + 1, n_b + 1);
        for (int k_a = 0; k_a <= n_a; ++k_a) {
            for (int k_b = 0; k_b <= n_b; ++k_b) {
                const double log_mag = log_prefactor +
                                       0.5 * (log_binomial(n, n_a) + log_binomial(n_a, k_a) +
                                              log_binomial(n_b, k_b));
                b(k_a, k_b) = std::exp(log_mag) * twisting_phase(p.mu, 0.5 * n - k_a - k_b);
            }
        }
        blocks.push_back(std::move(b));
    }
    double norm2 = 0.0;
    for (const auto &b : blocks) {
        norm2 += b.squaredNorm();
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto &b : blocks) {
        b *= scale;
    }
    return {p, std::move(blocks)};
}

/// Binomial mode occupation p(N_a) = 2^-N C(N, N_a).
inline std::vector<double> splitting_distribution(int n) {
    detail::require(n >= 0, "particle count must be non-negative");
    std::vector<double> p(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        p[static_cast<std::size_t>(k)] = std::exp(log_binomial(n, k) - n * std::numbers::ln2);
    }
    return p;
}

}  // namespace sqz
