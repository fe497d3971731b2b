#pragma once

// Realistic-noise averages: binomial fluctuations of the mode occupation and
// Gaussian read-out error on l_a and N_a.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sqz/conditioning.hpp"
#include "sqz/metrology.hpp"

namespace sqz {

struct DetectionNoise {
    /// Standard deviation of the read-out error, in excitation counts.
    double sigma = 0.0;

    void validate() const {
        detail::require(std::isfinite(sigma) && sigma >= 0.0, "noise sigma must be finite and >= 0");
    }
};

/// Selects the post-selected outcome l_a for each ancilla size N_a.
class HeraldRule {
public:
    HeraldRule(std::string name, std::function<int(int)> select)
        : name_(std::move(name)), select_(std::move(select)) {}

    /// l_a = ceil(N_a / 2)
    static HeraldRule ceil_half() {
        return {"ceil_half", [](int n_a) { return (n_a + 1) / 2; }};
    }
    /// l_a = N_a - offset, clamped at 0.
    static HeraldRule below_top(int offset) {
        return {"top_minus_" + std::to_string(offset),
                [offset](int n_a) { return std::max(0, n_a - offset); }};
    }
    /// l_a fixed, clamped into [0, N_a].
    static HeraldRule fixed(int l_a) {
        return {"fixed_" + std::to_string(l_a),
                [l_a](int n_a) { return std::clamp(l_a, 0, n_a); }};
    }

    int operator()(int n_a) const {
        const int l = select_(n_a);
        detail::require(l >= 0 && l <= n_a, "herald rule produced l_a outside [0, N_a]");
        return l;
    }

    const std::string &name() const { return name_; }

private:
    std::string name_;
    std::function<int(int)> select_;
};

/// How the measurement axis is chosen from the twisting parameters.
struct DirectionPolicy {
    enum class Kind { x, y_prime, z_prime, plane_angle, fixed };
    Kind kind = Kind::z_prime;
    /// Angle from z' towards y' when kind == plane_angle.
    double theta_a = 0.0;
    RotationSpec fixed_dir;

    static DirectionPolicy x() { return {Kind::x, 0.0, {}}; }
    static DirectionPolicy y_prime() { return {Kind::y_prime, 0.0, {}}; }
    static DirectionPolicy z_prime() { return {Kind::z_prime, 0.0, {}}; }
    static DirectionPolicy plane(double theta_a) { return {Kind::plane_angle, theta_a, {}}; }
    static DirectionPolicy fixed(RotationSpec dir) { return {Kind::fixed, 0.0, dir}; }

    /// The frame is that of the full N-particle twisted state, recomputed for
    /// each mu.
    RotationSpec resolve(const OATParameters &p) const {
        switch (kind) {
        case Kind::x:
            return axes::plus_x();
        case Kind::y_prime:
            return MeasurementFrame::of(p, std::numbers::pi / 2).rotation();
        case Kind::z_prime:
            return MeasurementFrame::of(p, 0.0).rotation();
        case Kind::plane_angle:
            return MeasurementFrame::of(p, theta_a).rotation();
        case Kind::fixed:
            return fixed_dir;
        }
        return fixed_dir;
    }

    std::string label() const {
        switch (kind) {
        case Kind::x:
            return "x";
        case Kind::y_prime:
            return "yprime";
        case Kind::z_prime:
            return "zprime";
        case Kind::plane_angle:
            return "plane";
        case Kind::fixed:
            return "fixed";
        }
        return "fixed";
    }
};

namespace detail {

/// exp(-(center - l)^2 / (2 sigma^2)) for l in [0, count); indicator at
/// `center` when sigma == 0. Not normalised.
inline std::vector<double> gaussian_profile(int center, int count, double sigma) {
    std::vector<double> w(static_cast<std::size_t>(count), 0.0);
    for (int l = 0; l < count; ++l) {
        if (sigma == 0.0) {
            w[static_cast<std::size_t>(l)] = (l == center) ? 1.0 : 0.0;
        } else {
            const double d = center - l;
            w[static_cast<std::size_t>(l)] = std::exp(-d * d / (2.0 * sigma * sigma));
        }
    }
    return w;
}

/// Unnormalised mixture sum_l w(l) v_l v_l^dagger over the conditional
/// vectors of block n_a, with w the raw Gaussian read-out profile. The trace
/// is the (unnormalised) heralding weight of observing l_star.
inline CMatrix herald_mixture(const SplitState &split, int n_a, int l_star, const RotationSpec &dir,
                              double sigma) {
    const CMatrix rows = unnormalised_conditionals(split, n_a, dir);
    const std::vector<double> w = gaussian_profile(l_star, n_a + 1, sigma);
    const int n_b = split.n() - n_a;
    CMatrix acc = CMatrix::Zero(n_b + 1, n_b + 1);
    for (int l = 0; l <= n_a; ++l) {
        const double wl = w[static_cast<std::size_t>(l)];
        if (wl > 0.0) {
            const CVector v = rows.row(l).transpose();
            acc.noalias() += wl * (v * v.adjoint());
        }
    }
    return acc;
}

}  // namespace detail

/// Probability that the true outcome is l_a given the observed l_star:
/// a Gaussian truncated to [0, n_a] and renormalised.
inline std::vector<double> detection_weights(int l_star, int n_a, const DetectionNoise &noise) {
    noise.validate();
    detail::require(n_a >= 0, "n_a must be non-negative");
    detail::require(l_star >= 0 && l_star <= n_a, "observed l_a outside [0, n_a]");
    std::vector<double> w = detail::gaussian_profile(l_star, n_a + 1, noise.sigma);
    double total = 0.0;
    for (double x : w) {
        total += x;
    }
    for (double &x : w) {
        x /= total;
    }
    return w;
}

struct NoisyHerald {
    SpinDensity state;
    /// sum_l p(l, N_a | dir) w(l) with w the renormalised detection weights.
    double weight = 0.0;
};

/// Conditional mixed state after observing l_star with Gaussian read-out
/// noise: outcomes weighted by occurrence probability times detection weight.
inline NoisyHerald noisy_herald(const SplitState &split, int n_a, int l_star, const RotationSpec &dir,
                                const DetectionNoise &noise) {
    noise.validate();
    detail::require(n_a >= 0 && n_a <= split.n(), "n_a out of range");
    detail::require(l_star >= 0 && l_star <= n_a, "observed l_a outside [0, n_a]");
    CMatrix acc = detail::herald_mixture(split, n_a, l_star, dir, noise.sigma);
    const std::vector<double> raw = detail::gaussian_profile(l_star, n_a + 1, noise.sigma);
    double raw_total = 0.0;
    for (double x : raw) {
        raw_total += x;
    }
    const double weight = acc.trace().real() / raw_total;
    if (!(weight >= kZeroProbability)) {
        throw ZeroProbabilityError("outcome unresolvable: zero-probability herald (n_a=" +
                                       std::to_string(n_a) + ", l_a=" + std::to_string(l_star) + ")",
                                   weight);
    }
    acc /= acc.trace().real();
    return {SpinDensity(split.n() - n_a, std::move(acc)), weight};
}

inline SpinDensity noisy_conditional_state(const SplitState &split, int n_a, int l_star,
                                           const RotationSpec &dir, const DetectionNoise &noise) {
    return noisy_herald(split, n_a, l_star, dir, noise).state;
}

/// QFI density of the noisy conditional state.
inline double avg_qfi_detection(const SplitState &split, int n_a, int l_star, const RotationSpec &dir,
                                const DetectionNoise &noise) {
    const int n_b = split.n() - n_a;
    detail::require(n_b >= 1, "probe mode is empty");
    return qfi_mixed(noisy_conditional_state(split, n_a, l_star, dir, noise)).fq / n_b;
}

/// Per-N_a heralded pure states with weight p(N_b). Blocks with N_b = 0 and
/// blocks whose heralded outcome is unresolvable are left out; the remaining
/// weights are renormalised.
inline BlockMixture conditional_block_mixture(const OATParameters &p, const HeraldRule &rule,
                                              const DirectionPolicy &policy) {
    const SplitState split = split_state(p);
    const RotationSpec dir = policy.resolve(p);
    const std::vector<double> p_n = splitting_distribution(p.n);
    BlockMixture mix;
    for (int n_a = 0; n_a < p.n; ++n_a) {
        try {
            ConditionalOutcome o = condition(split, n_a, rule(n_a), dir);
            mix.blocks.push_back({p_n[static_cast<std::size_t>(n_a)], SpinDensity::pure(*o.state_b)});
        } catch (const ZeroProbabilityError &) {
        }
    }
    const double total = mix.total_weight();
    detail::require(!mix.blocks.empty() && total > 0.0, "all blocks have zero probability");
    for (auto &b : mix.blocks) {
        b.weight /= total;
    }
    return mix;
}

/// Average over the binomial N_b distribution of per-block F_Q / N_b, each
/// block using its own optimal axis.
inline double avg_qfi_number_fluct(const OATParameters &p, const HeraldRule &rule,
                                   const DirectionPolicy &policy) {
    const BlockMixture mix = conditional_block_mixture(p, rule, policy);
    double acc = 0.0;
    for (const auto &b : mix.blocks) {
        acc += b.weight * qfi_mixed(b.rho).fq / b.rho.n;
    }
    return acc;
}

/// QFI of the direct sum of heralded states with one common axis, divided by
/// the mean probe size.
inline BlockQfiResult avg_qfi_joint_block(const OATParameters &p, const HeraldRule &rule,
                                          const DirectionPolicy &policy) {
    return qfi_block_mixture(conditional_block_mixture(p, rule, policy));
}

struct AtomNumberNoise {
    /// Observed N_a; when absent the true N_a is averaged with weight p(N_a)
    /// only.
    std::optional<int> n_a_star;
    /// Read-out noise on N_a; defaults to the l_a noise when absent.
    std::optional<double> sigma;
};

/// Direct sum over N_a of detection-noise mixtures. Block N_a carries the
/// unnormalised operator p(N_a) g(N_a) sum_l p(l | N_a) g(l) rho_l with g the
/// Gaussian read-out profiles, and the whole sum is normalised once.
inline BlockMixture noisy_block_mixture(const OATParameters &p, const HeraldRule &rule,
                                        const DirectionPolicy &policy, const DetectionNoise &noise,
                                        const AtomNumberNoise &atom_noise = {}) {
    noise.validate();
    const double na_sigma = atom_noise.sigma.value_or(noise.sigma);
    detail::require(std::isfinite(na_sigma) && na_sigma >= 0.0, "atom-number sigma must be >= 0");
    if (atom_noise.n_a_star) {
        detail::require(*atom_noise.n_a_star >= 0 && *atom_noise.n_a_star <= p.n, "observed N_a out of range");
    }
    const SplitState split = split_state(p);
    const RotationSpec dir = policy.resolve(p);
    const std::vector<double> na_profile =
        atom_noise.n_a_star ? detail::gaussian_profile(*atom_noise.n_a_star, p.n + 1, na_sigma)
                            : std::vector<double>(static_cast<std::size_t>(p.n) + 1, 1.0);
    BlockMixture mix;
    for (int n_a = 0; n_a < p.n; ++n_a) {
        const double g_na = na_profile[static_cast<std::size_t>(n_a)];
        if (g_na == 0.0) {
            continue;
        }
        CMatrix op = detail::herald_mixture(split, n_a, rule(n_a), dir, noise.sigma);
        const double tr = op.trace().real();
        // The split amplitudes already carry p(N_a).
        const double weight = g_na * tr;
        if (!(tr >= kZeroProbability) || weight <= 0.0) {
            continue;
        }
        op /= tr;
        mix.blocks.push_back({weight, SpinDensity(p.n - n_a, std::move(op))});
    }
    const double total = mix.total_weight();
    detail::require(!mix.blocks.empty() && total > 0.0, "degenerate block weights");
    for (auto &b : mix.blocks) {
        b.weight /= total;
    }
    return mix;
}

/// Averaged QFI density with detection noise on l_a and, optionally, on N_a.
inline BlockQfiResult avg_qfi_full(const OATParameters &p, const HeraldRule &rule,
                                   const DirectionPolicy &policy, const DetectionNoise &noise,
                                   const AtomNumberNoise &atom_noise = {}) {
    return qfi_block_mixture(noisy_block_mixture(p, rule, policy, noise, atom_noise));
}

}  // namespace sqz
