#pragma once

// Collective measurement of (N_a, l_a) along an axis on mode A and the
// heralded pure states it leaves on mode B.

#include <optional>
#include <string>
#include <vector>

#include "sqz/oat.hpp"

namespace sqz {

/// Below this joint probability a conditional state is treated as undefined.
inline constexpr double kZeroProbability = 1e-14;

struct ConditionalOutcome {
    int n_a = 0;
    int l_a = 0;
    RotationSpec dir;
    /// Joint probability p(l_a, N_a | dir).
    double prob = 0.0;
    /// p(l_a, N_a | dir) / p(N_a).
    double prob_given_na = 0.0;
    /// Normalised state of the N - n_a particles in mode B; empty for
    /// unresolvable outcomes.
    std::optional<DickeState> state_b;
};

namespace detail {

/// Unnormalised conditional vectors for every l_a, one per row.
inline CMatrix unnormalised_conditionals(const SplitState &split, int n_a, const RotationSpec &dir) {
    require(n_a >= 0 && n_a <= split.n(), "n_a out of range");
    return rotated_dicke_basis(n_a, dir) * split.block(n_a);
}

}  // namespace detail

/// Joint probability p(l_a, N_a | dir) without forming the conditional state.
inline double condition_probability(const SplitState &split, int n_a, int l_a, const RotationSpec &dir) {
    detail::require(n_a >= 0 && n_a <= split.n(), "n_a out of range");
    detail::require(l_a >= 0 && l_a <= n_a, "l_a out of range");
    return (rotated_dicke_bra(n_a, l_a, dir) * split.block(n_a)).squaredNorm();
}

inline ConditionalOutcome condition(const SplitState &split, int n_a, int l_a, const RotationSpec &dir) {
    detail::require(n_a >= 0 && n_a <= split.n(), "n_a out of range");
    detail::require(l_a >= 0 && l_a <= n_a, "l_a out of range");
    const Eigen::RowVectorXcd bra = rotated_dicke_bra(n_a, l_a, dir);
    CVector v = (bra * split.block(n_a)).transpose();
    const double prob = v.squaredNorm();
    if (!(prob >= kZeroProbability)) {
        throw ZeroProbabilityError("outcome unresolvable: zero-probability branch (n_a=" +
                                       std::to_string(n_a) + ", l_a=" + std::to_string(l_a) + ")",
                                   prob);
    }
    const double p_na = splitting_distribution(split.n())[static_cast<std::size_t>(n_a)];
    v /= std::sqrt(prob);
    return {n_a, l_a, dir, prob, prob / p_na, DickeState(split.n() - n_a, std::move(v))};
}

/// All n_a + 1 outcomes of the measurement on n_a particles.
inline std::vector<ConditionalOutcome> outcome_table(const SplitState &split, int n_a,
                                                     const RotationSpec &dir) {
    const CMatrix rows = detail::unnormalised_conditionals(split, n_a, dir);
    const double p_na = splitting_distribution(split.n())[static_cast<std::size_t>(n_a)];
    std::vector<ConditionalOutcome> out;
    out.reserve(static_cast<std::size_t>(n_a) + 1);
    for (int l = 0; l <= n_a; ++l) {
        ConditionalOutcome o{n_a, l, dir, rows.row(l).squaredNorm(), 0.0, std::nullopt};
        o.prob_given_na = o.prob / p_na;
        if (o.prob >= kZeroProbability) {
            CVector v = rows.row(l).transpose() / std::sqrt(o.prob);
            o.state_b = DickeState(split.n() - n_a, std::move(v));
        }
        out.push_back(std::move(o));
    }
    return out;
}

/// Closed-form conditional state for a measurement along +z: the N_B-particle
/// twisted state with its twisting phase offset by l_a.
inline DickeState sz_conditional_closed_form(const OATParameters &p, int n_a, int l_a) {
    p.validate();
    detail::require(n_a >= 0 && n_a <= p.n, "n_a out of range");
    detail::require(l_a >= 0 && l_a <= n_a, "l_a out of range");
    const int n_b = p.n - n_a;
    CVector amp(n_b + 1);
    for (int k = 0; k <= n_b; ++k) {
        const double mag = std::exp(0.5 * log_binomial(n_b, k) - 0.5 * n_b * std::numbers::ln2);
        amp(k) = mag * twisting_phase(p.mu, 0.5 * p.n - l_a - k);
    }
    DickeState s(n_b, std::move(amp));
    s.normalize();
    return s;
}

}  // namespace sqz
