#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "oracles.hpp"

using namespace sqz;

TEST(DetectionWeights, DeltaAtZeroSigma) {
    const auto w = detection_weights(3, 8, {0.0});
    for (int l = 0; l <= 8; ++l) EXPECT_EQ(w[l], l == 3 ? 1.0 : 0.0);
}

TEST(DetectionWeights, Calibration) {
    const auto w1 = detection_weights(25, 50, {0.49});
    EXPECT_NEAR(w1[24], 0.10, 0.01);
    EXPECT_NEAR(w1[26], 0.10, 0.01);
    const auto w2 = detection_weights(25, 50, {1.37});
    EXPECT_NEAR(w2[23], 0.10, 0.01);
    EXPECT_NEAR(w2[27], 0.10, 0.01);
}

TEST(DetectionWeights, NormalisedAndSymmetric) {
    for (double s : {0.2, 0.7, 3.0, 40.0}) {
        const auto w = detection_weights(10, 20, {s});
        double total = 0.0;
        for (double x : w) total += x;
        EXPECT_NEAR(total, 1.0, 1e-14);
        for (int d = 1; d <= 10; ++d) EXPECT_NEAR(w[10 - d], w[10 + d], 1e-15);
    }
    // Truncation at the edge renormalises over [0, n_a].
    const auto edge = detection_weights(0, 5, {1.0});
    double total = 0.0;
    for (double x : edge) total += x;
    EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(DetectionWeights, Validation) {
    EXPECT_THROW(detection_weights(6, 5, {0.3}), Error);
    EXPECT_THROW(detection_weights(2, 5, {-0.1}), Error);
}

TEST(HeraldRule, Selectors) {
    const auto h = HeraldRule::ceil_half();
    EXPECT_EQ(h(50), 25);
    EXPECT_EQ(h(51), 26);
    EXPECT_EQ(HeraldRule::below_top(1)(50), 49);
    EXPECT_EQ(HeraldRule::below_top(3)(1), 0);
    EXPECT_EQ(HeraldRule::fixed(25)(10), 10);
    const HeraldRule bad("bad", [](int n) { return n + 1; });
    EXPECT_THROW(bad(3), Error);
}

TEST(NumberFluct, ZeroTwistGivesOne) {
    for (const auto &policy : {DirectionPolicy::x(), DirectionPolicy::z_prime(), DirectionPolicy::y_prime()}) {
        EXPECT_NEAR(avg_qfi_number_fluct({20, 0.0}, HeraldRule::ceil_half(), policy), 1.0, 1e-10);
    }
}

TEST(NumberFluct, MatchesBlockwiseResummation) {
    const OATParameters p{10, 0.35};
    const auto rule = HeraldRule::ceil_half();
    const SplitState s = split_state(p);
    const RotationSpec dir = DirectionPolicy::z_prime().resolve(p);
    const auto pn = splitting_distribution(p.n);
    double acc = 0.0, weight = 0.0;
    for (int n_a = 0; n_a < p.n; ++n_a) {
        const CVector v = oracle::projected_b(s, n_a, rule(n_a), dir);
        if (v.squaredNorm() < 1e-14) continue;
        const DickeState b(p.n - n_a, v / v.norm());
        acc += pn[n_a] * qfi_pure(b).fq / b.n;
        weight += pn[n_a];
    }
    EXPECT_NEAR(avg_qfi_number_fluct(p, rule, DirectionPolicy::z_prime()), acc / weight, 1e-10);
}

TEST(JointBlock, MatchesWeightedGammaSum) {
    const OATParameters p{10, 0.6};
    const auto rule = HeraldRule::ceil_half();
    const SplitState s = split_state(p);
    const RotationSpec dir = DirectionPolicy::y_prime().resolve(p);
    const auto pn = splitting_distribution(p.n);
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    double weight = 0.0, mean_nb = 0.0;
    for (int n_a = 0; n_a < p.n; ++n_a) {
        const CVector v = oracle::projected_b(s, n_a, rule(n_a), dir);
        if (v.squaredNorm() < 1e-14) continue;
        const DickeState b(p.n - n_a, v / v.norm());
        g += pn[n_a] * 4 * covariance_matrix(b);
        weight += pn[n_a];
        mean_nb += pn[n_a] * b.n;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g / weight);
    const BlockQfiResult r = avg_qfi_joint_block(p, rule, DirectionPolicy::y_prime());
    EXPECT_NEAR(r.qfi.fq, es.eigenvalues()(2), 1e-9);
    EXPECT_NEAR(r.mean_particles, mean_nb / weight, 1e-12);
    EXPECT_NEAR(r.density, es.eigenvalues()(2) / (mean_nb / weight), 1e-9);
}

TEST(NumberFluct, FixedHalfComparisonAtForty) {
    const OATParameters p{40, 0.1};
    const auto rule = HeraldRule::ceil_half();
    const auto policy = DirectionPolicy::z_prime();
    const double fixed = qfi_pure(*condition(split_state(p), 20, 10, policy.resolve(p)).state_b).fq / 20;
    EXPECT_NEAR(avg_qfi_number_fluct(p, rule, policy) / fixed, 1.0, 0.05);
    EXPECT_NEAR(avg_qfi_joint_block(p, rule, policy).density / fixed, 1.0, 0.05);
}

TEST(NoisyState, ZeroSigmaIsPureProjector) {
    const SplitState s = split_state({12, 0.3});
    const ConditionalOutcome o = condition(s, 6, 2, axes::plus_x());
    const SpinDensity rho = noisy_conditional_state(s, 6, 2, axes::plus_x(), {0.0});
    EXPECT_LT((rho.rho - o.state_b->amp * o.state_b->amp.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(NoisyState, MatchesHandAssembledMixture) {
    const SplitState s = split_state({8, 0.45});
    const RotationSpec dir{0.7, 2.0};
    const int n_a = 4, l_star = 2;
    const double sigma = 0.5;
    CMatrix acc = CMatrix::Zero(5, 5);
    for (int l = 0; l <= n_a; ++l) {
        const CVector v = oracle::projected_b(s, n_a, l, dir);
        const double g = std::exp(-(l - l_star) * (l - l_star) / (2 * sigma * sigma));
        acc += g * v * v.adjoint();
    }
    acc /= acc.trace().real();
    const SpinDensity rho = noisy_conditional_state(s, n_a, l_star, dir, {sigma});
    rho.validate();
    EXPECT_LT((rho.rho - acc).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(avg_qfi_detection(s, n_a, l_star, dir, {sigma}), qfi_mixed({4, acc}).fq / 4, 1e-9);
}

TEST(NoisyState, ZeroWeightThrows) {
    const SplitState s = split_state({6, 0.0});
    EXPECT_THROW(noisy_conditional_state(s, 3, 0, axes::plus_x(), {0.0}), ZeroProbabilityError);
    EXPECT_NO_THROW(noisy_conditional_state(s, 3, 0, axes::plus_x(), {2.0}));
}

TEST(Detection, ZeroSigmaEqualsPure) {
    const SplitState s = split_state({30, 0.2});
    const RotationSpec dir = DirectionPolicy::z_prime().resolve({30, 0.2});
    const ConditionalOutcome o = condition(s, 15, 8, dir);
    EXPECT_NEAR(avg_qfi_detection(s, 15, 8, dir, {0.0}), qfi_pure(*o.state_b).fq / 15, 1e-9);
}

TEST(Detection, ConvexityBound) {
    // F_Q of the mixture never exceeds the weighted F_Q of its components.
    for (double mu : {0.1, 0.3}) {
        const OATParameters p{60, mu};
        const SplitState s = split_state(p);
        for (const auto &policy : {DirectionPolicy::z_prime(), DirectionPolicy::y_prime()}) {
            const RotationSpec dir = policy.resolve(p);
            const auto table = outcome_table(s, 30, dir);
            for (double sigma : {0.3, 0.8, 1.5}) {
                double norm = 0.0, bound = 0.0;
                for (int l = 0; l <= 30; ++l) {
                    const auto &o = table[static_cast<std::size_t>(l)];
                    if (!o.state_b) continue;
                    const double w = o.prob * std::exp(-(15.0 - l) * (15.0 - l) / (2 * sigma * sigma));
                    norm += w;
                    bound += w * qfi_pure(*o.state_b).fq / 30;
                }
                EXPECT_LE(avg_qfi_detection(s, 30, 15, dir, {sigma}), bound / norm + 1e-9)
                    << "mu=" << mu << " sigma=" << sigma;
            }
        }
    }
}

TEST(Detection, SqueezingAxisKeepsSmallMuAdvantage) {
    const int n = 100;
    auto noisy = [&](double mu, const DirectionPolicy &policy, double sigma) {
        const OATParameters p{n, mu};
        return avg_qfi_detection(split_state(p), 50, 25, policy.resolve(p), {sigma});
    };
    auto oat = [](double mu) { return qfi_pure(oat_state({50, mu})).fq / 50; };
    // z' at small mu stays above the OAT(N/2) baseline for both calibration noise levels.
    for (double mu : {0.02, 0.05}) {
        for (double sigma : {0.0, 0.49, 1.37}) {
            EXPECT_GT(noisy(mu, DirectionPolicy::z_prime(), sigma), oat(mu)) << mu << " " << sigma;
        }
    }
    // The advantage shrinks with noise.
    EXPECT_LT(noisy(0.1, DirectionPolicy::z_prime(), 2.0), noisy(0.1, DirectionPolicy::z_prime(), 0.0));
    // y' at mu = 0.3: starts above the baseline and falls below it.
    EXPECT_GT(noisy(0.3, DirectionPolicy::y_prime(), 0.0), oat(0.3));
    EXPECT_LT(noisy(0.3, DirectionPolicy::y_prime(), 2.0), oat(0.3));
}

TEST(Full, ReducesToDetectionAtFixedNA) {
    const OATParameters p{20, 0.3};
    const auto policy = DirectionPolicy::z_prime();
    const RotationSpec dir = policy.resolve(p);
    for (double sigma : {0.0, 0.6}) {
        AtomNumberNoise atom;
        atom.n_a_star = 10;
        atom.sigma = 0.0;
        const BlockQfiResult r = avg_qfi_full(p, HeraldRule::fixed(5), policy, {sigma}, atom);
        EXPECT_NEAR(r.density, avg_qfi_detection(split_state(p), 10, 5, dir, {sigma}), 1e-10);
        EXPECT_NEAR(r.mean_particles, 10.0, 1e-12);
    }
}

TEST(Full, MatchesAssembledDirectSum) {
    const OATParameters p{10, 0.4};
    const auto rule = HeraldRule::ceil_half();
    const SplitState s = split_state(p);
    const RotationSpec dir = DirectionPolicy::y_prime().resolve(p);
    const double sigma = 0.8, sigma_na = 1.1;
    const int n_a_star = 5;
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    double total = 0.0, mean_nb = 0.0;
    for (int n_a = 0; n_a < p.n; ++n_a) {
        const int ls = rule(n_a);
        CMatrix acc = CMatrix::Zero(p.n - n_a + 1, p.n - n_a + 1);
        for (int l = 0; l <= n_a; ++l) {
            const CVector v = oracle::projected_b(s, n_a, l, dir);
            acc += std::exp(-(l - ls) * (l - ls) / (2 * sigma * sigma)) * v * v.adjoint();
        }
        const double w =
            std::exp(-(n_a - n_a_star) * (n_a - n_a_star) / (2 * sigma_na * sigma_na)) * acc.trace().real();
        acc /= acc.trace().real();
        g += w * gamma_q({p.n - n_a, acc});
        total += w;
        mean_nb += w * (p.n - n_a);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g / total);
    AtomNumberNoise atom;
    atom.n_a_star = n_a_star;
    atom.sigma = sigma_na;
    const BlockQfiResult r = avg_qfi_full(p, rule, DirectionPolicy::y_prime(), {sigma}, atom);
    EXPECT_NEAR(r.qfi.fq, es.eigenvalues()(2), 1e-9);
    EXPECT_NEAR(r.density, es.eigenvalues()(2) / (mean_nb / total), 1e-9);
}

TEST(Full, BlockOrderIrrelevant) {
    const OATParameters p{16, 0.25};
    BlockMixture m = noisy_block_mixture(p, HeraldRule::ceil_half(), DirectionPolicy::z_prime(), {0.5});
    const double forward = qfi_block_mixture(m).qfi.fq;
    std::reverse(m.blocks.begin(), m.blocks.end());
    EXPECT_NEAR(qfi_block_mixture(m).qfi.fq, forward, 1e-12);
    std::rotate(m.blocks.begin(), m.blocks.begin() + 5, m.blocks.end());
    EXPECT_NEAR(qfi_block_mixture(m).qfi.fq, forward, 1e-12);
}

TEST(Full, Validation) {
    AtomNumberNoise atom;
    atom.n_a_star = 30;
    EXPECT_THROW(avg_qfi_full({20, 0.2}, HeraldRule::ceil_half(), DirectionPolicy::x(), {0.3}, atom), Error);
    EXPECT_THROW(avg_qfi_full({20, 0.2}, HeraldRule::ceil_half(), DirectionPolicy::x(), {-1.0}), Error);
}
