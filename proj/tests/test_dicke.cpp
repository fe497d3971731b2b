#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"

using namespace sqz;

TEST(LogBinomial, SmallCases) {
    EXPECT_NEAR(log_binomial(4, 2), std::log(6.0), 1e-14);
    EXPECT_EQ(log_binomial(7, 0), 0.0);
    EXPECT_EQ(log_binomial(7, 7), 0.0);
}

TEST(LogBinomial, OutOfRangeIsMinusInfinity) {
    EXPECT_EQ(log_binomial(5, -1), -std::numeric_limits<double>::infinity());
    EXPECT_EQ(log_binomial(5, 6), -std::numeric_limits<double>::infinity());
}

TEST(LogBinomial, HundredChooseFifty) {
    // ln C(100, 50) from exact integer arithmetic.
    const double exact = 66.783841652017426009;
    EXPECT_NEAR(log_binomial(100, 50) / exact, 1.0, 1e-12);
}

TEST(SpinOps, EmptyEnsembleThrows) {
    EXPECT_THROW(collective_spin_ops(0), Error);
}

TEST(SpinOps, SpinHalf) {
    const auto s = collective_spin_ops(1);
    for (const CMatrix *m : {&s.sx, &s.sy, &s.sz}) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(*m);
        EXPECT_NEAR(es.eigenvalues()(0), -0.5, 1e-14);
        EXPECT_NEAR(es.eigenvalues()(1), 0.5, 1e-14);
    }
}

TEST(SpinOps, SzConvention) {
    const auto s = collective_spin_ops(2);
    EXPECT_NEAR(s.sz(0, 0).real(), -1.0, 0);
    EXPECT_NEAR(s.sz(1, 1).real(), 0.0, 0);
    EXPECT_NEAR(s.sz(2, 2).real(), 1.0, 0);
}

TEST(SpinOps, HermitianCommutatorsCasimir) {
    for (int n : {1, 2, 5, 6, 13}) {
        const auto s = collective_spin_ops(n);
        const cplx i(0, 1);
        for (const CMatrix *m : {&s.sx, &s.sy, &s.sz}) {
            EXPECT_LT((*m - m->adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        }
        EXPECT_LT((s.sx * s.sy - s.sy * s.sx - i * s.sz).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((s.sy * s.sz - s.sz * s.sy - i * s.sx).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((s.sz * s.sx - s.sx * s.sz - i * s.sy).cwiseAbs().maxCoeff(), 1e-10);
        const double j = 0.5 * n;
        const CMatrix cas = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz;
        EXPECT_LT((cas - j * (j + 1) * CMatrix::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(WignerD, ZeroAngleIsIdentity) {
    for (int tj : {0, 1, 4, 17, 100}) {
        const RMatrix d = wigner_d_matrix(tj, 0.0);
        EXPECT_LT((d - RMatrix::Identity(tj + 1, tj + 1)).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(WignerD, SpinHalfClosedForm) {
    const double b = 0.83;
    const RMatrix d = wigner_d_matrix(1, b);
    // index 1 is m = +1/2, index 0 is m = -1/2
    EXPECT_NEAR(d(1, 1), std::cos(b / 2), 1e-15);
    EXPECT_NEAR(d(1, 0), -std::sin(b / 2), 1e-15);
    EXPECT_NEAR(d(0, 1), std::sin(b / 2), 1e-15);
}

TEST(WignerD, SpinOneClosedForm) {
    const double b = 1.7;
    const RMatrix d = wigner_d_matrix(2, b);
    EXPECT_NEAR(d(2, 2), 0.5 * (1 + std::cos(b)), 1e-14);
    EXPECT_NEAR(d(2, 1), -std::sin(b) / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(d(2, 0), 0.5 * (1 - std::cos(b)), 1e-14);
    EXPECT_NEAR(d(1, 1), std::cos(b), 1e-14);
}

TEST(WignerD, MatchesMatrixExponential) {
    const double beta = 1.0;
    const RMatrix d = wigner_d_matrix(50, beta);
    const CMatrix ref = oracle::expm_hermitian(collective_spin_ops(50).sy, beta);
    EXPECT_LT((d.cast<cplx>() - ref).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(WignerD, OrthogonalUpToFifty) {
    for (int tj : {1, 7, 40, 100}) {
        for (double b : {0.3, 1.9, 3.1}) {
            const RMatrix d = wigner_d_matrix(tj, b);
            EXPECT_LT((d * d.transpose() - RMatrix::Identity(tj + 1, tj + 1)).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(WignerD, NonFiniteAngleThrows) {
    EXPECT_THROW(wigner_d_matrix(4, std::nan("")), Error);
    EXPECT_THROW(wigner_d_matrix(4, INFINITY), Error);
}

TEST(RotatedBra, PlusZIsStandardBasis) {
    const auto row = rotated_dicke_bra(6, 2, axes::plus_z());
    for (int k = 0; k <= 6; ++k) EXPECT_NEAR(std::abs(row(k) - cplx(k == 2 ? 1.0 : 0.0)), 0.0, 1e-15);
}

TEST(RotatedBra, PlusXTopIsCoherent) {
    const int n = 9;
    const auto row = rotated_dicke_bra(n, n, axes::plus_x());
    for (int k = 0; k <= n; ++k) {
        EXPECT_NEAR(std::abs(row(k)), std::exp(0.5 * log_binomial(n, k) - 0.5 * n * std::log(2.0)), 1e-13);
    }
}

TEST(RotatedBra, MatchesDenseRotation) {
    const RotationSpec dir{1.1, 0.7};
    const CMatrix r = oracle::dense_rotation(6, dir);
    const auto row = rotated_dicke_bra(6, 2, dir);
    EXPECT_LT((row.transpose() - r.col(2).conjugate()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(row.norm(), 1.0, 1e-12);
}

TEST(RotatedBra, OrthonormalAndComplete) {
    for (int n : {3, 12, 20}) {
        const CMatrix b = rotated_dicke_basis(n, {2.2, 4.0});
        const CMatrix id = CMatrix::Identity(n + 1, n + 1);
        EXPECT_LT((b * b.adjoint() - id).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((b.adjoint() * b - id).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(RotatedBra, IndexOutOfRangeThrows) {
    EXPECT_THROW(rotated_dicke_bra(4, 5, axes::plus_x()), Error);
    EXPECT_THROW(rotated_dicke_bra(4, -1, axes::plus_x()), Error);
}

TEST(Ladder, CoherentXExpectation) {
    for (int n : {1, 10, 77}) {
        const DickeState psi = coherent_x(n);
        EXPECT_NEAR(expectation(psi, collective_spin_ops(n).sx), 0.5 * n, 1e-12);
    }
}

TEST(RotationSpec, FromVectorRoundTrip) {
    const Eigen::Vector3d v(0.3, -0.5, 0.8);
    const RotationSpec r = RotationSpec::from_vector(v);
    r.validate();
    EXPECT_LT((r.unit_vector() - v.normalized()).norm(), 1e-14);
    EXPECT_THROW(RotationSpec::from_vector(Eigen::Vector3d::Zero()), Error);
    EXPECT_THROW((RotationSpec{4.0, 0.0}.validate()), Error);
}

TEST(RotatedBra, TopStatePointsAlongAxis) {
    const RotationSpec dir{0.9, 1.3};
    const int n = 8;
    const DickeState top(n, rotated_dicke_bra(n, n, dir).adjoint());
    const auto s = collective_spin_ops(n);
    const Eigen::Vector3d mean(expectation(top, s.sx), expectation(top, s.sy), expectation(top, s.sz));
    EXPECT_LT((mean - 0.5 * n * dir.unit_vector()).norm(), 1e-12);
}
