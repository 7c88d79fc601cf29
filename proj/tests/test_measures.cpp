#include <gtest/gtest.h>

#include <random>

#include "dwf/channels.hpp"
#include "dwf/closed_forms.hpp"
#include "dwf/measures.hpp"
#include "oracles.hpp"

using namespace dwf;

TEST(Coherence, Basics) {
    EXPECT_EQ(coherence_l1(identity(3) / 3.0), 0.0);
    Vector plus(2);
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    EXPECT_NEAR(coherence_l1(projector(plus)), 1, 1e-15);
    EXPECT_NEAR(coherence_l1(bell_state(BellLabel::PhiPlus)), 1, 1e-15);
}

TEST(SpinFlip, Examples) {
    const Matrix phi = bell_state(BellLabel::PhiPlus);
    EXPECT_LT(max_abs(spin_flip(phi) - phi), 1e-15);
    Matrix z = Matrix::Zero(4, 4), o = Matrix::Zero(4, 4);
    z(0, 0) = 1;
    o(3, 3) = 1;
    EXPECT_LT(max_abs(spin_flip(z) - o), 1e-15);
    EXPECT_THROW(spin_flip(identity(2)), ValidationError);
}

TEST(Concurrence, BellAndProduct) {
    for (BellLabel l : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus})
        EXPECT_NEAR(concurrence(bell_state(l)), 1, 1e-12);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k)
        EXPECT_NEAR(concurrence(kron(oracle::random_density(2, rng), oracle::random_density(2, rng))), 0, 1e-7);
}

TEST(Concurrence, WernerCurve) {
    for (double p = 0; p <= 1.0001; p += 0.05)
        EXPECT_NEAR(concurrence(oracle::werner(p)), std::max(0.0, (3 * p - 1) / 2), 1e-9) << p;
    const double root = oracle::bisect([](double p) { return concurrence(oracle::werner(p)) - 1e-12; }, 0.2, 0.5);
    EXPECT_NEAR(root, 1.0 / 3, 1e-9);
}

TEST(Concurrence, LocalUnitaryInvariance) {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 100; ++k) {
        const Matrix rho = oracle::random_density(4, rng);
        const Matrix u = kron(oracle::random_unitary(2, rng), oracle::random_unitary(2, rng));
        EXPECT_NEAR(concurrence(u * rho * u.adjoint()), concurrence(rho), 1e-9);
    }
}

TEST(Concurrence, MarkovianRtnNonIncreasing) {
    for (const Matrix& rho : {bell_state(BellLabel::PhiPlus), bell_state(BellLabel::PsiMinus)}) {
        double prev = 2;
        for (double t = 0; t <= 20; t += 0.1) {
            const double c = concurrence(evolve(rho, System::TwoQubit, ChannelSpec::rtn(1, 0.07), t));
            EXPECT_LE(c, prev + 1e-12);
            prev = c;
        }
    }
}

TEST(Correlation, DirectExamples) {
    EXPECT_LT(correlation_direct(identity(4) / 4.0).cwiseAbs().maxCoeff(), 1e-15);
    const Matrix3 phi = correlation_direct(bell_state(BellLabel::PhiPlus));
    EXPECT_LT((phi - Eigen::Vector3d(1, -1, 1).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff(), 1e-14);
    const Matrix3 psi = correlation_direct(bell_state(BellLabel::PsiMinus));
    EXPECT_LT((psi + Matrix3::Identity()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Correlation, ReconstructionPathIsExact) {
    const auto ops = PhasePointOperatorSet::standard(4);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 50; ++k) {
        const Matrix rho = oracle::random_density(4, rng);
        const auto r = correlation_from_dwf(compute_dwf(rho, ops), ops);
        EXPECT_LT((r.primary - correlation_direct(rho)).cwiseAbs().maxCoeff(), 1e-10);
    }
    DwfTable uniform = DwfTable::zeros(4);
    uniform.entries.setConstant(1.0 / 16);
    EXPECT_LT(correlation_printed(uniform).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Correlation, PrintedFormulasOnClosedFormTable) {
    const TwoQubitBloch b = two_qubit_bloch(preset("twoqubit_ns1").state);
    ASSERT_NEAR(b.t[2][2], 0.44, 1e-12);
    const Matrix3 printed = correlation_printed(closed_form_two_qubit_dwf(b));
    EXPECT_NEAR(printed(2, 2), -0.44, 1e-12);
    const int sign[3][3] = {{-1, -1, -1}, {-1, -1, -1}, {1, 1, -1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_NEAR(printed(i, j), sign[i][j] * b.t[i][j], 1e-12) << i << j;
}

TEST(Teleportation, Examples) {
    for (BellLabel l : {BellLabel::PhiPlus, BellLabel::PsiPlus}) {
        const auto r = teleportation_fidelity(bell_state(l));
        EXPECT_NEAR(r.n_f, 3, 1e-12);
        EXPECT_NEAR(r.fidelity, 1, 1e-12);
    }
    const auto mixed = teleportation_fidelity(identity(4) / 4.0);
    EXPECT_NEAR(mixed.fidelity, 0.5, 1e-15);
    EXPECT_FALSE(mixed.beats_classical);
    const auto w = teleportation_fidelity(oracle::werner(1.0 / 3));
    EXPECT_NEAR(w.n_f, 1, 1e-12);
    EXPECT_NEAR(w.fidelity, 2.0 / 3, 1e-12);
    const double root =
        oracle::bisect([](double p) { return teleportation_fidelity(oracle::werner(p)).fidelity - 2.0 / 3; }, 0.1, 0.6);
    EXPECT_NEAR(root, 1.0 / 3, 1e-9);
}

TEST(Teleportation, SingularValueInvariances) {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 30; ++k) {
        const Matrix3 t = correlation_direct(oracle::random_density(4, rng));
        const double nf = teleportation_fidelity_from_correlation(t).n_f;
        EXPECT_NEAR(teleportation_fidelity_from_correlation(t.transpose()).n_f, nf, 1e-12);
        Matrix3 flipped = t;
        flipped.row(1) *= -1;
        flipped.col(2) *= -1;
        EXPECT_NEAR(teleportation_fidelity_from_correlation(flipped).n_f, nf, 1e-12);
        const double f = teleportation_fidelity_from_correlation(t).fidelity;
        EXPECT_GE(f, 0.5);
        EXPECT_LE(f, 1 + 1e-12);
    }
}
