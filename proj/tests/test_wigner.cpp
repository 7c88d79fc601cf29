#include <gtest/gtest.h>

#include <random>

#include "dwf/states.hpp"
#include "dwf/wigner.hpp"
#include "oracles.hpp"

using namespace dwf;

class OperatorTest : public ::testing::TestWithParam<int> {};

TEST_P(OperatorTest, Invariants) {
    const auto r = check_operators(PhasePointOperatorSet::standard(GetParam()));
    EXPECT_TRUE(r.passed());
    EXPECT_LT(r.max_trace_deviation, 1e-12);
    EXPECT_LT(r.max_orthogonality_deviation, 1e-10);
    EXPECT_LT(r.max_line_sum_deviation, 1e-12);
}

TEST_P(OperatorTest, SpectraAgreeWithJacobi) {
    const auto ops = PhasePointOperatorSet::standard(GetParam());
    for (int k = 0; k < ops.size(); ++k) {
        const auto mine = hermitian_eigenvalues(ops.at_index(k));
        const auto ref = oracle::jacobi_eigenvalues(ops.at_index(k));
        ASSERT_EQ(mine.size(), ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(mine[i], ref[i], 1e-10);
    }
}

TEST_P(OperatorTest, RoundTripOnRandomStates) {
    const int d = GetParam();
    const auto ops = PhasePointOperatorSet::standard(d);
    std::mt19937_64 rng(7 + d);
    for (int k = 0; k < 100; ++k) {
        const Matrix rho = oracle::random_density(d, rng);
        const DwfTable w = compute_dwf(rho, ops);
        EXPECT_NEAR(w.sum(), 1.0, 1e-12);
        EXPECT_LT(max_abs(reconstruct(w, ops) - rho), 1e-10);
        EXPECT_LT(line_sum_check(w, ops, rho).max_deviation, 1e-12);
    }
}

TEST_P(OperatorTest, MaximallyMixedIsUniform) {
    const int d = GetParam();
    const DwfTable w = compute_dwf(identity(d) / double(d), PhasePointOperatorSet::standard(d));
    EXPECT_LT((w.entries.array() - 1.0 / (d * d)).abs().maxCoeff(), 1e-14);
    EXPECT_EQ(mana(w), 0.0);
}

TEST_P(OperatorTest, StabilizerStatesAreNonNegative) {
    const int d = GetParam();
    const auto ops = PhasePointOperatorSet::standard(d);
    const auto m = mub_set(d);
    for (int b = 0; b <= d; ++b)
        for (int j = 0; j < d; ++j) {
            const DwfTable w = compute_dwf(m.projector(b, j), ops);
            EXPECT_GT(w.min(), -1e-12);
            EXPECT_LT(negativity(m.projector(b, j), ops), 1e-12);
        }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, OperatorTest, ::testing::Values(2, 3, 4));

TEST(Wigner, DimensionMismatchRejected) {
    const auto ops = PhasePointOperatorSet::standard(3);
    EXPECT_THROW(compute_dwf(identity(2) / 2.0, ops), ValidationError);
}

TEST(Wigner, NetRejectsNonBijection) {
    auto a = NetAssignment::identity(3);
    a.striation_to_basis[1] = 0;
    EXPECT_THROW(QuantumNet::build(PhaseSpace(3), mub_set(3), a), ValidationError);
    a = NetAssignment::identity(3);
    a.line_to_vector[2] = {0, 0, 1};
    EXPECT_THROW(QuantumNet::build(PhaseSpace(3), mub_set(3), a), ValidationError);
}

TEST(NegativeStates, Qubit) {
    const auto ops = PhasePointOperatorSet::standard(2);
    const auto ns = negative_states(ops);
    ASSERT_EQ(ns.size(), 1u);
    EXPECT_NEAR(ns[0].eigenvalue, (1 - std::sqrt(3.0)) / 2, 1e-12);
    EXPECT_NEAR(ns[0].negativity, oracle::frozen::qubit_ns1_negativity, 1e-10);
    EXPECT_NEAR(robustness(ns[0].negativity, 2), oracle::frozen::qubit_ns1_robustness, 1e-12);
    EXPECT_THROW(negative_state(ops, 2), ValidationError);
    EXPECT_THROW(negative_state(ops, 0), ValidationError);
}

TEST(NegativeStates, Qutrit) {
    const auto ns = negative_states(PhasePointOperatorSet::standard(3));
    ASSERT_GE(ns.size(), 3u);
    EXPECT_NEAR(ns[0].eigenvalue, -1, 1e-12);
    EXPECT_NEAR(ns[0].negativity, oracle::frozen::qutrit_ns1_negativity, 1e-10);
    EXPECT_NEAR(ns[1].eigenvalue, (1 - std::sqrt(5.0)) / 2, 1e-12);
    EXPECT_NEAR(ns[1].negativity, oracle::frozen::qutrit_ns2_negativity, 1e-10);
    EXPECT_NEAR(ns[2].negativity, oracle::frozen::qutrit_ns3_negativity, 1e-10);
    for (std::size_t k = 1; k < ns.size(); ++k) EXPECT_LE(ns[k - 1].eigenvalue, ns[k].eigenvalue + 1e-12);
}

TEST(NegativeStates, TwoQubit) {
    const auto ns = negative_states(PhasePointOperatorSet::standard(4));
    ASSERT_GE(ns.size(), 3u);
    EXPECT_NEAR(ns[0].eigenvalue, -0.5, 1e-12);
    EXPECT_NEAR(ns[1].eigenvalue, -0.5, 1e-12);
    EXPECT_TRUE(ns[0].degenerate);
    EXPECT_NEAR(ns[0].negativity, oracle::frozen::twoqubit_ns1_negativity, 1e-10);
    EXPECT_NEAR(ns[2].negativity, oracle::frozen::twoqubit_ns3_negativity, 1e-10);
}

TEST(NegativeStates, StatesArePureAndDeterministic) {
    for (int d : {2, 3, 4}) {
        const auto a = negative_states(PhasePointOperatorSet::standard(d));
        const auto b = negative_states(PhasePointOperatorSet::standard(d));
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            EXPECT_NEAR(purity(a[k].state), 1, 1e-12);
            EXPECT_EQ(max_abs(a[k].state - b[k].state), 0.0);
        }
    }
}

TEST(Mana, QutritIdentityAndOrdering) {
    const auto ops = PhasePointOperatorSet::standard(3);
    for (int rank : {1, 2, 3}) {
        const DwfTable w = compute_dwf(negative_state(ops, rank).state, ops);
        EXPECT_NEAR(mana(w), std::log(w.entries.cwiseAbs().sum()), 1e-12);
    }
    const double m1 = mana(compute_dwf(negative_state(ops, 1).state, ops));
    const double m2 = mana(compute_dwf(negative_state(ops, 2).state, ops));
    EXPECT_NEAR(m1, oracle::frozen::qutrit_ns1_mana, 1e-12);
    EXPECT_GT(m1, m2);
}

TEST(Robustness, OnlyPrimeDimensions) {
    EXPECT_THROW(robustness(0.5, 4), ValidationError);
    EXPECT_THROW(robustness(-0.1, 2), ValidationError);
    EXPECT_NEAR(robustness(0, 3), 0, 1e-15);
}

TEST(PhaseGates, ProbeReportsEveryGate) {
    const auto ops = PhasePointOperatorSet::standard(3);
    const auto probes = probe_qutrit_phase_gates({negative_state(ops, 1).state, negative_state(ops, 2).state});
    EXPECT_EQ(probes.size(), 9u);
    // the identity gate maps a state to its conjugate exactly when the state is real
    const Matrix s1 = negative_state(ops, 1).state;
    EXPECT_EQ(probes[0].conjugates[0], is_conjugate(s1, s1));
}
