#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dwf/net_search.hpp"
#include "oracles.hpp"

using namespace dwf;

TEST(TracelessBasis, Orthonormal) {
    for (int d : {2, 3, 4}) {
        const auto basis = traceless_hermitian_basis(d);
        ASSERT_EQ(int(basis.size()), d * d - 1);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            EXPECT_NEAR(std::abs(basis[j].trace()), 0, 1e-15);
            for (std::size_t k = 0; k < basis.size(); ++k)
                EXPECT_NEAR(trace_product(basis[j], basis[k]), j == k ? 1.0 : 0.0, 1e-14);
        }
    }
}

TEST(ClosedFormTargets, ReproduceTheFormOnRandomInput) {
    std::mt19937_64 rng(8);
    for (int d : {2, 3, 4}) {
        const ClosedForm f = closed_form_for(d);
        const auto targets = closed_form_targets(f, d);
        for (int k = 0; k < 10; ++k) {
            const Matrix rho = oracle::random_density(d, rng);
            const DwfTable w = f(rho);
            for (int a = 0; a < d * d; ++a) EXPECT_NEAR(trace_product(targets[a], rho) / d, w.entries(a / d, a % d), 1e-12);
        }
    }
}

TEST(NetSearch, QubitFormMatchesNoNet) {
    const auto r = find_matching_net(closed_form_for(2), PhaseSpace(2), mub_set(2));
    EXPECT_FALSE(r.matched);
    EXPECT_NEAR(r.residual, std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(r.predicted_residual, r.residual, 1e-9);
    EXPECT_EQ(insensitive_parameters(closed_form_for(2), System::Qubit), std::vector<std::string>{"a1"});
}

TEST(NetSearch, QutritAndTwoQubitMatch) {
    const auto r3 = find_matching_net(closed_form_for(3), PhaseSpace(3), mub_set(3));
    EXPECT_TRUE(r3.matched);
    EXPECT_LT(r3.residual, 1e-9);
    EXPECT_EQ(r3.assignment.striation_to_basis, oracle::frozen::d3_striation_to_basis);
    const auto r4 = find_matching_net(closed_form_for(4), PhaseSpace(4), mub_set(4));
    EXPECT_TRUE(r4.matched);
    EXPECT_LT(r4.residual, 1e-9);
    EXPECT_NEAR(r4.predicted_residual, r4.residual, 1e-9);
    EXPECT_GT(r4.default_residual, 1e-3);
}

TEST(NetSearch, PrintedTwoQubitTableAdmitsNoExactNet) {
    const auto r = find_matching_net(closed_form_for(4), PhaseSpace(4), mub_set_printed(4));
    EXPECT_FALSE(r.matched);
}

// Plain enumeration of all 4!·(3!)^4 qutrit nets.
TEST(NetSearch, QutritAgreesWithBruteForce) {
    const PhaseSpace space(3);
    const MubSet mubs = mub_set(3);
    const auto targets = closed_form_targets(closed_form_for(3), 3);
    std::vector<std::vector<int>> perms;
    std::vector<int> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<int> sigma{0, 1, 2, 3};
    double best = 1e300;
    NetAssignment best_net;
    long long count = 0;
    do {
        for (int code = 0; code < 1296; ++code) {
            NetAssignment a;
            a.striation_to_basis = sigma;
            int c = code;
            for (int s = 0; s < 4; ++s, c /= 6) a.line_to_vector.push_back(perms[c % 6]);
            const double r = net_residual(PhasePointOperatorSet(QuantumNet::build(space, mubs, a)), targets);
            ++count;
            if (r < best - 1e-12) {
                best = r;
                best_net = a;
            }
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    EXPECT_EQ(count, 24 * 1296);
    const auto fast = find_matching_net(closed_form_for(3), space, mubs);
    EXPECT_NEAR(fast.residual, best, 1e-9);
    EXPECT_EQ(fast.assignment, best_net);
}

// The qubit RTN closed form uses its own sign conventions, so at Λ = 1 it
// disagrees with the standard-net table on generic states.
TEST(NetSearch, QubitRtnFormDiffersFromStandardNet) {
    const auto ops = PhasePointOperatorSet::standard(2);
    std::mt19937_64 rng(10);
    double worst = 0;
    for (int k = 0; k < 10; ++k) {
        const Matrix rho = oracle::random_density(2, rng);
        const DwfTable printed = closed_form_qubit_rtn_dwf(qubit_bloch(rho), 1.0);
        const DwfTable built = compute_dwf(rho, ops);
        EXPECT_NEAR(printed.sum(), 1.0, 1e-12);
        worst = std::max(worst, (printed.entries - built.entries).cwiseAbs().maxCoeff());
    }
    EXPECT_GT(worst, 0.1);
}
