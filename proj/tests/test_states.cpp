#include <gtest/gtest.h>

#include <random>

#include "dwf/states.hpp"
#include "oracles.hpp"

using namespace dwf;

TEST(Bloch, QubitRoundTrip) {
    const QubitBloch b{{0.3, -0.4, 0.5}};
    const Matrix rho = qubit_from_bloch(b);
    EXPECT_NEAR(rho.trace().real(), 1, 1e-15);
    const auto back = qubit_bloch(rho);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(back.a[k], b.a[k], 1e-14);
    EXPECT_THROW(qubit_from_bloch({{1, 1, 0}}), ValidationError);
}

TEST(Bloch, GellMannOrthonormality) {
    for (int j = 1; j <= 8; ++j)
        for (int k = 1; k <= 8; ++k)
            EXPECT_NEAR(trace_product(gell_mann(j), gell_mann(k)), j == k ? 2.0 : 0.0, 1e-14) << j << "," << k;
}

TEST(Bloch, RandomStatesRoundTrip) {
    std::mt19937_64 rng(3);
    for (System s : {System::Qubit, System::Qutrit, System::TwoQubit}) {
        for (int k = 0; k < 20; ++k) {
            const Matrix rho = oracle::random_density(dimension_of(s), rng);
            const auto v = flatten(bloch_from_density(rho));
            EXPECT_EQ(v.size(), parameter_names(s).size());
            EXPECT_LT(max_abs(state_from_parameters(s, v) - rho), 1e-12);
        }
    }
}

TEST(Bloch, ParameterCountChecked) {
    EXPECT_THROW(matrix_from_parameters(System::Qutrit, {0, 0, 0}), ValidationError);
    EXPECT_THROW(state_from_parameters(System::Qubit, {0, 0}), ValidationError);
}

TEST(Bloch, NonPositiveRejected) {
    QutritBloch b;
    b.n[2] = 2;
    EXPECT_THROW(qutrit_from_bloch(b), ValidationError);
}

TEST(Bell, StatesAndLabels) {
    EXPECT_EQ(parse_bell_label("phi+"), BellLabel::PhiPlus);
    EXPECT_EQ(parse_bell_label("psi_minus"), BellLabel::PsiMinus);
    EXPECT_THROW(parse_bell_label("chi"), ValidationError);
    const auto b = two_qubit_bloch(bell_state(BellLabel::PhiPlus));
    EXPECT_NEAR(b.t[0][0], 1, 1e-14);
    EXPECT_NEAR(b.t[1][1], -1, 1e-14);
    EXPECT_NEAR(b.t[2][2], 1, 1e-14);
}

TEST(Presets, CaptionStates) {
    const Preset q = preset("qubit_ns1");
    EXPECT_FALSE(q.adjusted);
    EXPECT_GT(q.raw_min_eigenvalue, 0);
    const Preset t = preset("qutrit_ns1");
    EXPECT_TRUE(t.adjusted);
    EXPECT_NEAR(t.raw_min_eigenvalue, -0.0553, 1e-4);
    EXPECT_GE(min_eigenvalue(t.state), -1e-12);
    EXPECT_NEAR(t.state.trace().real(), 1, 1e-12);
    EXPECT_GT(t.adjustment_distance, 0);
    const Preset w = preset("twoqubit_ns1");
    EXPECT_FALSE(w.adjusted);
    for (const auto& name : preset_names()) EXPECT_NO_THROW(preset(name)) << name;
    EXPECT_THROW(preset("qubit_ns2_exact"), ValidationError);
    EXPECT_THROW(preset("nonsense"), ValidationError);
}

TEST(Presets, ExactStatesArePure) {
    for (const char* name : {"qubit_ns1_exact", "qutrit_ns2_exact", "twoqubit_ns3_exact"}) {
        const Preset p = preset(name);
        EXPECT_NEAR(purity(p.state), 1, 1e-12);
        EXPECT_NE(p.provenance.find("eigenvalue"), std::string::npos);
    }
}

TEST(Systems, Parsing) {
    EXPECT_EQ(parse_system("two_qubit"), System::TwoQubit);
    EXPECT_EQ(system_of_dimension(3), System::Qutrit);
    EXPECT_THROW(parse_system("ququart"), ValidationError);
}
