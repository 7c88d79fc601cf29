#include <gtest/gtest.h>

#include "dwf/verify.hpp"

using namespace dwf;

TEST(Verify, CleanBuildHasNoFailures) {
    const VerifyReport r = verify_all();
    for (const auto& i : r.items) EXPECT_NE(i.status, Status::Fail) << i.name << ": " << i.detail;
    EXPECT_TRUE(r.ok());
    const auto* counts = r.find("geometry.striation_counts");
    ASSERT_NE(counts, nullptr);
    EXPECT_NE(counts->detail.find("3+4+5"), std::string::npos);
}

TEST(Verify, KnownDiscrepanciesAreWarnings) {
    const VerifyReport r = verify_all();
    for (const char* name : {"closed_form.qubit", "correlation.printed_formulas", "mub.d4.table_substitution",
                             "net_search.d3", "net_search.d4"}) {
        const auto* item = r.find(name);
        ASSERT_NE(item, nullptr) << name;
        EXPECT_EQ(item->status, Status::Warn) << name;
    }
    EXPECT_NE(r.find("closed_form.qubit")->detail.find("1.414214"), std::string::npos);
    EXPECT_NE(r.find("closed_form.qubit")->detail.find("a1"), std::string::npos);
    EXPECT_NE(r.find("correlation.printed_formulas")->detail.find("-0.4400"), std::string::npos);
}

TEST(Verify, CorruptedMubTableFails) {
    VerifyOptions opt;
    MubSet bad = mub_set(3);
    bad.bases[1][0](1) *= -1.0;
    opt.mub_override.emplace(3, bad);
    opt.random_states = 5;
    const VerifyReport r = verify_all(opt);
    EXPECT_FALSE(r.ok());
    const auto* item = r.find("mub.d3");
    ASSERT_NE(item, nullptr);
    EXPECT_EQ(item->status, Status::Fail);
    EXPECT_NE(item->detail.find("basis 2"), std::string::npos) << item->detail;
}
