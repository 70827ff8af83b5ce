/**
 * @file test_consistency.cpp
 * @brief Sweep checks on small ranges, range validation and the mutation guard.
 */
#include "foliation/consistency.hpp"

#include <gtest/gtest.h>

using foliation::CheckReport;
using foliation::SweepRange;

namespace {

SweepRange small_range() {
  SweepRange r;
  r.n_max = 5;
  r.d_max = 4;
  r.k_max = 3;
  r.max_entry = 2;
  r.chow_n_max = 5;
  return r;
}

const CheckReport& by_name(const std::vector<CheckReport>& reports, const std::string& name) {
  for (const auto& r : reports)
    if (r.name == name) return r;
  throw std::runtime_error("missing report " + name);
}

}  // namespace

TEST(SweepRange, Validation) {
  EXPECT_NO_THROW(foliation::validate(foliation::default_range()));
  SweepRange r;
  r.n_min = 2;
  EXPECT_THROW(foliation::validate(r), std::invalid_argument);
  r = SweepRange{};
  r.k_max = 0;
  EXPECT_THROW(foliation::validate(r), std::invalid_argument);
  r = SweepRange{};
  r.d_min = 7;
  EXPECT_THROW(foliation::validate(r), std::invalid_argument);
  r = SweepRange{};
  r.max_entry = 0;
  EXPECT_THROW(foliation::validate(r), std::invalid_argument);
}

TEST(Suite, SmallRangePasses) {
  const auto reports = foliation::run_suite(small_range());
  ASSERT_EQ(reports.size(), foliation::check_names().size());
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed()) << r.name << ": " << (r.failures.empty() ? "" : r.failures.front().input);
    EXPECT_GT(r.instances, 0) << r.name;
  }
  EXPECT_EQ(foliation::suite_exit_code(reports), 0);
}

TEST(Suite, SelectsChecks) {
  const auto reports = foliation::run_suite(small_range(), {"whitney"});
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].name, "whitney");
  EXPECT_THROW(foliation::run_suite(small_range(), {"nope"}), std::invalid_argument);
}

TEST(Suite, MutationCaughtByChowChecksOnly) {
  auto range = small_range();
  range.chow.negate_beta = true;
  const auto reports = foliation::run_suite(range);
  EXPECT_FALSE(by_name(reports, "chow_relation").passed());
  EXPECT_FALSE(by_name(reports, "census").passed());
  EXPECT_TRUE(by_name(reports, "symmetric_identity").passed());
  EXPECT_TRUE(by_name(reports, "whitney").passed());
  EXPECT_TRUE(by_name(reports, "subvariety").passed());
  EXPECT_EQ(foliation::suite_exit_code(reports), 1);
}

TEST(Suite, FailureEchoesBothSides) {
  auto range = small_range();
  range.chow.negate_beta = true;
  const auto rep = foliation::check_census(range);
  ASSERT_FALSE(rep.failures.empty());
  const auto& f = rep.failures.front();
  EXPECT_NE(f.input.find("n="), std::string::npos);
  EXPECT_NE(f.lhs, f.rhs);
}

TEST(Suite, EllPolicies) {
  auto range = small_range();
  range.ell_policy = foliation::EllPolicy::KMinusOne;
  EXPECT_TRUE(foliation::check_census(range).passed());
  range.ell_policy = foliation::EllPolicy::Fixed;
  range.ell_fixed = 0;
  EXPECT_TRUE(foliation::check_census(range).passed());
}

TEST(Suite, CensusSpotValue) {
  // (n, d, k, ell) = (3, 2, 2, 1): 9 - 6 == 15 - 12 == 3
  const foliation::MultiDegree w{1, 1};
  EXPECT_EQ(foliation::count_blowup_total(3, 2, w, 1) - foliation::count_exceptional(3, 2, w, 1), 3);
  EXPECT_EQ(foliation::baum_bott(3, 2) + foliation::nu(3, 2, w, 1), 3);
}

TEST(Suite, SubvarietyNotesRecursionMismatches) {
  const auto rep = foliation::check_subvariety(small_range());
  EXPECT_TRUE(rep.passed());
  bool found = false;
  for (const auto& n : rep.notes) found = found || n.find("alpha recursion") != std::string::npos;
  EXPECT_TRUE(found);
}
