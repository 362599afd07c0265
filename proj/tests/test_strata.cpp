#include "avor3/error.hpp"
#include "avor3/strata.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

using namespace avor3;
using namespace avor3::strata;
using mhs::ordered_json;

namespace {

MhsVector T(int n, int m = 1) { return MhsVector::tate(n, m); }

CohomologyTable table(std::initializer_list<std::pair<int, MhsVector>> entries) {
  CohomologyTable t;
  for (const auto& [k, v] : entries) t.add(k, v);
  return t;
}

ordered_json registry_json() {
  std::ifstream in(resolve_registry_path());
  return ordered_json::parse(in);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidInput;
}

class Strata : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { reg_ = new Registry(load_default_registry()); }
  static void TearDownTestSuite() { delete reg_; }
  static const Registry& reg() { return *reg_; }

 private:
  static Registry* reg_;
};

Registry* Strata::reg_ = nullptr;

}  // namespace

TEST_F(Strata, EveryDatumIsCited) {
  for (const auto& [name, t] : reg().tables) EXPECT_FALSE(t.citation.empty()) << name;
  for (const auto& [name, f] : reg().fibers) EXPECT_FALSE(f.citation.empty()) << name;
  for (const auto& [name, k] : reg().knowns) EXPECT_FALSE(k.citation.empty()) << name;
  for (const auto& [name, p] : reg().reference_pages) EXPECT_FALSE(p.citation.empty()) << name;
  EXPECT_TRUE(reg().table("a2").inferred_from_table);
  EXPECT_FALSE(reg().table("a3").inferred_from_table);
  EXPECT_FALSE(reg().version.empty());
}

TEST_F(Strata, RegistryJsonRoundTrip) {
  const auto back = registry_from_json(to_json(reg()));
  EXPECT_EQ(back.tables.size(), reg().tables.size());
  EXPECT_EQ(back.table("a3").table, reg().table("a3").table);
  EXPECT_TRUE(back.reference_page("avor3_e1").page.same_entries(reg().reference_page("avor3_e1").page));
}

TEST_F(Strata, A3Data) {
  EXPECT_EQ(reg().table("a3").table,
            table({{6, MhsVector::atom_f()}, {8, T(4)}, {10, T(5)}, {12, T(6)}}));
}

TEST_F(Strata, Beta1MinusBeta2) {
  const auto r = beta1_minus_beta2(reg());
  EXPECT_TRUE(r.e2.same_entries(reg().reference_page("beta1_leray_e2").page));
  EXPECT_EQ(r.table, table({{4, T(2)}, {5, T(0)}, {6, T(3, 2)}, {8, T(4, 2)}, {10, T(5)}}));
  EXPECT_EQ(r.table.at(5), T(0));
}

TEST_F(Strata, Beta2MinusBeta3) {
  const auto r = beta2_minus_beta3(reg());
  EXPECT_TRUE(r.e2.same_entries(reg().reference_page("rho_u_leray_e2").page));
  EXPECT_EQ(r.rho_u, table({{6, T(3)}, {8, T(4)}}));
  EXPECT_EQ(r.delta_invariants, (std::vector<int>{1, 0, 1, 0, 1}));
  EXPECT_EQ(r.rho_delta, table({{2, T(1)}, {4, T(2)}, {6, T(3)}}));
  EXPECT_EQ(r.table, table({{2, T(1)}, {4, T(2)}, {6, T(3, 2)}, {8, T(4)}}));
}

TEST_F(Strata, RhoUBasesAgreeWithTwistedInvariants) {
  EXPECT_EQ(rho_u_bases_from_invariants(), reg().fiber_bases("cstar"));
}

TEST(StrataPipeline, Beta3WithAttribution) {
  const auto r = beta3();
  EXPECT_EQ(r.table, table({{0, T(0)}, {2, T(1)}, {4, T(2, 2)}, {6, T(3)}}));
  ASSERT_EQ(r.contributions.size(), 5u);
  std::map<int, int> degree_count;
  for (const auto& c : r.contributions) {
    ++degree_count[c.degree];
    EXPECT_EQ(c.invariants[0], 1);
    for (size_t k = 1; k < c.invariants.size(); ++k) EXPECT_EQ(c.invariants[k], 0);
  }
  EXPECT_EQ(degree_count, (std::map<int, int>{{0, 1}, {2, 1}, {4, 2}, {6, 1}}));
  EXPECT_EQ(r.contributions.back().representative, fan::Cone::parse("a1,a2,a3"));
  EXPECT_EQ(r.contributions.back().effective_order, 24);
  EXPECT_EQ(r.contributions.front().representative, fan::Cone::sigma6());
}

TEST_F(Strata, Avor3Betti) {
  const auto r = avor3_betti(reg());
  EXPECT_EQ(r.betti, (std::vector<int>{1, 0, 2, 0, 4, 0, 6, 0, 4, 0, 2, 0, 1}));
  EXPECT_EQ(r.e1.at(3, 3), MhsVector::atom_f());
  EXPECT_EQ(r.e1.at(2, 3), T(0));
  EXPECT_EQ(r.table.total_dimension(), 20);
  ASSERT_TRUE(r.resolution.unique());
  int nonzero = 0;
  for (const auto& d : r.resolution.determined)
    if (d.rank > 0) {
      ++nonzero;
      EXPECT_EQ(d.citation, reg().citation("purity"));
    }
  EXPECT_EQ(nonzero, 1);
  const auto off = avor3_betti(reg(), false);
  EXPECT_EQ(off.resolution.distinct_outcomes, 2u);
  EXPECT_TRUE(off.betti.empty());
}

TEST_F(Strata, PurityMakesEveryClassPure) {
  const auto r = avor3_betti(reg());
  for (const auto& [k, v] : r.table.entries)
    for (int w : v.weights()) EXPECT_EQ(w, k);
}

TEST_F(Strata, EulerCharacteristicIsAdditiveOverStrata) {
  const int sum = beta3().table.euler_characteristic() + beta2_minus_beta3(reg()).table.euler_characteristic() +
                  beta1_minus_beta2(reg()).table.euler_characteristic() +
                  reg().table("a3").table.euler_characteristic();
  EXPECT_EQ(sum, avor3_betti(reg()).table.euler_characteristic());
  EXPECT_EQ(sum, 20);
}

TEST_F(Strata, StrataAreEvenExceptOneWeightZeroClass) {
  for (const char* name : {"a3", "beta1", "beta2", "beta3"}) {
    const auto t = stratum_table(reg(), name);
    for (const auto& [k, v] : t.entries) {
      if (k % 2 == 0) continue;
      EXPECT_EQ(std::string(name), "beta1");
      EXPECT_EQ(k, 5);
      EXPECT_EQ(v, T(0));
    }
  }
  EXPECT_THROW(stratum_table(reg(), "beta4"), Error);
}

TEST(StrataRegistry, TamperedE1PageIsAMismatch) {
  auto j = registry_json();
  auto& entries = j["reference_pages"]["avor3_e1"]["page"]["entries"];
  entries.erase(entries.begin());
  const auto reg = registry_from_json(j);
  EXPECT_EQ(kind_of([&] { avor3_betti(reg); }), ErrorKind::MismatchWithTable);
}

TEST(StrataRegistry, MissingBaseTableIsReported) {
  auto j = registry_json();
  j["fibers"]["kummer"]["bases"].erase("V11");
  const auto reg = registry_from_json(j);
  EXPECT_EQ(kind_of([&] { beta1_minus_beta2(reg); }), ErrorKind::MissingTag);
  EXPECT_EQ(kind_of([&] { reg.table("nope"); }), ErrorKind::MissingTag);
}

TEST(StrataRegistry, UncitedDatumIsRejected) {
  auto j = registry_json();
  j["tables"]["a3"].erase("citation");
  EXPECT_THROW(registry_from_json(j), Error);
}

TEST(StrataRegistry, PathResolutionOrder) {
  EXPECT_EQ(resolve_registry_path(std::string("/explicit.json")), "/explicit.json");
  ::setenv(kRegistryEnv, "/from/env.json", 1);
  EXPECT_EQ(resolve_registry_path(), "/from/env.json");
  EXPECT_EQ(resolve_registry_path(std::string("/explicit.json")), "/explicit.json");
  ::unsetenv(kRegistryEnv);
  EXPECT_NE(resolve_registry_path(), "/from/env.json");
  EXPECT_THROW(load_registry("/nonexistent/registry.json"), Error);
}

TEST(StrataGroups, QuotientTimesLine) {
  EXPECT_EQ(quotient_times_line({1, 0, 1, 0, 1}), table({{2, T(1)}, {4, T(2)}, {6, T(3)}}));
  EXPECT_EQ(quotient_times_line({0, 0, 1, 0, 0}), table({{4, T(2)}}));
  EXPECT_THROW(quotient_times_line({0, 1}), Error);
}

TEST(StrataGroups, A11InvariantCheck) { EXPECT_EQ(a11_invariant_check(), 1); }
