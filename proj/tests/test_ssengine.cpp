#include "avor3/error.hpp"
#include "avor3/ssengine.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace avor3;
using namespace avor3::ss;
using mhs::CohomologyTable;
using mhs::MhsVector;

namespace {

MhsVector T(int n, int m = 1) { return MhsVector::tate(n, m); }
MhsVector F() { return MhsVector::atom_f(); }

SSPage page(int r, std::initializer_list<std::pair<Bidegree, MhsVector>> entries) {
  SSPage p;
  p.r = r;
  for (const auto& [pq, v] : entries) p.add(pq.first, pq.second, v);
  return p;
}

CohomologyTable table(std::initializer_list<std::pair<int, MhsVector>> entries) {
  CohomologyTable t;
  for (const auto& [k, v] : entries) t.add(k, v);
  return t;
}

SSPage stratification_e1() {
  return page(1, {{{0, 0}, T(0)},    {{0, 2}, T(1)}, {{0, 4}, T(2, 2)}, {{0, 6}, T(3)},    {{1, 1}, T(1)},
                  {{1, 3}, T(2)},    {{1, 5}, T(3, 2)}, {{1, 7}, T(4)}, {{2, 2}, T(2)},    {{2, 3}, T(0)},
                  {{2, 4}, T(3, 2)}, {{2, 6}, T(4, 2)}, {{2, 8}, T(5)}, {{3, 3}, F()},     {{3, 5}, T(4)},
                  {{3, 7}, T(5)},    {{3, 9}, T(6)}});
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidInput;
}

bool sub_multiset(std::vector<int> small, std::vector<int> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

TEST(SsEngine, ForcedZeroExamples) {
  EXPECT_TRUE(forced_zero(page(1, {{{0, 0}, T(2)}, {{1, 0}, T(0)}}), 1, 0, 0));
  EXPECT_FALSE(forced_zero(page(1, {{{0, 0}, T(0)}, {{1, 0}, F()}}), 1, 0, 0));
  EXPECT_TRUE(forced_zero(page(1, {{{1, 0}, F()}}), 1, 0, 0));
}

TEST(SsEngine, StratificationE1WithPurityIsUnique) {
  auto p = stratification_e1();
  p.abutment_smooth_proper = true;
  p.abutment_dimension = 12;
  const auto res = resolve(p);
  ASSERT_TRUE(res.unique());
  EXPECT_EQ(res.survivors.size(), 1u);
  EXPECT_EQ(res.rejected_by_purity, 1u);
  const auto& e = res.einf();
  EXPECT_TRUE(e.at(2, 3).empty());
  EXPECT_EQ(e.at(3, 3), T(3));
  std::vector<DifferentialChoice> nonzero;
  for (const auto& d : res.determined)
    if (d.rank > 0) nonzero.push_back(d);
  ASSERT_EQ(nonzero.size(), 1u);
  EXPECT_EQ(std::tie(nonzero[0].r, nonzero[0].p, nonzero[0].q, nonzero[0].rank), std::make_tuple(1, 2, 3, 1));
  EXPECT_EQ(nonzero[0].rank_by_weight, (std::map<int, int>{{0, 1}}));
  EXPECT_EQ(abutment(e).betti(12), (std::vector<int>{1, 0, 2, 0, 4, 0, 6, 0, 4, 0, 2, 0, 1}));
}

TEST(SsEngine, StratificationE1WithoutPurityIsAmbiguous) {
  const auto res = resolve(stratification_e1());
  EXPECT_EQ(res.survivors.size(), 2u);
  EXPECT_EQ(res.distinct_outcomes, 2u);
  EXPECT_EQ(res.survivors[0].choices.size(), 1u);
  EXPECT_EQ(res.survivors[0].choices[0].rank, 0);
  EXPECT_EQ(res.survivors[1].choices[0].rank, 1);
  EXPECT_EQ(kind_of([&] { res.einf(); }), ErrorKind::Ambiguous);
}

TEST(SsEngine, KnownDifferentialResolvesRhoU) {
  auto p = page(2, {{{4, 1}, T(2)}, {{2, 2}, T(2)}, {{4, 2}, T(3)}, {{6, 2}, T(4)}});
  p.knowns.push_back({2, 2, 2, 1, "cited"});
  const auto res = resolve(p);
  ASSERT_TRUE(res.unique());
  EXPECT_EQ(abutment(res.einf()), table({{6, T(3)}, {8, T(4)}}));
  ASSERT_EQ(res.determined.size(), 1u);
  EXPECT_EQ(res.determined[0].status, DiffStatus::Known);
  EXPECT_EQ(res.determined[0].citation, "cited");

  // without the cited rank both outcomes survive
  p.knowns.clear();
  EXPECT_EQ(resolve(p).distinct_outcomes, 2u);
}

TEST(SsEngine, ContradictoryKnownIsInconsistent) {
  auto p = page(2, {{{2, 2}, T(2)}, {{4, 1}, T(2)}});
  p.knowns.push_back({2, 2, 2, 2, "too large"});
  const auto res = resolve(p);
  EXPECT_TRUE(res.survivors.empty());
  EXPECT_EQ(kind_of([&] { res.einf(); }), ErrorKind::NoConsistentAssignment);
  auto q = page(2, {{{2, 2}, T(2)}, {{4, 1}, T(1)}});
  q.knowns.push_back({2, 2, 2, 1, "weights disagree"});
  EXPECT_TRUE(resolve(q).survivors.empty());
}

TEST(SsEngine, AssignmentCap) {
  EXPECT_EQ(kind_of([] { resolve(stratification_e1(), 1); }), ErrorKind::AssignmentCapExceeded);
}

TEST(SsEngine, AbutmentOfSingleEntry) {
  EXPECT_EQ(abutment(page(1, {{{2, 3}, T(1)}})), table({{5, T(1)}}));
}

TEST(SsEngine, EmptyPage) {
  const auto res = resolve(SSPage{});
  ASSERT_TRUE(res.unique());
  EXPECT_TRUE(res.einf().entries.empty());
}

TEST(SsEngine, GysinSplit) {
  const auto open = table({{6, T(3)}, {8, T(4)}});
  const auto closed = table({{2, T(1)}, {4, T(2)}, {6, T(3)}});
  EXPECT_EQ(gysin_split(open, closed), table({{2, T(1)}, {4, T(2)}, {6, T(3, 2)}, {8, T(4)}}));
  EXPECT_EQ(gysin_split(CohomologyTable{}, closed), closed);
  EXPECT_EQ(kind_of([] { gysin_split(table({{3, T(1)}}), table({{2, T(1)}})); }), ErrorKind::SplitNotJustified);
  // disjoint weights are enough even in adjacent degrees
  EXPECT_NO_THROW(gysin_split(table({{3, T(1)}}), table({{2, T(2)}})));
}

TEST(SsEngine, LerayAssemble) {
  const auto base = table({{4, T(2)}, {6, T(3)}});
  const auto p = leray_assemble({{"trivial", base}}, {{0, "trivial", 0}});
  EXPECT_EQ(p.r, 2);
  EXPECT_TRUE(p.same_entries(page(2, {{{4, 0}, T(2)}, {{6, 0}, T(3)}})));
  EXPECT_EQ(kind_of([&] { leray_assemble({{"trivial", base}}, {{0, "V11", 0}}); }), ErrorKind::MissingTag);

  const auto kummer = leray_assemble({{"trivial", base}, {"V11", table({{3, T(0)}})}},
                                     {{0, "trivial", 0}, {2, "trivial", 1}, {2, "V11", 0}, {4, "trivial", 2}});
  EXPECT_TRUE(kummer.same_entries(page(2, {{{4, 0}, T(2)},
                                           {{6, 0}, T(3)},
                                           {{3, 2}, T(0)},
                                           {{4, 2}, T(3)},
                                           {{6, 2}, T(4)},
                                           {{4, 4}, T(4)},
                                           {{6, 4}, T(5)}})));
  const auto res = resolve(kummer);
  ASSERT_TRUE(res.unique());
  EXPECT_TRUE(res.einf().same_entries(kummer));
}

TEST(SsEngine, JsonRoundTrip) {
  auto p = stratification_e1();
  p.label = "t1";
  p.knowns.push_back({1, 2, 3, 1, "c"});
  p.abutment_smooth_proper = true;
  p.abutment_dimension = 12;
  const auto back = page_from_json(to_json(p));
  EXPECT_TRUE(back.same_entries(p));
  EXPECT_EQ(back.knowns.size(), 1u);
  EXPECT_EQ(back.knowns[0].citation, "c");
  EXPECT_TRUE(back.abutment_smooth_proper);
  EXPECT_EQ(back.abutment_dimension, 12);
  EXPECT_THROW(page_from_json(mhs::ordered_json::parse(R"({"entries":[{"p":0}]})")), Error);
}

TEST(SsEngine, RenderingHasRowsDescending) {
  const auto text = to_text(page(1, {{{0, 0}, T(0)}, {{1, 2}, T(1)}}));
  EXPECT_LT(text.find("2 |"), text.find("0 |"));
  const auto latex = to_latex(page(1, {{{0, 0}, T(0)}}));
  EXPECT_NE(latex.find("\\begin{array}"), std::string::npos);
}

TEST(SsEngineProperty, EvenTotalDegreeDegeneratesImmediately) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> pd(0, 4), qd(0, 6), nd(0, 3);
  for (int t = 0; t < 50; ++t) {
    SSPage p;
    for (int i = 0; i < 6; ++i) {
      int a = pd(rng), b = qd(rng);
      if ((a + b) % 2) ++b;
      p.add(a, b, T(nd(rng)));
    }
    const auto res = resolve(p);
    ASSERT_TRUE(res.unique());
    EXPECT_TRUE(res.einf().same_entries(p));
    for (const auto& d : res.determined) EXPECT_EQ(d.rank, 0);
  }
}

TEST(SsEngineProperty, RandomPagesRespectInvariants) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> pd(0, 3), qd(0, 3), nd(0, 2), md(1, 2);
  std::bernoulli_distribution atom(0.15);
  for (int t = 0; t < 150; ++t) {
    SSPage p;
    for (int i = 0; i < 5; ++i) {
      if (atom(rng))
        p.add(pd(rng), qd(rng), F());
      else
        p.add(pd(rng), qd(rng), T(nd(rng), md(rng)));
    }
    const auto res = resolve(p);
    ASSERT_FALSE(res.survivors.empty());
    for (const auto& c : res.survivors) {
      for (size_t i = 1; i < c.pages.size(); ++i) {
        const auto& prev = c.pages[i - 1];
        const auto& next = c.pages[i];
        EXPECT_LE(next.total_dimension(), prev.total_dimension());
        EXPECT_EQ(next.euler_characteristic(), prev.euler_characteristic());
        bool all_zero = true;
        for (const auto& d : c.choices)
          if (d.r == prev.r && d.rank > 0) all_zero = false;
        EXPECT_EQ(next.total_dimension() == prev.total_dimension(), all_zero);
        for (const auto& [pq, v] : next.entries) {
          // F may shed a piece and leave a Tate class whose weight it already had
          EXPECT_TRUE(sub_multiset(v.weights(), prev.at(pq.first, pq.second).weights()));
        }
      }
      const auto ab = abutment(c.einf());
      EXPECT_EQ(ab.total_dimension(), c.einf().total_dimension());
      EXPECT_EQ(ab.euler_characteristic(), c.pages.front().euler_characteristic());
      std::map<int, int> by_degree;
      for (const auto& [pq, v] : c.einf().entries) by_degree[pq.first + pq.second] += v.dimension();
      for (const auto& [k, v] : ab.entries) EXPECT_EQ(v.dimension(), by_degree[k]);
    }
  }
}
