#include "avor3/error.hpp"
#include "avor3/fan.hpp"
#include "avor3/kernels.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace avor3;
using namespace avor3::fan;
using forms::Mat3;

namespace {

int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::set<SymForm> generator_set(const Cone& c) { return {c.generators().begin(), c.generators().end()}; }

std::set<SymForm> image_set(const GroupElement& g, const Cone& c) {
  std::set<SymForm> out;
  for (const auto& q : c.generators()) out.insert(forms::act_on_form(g, q));
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(Fan, FaceCountsAreBinomial) {
  for (int d = 0; d <= 6; ++d) EXPECT_EQ(static_cast<int>(faces(Cone::sigma6(), d).size()), binomial(6, d));
  EXPECT_EQ(kind_of([] { faces(Cone::sigma6(), 7); }), ErrorKind::DimOutOfRange);
  EXPECT_EQ(kind_of([] { faces(Cone::sigma6(), -1); }), ErrorKind::DimOutOfRange);
}

TEST(Fan, ParseAndName) {
  const auto c = Cone::parse("b3*a1, a2");
  EXPECT_EQ(c.name(), "a1*a2*b3");
  EXPECT_EQ(c.dimension(), 3);
  EXPECT_EQ(Cone::parse("0").dimension(), 0);
  EXPECT_EQ(Cone::parse("a1 a2 a3 b1 b2 b3"), Cone::sigma6());
  EXPECT_THROW(Cone::parse("a4"), Error);
}

TEST(Fan, CuspRanks) {
  EXPECT_EQ(cusp_rank(Cone::parse("a1,a2,a3")), 3);
  EXPECT_EQ(cusp_rank(Cone::parse("a1,a2,b3")), 2);
  EXPECT_EQ(cusp_rank(Cone::parse("a1")), 1);
  EXPECT_EQ(cusp_rank(Cone::zero()), 0);
  EXPECT_EQ(cusp_rank(Cone::sigma6()), 3);
}

TEST(Fan, RejectsDependentGenerators) {
  EXPECT_THROW(Cone({forms::alpha(1), forms::alpha(1)}), Error);
}

TEST(Fan, EquivalenceWitnessMapsGenerators) {
  const auto c1 = Cone::parse("a1,a2,a3"), c2 = Cone::parse("a1,b2,b3");
  const auto eq = equivalent(c1, c2);
  ASSERT_EQ(eq.verdict, Verdict::Found);
  ASSERT_TRUE(eq.witness);
  EXPECT_EQ(image_set(*eq.witness, c1), generator_set(c2));
}

TEST(Fan, LocalAndGlobalAreDistinct) {
  const auto eq = equivalent(Cone::parse("a1,a2,a3"), Cone::parse("a1,a2,b3"));
  EXPECT_EQ(eq.verdict, Verdict::DistinctByInvariants);
}

TEST(Fan, FourConesSeparatedByLineSearch) {
  const auto eq = equivalent(Cone::parse("a1,a2,a3,b1"), Cone::parse("a1,a2,b1,b2"));
  EXPECT_EQ(eq.verdict, Verdict::DistinctByLineSearch);
}

TEST(Fan, BoundedSearchFindsLowRankWitness) {
  const auto eq = equivalent(Cone::parse("a1"), Cone::parse("b3"));
  ASSERT_EQ(eq.verdict, Verdict::Found);
  EXPECT_EQ(image_set(*eq.witness, Cone::parse("a1")), generator_set(Cone::parse("b3")));
  const auto eq2 = equivalent(Cone::parse("a1,a2"), Cone::parse("b1,b2"));
  ASSERT_EQ(eq2.verdict, Verdict::Found);
  EXPECT_EQ(image_set(*eq2.witness, Cone::parse("a1,a2")), generator_set(Cone::parse("b1,b2")));
}

TEST(Fan, BoundTooSmallIsInconclusive) {
  // e1 and e1 + 2 e2 are GL(3,Z)-equivalent, but no witness has entries in [-1, 1]
  const Cone far({forms::SymForm::outer({1, 2, 0})});
  EXPECT_EQ(equivalent(Cone::parse("a1"), far, 1).verdict, Verdict::NotFoundWithinBound);
  EXPECT_EQ(equivalent(Cone::parse("a1"), far, 2).verdict, Verdict::Found);
  const Cone top({forms::alpha(1), forms::SymForm::outer({1, 2, 0})});
  EXPECT_EQ(kind_of([&] { classify_orbits(top, 1, 1); }), ErrorKind::InconclusiveAtBound);
  EXPECT_EQ(classify_orbits(top, 1, 2).orbits.size(), 1u);
}

TEST(Fan, OrbitCensus) {
  const std::map<int, size_t> want{{3, 2}, {4, 2}, {5, 1}, {6, 1}};
  for (const auto& [d, n] : want) {
    const auto census = classify_orbits(d);
    EXPECT_EQ(census.orbits.size(), n) << "dim " << d;
    size_t members = 0;
    for (const auto& o : census.orbits) members += o.members.size();
    EXPECT_EQ(static_cast<int>(members), binomial(6, d));
  }
  std::multiset<int> ranks;
  for (const auto& o : classify_orbits(3).orbits) ranks.insert(o.cusp_rank);
  EXPECT_EQ(ranks, (std::multiset<int>{2, 3}));
}

TEST(FanProperty, LowDimensionalCountsStableInBound) {
  for (int d : {0, 1, 2}) EXPECT_EQ(classify_orbits(d, 2).orbits.size(), classify_orbits(d, 3).orbits.size());
}

TEST(FanProperty, OrbitMembersAreEquivalentToRepresentative) {
  for (int d = 1; d <= 6; ++d)
    for (const auto& o : classify_orbits(d).orbits)
      for (const auto& m : o.members) {
        const auto eq = equivalent(o.representative, m);
        ASSERT_EQ(eq.verdict, Verdict::Found) << o.representative.name() << " vs " << m.name();
        EXPECT_EQ(image_set(*eq.witness, o.representative), generator_set(m));
      }
}

TEST(Fan, StabilizerOrders) {
  EXPECT_EQ(stabilizer(Cone::parse("a1,a2,a3")).order(), 48);
  EXPECT_EQ(stabilizer(Cone::sigma6()).order(), 48);
  EXPECT_EQ(kind_of([] { stabilizer(Cone::parse("a1,a2")); }), ErrorKind::SpanDeficient);
}

TEST(FanProperty, StabilizerIsAGroupPreservingTheCone) {
  for (const char* name : {"a1,a2,a3", "a1,a2,a3,b1", "a1,a2,b1,b2", "a1,a2,a3,b1,b2", "a1,a2,a3,b1,b2,b3"}) {
    const auto c = Cone::parse(name);
    const auto stab = stabilizer(c);
    const std::set<GroupElement> elems(stab.elements.begin(), stab.elements.end());
    for (const auto& g : stab.elements) {
      EXPECT_EQ(image_set(g, c), generator_set(c)) << name;
      EXPECT_TRUE(elems.count(g.inverse())) << name;
      for (const auto& h : stab.elements) ASSERT_TRUE(elems.count(g * h)) << name;
    }
  }
}

TEST(Fan, TorusCoordinatesAreDualBasis) {
  const auto t = torus_coordinates();
  for (int k = 0; k < 6; ++k)
    for (int l = 0; l < 6; ++l) EXPECT_EQ(forms::pairing(standard_generator(k), t[l]), k == l ? 1 : 0);
  EXPECT_EQ(t[0].p, (std::array<std::int64_t, 6>{1, 0, 0, 0, 1, 1}));
  EXPECT_EQ(t[3].p, (std::array<std::int64_t, 6>{0, 0, 0, -1, 0, 0}));
}

TEST(Fan, LocalStratumLattice) {
  const auto lat = stratum_character_lattice(Cone::parse("a1,a2,a3"));
  EXPECT_EQ(lat.dual_indices, (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(lat.stabilizer.order(), 48);
  EXPECT_EQ(lat.effective.size(), 24u);
  EXPECT_EQ(lat.induced.size(), 48u);
}

TEST(Fan, ExactlyOneFourConeCarriesOrderTwelve) {
  int hits = 0;
  const std::map<int, int> want{{1, 1}, {2, 7}, {3, 2}, {6, 2}};
  for (const auto& o : classify_orbits(4).orbits) {
    const auto lat = stratum_character_lattice(o.representative);
    std::map<int, int> hist;
    for (const auto& m : lat.effective) ++hist[multiplicative_order(m)];
    hits += lat.effective.size() == 12 && hist == want;
  }
  EXPECT_EQ(hits, 1);
}

TEST(Fan, StratumLatticeNeedsAFace) {
  const Cone other({forms::SymForm::outer({1, 1, 1}), forms::alpha(1), forms::alpha(2)});
  EXPECT_EQ(kind_of([&] { stratum_character_lattice(other); }), ErrorKind::NotAFace);
}

TEST(Fan, ScalarAndVectorDispatchAgree) {
  const auto saved = kernels::active_isa();
  kernels::set_active_isa(kernels::Isa::Scalar);
  const auto scalar = equivalent(Cone::parse("a1,a2"), Cone::parse("b1,b2"));
  kernels::set_active_isa(saved);
  const auto dispatched = equivalent(Cone::parse("a1,a2"), Cone::parse("b1,b2"));
  EXPECT_EQ(scalar.verdict, dispatched.verdict);
  EXPECT_EQ(scalar.witness, dispatched.witness);
}
