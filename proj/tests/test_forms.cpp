#include "avor3/error.hpp"
#include "avor3/forms.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace avor3;
using namespace avor3::forms;

namespace {

GroupElement random_element(std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(0, 2), coef(-3, 3), steps(0, 8);
  Mat3 m = identity3();
  for (int s = steps(rng); s > 0; --s) {
    Mat3 e = identity3();
    const int i = idx(rng), j = idx(rng);
    if (i == j)
      e[i][i] = -1;
    else
      e[i][j] = coef(rng);
    m = multiply(m, e);
  }
  return GroupElement(m);
}

SymForm random_form(std::mt19937& rng) {
  std::uniform_int_distribution<std::int64_t> d(-9, 9);
  return SymForm::from_coords({d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)});
}

// 2P for the symmetric matrix P with <A, f> = tr(A P).
Mat3 doubled_matrix(const Character& f) {
  Mat3 p{};
  p[0][0] = 2 * f.p[kT11];
  p[1][1] = 2 * f.p[kT22];
  p[2][2] = 2 * f.p[kT33];
  p[1][2] = p[2][1] = f.p[kT23];
  p[0][2] = p[2][0] = f.p[kT13];
  p[0][1] = p[1][0] = f.p[kT12];
  return p;
}

}  // namespace

TEST(Forms, AlphaBetaGenerators) {
  EXPECT_EQ(alpha(1).coords(), (std::array<std::int64_t, 6>{1, 0, 0, 0, 0, 0}));
  // (x2 - x3)^2 = x2^2 + x3^2 - 2 x2 x3; the stored entry a23 is -1
  EXPECT_EQ(beta(1).coords(), (std::array<std::int64_t, 6>{0, 1, 1, -1, 0, 0}));
  EXPECT_EQ(beta(2).coords(), (std::array<std::int64_t, 6>{1, 0, 1, 0, -1, 0}));
  EXPECT_EQ(beta(3).coords(), (std::array<std::int64_t, 6>{1, 1, 0, 0, 0, -1}));
  for (int i = 1; i <= 3; ++i) {
    EXPECT_EQ(alpha(i).rank(), 1);
    EXPECT_EQ(beta(i).rank(), 1);
  }
}

TEST(Forms, PairingOnDisplayedMonomial) {
  // T1 = t11 t13 t12 pairs to 1 with alpha1 and to 0 with beta1
  const Character t1{{1, 0, 0, 0, 1, 1}};
  EXPECT_EQ(pairing(alpha(1), t1), 1);
  EXPECT_EQ(pairing(beta(1), t1), 0);
  EXPECT_EQ(pairing(beta(2), t1), 0);
  EXPECT_EQ(pairing(beta(3), t1), 0);
}

TEST(Forms, Rank1Vector) {
  EXPECT_EQ(rank1_vector(beta(1)), (Vec3{0, 1, -1}));
  EXPECT_EQ(rank1_vector(SymForm::outer({-2, 0, 4})), (Vec3{1, 0, -2}));
  EXPECT_EQ(rank1_vector(SymForm::outer({0, -3, 0})), (Vec3{0, 1, 0}));
  try {
    rank1_vector(alpha(1) + alpha(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotRankOneVector);
  }
  EXPECT_THROW(rank1_vector(SymForm::from_coords({-1, 0, 0, 0, 0, 0})), Error);
}

TEST(Forms, GroupElementRejectsNonUnimodular) {
  Mat3 m = identity3();
  m[0][0] = 2;
  try {
    GroupElement g(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUnimodular);
  }
}

TEST(Forms, FromMatrixRejectsAsymmetric) {
  Mat3 m{};
  m[0][1] = 1;
  EXPECT_THROW(SymForm::from_matrix(m), Error);
}

TEST(Forms, CoordsRoundTrip) {
  std::mt19937 rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto q = random_form(rng);
    EXPECT_EQ(SymForm::from_coords(q.coords()), q);
    EXPECT_EQ(SymForm::from_matrix(q.matrix()), q);
  }
}

TEST(Forms, AdjugateIdentity) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<std::int64_t> d(-7, 7);
  for (int t = 0; t < 200; ++t) {
    Mat3 m;
    for (auto& r : m)
      for (auto& x : r) x = d(rng);
    const Mat3 prod = multiply(m, adjugate(m));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(prod[i][j], i == j ? det(m) : 0);
  }
}

TEST(Forms, ActionOnRankOneForms) {
  // g^{-T} (v v^T) g^{-1} = (g^{-T} v)(g^{-T} v)^T
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-4, 4);
  for (int t = 0; t < 200; ++t) {
    const auto g = random_element(rng);
    const Vec3 v{d(rng), d(rng), d(rng)};
    const Mat3 h = transpose(g.inverse().matrix());
    EXPECT_EQ(act_on_form(g, SymForm::outer(v)), SymForm::outer(apply(h, v)));
  }
}

TEST(FormsProperty, CompositionLaw) {
  std::mt19937 rng(4);
  for (int t = 0; t < 500; ++t) {
    const auto g = random_element(rng), h = random_element(rng);
    const auto q = random_form(rng);
    EXPECT_EQ(act_on_form(g, act_on_form(h, q)), act_on_form(g * h, q));
    EXPECT_EQ(act_on_form(GroupElement::identity(), q), q);
    EXPECT_EQ(act_on_form(g.inverse(), act_on_form(g, q)), q);
  }
}

TEST(FormsProperty, PairingInvariance) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::int64_t> d(-5, 5);
  for (int t = 0; t < 500; ++t) {
    const auto g = random_element(rng);
    const auto q = random_form(rng);
    Character f;
    for (auto& x : f.p) x = d(rng);
    EXPECT_EQ(pairing(act_on_form(g, q), dual_action_on_character(g, f)), pairing(q, f));
  }
}

TEST(FormsProperty, DualActionMatchesMatrixOracle) {
  // <A, f> = tr(A P) and A -> h A h^T with h = g^{-T} force P -> g P g^T.
  std::mt19937 rng(6);
  std::uniform_int_distribution<std::int64_t> d(-5, 5);
  for (int t = 0; t < 300; ++t) {
    const auto g = random_element(rng);
    Character f;
    for (auto& x : f.p) x = d(rng);
    const Mat3 want = multiply(multiply(g.matrix(), doubled_matrix(f)), transpose(g.matrix()));
    EXPECT_EQ(doubled_matrix(dual_action_on_character(g, f)), want);
  }
}

TEST(Forms, MonomialString) {
  EXPECT_EQ(monomial_string(Character{{1, 0, 0, 0, 1, 1}}), "t11*t13*t12");
  EXPECT_EQ(monomial_string(Character{{0, 0, 0, -1, 0, 0}}), "t23^-1");
}

TEST(Forms, PrimitiveNormalizesSignAndContent) {
  EXPECT_EQ(primitive({0, -4, 6}), (Vec3{0, 2, -3}));
  EXPECT_EQ(primitive({3, 0, 0}), (Vec3{1, 0, 0}));
}
