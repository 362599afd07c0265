#pragma once

// Integral symmetric 3x3 forms, the GL(3,Z) action M -> g^{-T} M g^{-1},
// and the 6-dimensional character lattice paired with forms.

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace avor3::forms {

using Vec3 = std::array<std::int64_t, 3>;
using Mat3 = std::array<std::array<std::int64_t, 3>, 3>;

std::int64_t det(const Mat3& m);
Mat3 multiply(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& m);
Mat3 adjugate(const Mat3& m);
Vec3 apply(const Mat3& m, const Vec3& v);
Mat3 identity3();
Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

// Primitive representative of the line through v: divided by the content
// and sign-normalized so the first nonzero coordinate is positive.
Vec3 primitive(const Vec3& v);

/// Symmetric matrix A, read as the quadratic form x^T A x. Off-diagonal
/// entries are stored once.
struct SymForm {
  std::int64_t a11 = 0, a22 = 0, a33 = 0, a12 = 0, a13 = 0, a23 = 0;

  static SymForm from_matrix(const Mat3& m);
  static SymForm outer(const Vec3& v);  // v v^T

  Mat3 matrix() const;
  int rank() const;
  // Coordinates in the order (a11, a22, a33, a23, a13, a12), matching Character.
  std::array<std::int64_t, 6> coords() const;
  static SymForm from_coords(const std::array<std::int64_t, 6>& c);

  SymForm operator+(const SymForm& o) const;
  auto operator<=>(const SymForm&) const = default;
};

/// An element of GL(3,Z). Construction rejects matrices with det != +-1.
class GroupElement {
 public:
  explicit GroupElement(const Mat3& m);
  static GroupElement identity();

  const Mat3& matrix() const { return m_; }
  int det() const { return det_; }
  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& o) const;

  auto operator<=>(const GroupElement& o) const { return m_ <=> o.m_; }
  bool operator==(const GroupElement& o) const { return m_ == o.m_; }

 private:
  Mat3 m_;
  int det_ = 1;
};

/// Exponent vector of a torus monomial in t11, t22, t33, t23, t13, t12.
struct Character {
  std::array<std::int64_t, 6> p{};
  auto operator<=>(const Character&) const = default;
};

enum CharacterIndex { kT11 = 0, kT22 = 1, kT33 = 2, kT23 = 3, kT13 = 4, kT12 = 5 };

/// <A, f> = sum_i p_ii A_ii + sum_{i<j} p_ij A_ij
std::int64_t pairing(const SymForm& a, const Character& f);

SymForm act_on_form(const GroupElement& g, const SymForm& q);

/// Primitive v (first nonzero coordinate positive) with q a positive multiple
/// of v v^T. Throws NotRankOneVector otherwise.
Vec3 rank1_vector(const SymForm& q);

/// Contragredient action: <act_on_form(g, A), dual_action_on_character(g, f)> = <A, f>.
Character dual_action_on_character(const GroupElement& g, const Character& f);

// alpha_i = x_i^2, beta_i = (x_j - x_k)^2 for {i,j,k} = {1,2,3}; i is 1-based.
SymForm alpha(int i);
SymForm beta(int i);

std::string to_string(const SymForm& q);
std::string to_string(const Vec3& v);
std::string to_string(const Mat3& m);
std::string monomial_string(const Character& f);

}  // namespace avor3::forms
