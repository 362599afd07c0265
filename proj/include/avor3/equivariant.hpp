#pragma once

// Finite matrix groups over Q and the dimensions of their invariants on
// exterior powers, optionally twisted by a sign character.

#include "avor3/rational.hpp"

#include <map>
#include <vector>

namespace avor3::equi {

inline constexpr int kDefaultClosureCap = 1000;

struct LinearRep {
  int dim = 0;
  std::vector<QMatrix> generators;
  std::vector<int> signs;  // +-1 per generator; empty means the trivial character

  int sign_of(size_t generator) const { return signs.empty() ? 1 : signs.at(generator); }
};

struct Element {
  QMatrix matrix;
  int chi = 1;
};

// Breadth-first closure under right multiplication by the generators.
// Throws NotClosedWithinCap, or CharacterNotMultiplicative when one matrix is
// reached with both signs.
std::vector<Element> group_closure(const LinearRep& rep, int cap = kDefaultClosureCap);

// dim (Lambda^k V)^{G,chi} for k = 0..dim via
// (1/|G|) sum_g chi(g) det(I + t rho(g)).
std::vector<int> exterior_invariant_dims(const LinearRep& rep, int cap = kDefaultClosureCap);
std::vector<int> exterior_invariant_dims(const std::vector<Element>& group, int dim);

// Independent oracle: ranks of the averaged projectors on explicit Lambda^k V.
std::vector<int> fixed_subspace_dims_bruteforce(const LinearRep& rep, int cap = kDefaultClosureCap);
std::vector<int> fixed_subspace_dims_bruteforce(const std::vector<Element>& group, int dim);

// Coefficients e_k of det(I + t m), k = 0..n, by Faddeev-LeVerrier.
std::vector<Rational> det_one_plus_t(const QMatrix& m);

// Matrix of m acting on Lambda^k, basis = sorted k-subsets in lexicographic order.
QMatrix exterior_power(const QMatrix& m, int k);

// (1/|G|) sum_g chi(g) det(I - rho(g)); equals the alternating sum of the invariant dims.
Rational averaged_euler_characteristic(const std::vector<Element>& group);

// Element order -> number of elements.
std::map<int, int> order_histogram(const std::vector<QMatrix>& elements);

LinearRep rep_from_integer_matrices(int dim, const std::vector<QMatrix>& generators);

}  // namespace avor3::equi
