#pragma once

// The basic cone sigma6 = a1*a2*a3*b1*b2*b3 of the genus-3 Voronoi fan, its
// faces, GL(3,Z)-equivalence of faces, finite stabilizers and the character
// lattices of the torus strata they define.

#include "avor3/forms.hpp"
#include "avor3/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace avor3::fan {

using forms::Character;
using forms::GroupElement;
using forms::SymForm;
using forms::Vec3;

inline constexpr int kNumGenerators = 6;
inline constexpr int kDefaultBound = 2;

// Generator k of sigma6 in the order a1, a2, a3, b1, b2, b3.
SymForm standard_generator(int k);
std::string_view standard_name(int k);
std::optional<int> standard_index(const SymForm& q);

/// A simplicial cone spanned by linearly independent rank-1 forms v v^T.
class Cone {
 public:
  explicit Cone(std::vector<SymForm> generators);

  static Cone sigma6();
  static Cone zero();
  // Builds a face of sigma6 from "a1,a2,b3" (separators ',' or '*'; "0" is the zero cone).
  static Cone parse(std::string_view text);
  static Cone from_mask(unsigned mask);

  const std::vector<SymForm>& generators() const { return generators_; }
  const std::vector<Vec3>& vectors() const { return vectors_; }
  int dimension() const { return static_cast<int>(generators_.size()); }
  int span_rank() const { return span_rank_; }

  // Bitmask over the standard generators when every generator is one of them.
  std::optional<unsigned> face_mask() const;
  std::string name() const;

  // Order-independent key: generators sorted by (standard index, form).
  std::vector<std::pair<int, SymForm>> canonical_key() const;

  friend bool operator==(const Cone& a, const Cone& b) { return a.canonical_key() == b.canonical_key(); }

 private:
  std::vector<SymForm> generators_;
  std::vector<Vec3> vectors_;
  int span_rank_ = 0;
};

std::vector<Cone> faces(const Cone& c, int dim);
int cusp_rank(const Cone& c);

enum class Verdict {
  Found,
  DistinctByInvariants,    // dimension, cusp rank or span rank differ
  DistinctByLineSearch,    // spanning case: every candidate line map was tried
  NotFoundWithinBound,     // bounded brute force exhausted without a proof
};

std::string_view to_string(Verdict v);

struct Equivalence {
  Verdict verdict = Verdict::NotFoundWithinBound;
  std::optional<GroupElement> witness;  // act_on_form(witness, .) maps c1's generators onto c2's
  std::string detail;
};

Equivalence equivalent(const Cone& c1, const Cone& c2, int bound = kDefaultBound);

struct Orbit {
  Cone representative;
  std::vector<Cone> members;
  int cusp_rank = 0;
};

struct OrbitCensus {
  int dimension = 0;
  int bound = kDefaultBound;
  std::vector<Orbit> orbits;
};

// Partition of the dim-dimensional faces of `top` into GL(3,Z)-orbits.
// Throws InconclusiveAtBound when some face is neither matched nor separated.
OrbitCensus classify_orbits(const Cone& top, int dim, int bound = kDefaultBound);
OrbitCensus classify_orbits(int dim, int bound = kDefaultBound);

struct StabilizerGroup {
  std::vector<GroupElement> elements;  // sorted
  int order() const { return static_cast<int>(elements.size()); }
};

// Full setwise stabilizer of a cone whose vectors span R^3 (SpanDeficient otherwise).
StabilizerGroup stabilizer(const Cone& c);

struct StratumLattice {
  std::vector<int> dual_indices;     // l with T_l in the basis
  std::vector<Character> basis;      // integral basis of the annihilator of the cone
  StabilizerGroup stabilizer;
  std::vector<QMatrix> induced;      // action of stabilizer.elements[i] in `basis`
  std::vector<QMatrix> effective;    // distinct induced matrices, sorted
};

// Only faces of sigma6 are supported (NotAFace otherwise).
StratumLattice stratum_character_lattice(const Cone& c);

// Dual basis T_1..T_6 of (a1, a2, a3, b1, b2, b3) under the form/character pairing.
std::array<Character, 6> torus_coordinates();

}  // namespace avor3::fan
