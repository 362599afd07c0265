#pragma once

// Graded multisets of Tate classes Q(-n) plus the two-dimensional atom F, an
// extension 0 -> Q -> F -> Q(-3) -> 0 (weights 0 and 6, weight 0 the sub-object).

#include <map>
#include <json.hpp>
#include <string>
#include <vector>

namespace avor3::mhs {

inline constexpr int kAtomSubWeight = 0;
inline constexpr int kAtomQuotientWeight = 6;

class MhsVector {
 public:
  MhsVector() = default;

  static MhsVector tate(int n, int mult = 1);
  static MhsVector atom_f(int count = 1);

  MhsVector& add_tate(int n, int mult = 1);
  MhsVector& add_f(int count = 1);

  // Tate(n) -> multiplicity, zero entries never stored.
  const std::map<int, int>& tate_classes() const { return tate_; }
  int tate_mult(int n) const;
  int f_count() const { return f_count_; }

  int dimension() const;
  bool empty() const { return tate_.empty() && f_count_ == 0; }
  bool is_tate_only() const { return f_count_ == 0; }

  // Sorted weight multiset: Tate(n) -> 2n, F -> {0, 6}.
  std::vector<int> weights() const;
  // weight -> multiplicity
  std::map<int, int> weight_counts() const;

  MhsVector operator+(const MhsVector& o) const;
  MhsVector& operator+=(const MhsVector& o);
  friend bool operator==(const MhsVector&, const MhsVector&) = default;

  // Removes `count` Tate(n) classes (throws InvalidInput if fewer are present).
  void remove_tate(int n, int count);
  // F loses its weight-0 sub-object (image of an incoming map) or its weight-6
  // quotient (outgoing map); the remainder is Tate(3) or Tate(0) respectively.
  void f_lose_sub(int count);
  void f_lose_quotient(int count);

 private:
  std::map<int, int> tate_;
  int f_count_ = 0;
};

// Tensor with Q(-n). Vectors containing F are rejected with UnsupportedTwist.
MhsVector tate_twist(const MhsVector& v, int n);
std::vector<int> weights(const MhsVector& v);

std::string to_string(const MhsVector& v);
std::string to_latex(const MhsVector& v);

struct CohomologyTable {
  std::string label;
  std::map<int, MhsVector> entries;  // degree -> class; empty entries are dropped

  const MhsVector& at(int degree) const;
  void add(int degree, const MhsVector& v);
  int total_dimension() const;
  int euler_characteristic() const;
  // b_k for k = 0..max_degree
  std::vector<int> betti(int max_degree) const;

  friend bool operator==(const CohomologyTable& a, const CohomologyTable& b) { return a.entries == b.entries; }
};

// H_c^k = (H^{2 dim - k})^* (x) Q(-dim). F is reflected onto itself in total
// degree 2 dim; other placements of F are rejected.
CohomologyTable poincare_dualize(const CohomologyTable& t, int dim);

CohomologyTable direct_sum(const CohomologyTable& a, const CohomologyTable& b);

// JSON: {"label": str, "entries": [{"degree": int, "classes": [{"tate": n, "mult": m} | {"atom": "F"}]}]}
using ordered_json = nlohmann::ordered_json;
ordered_json classes_to_json(const MhsVector& v);
MhsVector classes_from_json(const nlohmann::ordered_json& j);
ordered_json to_json(const CohomologyTable& t);
CohomologyTable table_from_json(const nlohmann::ordered_json& j);

std::string to_text(const CohomologyTable& t);
std::string to_latex(const CohomologyTable& t);

}  // namespace avor3::mhs
