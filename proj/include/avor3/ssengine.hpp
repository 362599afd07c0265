#pragma once

// Spectral-sequence pages with MhsVector entries. Differentials have bidegree
// (r, 1-r) and, being strict morphisms of mixed Hodge structures, cancel
// weight-matched pieces of source and target.

#include "avor3/mhs.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace avor3::ss {

using mhs::CohomologyTable;
using mhs::MhsVector;
using Bidegree = std::pair<int, int>;  // (p, q)

inline constexpr std::size_t kDefaultAssignmentCap = 1'000'000;

struct KnownDifferential {
  int r = 0, p = 0, q = 0;
  int rank = 0;
  std::string citation;
};

struct SSPage {
  std::string label;
  int r = 1;
  std::map<Bidegree, MhsVector> entries;  // empty entries are dropped
  std::vector<KnownDifferential> knowns;
  bool abutment_smooth_proper = false;   // enables the purity filter
  int abutment_dimension = 0;            // top cohomological degree; 0 = unchecked

  const MhsVector& at(int p, int q) const;
  void add(int p, int q, const MhsVector& v);
  int total_dimension() const;
  int euler_characteristic() const;
  bool same_entries(const SSPage& o) const { return entries == o.entries; }
};

// True iff source or target of d_r^{p,q} is zero or their weight multisets are disjoint.
bool forced_zero(const SSPage& page, int r, int p, int q);

enum class DiffStatus { ForcedZero, Known, Free };
std::string_view to_string(DiffStatus s);

struct DifferentialChoice {
  int r = 0, p = 0, q = 0;
  DiffStatus status = DiffStatus::Free;
  int rank = 0;
  std::map<int, int> rank_by_weight;
  std::string citation;
};

struct Candidate {
  std::vector<DifferentialChoice> choices;  // non-forced differentials, page then (p, q) order
  std::vector<SSPage> pages;                // E_start .. E_infinity
  const SSPage& einf() const { return pages.back(); }
};

struct Resolution {
  std::vector<Candidate> survivors;  // lexicographic in the chosen ranks
  std::size_t enumerated = 0;
  std::size_t rejected_by_purity = 0;
  std::size_t distinct_outcomes = 0;
  std::vector<DifferentialChoice> determined;  // same rank in every survivor
  std::vector<DifferentialChoice> forced;      // forced-zero differentials met on the way (first survivor)

  bool unique() const { return distinct_outcomes == 1; }
  // Throws NoConsistentAssignment or Ambiguous unless unique().
  const SSPage& einf() const;
};

Resolution resolve(const SSPage& page, std::size_t cap = kDefaultAssignmentCap);

// Degree k collects E^{p,q} with p + q = k.
CohomologyTable abutment(const SSPage& einf);

// Degreewise sum for a closed/open decomposition, after checking every
// connecting map H_c^{k-1}(closed) -> H_c^k(open) vanishes for weight reasons.
CohomologyTable gysin_split(const CohomologyTable& open_table, const CohomologyTable& closed_table);

struct FiberItem {
  int degree = 0;
  std::string tag;
  int twist = 0;
};

// E_2^{p,q} = sum over fiber items of degree q of Q(-twist) (x) base[tag]^p.
SSPage leray_assemble(const std::map<std::string, CohomologyTable>& base_tables, const std::vector<FiberItem>& fiber,
                      int page = 2);

using mhs::ordered_json;
ordered_json to_json(const SSPage& page);
SSPage page_from_json(const ordered_json& j);
ordered_json to_json(const Resolution& res);

std::string to_text(const SSPage& page);
std::string to_latex(const SSPage& page);
std::string to_text(const Resolution& res);

}  // namespace avor3::ss
