#pragma once

// The four strata of A3Vor (beta3, beta2 \ beta3, beta1 \ beta2, A3), the
// imported cohomological data they rest on, and the assembly of the Betti
// numbers from them.

#include "avor3/equivariant.hpp"
#include "avor3/fan.hpp"
#include "avor3/ssengine.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace avor3::strata {

using mhs::CohomologyTable;
using mhs::MhsVector;

inline constexpr const char* kRegistryEnv = "VORONOI_STRATA_REGISTRY";

struct CitedTable {
  CohomologyTable table;
  std::string citation;
  bool inferred_from_table = false;
};

struct CitedFiber {
  std::vector<ss::FiberItem> items;
  std::map<std::string, std::string> bases;  // local-system tag -> table name
  std::string citation;
};

struct CitedPage {
  ss::SSPage page;
  std::string citation;
};

struct Registry {
  std::string version;
  std::string path;
  std::map<std::string, CitedTable> tables;
  std::map<std::string, CitedFiber> fibers;
  std::map<std::string, ss::KnownDifferential> knowns;
  std::map<std::string, std::string> citations;
  std::map<std::string, CitedPage> reference_pages;

  // All lookups throw MissingTag.
  const CitedTable& table(const std::string& name) const;
  const CitedFiber& fiber(const std::string& name) const;
  const ss::KnownDifferential& known(const std::string& name) const;
  const CitedPage& reference_page(const std::string& name) const;
  std::string citation(const std::string& name) const;
  // tag -> base table for the named fiber
  std::map<std::string, CohomologyTable> fiber_bases(const std::string& name) const;
};

Registry registry_from_json(const mhs::ordered_json& j);
mhs::ordered_json to_json(const Registry& r);
Registry load_registry(const std::string& path);
// explicit path, else $VORONOI_STRATA_REGISTRY, else the path configured at build time
std::string resolve_registry_path(const std::optional<std::string>& explicit_path = std::nullopt);
Registry load_default_registry(const std::optional<std::string>& explicit_path = std::nullopt);

// Finite groups acting on H^1 of E x E = Q^4 (coordinates: first factor 0,1; second 2,3).
equi::LinearRep delta_group_rep();  // <swap, -1, [[1,1],[0,-1]]> (x) I_2
equi::LinearRep a11_rep();          // -1 on each factor and the factor swap
equi::LinearRep rho_u_group_rep();  // iota (sign -1), j1 = -1, j2 = swap

// Even-degree invariant dims d_{2k} of a finite quotient of E x E, crossed with
// the affine line: Tate(k+1)^{d_{2k}} in degree 2k+2.
CohomologyTable quotient_times_line(const std::vector<int>& invariant_dims);

struct Beta1Result {
  ss::SSPage e2;
  ss::Resolution resolution;
  CohomologyTable table;
};
Beta1Result beta1_minus_beta2(const Registry& reg);

struct Beta2Result {
  ss::SSPage e2;                       // Leray page of rho(U)
  ss::Resolution resolution;
  CohomologyTable rho_u;
  std::vector<int> delta_invariants;
  CohomologyTable rho_delta;
  CohomologyTable table;
};
Beta2Result beta2_minus_beta3(const Registry& reg);

// Base tables of the rho(U) fibration recomputed from invariants of <iota, j1, j2>.
std::map<std::string, CohomologyTable> rho_u_bases_from_invariants();

struct ConeContribution {
  fan::Cone representative;
  int dimension = 0;
  int stabilizer_order = 0;
  int effective_order = 0;
  std::vector<int> invariants;  // exterior invariant dims on the character lattice
  int degree = 0;
  MhsVector cls;
};

struct Beta3Result {
  std::vector<ConeContribution> contributions;  // by decreasing cone dimension
  ss::SSPage page;
  ss::Resolution resolution;
  CohomologyTable table;
};
Beta3Result beta3(int bound = fan::kDefaultBound);

struct BettiResult {
  ss::SSPage e1;
  ss::Resolution resolution;
  CohomologyTable table;
  std::vector<int> betti;  // degrees 0..12
};

inline constexpr int kA3VorDimension = 6;

// Column p of E1 holds H_c(beta3), H_c(beta2 \ beta3), H_c(beta1 \ beta2), H_c(A3).
ss::SSPage build_e1(const CohomologyTable& b3, const CohomologyTable& b2, const CohomologyTable& b1,
                    const CohomologyTable& a3);
// Throws MismatchWithTable when the rebuilt E1 differs from the stored page.
// Without purity an ambiguous resolution is returned with an empty table.
BettiResult avor3_betti(const Registry& reg, bool purity = true, int bound = fan::kDefaultBound);

int a11_invariant_check();

// "a3" | "beta1" | "beta2" | "beta3"
CohomologyTable stratum_table(const Registry& reg, const std::string& name, int bound = fan::kDefaultBound);

}  // namespace avor3::strata
