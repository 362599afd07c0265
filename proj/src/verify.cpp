#include "avor3/verify.hpp"

#include "avor3/error.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <random>
#include <sstream>

namespace avor3::verify {

namespace {

using mhs::CohomologyTable;
using mhs::MhsVector;

// Collects failed expectations; the check passes when none were recorded.
struct Tally {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }

  CheckResult finish(int id, std::string name) const {
    CheckResult r{id, std::move(name), failures.empty(), {}};
    const auto& lines = failures.empty() ? notes : failures;
    for (size_t i = 0; i < lines.size(); ++i) r.detail += (i ? "; " : "") + lines[i];
    return r;
  }
};

template <typename T>
std::string join(const std::vector<T>& v, const char* sep = " ") {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

std::string histogram_string(const std::map<int, int>& h) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : h) {
    os << (first ? "" : ", ") << k << ":" << v;
    first = false;
  }
  os << "}";
  return os.str();
}

CohomologyTable make_table(std::initializer_list<std::pair<int, MhsVector>> entries) {
  CohomologyTable t;
  for (const auto& [k, v] : entries) t.add(k, v);
  return t;
}

MhsVector T(int n, int m = 1) { return MhsVector::tate(n, m); }

std::string summary(const CohomologyTable& t) {
  std::string s = "{";
  for (const auto& [k, v] : t.entries) s += (s.size() > 1 ? ", " : "") + std::to_string(k) + ":" + mhs::to_string(v);
  return s + "}";
}

bool table_eq(Tally& t, const CohomologyTable& got, const CohomologyTable& want, const std::string& what) {
  const bool ok = got == want;
  t.expect(ok, what + " = " + summary(got) + ", expected " + summary(want));
  return ok;
}

// Euler characteristic is preserved page to page and by the abutment.
bool euler_conserved(const ss::Resolution& res) {
  for (const auto& c : res.survivors) {
    const int chi = c.pages.front().euler_characteristic();
    for (const auto& p : c.pages)
      if (p.euler_characteristic() != chi) return false;
    if (ss::abutment(c.einf()).euler_characteristic() != chi) return false;
  }
  return true;
}

QMatrix random_signed_permutation(std::mt19937& rng, int n) {
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  QMatrix m(n, n);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < n; ++i) m(i, perm[static_cast<size_t>(i)]) = coin(rng) ? 1 : -1;
  return m;
}

forms::GroupElement random_unimodular(std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(0, 2), coef(-2, 2), steps(1, 6);
  forms::Mat3 m = forms::identity3();
  const int n = steps(rng);
  for (int s = 0; s < n; ++s) {
    forms::Mat3 e = forms::identity3();
    int i = idx(rng), j = idx(rng);
    if (i == j) {
      e[static_cast<size_t>(i)][static_cast<size_t>(i)] = -1;
    } else {
      e[static_cast<size_t>(i)][static_cast<size_t>(j)] = coef(rng);
    }
    m = forms::multiply(m, e);
  }
  return forms::GroupElement(m);
}

forms::SymForm random_form(std::mt19937& rng) {
  std::uniform_int_distribution<std::int64_t> d(-6, 6);
  std::array<std::int64_t, 6> c{};
  for (auto& x : c) x = d(rng);
  return forms::SymForm::from_coords(c);
}

CheckResult check_betti(const strata::Registry& reg, const Options& opt) {
  Tally t;
  const auto res = strata::avor3_betti(reg, true, opt.bound);
  const std::vector<int> want{1, 0, 2, 0, 4, 0, 6, 0, 4, 0, 2, 0, 1};
  t.expect(res.betti == want, "betti numbers " + join(res.betti));
  t.note("b = " + join(res.betti));
  return t.finish(1, "Betti numbers of A3Vor");
}

CheckResult check_e1_resolution(const strata::Registry& reg, const Options& opt) {
  Tally t;
  const auto on = strata::avor3_betti(reg, true, opt.bound);
  t.expect(on.e1.same_entries(reg.reference_page("avor3_e1").page), "E1 differs from stored page");
  t.expect(on.resolution.survivors.size() == 1 && on.resolution.unique(),
           "purity on: " + std::to_string(on.resolution.survivors.size()) + " surviving assignments");
  std::vector<ss::DifferentialChoice> nonzero;
  for (const auto& d : on.resolution.determined)
    if (d.status == ss::DiffStatus::Free && d.rank > 0) nonzero.push_back(d);
  const bool d123 = nonzero.size() == 1 && nonzero[0].r == 1 && nonzero[0].p == 2 && nonzero[0].q == 3 &&
                    nonzero[0].rank == 1;
  t.expect(d123, "expected exactly one forced nonzero differential d1^{2,3} of rank 1");
  const auto off = strata::avor3_betti(reg, false, opt.bound);
  t.expect(off.resolution.survivors.size() == 2 && off.resolution.distinct_outcomes == 2,
           "purity off: " + std::to_string(off.resolution.survivors.size()) + " candidates");
  t.note("E1 matches; purity on: d1^{2,3} rank 1 unique; purity off: " +
         std::to_string(off.resolution.survivors.size()) + " candidates");
  return t.finish(2, "E1 page and purity resolution");
}

CheckResult check_census(const strata::Registry&, const Options& opt) {
  Tally t;
  std::vector<std::string> summary;
  const std::map<int, size_t> want{{3, 2}, {4, 2}, {5, 1}, {6, 1}};
  for (const auto& [dim, count] : want) {
    const auto census = fan::classify_orbits(dim, opt.bound);
    t.expect(census.orbits.size() == count, "dim " + std::to_string(dim) + ": " +
                                                std::to_string(census.orbits.size()) + " orbits");
    summary.push_back("dim " + std::to_string(dim) + ": " + std::to_string(census.orbits.size()));
    if (dim == 3) {
      std::multiset<int> ranks;
      for (const auto& o : census.orbits) ranks.insert(o.cusp_rank);
      t.expect(ranks == std::multiset<int>{2, 3}, "dim 3 cusp ranks");
    }
  }
  for (int dim : {1, 2}) {
    const auto a = fan::classify_orbits(dim, 2).orbits.size();
    const auto b = fan::classify_orbits(dim, 3).orbits.size();
    t.expect(a == b, "dim " + std::to_string(dim) + " unstable in bound: " + std::to_string(a) + " vs " +
                         std::to_string(b));
    summary.push_back("dim " + std::to_string(dim) + ": " + std::to_string(a) + " (bounds 2,3)");
  }
  t.note(join(summary, ", "));
  return t.finish(3, "GL(3,Z)-orbit census of faces");
}

CheckResult check_local_stabilizer(const strata::Registry&, const Options&) {
  Tally t;
  const auto lat = fan::stratum_character_lattice(fan::Cone::parse("a1,a2,a3"));
  int diagonal = 0;
  for (const auto& m : lat.effective) {
    bool diag = true;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (i != j ? m(i, j) != 0 : (m(i, j) != 1 && m(i, j) != -1)) diag = false;
    diagonal += diag;
  }
  const int eff = static_cast<int>(lat.effective.size());
  t.expect(lat.stabilizer.order() == 48, "stabilizer order " + std::to_string(lat.stabilizer.order()));
  t.expect(eff == 24, "effective order " + std::to_string(eff));
  t.expect(diagonal == 4, "diagonal subgroup order " + std::to_string(diagonal));
  t.expect(diagonal > 0 && eff % diagonal == 0 && eff / std::max(diagonal, 1) == 6, "quotient order");
  t.note("|Stab| = 48, |G| = 24, diagonal 4, quotient 6");
  return t.finish(4, "Stabilizer of a1*a2*a3");
}

CheckResult check_four_cones(const strata::Registry&, const Options& opt) {
  Tally t;
  const auto census = fan::classify_orbits(4, opt.bound);
  const std::map<int, int> want{{1, 1}, {2, 7}, {3, 2}, {6, 2}};
  int matches = 0;
  std::vector<std::string> seen;
  for (const auto& o : census.orbits) {
    const auto lat = fan::stratum_character_lattice(o.representative);
    const auto hist = equi::order_histogram(lat.effective);
    const bool hit = lat.effective.size() == 12 && hist == want;
    matches += hit;
    seen.push_back(o.representative.name() + " |G|=" + std::to_string(lat.effective.size()) + " " +
                   histogram_string(hist) + (hit ? " (Z/2 x S3)" : ""));
  }
  t.expect(census.orbits.size() == 2 && matches == 1, "matching 4-cones: " + std::to_string(matches));
  t.note(join(seen, ", "));
  return t.finish(5, "Effective group Z/2 x S3 on exactly one 4-cone");
}

CheckResult check_invariants(const strata::Registry&, const Options& opt) {
  Tally t;
  const auto b3 = strata::beta3(opt.bound);
  for (const auto& c : b3.contributions) {
    std::vector<int> want(c.invariants.size(), 0);
    want[0] = 1;
    t.expect(c.invariants == want, c.representative.name() + " invariants " + join(c.invariants));
  }

  auto agree = [&](const std::vector<equi::Element>& g, int dim, const std::string& what) {
    const auto a = equi::exterior_invariant_dims(g, dim);
    const auto b = equi::fixed_subspace_dims_bruteforce(g, dim);
    t.expect(a == b, what + ": Molien " + join(a) + " vs projector " + join(b));
  };
  int pipeline = 0;
  for (const auto& c : b3.contributions) {
    const auto lat = fan::stratum_character_lattice(c.representative);
    std::vector<equi::Element> g;
    for (const auto& m : lat.effective) g.push_back({m, 1});
    agree(g, fan::kNumGenerators - c.dimension, c.representative.name());
    ++pipeline;
  }
  auto untwisted = strata::rho_u_group_rep();
  untwisted.signs.clear();
  for (const auto& [name, rep] : std::vector<std::pair<std::string, equi::LinearRep>>{
           {"Delta", strata::delta_group_rep()},
           {"A11", strata::a11_rep()},
           {"rho(U)", untwisted},
           {"rho(U) sign", strata::rho_u_group_rep()}}) {
    agree(equi::group_closure(rep), rep.dim, name);
    ++pipeline;
  }

  std::mt19937 rng(opt.seed);
  std::uniform_int_distribution<int> dim_d(1, 4), gens_d(1, 3);
  for (int i = 0; i < opt.random_reps; ++i) {
    equi::LinearRep rep;
    rep.dim = dim_d(rng);
    const int ng = gens_d(rng);
    for (int k = 0; k < ng; ++k) rep.generators.push_back(random_signed_permutation(rng, rep.dim));
    // the determinant is a multiplicative sign character
    if (i % 2)
      for (const auto& g : rep.generators) rep.signs.push_back(g.determinant() > 0 ? 1 : -1);
    agree(equi::group_closure(rep), rep.dim, "random rep " + std::to_string(i));
  }
  t.note(std::to_string(b3.contributions.size()) + " strata concentrated in degree 0; Molien = projector on " +
         std::to_string(pipeline) + " pipeline and " + std::to_string(opt.random_reps) + " random representations");
  return t.finish(6, "Exterior invariants and Molien cross-check");
}

CheckResult check_beta1(const strata::Registry& reg, const Options&) {
  Tally t;
  const auto b1 = strata::beta1_minus_beta2(reg);
  t.expect(b1.e2.same_entries(reg.reference_page("beta1_leray_e2").page), "Leray page differs from stored E2 page");
  t.expect(b1.resolution.unique() && b1.resolution.survivors.size() == 1, "resolution not unique");
  bool degenerate = b1.resolution.survivors.size() == 1 && b1.resolution.survivors[0].einf().same_entries(b1.e2);
  t.expect(degenerate, "page does not degenerate at E2");
  const auto want = make_table({{4, T(2)}, {5, T(0)}, {6, T(3, 2)}, {8, T(4, 2)}, {10, T(5)}});
  table_eq(t, b1.table, want, "H_c(beta1 \\ beta2)");
  t.note("E2 matches, degenerates, H_c^5 = Q");
  return t.finish(7, "Kummer Leray page");
}

CheckResult check_beta2(const strata::Registry& reg, const Options&) {
  Tally t;
  const auto b2 = strata::beta2_minus_beta3(reg);
  t.expect(b2.e2.same_entries(reg.reference_page("rho_u_leray_e2").page), "Leray page differs from stored E2 page");
  table_eq(t, b2.rho_u, make_table({{6, T(3)}, {8, T(4)}}), "rho(U)");
  table_eq(t, b2.rho_delta, make_table({{2, T(1)}, {4, T(2)}, {6, T(3)}}), "rho(Delta)");
  table_eq(t, b2.table, make_table({{2, T(1)}, {4, T(2)}, {6, T(3, 2)}, {8, T(4)}}), "H_c(beta2 \\ beta3)");
  const auto bases = strata::rho_u_bases_from_invariants();
  const auto stored = reg.fiber_bases("cstar");
  t.expect(bases == stored, "registry base tables disagree with twisted invariants");
  t.note("rho(U), rho(Delta) and the split sum match; base tables agree with invariants");
  return t.finish(8, "rho(U) resolution and Gysin split");
}

CheckResult check_beta3(const strata::Registry&, const Options& opt) {
  Tally t;
  const auto b3 = strata::beta3(opt.bound);
  table_eq(t, b3.table, make_table({{0, T(0)}, {2, T(1)}, {4, T(2, 2)}, {6, T(3)}}), "H_c(beta3)");
  std::map<int, int> by_dim;
  std::vector<std::string> attribution;
  for (const auto& c : b3.contributions) {
    ++by_dim[c.dimension];
    t.expect(c.degree == 2 * (6 - c.dimension), c.representative.name() + " degree");
    attribution.push_back(c.representative.name() + " -> " + std::to_string(c.degree));
  }
  t.expect(by_dim == std::map<int, int>{{3, 1}, {4, 2}, {5, 1}, {6, 1}}, "cusp-rank-3 orbit counts per dimension");
  bool has_local = false;
  for (const auto& c : b3.contributions) has_local |= c.representative == fan::Cone::parse("a1,a2,a3");
  t.expect(has_local, "a1*a2*a3 is not the 3-dimensional representative");
  t.note(join(attribution, ", "));
  return t.finish(9, "beta3 from cone strata");
}

CheckResult check_torus(const strata::Registry&, const Options&) {
  Tally t;
  const std::array<std::array<std::int64_t, 6>, 6> want{{{1, 0, 0, 0, 1, 1},
                                                         {0, 1, 0, 1, 0, 1},
                                                         {0, 0, 1, 1, 1, 0},
                                                         {0, 0, 0, -1, 0, 0},
                                                         {0, 0, 0, 0, -1, 0},
                                                         {0, 0, 0, 0, 0, -1}}};
  const auto got = fan::torus_coordinates();
  std::vector<std::string> mono;
  for (size_t l = 0; l < 6; ++l) {
    t.expect(got[l].p == want[l], "T" + std::to_string(l + 1) + " = " + forms::monomial_string(got[l]));
    mono.push_back("T" + std::to_string(l + 1) + "=" + forms::monomial_string(got[l]));
  }
  t.note(join(mono, ", "));
  return t.finish(10, "Torus coordinates");
}

CheckResult check_delta(const strata::Registry&, const Options&) {
  Tally t;
  const auto g = equi::group_closure(strata::delta_group_rep());
  std::vector<QMatrix> mats;
  for (const auto& e : g) mats.push_back(e.matrix);
  const auto hist = equi::order_histogram(mats);
  t.expect(g.size() == 12, "order " + std::to_string(g.size()));
  t.expect(hist.count(6) && hist.at(6) > 0, "no element of order 6");
  const auto inv = equi::exterior_invariant_dims(strata::delta_group_rep());
  t.expect(inv == std::vector<int>{1, 0, 1, 0, 1}, "invariants " + join(inv));
  t.note("order 12, orders " + histogram_string(hist) + ", invariants " + join(inv));
  return t.finish(11, "Delta group");
}

CheckResult check_properties(const strata::Registry& reg, const Options& opt) {
  Tally t;
  std::mt19937 rng(opt.seed ^ 0x9e3779b9u);
  std::uniform_int_distribution<std::int64_t> cd(-5, 5);
  int composition_failures = 0, pairing_failures = 0;
  for (int i = 0; i < opt.random_trials; ++i) {
    const auto g = random_unimodular(rng), h = random_unimodular(rng);
    const auto q = random_form(rng);
    if (!(forms::act_on_form(g, forms::act_on_form(h, q)) == forms::act_on_form(g * h, q))) ++composition_failures;
    forms::Character f;
    for (auto& x : f.p) x = cd(rng);
    if (forms::pairing(forms::act_on_form(g, q), forms::dual_action_on_character(g, f)) != forms::pairing(q, f))
      ++pairing_failures;
  }
  t.expect(composition_failures == 0, std::to_string(composition_failures) + " composition failures");
  t.expect(pairing_failures == 0, std::to_string(pairing_failures) + " pairing failures");

  int molien_failures = 0;
  std::uniform_int_distribution<int> dim_d(1, 4), gens_d(1, 2);
  for (int i = 0; i < opt.random_reps; ++i) {
    equi::LinearRep rep;
    rep.dim = dim_d(rng);
    for (int k = gens_d(rng); k > 0; --k) rep.generators.push_back(random_signed_permutation(rng, rep.dim));
    const auto g = equi::group_closure(rep);
    if (equi::exterior_invariant_dims(g, rep.dim) != equi::fixed_subspace_dims_bruteforce(g, rep.dim)) ++molien_failures;
  }
  t.expect(molien_failures == 0, std::to_string(molien_failures) + " Molien/projector disagreements");

  const auto b1 = strata::beta1_minus_beta2(reg);
  const auto b2 = strata::beta2_minus_beta3(reg);
  const auto b3 = strata::beta3(opt.bound);
  const auto on = strata::avor3_betti(reg, true, opt.bound);
  const auto off = strata::avor3_betti(reg, false, opt.bound);
  t.expect(euler_conserved(b1.resolution), "Euler characteristic not conserved for beta1 \\ beta2");
  t.expect(euler_conserved(b2.resolution), "Euler characteristic not conserved for rho(U)");
  t.expect(euler_conserved(b3.resolution), "Euler characteristic not conserved for beta3");
  t.expect(euler_conserved(on.resolution) && euler_conserved(off.resolution),
           "Euler characteristic not conserved for A3Vor");
  const int strata_sum = b1.table.euler_characteristic() + b2.table.euler_characteristic() +
                         b3.table.euler_characteristic() + reg.table("a3").table.euler_characteristic();
  t.expect(strata_sum == on.table.euler_characteristic(), "strata Euler characteristics sum to " +
                                                              std::to_string(strata_sum));
  t.expect(on.table.total_dimension() == 20, "total dimension " + std::to_string(on.table.total_dimension()));
  t.note(std::to_string(opt.random_trials) + " action/pairing trials, " + std::to_string(opt.random_reps) +
         " Molien trials, Euler characteristic " + std::to_string(strata_sum) + " conserved");
  return t.finish(12, "Property suite");
}

}  // namespace

CheckResult run_check(int id, const strata::Registry& reg, const Options& opt) {
  using Fn = CheckResult (*)(const strata::Registry&, const Options&);
  static const Fn checks[kNumChecks] = {check_betti,      check_e1_resolution, check_census,     check_local_stabilizer,
                                        check_four_cones, check_invariants,    check_beta1,     check_beta2,
                                        check_beta3,      check_torus,         check_delta,      check_properties};
  static const char* names[kNumChecks] = {"Betti numbers of A3Vor",
                                          "E1 page and purity resolution",
                                          "GL(3,Z)-orbit census of faces",
                                          "Stabilizer of a1*a2*a3",
                                          "Effective group Z/2 x S3 on exactly one 4-cone",
                                          "Exterior invariants and Molien cross-check",
                                          "Kummer Leray page",
                                          "rho(U) resolution and Gysin split",
                                          "beta3 from cone strata",
                                          "Torus coordinates",
                                          "Delta group",
                                          "Property suite"};
  if (id < 1 || id > kNumChecks) throw Error(ErrorKind::InvalidInput, "no check " + std::to_string(id));
  try {
    return checks[id - 1](reg, opt);
  } catch (const std::exception& ex) {
    return CheckResult{id, names[id - 1], false, std::string("exception: ") + ex.what()};
  }
}

std::vector<CheckResult> run_all(const strata::Registry& reg, const Options& opt) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= kNumChecks; ++id) out.push_back(run_check(id, reg, opt));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

std::string to_text(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  for (const auto& r : results)
    os << (r.passed ? "PASS" : "FAIL") << " [" << std::setw(2) << r.id << "] " << r.name << ": " << r.detail << "\n";
  const auto passed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
  os << passed << "/" << results.size() << " checks passed\n";
  return os.str();
}

mhs::ordered_json to_json(const std::vector<CheckResult>& results) {
  mhs::ordered_json checks = mhs::ordered_json::array();
  for (const auto& r : results)
    checks.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  return {{"passed", all_passed(results)}, {"checks", checks}};
}

}  // namespace avor3::verify
