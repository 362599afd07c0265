#include "avor3/strata.hpp"

#include "avor3/error.hpp"

#include <cstdlib>
#include <fstream>

#ifndef AVOR3_REGISTRY_DEFAULT
#define AVOR3_REGISTRY_DEFAULT "data/strata_registry.json"
#endif

namespace avor3::strata {

namespace {

template <typename Map>
const auto& lookup(const Map& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw Error(ErrorKind::MissingTag, std::string("registry has no ") + what + " '" + name + "'");
  return it->second;
}

std::string required_citation(const mhs::ordered_json& j, const std::string& where) {
  if (!j.contains("citation") || !j.at("citation").is_string() || j.at("citation").get<std::string>().empty())
    throw Error(ErrorKind::InvalidInput, "registry entry '" + where + "' lacks a citation");
  return j.at("citation").get<std::string>();
}

QMatrix kron_i2(const std::vector<std::vector<std::int64_t>>& a) {
  std::vector<std::vector<std::int64_t>> rows(4, std::vector<std::int64_t>(4, 0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) rows[static_cast<size_t>(2 * i + k)][static_cast<size_t>(2 * j + k)] = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return QMatrix::from_integers(rows);
}

QMatrix diag4(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return QMatrix::from_integers({{a, 0, 0, 0}, {0, b, 0, 0}, {0, 0, c, 0}, {0, 0, 0, d}});
}

QMatrix factor_swap() { return QMatrix::from_integers({{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}); }

}  // namespace

const CitedTable& Registry::table(const std::string& name) const { return lookup(tables, name, "table"); }
const CitedFiber& Registry::fiber(const std::string& name) const { return lookup(fibers, name, "fiber"); }
const ss::KnownDifferential& Registry::known(const std::string& name) const {
  return lookup(knowns, name, "known differential");
}
const CitedPage& Registry::reference_page(const std::string& name) const {
  return lookup(reference_pages, name, "reference page");
}
std::string Registry::citation(const std::string& name) const { return lookup(citations, name, "citation"); }

std::map<std::string, CohomologyTable> Registry::fiber_bases(const std::string& name) const {
  std::map<std::string, CohomologyTable> out;
  for (const auto& [tag, table_name] : fiber(name).bases) out[tag] = table(table_name).table;
  return out;
}

Registry registry_from_json(const mhs::ordered_json& j) {
  try {
    Registry r;
    r.version = j.at("version").get<std::string>();
    for (const auto& [name, t] : j.at("tables").items()) {
      CitedTable ct;
      ct.citation = required_citation(t, name);
      ct.table = mhs::table_from_json(t.at("table"));
      ct.inferred_from_table = t.value("inferred_from_table", false);
      r.tables[name] = std::move(ct);
    }
    for (const auto& [name, f] : j.at("fibers").items()) {
      CitedFiber cf;
      cf.citation = required_citation(f, name);
      for (const auto& item : f.at("items"))
        cf.items.push_back(ss::FiberItem{item.at("degree").get<int>(), item.at("tag").get<std::string>(),
                                         item.value("twist", 0)});
      for (const auto& [tag, table_name] : f.at("bases").items()) cf.bases[tag] = table_name.get<std::string>();
      r.fibers[name] = std::move(cf);
    }
    for (const auto& [name, k] : j.at("knowns").items())
      r.knowns[name] = ss::KnownDifferential{k.at("r").get<int>(), k.at("p").get<int>(), k.at("q").get<int>(),
                                             k.at("rank").get<int>(), required_citation(k, name)};
    if (j.contains("citations"))
      for (const auto& [name, c] : j.at("citations").items()) r.citations[name] = c.get<std::string>();
    if (j.contains("reference_pages"))
      for (const auto& [name, p] : j.at("reference_pages").items())
        r.reference_pages[name] = CitedPage{ss::page_from_json(p.at("page")), required_citation(p, name)};
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed registry: ") + ex.what());
  }
}

mhs::ordered_json to_json(const Registry& r) {
  mhs::ordered_json tables = mhs::ordered_json::object();
  for (const auto& [name, t] : r.tables) {
    mhs::ordered_json e{{"citation", t.citation}};
    if (t.inferred_from_table) e["inferred_from_table"] = true;
    e["table"] = mhs::to_json(t.table);
    tables[name] = e;
  }
  mhs::ordered_json fibers = mhs::ordered_json::object();
  for (const auto& [name, f] : r.fibers) {
    mhs::ordered_json items = mhs::ordered_json::array();
    for (const auto& i : f.items) items.push_back({{"degree", i.degree}, {"tag", i.tag}, {"twist", i.twist}});
    fibers[name] = {{"citation", f.citation}, {"items", items}, {"bases", f.bases}};
  }
  mhs::ordered_json knowns = mhs::ordered_json::object();
  for (const auto& [name, k] : r.knowns)
    knowns[name] = {{"r", k.r}, {"p", k.p}, {"q", k.q}, {"rank", k.rank}, {"citation", k.citation}};
  mhs::ordered_json pages = mhs::ordered_json::object();
  for (const auto& [name, p] : r.reference_pages) pages[name] = {{"citation", p.citation}, {"page", ss::to_json(p.page)}};
  return {{"version", r.version}, {"tables", tables},   {"fibers", fibers},
          {"knowns", knowns},     {"citations", r.citations}, {"reference_pages", pages}};
}

Registry load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open registry " + path);
  mhs::ordered_json j;
  try {
    j = mhs::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::InvalidInput, "registry " + path + " is not valid JSON: " + ex.what());
  }
  Registry r = registry_from_json(j);
  r.path = path;
  return r;
}

std::string resolve_registry_path(const std::optional<std::string>& explicit_path) {
  if (explicit_path && !explicit_path->empty()) return *explicit_path;
  if (const char* env = std::getenv(kRegistryEnv); env && *env) return env;
  return AVOR3_REGISTRY_DEFAULT;
}

Registry load_default_registry(const std::optional<std::string>& explicit_path) {
  return load_registry(resolve_registry_path(explicit_path));
}

equi::LinearRep delta_group_rep() {
  equi::LinearRep rep;
  rep.dim = 4;
  rep.generators = {kron_i2({{0, 1}, {1, 0}}), kron_i2({{-1, 0}, {0, -1}}), kron_i2({{1, 1}, {0, -1}})};
  return rep;
}

equi::LinearRep a11_rep() {
  equi::LinearRep rep;
  rep.dim = 4;
  rep.generators = {diag4(-1, -1, 1, 1), diag4(1, 1, -1, -1), factor_swap()};
  return rep;
}

equi::LinearRep rho_u_group_rep() {
  equi::LinearRep rep;
  rep.dim = 4;
  rep.generators = {diag4(-1, -1, 1, 1), diag4(-1, -1, -1, -1), factor_swap()};
  rep.signs = {-1, 1, 1};
  return rep;
}

CohomologyTable quotient_times_line(const std::vector<int>& invariant_dims) {
  CohomologyTable t;
  for (size_t k = 0; k < invariant_dims.size(); ++k) {
    if (invariant_dims[k] == 0) continue;
    if (k % 2)
      throw Error(ErrorKind::InvalidInput, "odd-degree invariants in degree " + std::to_string(k) + " are not Tate");
    const int half = static_cast<int>(k / 2);
    t.add(2 * half + 2, MhsVector::tate(half + 1, invariant_dims[k]));
  }
  return t;
}

Beta1Result beta1_minus_beta2(const Registry& reg) {
  Beta1Result out;
  out.e2 = ss::leray_assemble(reg.fiber_bases("kummer"), reg.fiber("kummer").items, 2);
  out.e2.label = "beta1 \\ beta2";
  out.resolution = ss::resolve(out.e2);
  out.table = ss::abutment(out.resolution.einf());
  out.table.label = "H_c(beta1 \\ beta2)";
  return out;
}

std::map<std::string, CohomologyTable> rho_u_bases_from_invariants() {
  equi::LinearRep rep = rho_u_group_rep();
  equi::LinearRep untwisted = rep;
  untwisted.signs.clear();
  return {{"invariant", quotient_times_line(equi::exterior_invariant_dims(untwisted))},
          {"sign", quotient_times_line(equi::exterior_invariant_dims(rep))}};
}

Beta2Result beta2_minus_beta3(const Registry& reg) {
  Beta2Result out;
  out.e2 = ss::leray_assemble(reg.fiber_bases("cstar"), reg.fiber("cstar").items, 2);
  out.e2.label = "rho(U)";
  out.e2.knowns.push_back(reg.known("rho_u_d2"));
  out.resolution = ss::resolve(out.e2);
  out.rho_u = ss::abutment(out.resolution.einf());
  out.rho_u.label = "H_c(rho(U))";
  out.delta_invariants = equi::exterior_invariant_dims(delta_group_rep());
  out.rho_delta = quotient_times_line(out.delta_invariants);
  out.rho_delta.label = "H_c(rho(Delta))";
  out.table = ss::gysin_split(out.rho_u, out.rho_delta);
  out.table.label = "H_c(beta2 \\ beta3)";
  return out;
}

Beta3Result beta3(int bound) {
  Beta3Result out;
  for (int l = fan::kNumGenerators; l >= 3; --l) {
    for (const auto& orbit : fan::classify_orbits(l, bound).orbits) {
      if (orbit.cusp_rank != 3) continue;
      ConeContribution c{orbit.representative, l, 0, 0, {}, 0, {}};
      const auto lattice = fan::stratum_character_lattice(orbit.representative);
      c.stabilizer_order = lattice.stabilizer.order();
      c.effective_order = static_cast<int>(lattice.effective.size());
      std::vector<equi::Element> group;
      for (const auto& m : lattice.effective) group.push_back(equi::Element{m, 1});
      c.invariants = equi::exterior_invariant_dims(group, fan::kNumGenerators - l);
      for (size_t k = 1; k < c.invariants.size(); ++k)
        if (c.invariants[k] != 0)
          throw Error(ErrorKind::InvariantNotConcentrated,
                      orbit.representative.name() + " has invariants in degree " + std::to_string(k));
      if (c.invariants[0] != 1)
        throw Error(ErrorKind::InvariantNotConcentrated, orbit.representative.name() + " lacks the degree-0 invariant");
      c.degree = 2 * (fan::kNumGenerators - l);
      c.cls = MhsVector::tate(fan::kNumGenerators - l);
      out.contributions.push_back(std::move(c));
    }
  }
  // Closed strata first: p counts how many cone dimensions lie above.
  out.page.label = "beta3";
  out.page.r = 1;
  for (const auto& c : out.contributions) {
    const int p = fan::kNumGenerators - c.dimension;
    out.page.add(p, c.degree - p, c.cls);
  }
  out.resolution = ss::resolve(out.page);
  out.table = ss::abutment(out.resolution.einf());
  out.table.label = "H_c(beta3)";
  return out;
}

ss::SSPage build_e1(const CohomologyTable& b3, const CohomologyTable& b2, const CohomologyTable& b1,
                    const CohomologyTable& a3) {
  ss::SSPage page;
  page.label = "A3Vor";
  page.r = 1;
  const CohomologyTable* columns[] = {&b3, &b2, &b1, &a3};
  for (int p = 0; p < 4; ++p)
    for (const auto& [k, v] : columns[p]->entries) page.add(p, k - p, v);
  return page;
}

BettiResult avor3_betti(const Registry& reg, bool purity, int bound) {
  BettiResult out;
  const auto b3 = beta3(bound).table;
  const auto b2 = beta2_minus_beta3(reg).table;
  const auto b1 = beta1_minus_beta2(reg).table;
  out.e1 = build_e1(b3, b2, b1, reg.table("a3").table);
  const auto& stored = reg.reference_page("avor3_e1").page;
  if (!out.e1.same_entries(stored)) {
    std::string diff;
    for (const auto& [pq, v] : out.e1.entries)
      if (!(stored.at(pq.first, pq.second) == v))
        diff += " (" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")";
    for (const auto& [pq, v] : stored.entries)
      if (out.e1.at(pq.first, pq.second).empty()) diff += " (" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")";
    throw Error(ErrorKind::MismatchWithTable, "rebuilt E1 differs from the stored page at" + diff);
  }
  out.e1.abutment_smooth_proper = purity;
  out.e1.abutment_dimension = 2 * kA3VorDimension;
  out.resolution = ss::resolve(out.e1);
  if (purity && reg.citations.count("purity"))
    for (auto& d : out.resolution.determined)
      if (d.status == ss::DiffStatus::Free && d.rank > 0) d.citation = reg.citation("purity");
  if (!purity && !out.resolution.unique()) return out;  // the caller inspects the candidates
  out.table = ss::abutment(out.resolution.einf());
  out.table.label = "H^*(A3Vor)";
  out.betti = out.table.betti(2 * kA3VorDimension);
  return out;
}

int a11_invariant_check() {
  const auto dims = equi::exterior_invariant_dims(a11_rep());
  return dims.at(2);
}

CohomologyTable stratum_table(const Registry& reg, const std::string& name, int bound) {
  if (name == "a3") return reg.table("a3").table;
  if (name == "beta1") return beta1_minus_beta2(reg).table;
  if (name == "beta2") return beta2_minus_beta3(reg).table;
  if (name == "beta3") return beta3(bound).table;
  throw Error(ErrorKind::InvalidInput, "unknown stratum '" + name + "' (expected a3, beta1, beta2 or beta3)");
}

}  // namespace avor3::strata
