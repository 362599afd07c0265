// avor3: command-line front end for the A3Vor cohomology pipelines.

#include "avor3/error.hpp"
#include "avor3/fan.hpp"
#include "avor3/kernels.hpp"
#include "avor3/strata.hpp"
#include "avor3/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace avor3;
using mhs::ordered_json;

namespace {

enum class Format { Text, Json, Latex };

struct Globals {
  std::string format = "text";
  int bound = fan::kDefaultBound;
  std::string registry;

  Format fmt() const { return format == "json" ? Format::Json : format == "latex" ? Format::Latex : Format::Text; }
  strata::Registry load() const {
    return strata::load_default_registry(registry.empty() ? std::nullopt : std::optional<std::string>(registry));
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string matrix_string(const QMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
  }
  os << "]";
  return os.str();
}

ordered_json matrix_json(const QMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) {
      const auto& x = m(i, j);
      if (x.denominator() == 1)
        row.push_back(x.numerator());
      else
        row.push_back(to_string(x));
    }
    rows.push_back(row);
  }
  return rows;
}

ordered_json mat3_json(const forms::Mat3& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : m) rows.push_back(ordered_json(std::vector<std::int64_t>(r.begin(), r.end())));
  return rows;
}

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError(path + ": " + ex.what());
  }
}

void print_table(const Globals& g, const mhs::CohomologyTable& t) {
  switch (g.fmt()) {
    case Format::Json: std::cout << mhs::to_json(t).dump(2) << "\n"; break;
    case Format::Latex: std::cout << mhs::to_latex(t); break;
    case Format::Text: std::cout << mhs::to_text(t); break;
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// ---- fan ----

int cmd_fan_faces(const Globals& g, int dim, const std::string& cone) {
  const fan::Cone top = cone.empty() ? fan::Cone::sigma6() : fan::Cone::parse(cone);
  const auto fs = fan::faces(top, dim);
  if (g.fmt() == Format::Json) {
    ordered_json arr = ordered_json::array();
    for (const auto& f : fs) arr.push_back({{"cone", f.name()}, {"cusp_rank", fan::cusp_rank(f)}});
    std::cout << ordered_json{{"cone", top.name()}, {"dimension", dim}, {"count", fs.size()}, {"faces", arr}}.dump(2)
              << "\n";
  } else {
    std::cout << fs.size() << " faces of dimension " << dim << " of " << top.name() << "\n";
    for (const auto& f : fs) std::cout << "  " << f.name() << "  cusp rank " << fan::cusp_rank(f) << "\n";
  }
  return 0;
}

int cmd_fan_orbits(const Globals& g, int dim) {
  const auto census = fan::classify_orbits(dim, g.bound);
  if (g.fmt() == Format::Json) {
    ordered_json orbits = ordered_json::array();
    for (const auto& o : census.orbits) {
      ordered_json members = ordered_json::array();
      for (const auto& m : o.members) members.push_back(m.name());
      orbits.push_back({{"representative", o.representative.name()},
                        {"cusp_rank", o.cusp_rank},
                        {"size", o.members.size()},
                        {"members", members}});
    }
    std::cout << ordered_json{{"dimension", dim}, {"bound", g.bound}, {"count", census.orbits.size()}, {"orbits", orbits}}
                     .dump(2)
              << "\n";
  } else if (g.fmt() == Format::Latex) {
    std::cout << "\\begin{array}{lcc}\n\\text{representative}&\\text{cusp rank}&\\text{faces}\\\\\n\\hline\n";
    for (const auto& o : census.orbits)
      std::cout << "\\text{" << o.representative.name() << "}&" << o.cusp_rank << "&" << o.members.size() << "\\\\\n";
    std::cout << "\\end{array}\n";
  } else {
    std::cout << census.orbits.size() << " orbit(s) of " << dim << "-dimensional faces (bound " << g.bound << ")\n";
    for (const auto& o : census.orbits)
      std::cout << "  " << o.representative.name() << "  cusp rank " << o.cusp_rank << ", " << o.members.size()
                << " face(s)\n";
  }
  return 0;
}

int cmd_fan_stabilizer(const Globals& g, const std::string& cone_text, bool effective) {
  const auto cone = fan::Cone::parse(cone_text);
  if (!effective) {
    const auto stab = fan::stabilizer(cone);
    if (g.fmt() == Format::Json) {
      ordered_json els = ordered_json::array();
      for (const auto& e : stab.elements) els.push_back(mat3_json(e.matrix()));
      std::cout << ordered_json{{"cone", cone.name()}, {"order", stab.order()}, {"elements", els}}.dump(2) << "\n";
    } else {
      std::cout << "stabilizer of " << cone.name() << ": order " << stab.order() << "\n";
      for (const auto& e : stab.elements) std::cout << "  " << forms::to_string(e.matrix()) << "\n";
    }
    return 0;
  }
  const auto lat = fan::stratum_character_lattice(cone);
  const auto hist = equi::order_histogram(lat.effective);
  if (g.fmt() == Format::Json) {
    ordered_json basis = ordered_json::array();
    for (const auto& b : lat.basis) basis.push_back(forms::monomial_string(b));
    ordered_json els = ordered_json::array();
    for (const auto& m : lat.effective) els.push_back(matrix_json(m));
    ordered_json h = ordered_json::object();
    for (const auto& [k, v] : hist) h[std::to_string(k)] = v;
    std::cout << ordered_json{{"cone", cone.name()},         {"stabilizer_order", lat.stabilizer.order()},
                              {"basis", basis},              {"effective_order", lat.effective.size()},
                              {"order_histogram", h},        {"effective", els}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "stabilizer of " << cone.name() << ": order " << lat.stabilizer.order() << "\n";
    std::cout << "character lattice basis:";
    for (const auto& b : lat.basis) std::cout << " " << forms::monomial_string(b);
    std::cout << "\neffective group: order " << lat.effective.size() << ", element orders";
    for (const auto& [k, v] : hist) std::cout << " " << k << ":" << v;
    std::cout << "\n";
    for (const auto& m : lat.effective) std::cout << "  " << matrix_string(m) << "\n";
  }
  return 0;
}

int cmd_fan_cusp_rank(const Globals& g, const std::string& cone_text) {
  const auto cone = fan::Cone::parse(cone_text);
  const int r = fan::cusp_rank(cone);
  if (g.fmt() == Format::Json)
    std::cout << ordered_json{{"cone", cone.name()}, {"cusp_rank", r}}.dump(2) << "\n";
  else
    std::cout << r << "\n";
  return 0;
}

int cmd_fan_torus(const Globals& g) {
  const auto coords = fan::torus_coordinates();
  if (g.fmt() == Format::Json) {
    ordered_json arr = ordered_json::array();
    for (size_t l = 0; l < coords.size(); ++l)
      arr.push_back({{"name", "T" + std::to_string(l + 1)},
                     {"exponents", std::vector<std::int64_t>(coords[l].p.begin(), coords[l].p.end())},
                     {"monomial", forms::monomial_string(coords[l])}});
    std::cout << ordered_json{{"variables", {"t11", "t22", "t33", "t23", "t13", "t12"}}, {"coordinates", arr}}.dump(2)
              << "\n";
  } else {
    for (size_t l = 0; l < coords.size(); ++l)
      std::cout << "T" << l + 1 << " = " << forms::monomial_string(coords[l]) << "\n";
  }
  return 0;
}

// ---- equi ----

equi::LinearRep rep_from_json(const ordered_json& j) {
  try {
    equi::LinearRep rep;
    rep.dim = j.at("dim").get<int>();
    for (const auto& g : j.at("generators")) {
      std::vector<Rational> data;
      for (const auto& row : g)
        for (const auto& x : row) data.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<std::int64_t>()));
      if (static_cast<int>(data.size()) != rep.dim * rep.dim) throw UsageError("generator is not dim x dim");
      rep.generators.emplace_back(rep.dim, rep.dim, std::move(data));
    }
    if (j.contains("signs")) rep.signs = j.at("signs").get<std::vector<int>>();
    return rep;
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError(std::string("malformed representation: ") + ex.what());
  }
}

int cmd_equi_invariants(const Globals& g, const std::string& cone_text, const std::string& rep_path) {
  if (cone_text.empty() == rep_path.empty()) throw UsageError("give exactly one of --cone or --rep");
  std::vector<equi::Element> group;
  int dim = 0;
  std::string label;
  if (!cone_text.empty()) {
    const auto cone = fan::Cone::parse(cone_text);
    const auto lat = fan::stratum_character_lattice(cone);
    for (const auto& m : lat.effective) group.push_back({m, 1});
    dim = static_cast<int>(lat.basis.size());
    label = cone.name();
  } else {
    const auto rep = rep_from_json(read_json_file(rep_path));
    group = equi::group_closure(rep);
    dim = rep.dim;
    label = rep_path;
  }
  const auto dims = equi::exterior_invariant_dims(group, dim);
  if (g.fmt() == Format::Json)
    std::cout << ordered_json{{"source", label}, {"group_order", group.size()}, {"dim", dim}, {"invariants", dims}}.dump(2)
              << "\n";
  else
    std::cout << label << ": group order " << group.size() << ", invariants " << join_ints(dims) << "\n";
  return 0;
}

// ---- ss ----

int cmd_ss_resolve(const Globals& g, const std::string& input, bool purity, int dim) {
  auto page = ss::page_from_json(read_json_file(input));
  if (purity) page.abutment_smooth_proper = true;
  if (dim > 0) page.abutment_dimension = dim;
  const auto res = ss::resolve(page);
  const bool ok = res.unique();
  switch (g.fmt()) {
    case Format::Json: {
      auto j = ss::to_json(res);
      if (ok) j["einf"] = ss::to_json(res.einf());
      std::cout << j.dump(2) << "\n";
      break;
    }
    case Format::Latex:
      for (const auto& c : res.survivors) std::cout << ss::to_latex(c.einf());
      break;
    case Format::Text:
      std::cout << ss::to_text(res);
      if (ok) std::cout << ss::to_text(res.einf());
      break;
  }
  return ok ? 0 : 1;
}

int cmd_ss_abutment(const Globals& g, const std::string& input) {
  print_table(g, ss::abutment(ss::page_from_json(read_json_file(input))));
  return 0;
}

// ---- strata / betti / verify ----

int cmd_strata_table(const Globals& g, const std::string& stratum) {
  print_table(g, strata::stratum_table(g.load(), stratum, g.bound));
  return 0;
}

int cmd_betti(const Globals& g) {
  const auto res = strata::avor3_betti(g.load(), true, g.bound);
  switch (g.fmt()) {
    case Format::Json:
      std::cout << ordered_json{{"betti", res.betti},
                                {"table", mhs::to_json(res.table)},
                                {"e1", ss::to_json(res.e1)},
                                {"resolution", ss::to_json(res.resolution)}}
                       .dump(2)
                << "\n";
      break;
    case Format::Latex:
      std::cout << ss::to_latex(res.e1) << "\n" << mhs::to_latex(res.table);
      break;
    case Format::Text:
      std::cout << join_ints(res.betti) << "\n";
      break;
  }
  return 0;
}

int cmd_verify(const Globals& g) {
  const auto results = verify::run_all(g.load(), verify::Options{g.bound});
  if (g.fmt() == Format::Json)
    std::cout << verify::to_json(results).dump(2) << "\n";
  else
    std::cout << verify::to_text(results);
  return verify::all_passed(results) ? 0 : 1;
}

bool usage_kind(ErrorKind k) {
  return k == ErrorKind::InvalidInput || k == ErrorKind::DimOutOfRange || k == ErrorKind::NotAFace ||
         k == ErrorKind::NotRankOneVector || k == ErrorKind::MissingTag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of the Voronoi compactification of A3"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "latex"}));
  app.add_option("--bound", g.bound, "Entry bound for the GL(3,Z) search")->check(CLI::Range(1, 4));
  app.add_option("--registry", g.registry, "Registry file (overrides $VORONOI_STRATA_REGISTRY)");

  std::function<int()> action;

  auto* fan_cmd = app.add_subcommand("fan", "Faces, orbits and stabilizers of the basic cone")->require_subcommand(1);
  int dim = 0;
  std::string cone;
  bool effective = false;
  auto* faces = fan_cmd->add_subcommand("faces", "List faces of a given dimension");
  faces->add_option("--dim", dim, "Face dimension")->required();
  faces->add_option("--cone", cone, "Ambient cone (default a1*a2*a3*b1*b2*b3)");
  faces->callback([&] { action = [&] { return cmd_fan_faces(g, dim, cone); }; });
  auto* orbits = fan_cmd->add_subcommand("orbits", "GL(3,Z)-orbits of faces");
  orbits->add_option("--dim", dim, "Face dimension")->required();
  orbits->callback([&] { action = [&] { return cmd_fan_orbits(g, dim); }; });
  auto* stab = fan_cmd->add_subcommand("stabilizer", "Setwise stabilizer of a cone");
  stab->add_option("--cone", cone, "Cone, e.g. a1,a2,a3")->required();
  stab->add_flag("--effective", effective, "Report the action on the stratum's character lattice");
  stab->callback([&] { action = [&] { return cmd_fan_stabilizer(g, cone, effective); }; });
  auto* cusp = fan_cmd->add_subcommand("cusp-rank", "Rank of a generic form in the cone");
  cusp->add_option("--cone", cone, "Cone")->required();
  cusp->callback([&] { action = [&] { return cmd_fan_cusp_rank(g, cone); }; });
  auto* torus = fan_cmd->add_subcommand("torus-coords", "Torus coordinates T1..T6 as monomials");
  torus->callback([&] { action = [&] { return cmd_fan_torus(g); }; });

  auto* equi_cmd = app.add_subcommand("equi", "Invariants of finite groups")->require_subcommand(1);
  std::string rep_path;
  auto* inv = equi_cmd->add_subcommand("invariants", "Exterior-power invariant dimensions");
  inv->add_option("--cone", cone, "Use the effective group of this cone's stratum");
  inv->add_option("--rep", rep_path, "Representation JSON {dim, generators, signs}");
  inv->callback([&] { action = [&] { return cmd_equi_invariants(g, cone, rep_path); }; });

  auto* ss_cmd = app.add_subcommand("ss", "Spectral-sequence pages")->require_subcommand(1);
  std::string input;
  bool purity = false;
  int top_dim = 0;
  auto* resolve = ss_cmd->add_subcommand("resolve", "Resolve all differentials of a page");
  resolve->add_option("--input", input, "Page JSON")->required();
  resolve->add_flag("--purity", purity, "Abutment is smooth and proper");
  resolve->add_option("--dim", top_dim, "Top cohomological degree of the abutment")->check(CLI::NonNegativeNumber);
  resolve->callback([&] { action = [&] { return cmd_ss_resolve(g, input, purity, top_dim); }; });
  auto* abut = ss_cmd->add_subcommand("abutment", "Collect a final page along total degree");
  abut->add_option("--input", input, "Page JSON")->required();
  abut->callback([&] { action = [&] { return cmd_ss_abutment(g, input); }; });

  auto* strata_cmd = app.add_subcommand("strata", "Cohomology of the strata")->require_subcommand(1);
  std::string stratum;
  auto* table = strata_cmd->add_subcommand("table", "Compactly supported cohomology of one stratum");
  table->add_option("--stratum", stratum, "Stratum")->required()->check(CLI::IsMember({"a3", "beta1", "beta2", "beta3"}));
  table->callback([&] { action = [&] { return cmd_strata_table(g, stratum); }; });

  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers")->require_subcommand(1);
  auto* avor3 = betti_cmd->add_subcommand("avor3", "Betti numbers of A3Vor");
  avor3->callback([&] { action = [&] { return cmd_betti(g); }; });

  auto* verify_cmd = app.add_subcommand("verify", "Acceptance checks")->require_subcommand(1);
  auto* all = verify_cmd->add_subcommand("all", "Run every check");
  all->callback([&] { action = [&] { return cmd_verify(g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!action) {
    std::cerr << app.help();
    return 2;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_kind(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
