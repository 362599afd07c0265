#include "avor3/fan.hpp"

#include "avor3/error.hpp"
#include "avor3/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace avor3::fan {

using forms::Mat3;

namespace {

constexpr std::array<std::string_view, kNumGenerators> kNames = {"a1", "a2", "a3", "b1", "b2", "b3"};

int vector_rank(const std::vector<Vec3>& vs) {
  if (vs.empty()) return 0;
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& v : vs) rows.push_back({v[0], v[1], v[2]});
  return QMatrix::from_integers(rows).rank();
}

std::vector<Vec3> lines_of(const std::vector<Vec3>& vs) {
  std::vector<Vec3> out;
  for (const auto& v : vs) out.push_back(forms::primitive(v));
  std::sort(out.begin(), out.end());
  return out;
}

bool maps_lines_onto(const Mat3& h, const std::vector<Vec3>& from, const std::vector<Vec3>& to_lines) {
  if (from.size() != to_lines.size()) return false;
  std::vector<Vec3> images;
  images.reserve(from.size());
  for (const auto& v : from) images.push_back(forms::primitive(forms::apply(h, v)));
  std::sort(images.begin(), images.end());
  return images == to_lines;
}

// h with h^{-T} = g, i.e. the map induced on generator vectors by act_on_form(g, .).
Mat3 vector_map_of(const GroupElement& g) { return forms::transpose(g.inverse().matrix()); }

GroupElement group_element_of_vector_map(const Mat3& h) {
  return GroupElement(forms::transpose(GroupElement(h).inverse().matrix()));
}

// Enumerates every h in GL(3,Z) with h(lines(from)) == lines(to). `from` must
// span R^3. The visitor returns true to stop early.
template <class Visit>
void for_each_line_map(const std::vector<Vec3>& from, const std::vector<Vec3>& to, Visit&& visit) {
  const int n = static_cast<int>(from.size());
  int ti = -1, tj = -1, tk = -1;
  for (int i = 0; i < n && ti < 0; ++i)
    for (int j = i + 1; j < n && ti < 0; ++j)
      for (int k = j + 1; k < n && ti < 0; ++k)
        if (forms::det(forms::from_columns(from[i], from[j], from[k])) != 0) {
          ti = i;
          tj = j;
          tk = k;
        }
  if (ti < 0) throw Error(ErrorKind::SpanDeficient, "generator vectors do not span R^3");
  if (static_cast<int>(to.size()) != n) return;

  const Mat3 v = forms::from_columns(from[ti], from[tj], from[tk]);
  const std::int64_t d = forms::det(v);
  const Mat3 vadj = forms::adjugate(v);
  const auto to_lines = lines_of(to);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (a == b || a == c || b == c) continue;
        for (int signs = 0; signs < 8; ++signs) {
          auto signed_vec = [&](int idx, int bit) {
            Vec3 w = to[idx];
            if (signs & (1 << bit))
              for (auto& x : w) x = -x;
            return w;
          };
          const Mat3 w = forms::from_columns(signed_vec(a, 0), signed_vec(b, 1), signed_vec(c, 2));
          Mat3 h = forms::multiply(w, vadj);
          bool integral = true;
          for (auto& row : h)
            for (auto& x : row) {
              if (x % d != 0) integral = false;
              x /= d;
            }
          if (!integral) continue;
          const auto hd = forms::det(h);
          if (hd != 1 && hd != -1) continue;
          if (!maps_lines_onto(h, from, to_lines)) continue;
          if (visit(h)) return;
        }
      }
}

int value_rank(std::int64_t x) { return x == 0 ? 0 : static_cast<int>(2 * std::llabs(x) - (x > 0 ? 1 : 0)); }

// Integer vectors of [-bound, bound]^3, small entries first.
std::vector<Vec3> candidate_rows(int bound) {
  std::vector<Vec3> rows;
  for (std::int64_t x = -bound; x <= bound; ++x)
    for (std::int64_t y = -bound; y <= bound; ++y)
      for (std::int64_t z = -bound; z <= bound; ++z) rows.push_back({x, y, z});
  auto key = [](const Vec3& v) {
    const auto m = std::max({std::llabs(v[0]), std::llabs(v[1]), std::llabs(v[2])});
    return std::make_tuple(m, value_rank(v[0]), value_rank(v[1]), value_rank(v[2]));
  };
  std::sort(rows.begin(), rows.end(), [&](const Vec3& a, const Vec3& b) { return key(a) < key(b); });
  return rows;
}

// Exhaustive search for g with entries in [-bound, bound], det +-1, whose
// induced vector map sends lines(from) onto lines(to).
std::optional<GroupElement> bounded_search(const std::vector<Vec3>& from, const std::vector<Vec3>& to, int bound) {
  if (bound < 1 || bound > kernels::kMaxEntry)
    throw Error(ErrorKind::InvalidInput, "search bound must lie in [1, " + std::to_string(kernels::kMaxEntry) + "]");
  const auto rows = candidate_rows(bound);
  const auto to_lines = lines_of(to);
  const size_t n = rows.size();

  std::array<std::vector<std::int32_t>, 9> soa;
  for (auto& col : soa) col.resize(n);
  for (size_t i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) soa[6 + k][i] = static_cast<std::int32_t>(rows[i][k]);
  std::vector<std::int32_t> dets(n);
  kernels::MatrixBatch batch;
  for (int k = 0; k < 9; ++k) batch.entry[k] = soa[k];

  for (const auto& r1 : rows) {
    if (r1 == Vec3{0, 0, 0}) continue;
    for (const auto& r2 : rows) {
      const Vec3 cross{r1[1] * r2[2] - r1[2] * r2[1], r1[2] * r2[0] - r1[0] * r2[2], r1[0] * r2[1] - r1[1] * r2[0]};
      if (cross == Vec3{0, 0, 0}) continue;
      for (int k = 0; k < 3; ++k) {
        std::fill(soa[k].begin(), soa[k].end(), static_cast<std::int32_t>(r1[k]));
        std::fill(soa[3 + k].begin(), soa[3 + k].end(), static_cast<std::int32_t>(r2[k]));
      }
      kernels::det3(batch, dets);
      for (size_t i = 0; i < n; ++i) {
        if (dets[i] != 1 && dets[i] != -1) continue;
        const Mat3 g{{r1, r2, rows[i]}};
        const GroupElement ge(g);
        if (maps_lines_onto(vector_map_of(ge), from, to_lines)) return ge;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

SymForm standard_generator(int k) {
  if (k < 0 || k >= kNumGenerators) throw Error(ErrorKind::InvalidInput, "generator index out of range");
  return k < 3 ? forms::alpha(k + 1) : forms::beta(k - 2);
}

std::string_view standard_name(int k) { return kNames.at(static_cast<size_t>(k)); }

std::optional<int> standard_index(const SymForm& q) {
  for (int k = 0; k < kNumGenerators; ++k)
    if (standard_generator(k) == q) return k;
  return std::nullopt;
}

Cone::Cone(std::vector<SymForm> generators) : generators_(std::move(generators)) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& q : generators_) {
    vectors_.push_back(forms::rank1_vector(q));
    const auto c = q.coords();
    rows.emplace_back(c.begin(), c.end());
  }
  if (!rows.empty() && QMatrix::from_integers(rows).rank() != static_cast<int>(rows.size()))
    throw Error(ErrorKind::InvalidInput, "cone generators are linearly dependent");
  span_rank_ = vector_rank(vectors_);
}

Cone Cone::sigma6() { return from_mask((1u << kNumGenerators) - 1); }

Cone Cone::zero() { return Cone({}); }

Cone Cone::from_mask(unsigned mask) {
  std::vector<SymForm> gens;
  for (int k = 0; k < kNumGenerators; ++k)
    if (mask & (1u << k)) gens.push_back(standard_generator(k));
  return Cone(std::move(gens));
}

Cone Cone::parse(std::string_view text) {
  unsigned mask = 0;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token == "0") {
      token.clear();
      return;
    }
    auto it = std::find(kNames.begin(), kNames.end(), token);
    if (it == kNames.end()) throw Error(ErrorKind::InvalidInput, "unknown generator '" + token + "'");
    const unsigned bit = 1u << (it - kNames.begin());
    if (mask & bit) throw Error(ErrorKind::InvalidInput, "repeated generator '" + token + "'");
    mask |= bit;
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == '*' || ch == ' ')
      flush();
    else
      token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  flush();
  return from_mask(mask);
}

std::optional<unsigned> Cone::face_mask() const {
  unsigned mask = 0;
  for (const auto& q : generators_) {
    auto idx = standard_index(q);
    if (!idx) return std::nullopt;
    mask |= 1u << *idx;
  }
  return mask;
}

std::string Cone::name() const {
  if (generators_.empty()) return "0";
  if (auto mask = face_mask()) {
    std::string out;
    for (int k = 0; k < kNumGenerators; ++k)
      if (*mask & (1u << k)) {
        if (!out.empty()) out += "*";
        out += kNames[static_cast<size_t>(k)];
      }
    return out;
  }
  std::string out;
  for (const auto& v : vectors_) {
    if (!out.empty()) out += "*";
    out += "sq" + forms::to_string(v);
  }
  return out;
}

std::vector<std::pair<int, SymForm>> Cone::canonical_key() const {
  std::vector<std::pair<int, SymForm>> key;
  for (const auto& q : generators_) key.emplace_back(standard_index(q).value_or(kNumGenerators), q);
  std::sort(key.begin(), key.end());
  return key;
}

std::vector<Cone> faces(const Cone& c, int dim) {
  const int n = c.dimension();
  if (dim < 0 || dim > n)
    throw Error(ErrorKind::DimOutOfRange, "face dimension " + std::to_string(dim) + " outside [0, " + std::to_string(n) + "]");
  std::vector<Cone> out;
  std::vector<int> idx(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) idx[static_cast<size_t>(i)] = i;
  while (true) {
    std::vector<SymForm> gens;
    for (int i : idx) gens.push_back(c.generators()[static_cast<size_t>(i)]);
    out.emplace_back(std::move(gens));
    int pos = dim - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - dim + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<size_t>(pos)];
    for (int i = pos + 1; i < dim; ++i) idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
  }
  return out;
}

int cusp_rank(const Cone& c) {
  SymForm sum;
  for (const auto& q : c.generators()) sum = sum + q;
  return sum.rank();
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Found: return "found";
    case Verdict::DistinctByInvariants: return "distinct-by-invariants";
    case Verdict::DistinctByLineSearch: return "distinct-by-line-search";
    case Verdict::NotFoundWithinBound: return "not-found-within-bound";
  }
  return "unknown";
}

Equivalence equivalent(const Cone& c1, const Cone& c2, int bound) {
  if (bound < 1) throw Error(ErrorKind::InvalidInput, "search bound must be >= 1");
  Equivalence result;
  auto invariants = [](const Cone& c) { return std::array<int, 3>{c.dimension(), cusp_rank(c), c.span_rank()}; };
  const auto i1 = invariants(c1), i2 = invariants(c2);
  if (i1 != i2) {
    std::ostringstream os;
    os << "invariants (dim, cusp rank, span rank) differ: (" << i1[0] << "," << i1[1] << "," << i1[2] << ") vs ("
       << i2[0] << "," << i2[1] << "," << i2[2] << ")";
    result.verdict = Verdict::DistinctByInvariants;
    result.detail = os.str();
    return result;
  }
  if (c1.dimension() == 0) {
    result.verdict = Verdict::Found;
    result.witness = GroupElement::identity();
    result.detail = "zero cone";
    return result;
  }
  if (c1.span_rank() == 3) {
    for_each_line_map(c1.vectors(), c2.vectors(), [&](const Mat3& h) {
      result.witness = group_element_of_vector_map(h);
      return true;
    });
    result.verdict = result.witness ? Verdict::Found : Verdict::DistinctByLineSearch;
    result.detail = result.witness ? "solved from a spanning triple" : "no line map between spanning generator sets";
    return result;
  }
  result.witness = bounded_search(c1.vectors(), c2.vectors(), bound);
  result.verdict = result.witness ? Verdict::Found : Verdict::NotFoundWithinBound;
  result.detail = (result.witness ? "found by bounded search at bound " : "no witness with entries in [-bound, bound], bound ") +
                  std::to_string(bound);
  return result;
}

OrbitCensus classify_orbits(const Cone& top, int dim, int bound) {
  auto all = faces(top, dim);
  std::sort(all.begin(), all.end(), [](const Cone& a, const Cone& b) { return a.canonical_key() < b.canonical_key(); });
  OrbitCensus census;
  census.dimension = dim;
  census.bound = bound;
  for (const auto& face : all) {
    bool placed = false;
    std::string inconclusive;
    for (auto& orbit : census.orbits) {
      const auto eq = equivalent(orbit.representative, face, bound);
      if (eq.verdict == Verdict::Found) {
        orbit.members.push_back(face);
        placed = true;
        break;
      }
      if (eq.verdict == Verdict::NotFoundWithinBound) inconclusive = orbit.representative.name() + " vs " + face.name();
    }
    if (placed) continue;
    if (!inconclusive.empty())
      throw Error(ErrorKind::InconclusiveAtBound, inconclusive + " at bound " + std::to_string(bound));
    census.orbits.push_back(Orbit{face, {face}, cusp_rank(face)});
  }
  return census;
}

OrbitCensus classify_orbits(int dim, int bound) {
  if (dim < 0 || dim > kNumGenerators) throw Error(ErrorKind::DimOutOfRange, "dimension must lie in [0, 6]");
  return classify_orbits(Cone::sigma6(), dim, bound);
}

StabilizerGroup stabilizer(const Cone& c) {
  if (c.span_rank() != 3)
    throw Error(ErrorKind::SpanDeficient, "cone " + c.name() + " has vector span rank " + std::to_string(c.span_rank()));
  StabilizerGroup group;
  for_each_line_map(c.vectors(), c.vectors(), [&](const Mat3& h) {
    group.elements.push_back(group_element_of_vector_map(h));
    return false;
  });
  std::sort(group.elements.begin(), group.elements.end());
  const std::set<GroupElement> members(group.elements.begin(), group.elements.end());
  for (const auto& a : group.elements)
    for (const auto& b : group.elements)
      if (!members.count(a * b)) throw Error(ErrorKind::InvalidInput, "stabilizer of " + c.name() + " is not closed");
  return group;
}

std::array<Character, 6> torus_coordinates() {
  std::vector<std::vector<std::int64_t>> rows;
  for (int k = 0; k < kNumGenerators; ++k) {
    const auto c = standard_generator(k).coords();
    rows.emplace_back(c.begin(), c.end());
  }
  const QMatrix inv = QMatrix::from_integers(rows).inverse();
  std::array<Character, 6> out;
  for (int l = 0; l < 6; ++l)
    for (int k = 0; k < 6; ++k) {
      const Rational& x = inv(k, l);
      if (x.denominator() != 1) throw Error(ErrorKind::InvalidInput, "sigma6 is not basic");
      out[static_cast<size_t>(l)].p[static_cast<size_t>(k)] = x.numerator();
    }
  return out;
}

StratumLattice stratum_character_lattice(const Cone& c) {
  const auto mask = c.face_mask();
  if (!mask) throw Error(ErrorKind::NotAFace, "cone " + c.name() + " is not a face of sigma6");
  StratumLattice out;
  out.stabilizer = stabilizer(c);
  const auto dual = torus_coordinates();
  for (int l = 0; l < kNumGenerators; ++l)
    if (!(*mask & (1u << l))) {
      out.dual_indices.push_back(l);
      out.basis.push_back(dual[static_cast<size_t>(l)]);
    }
  const int n = static_cast<int>(out.basis.size());
  std::set<QMatrix> distinct;
  for (const auto& g : out.stabilizer.elements) {
    QMatrix m(n, n);
    for (int col = 0; col < n; ++col) {
      const Character image = forms::dual_action_on_character(g, out.basis[static_cast<size_t>(col)]);
      for (const auto& q : c.generators())
        if (forms::pairing(q, image) != 0)
          throw Error(ErrorKind::InvalidInput, "stabilizer element does not preserve the annihilator");
      for (int row = 0; row < n; ++row)
        m(row, col) = forms::pairing(standard_generator(out.dual_indices[static_cast<size_t>(row)]), image);
    }
    distinct.insert(m);
    out.induced.push_back(std::move(m));
  }
  out.effective.assign(distinct.begin(), distinct.end());
  return out;
}

}  // namespace avor3::fan
