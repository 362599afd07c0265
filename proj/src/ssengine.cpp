#include "avor3/ssengine.hpp"

#include "avor3/error.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

namespace avor3::ss {

const MhsVector& SSPage::at(int p, int q) const {
  static const MhsVector kEmpty;
  auto it = entries.find({p, q});
  return it == entries.end() ? kEmpty : it->second;
}

void SSPage::add(int p, int q, const MhsVector& v) {
  if (v.empty()) return;
  entries[{p, q}] += v;
}

int SSPage::total_dimension() const {
  int d = 0;
  for (const auto& [pq, v] : entries) d += v.dimension();
  return d;
}

int SSPage::euler_characteristic() const {
  int chi = 0;
  for (const auto& [pq, v] : entries) chi += ((pq.first + pq.second) % 2 ? -1 : 1) * v.dimension();
  return chi;
}

bool forced_zero(const SSPage& page, int r, int p, int q) {
  const auto& src = page.at(p, q);
  const auto& tgt = page.at(p + r, q - r + 1);
  if (src.empty() || tgt.empty()) return true;
  const auto ws = src.weights(), wt = tgt.weights();
  std::vector<int> common;
  std::set_intersection(ws.begin(), ws.end(), wt.begin(), wt.end(), std::back_inserter(common));
  return common.empty();
}

std::string_view to_string(DiffStatus s) {
  switch (s) {
    case DiffStatus::ForcedZero: return "forced-zero";
    case DiffStatus::Known: return "known";
    case DiffStatus::Free: return "free";
  }
  return "unknown";
}

const SSPage& Resolution::einf() const {
  if (survivors.empty()) throw Error(ErrorKind::NoConsistentAssignment, "no rank assignment survives");
  if (!unique())
    throw Error(ErrorKind::Ambiguous, std::to_string(distinct_outcomes) + " distinct E_infinity pages from " +
                                          std::to_string(survivors.size()) + " assignments");
  return survivors.front().einf();
}

namespace {

// Per-entry, per-weight usage of the differentials chosen on one page.
struct Usage {
  std::map<Bidegree, std::map<int, int>> out, in;
};

int tate_at_weight(const MhsVector& v, int w) { return w % 2 == 0 ? v.tate_mult(w / 2) : 0; }

int out_capacity(const MhsVector& v, int w) {
  return tate_at_weight(v, w) + (w == mhs::kAtomQuotientWeight ? v.f_count() : 0);
}

int in_capacity(const MhsVector& v, int w) { return tate_at_weight(v, w) + (w == mhs::kAtomSubWeight ? v.f_count() : 0); }

int joint_capacity(const MhsVector& v, int w) {
  auto counts = v.weight_counts();
  auto it = counts.find(w);
  return it == counts.end() ? 0 : it->second;
}

MhsVector apply_usage(MhsVector v, const std::map<int, int>& out, const std::map<int, int>& in) {
  auto take = [&](int w, int count, bool outgoing) {
    const int from_tate = std::min(count, tate_at_weight(v, w));
    if (from_tate > 0) v.remove_tate(w / 2, from_tate);
    const int rest = count - from_tate;
    if (rest == 0) return;
    if (outgoing && w == mhs::kAtomQuotientWeight)
      v.f_lose_quotient(rest);
    else if (!outgoing && w == mhs::kAtomSubWeight)
      v.f_lose_sub(rest);
    else
      throw Error(ErrorKind::InvalidInput, "differential exceeds weight capacity");
  };
  for (const auto& [w, c] : out) take(w, c, true);
  for (const auto& [w, c] : in) take(w, c, false);
  return v;
}

struct PendingDiff {
  DifferentialChoice choice;
  Bidegree src, tgt;
  std::vector<int> weights;  // common weights, ascending
  int known_rank = -1;
};

class Solver {
 public:
  Solver(const SSPage& start, std::size_t cap) : start_(start), cap_(cap) {
    int pmin = 0, pmax = -1;
    bool first = true;
    for (const auto& [pq, v] : start.entries) {
      if (first) {
        pmin = pmax = pq.first;
        first = false;
      }
      pmin = std::min(pmin, pq.first);
      pmax = std::max(pmax, pq.first);
    }
    r_last_ = first ? start.r - 1 : std::max(start.r - 1, pmax - pmin);
  }

  Resolution run() {
    std::vector<DifferentialChoice> choices;
    std::vector<DifferentialChoice> forced;
    std::vector<SSPage> pages{start_};
    explore(start_, start_.r, choices, forced, pages);

    std::vector<const std::map<Bidegree, MhsVector>*> outcomes;
    for (const auto& c : result_.survivors) {
      const auto& e = c.einf().entries;
      if (std::none_of(outcomes.begin(), outcomes.end(), [&](const auto* o) { return *o == e; })) outcomes.push_back(&e);
    }
    result_.distinct_outcomes = outcomes.size();
    if (!result_.survivors.empty()) {
      result_.forced = first_forced_;
      for (const auto& d : result_.survivors.front().choices) {
        bool same = true;
        for (const auto& other : result_.survivors) {
          auto it = std::find_if(other.choices.begin(), other.choices.end(), [&](const DifferentialChoice& o) {
            return o.r == d.r && o.p == d.p && o.q == d.q;
          });
          if (it == other.choices.end() || it->rank != d.rank) same = false;
        }
        if (!same) continue;
        DifferentialChoice det = d;
        if (det.status == DiffStatus::Free)
          det.citation = start_.abutment_smooth_proper ? "forced by purity of the abutment" : "only consistent rank";
        result_.determined.push_back(det);
      }
    }
    return result_;
  }

 private:
  void explore(const SSPage& page, int r, std::vector<DifferentialChoice>& choices,
               std::vector<DifferentialChoice>& forced, std::vector<SSPage>& pages) {
    if (r > r_last_) {
      finish(page, choices, forced, pages);
      return;
    }
    std::vector<PendingDiff> diffs;
    std::vector<DifferentialChoice> forced_here;
    for (const auto& [pq, v] : page.entries) {
      const auto [p, q] = pq;
      const Bidegree tgt{p + r, q - r + 1};
      const auto& target = page.at(tgt.first, tgt.second);
      const KnownDifferential* known = nullptr;
      for (const auto& k : page.knowns)
        if (k.r == r && k.p == p && k.q == q) known = &k;
      if (target.empty()) {
        if (known && known->rank != 0) return;  // contradicts a cited rank
        continue;
      }
      PendingDiff d;
      d.choice.r = r;
      d.choice.p = p;
      d.choice.q = q;
      d.src = pq;
      d.tgt = tgt;
      if (forced_zero(page, r, p, q)) {
        if (known && known->rank != 0) return;
        d.choice.status = DiffStatus::ForcedZero;
        forced_here.push_back(d.choice);
        continue;
      }
      const auto ws = v.weights(), wt = target.weights();
      std::set_intersection(ws.begin(), ws.end(), wt.begin(), wt.end(), std::back_inserter(d.weights));
      d.weights.erase(std::unique(d.weights.begin(), d.weights.end()), d.weights.end());
      if (known) {
        d.choice.status = DiffStatus::Known;
        d.choice.citation = known->citation;
        d.known_rank = known->rank;
      }
      diffs.push_back(std::move(d));
    }
    const size_t forced_mark = forced.size();
    forced.insert(forced.end(), forced_here.begin(), forced_here.end());
    Usage usage;
    assign(page, r, diffs, 0, 0, usage, choices, forced, pages);
    forced.resize(forced_mark);
  }

  // Chooses rank_by_weight for diffs[i], weight index wi, then recurses.
  void assign(const SSPage& page, int r, std::vector<PendingDiff>& diffs, size_t i, size_t wi, Usage& usage,
              std::vector<DifferentialChoice>& choices, std::vector<DifferentialChoice>& forced,
              std::vector<SSPage>& pages) {
    if (i == diffs.size()) {
      SSPage next = page;
      next.r = r + 1;
      next.entries.clear();
      for (const auto& [pq, v] : page.entries) {
        static const std::map<int, int> kNone;
        auto o = usage.out.find(pq);
        auto n = usage.in.find(pq);
        next.add(pq.first, pq.second,
                 apply_usage(v, o == usage.out.end() ? kNone : o->second, n == usage.in.end() ? kNone : n->second));
      }
      const size_t mark = choices.size();
      for (const auto& d : diffs) choices.push_back(d.choice);
      pages.push_back(next);
      explore(next, r + 1, choices, forced, pages);
      pages.pop_back();
      choices.resize(mark);
      return;
    }
    PendingDiff& d = diffs[i];
    if (wi == d.weights.size()) {
      if (d.known_rank >= 0 && d.choice.rank != d.known_rank) return;
      assign(page, r, diffs, i + 1, 0, usage, choices, forced, pages);
      return;
    }
    const int w = d.weights[wi];
    const auto& src = page.at(d.src.first, d.src.second);
    const auto& tgt = page.at(d.tgt.first, d.tgt.second);
    int& src_out = usage.out[d.src][w];
    int& tgt_in = usage.in[d.tgt][w];
    const int src_in = usage.in[d.src][w];
    const int tgt_out = usage.out[d.tgt][w];
    const int max_rank = std::min({out_capacity(src, w) - src_out, joint_capacity(src, w) - src_out - src_in,
                                   in_capacity(tgt, w) - tgt_in, joint_capacity(tgt, w) - tgt_in - tgt_out});
    for (int k = 0; k <= max_rank; ++k) {
      if (d.known_rank >= 0 && d.choice.rank + k > d.known_rank) break;
      src_out += k;
      tgt_in += k;
      d.choice.rank += k;
      if (k > 0) d.choice.rank_by_weight[w] = k;
      assign(page, r, diffs, i, wi + 1, usage, choices, forced, pages);
      d.choice.rank_by_weight.erase(w);
      d.choice.rank -= k;
      src_out -= k;
      tgt_in -= k;
    }
  }

  void finish(const SSPage& einf, const std::vector<DifferentialChoice>& choices,
              const std::vector<DifferentialChoice>& forced, const std::vector<SSPage>& pages) {
    if (++result_.enumerated > cap_)
      throw Error(ErrorKind::AssignmentCapExceeded, "more than " + std::to_string(cap_) + " rank assignments");
    if (start_.abutment_smooth_proper && !pure(einf)) {
      ++result_.rejected_by_purity;
      return;
    }
    if (result_.survivors.empty()) first_forced_ = forced;
    result_.survivors.push_back(Candidate{choices, pages});
  }

  bool pure(const SSPage& einf) const {
    for (const auto& [k, v] : abutment(einf).entries) {
      if (start_.abutment_dimension > 0 && k > start_.abutment_dimension) return false;
      for (int w : v.weights())
        if (w != k) return false;
    }
    return true;
  }

  const SSPage& start_;
  std::size_t cap_;
  int r_last_ = 0;
  Resolution result_;
  std::vector<DifferentialChoice> first_forced_;
};

}  // namespace

Resolution resolve(const SSPage& page, std::size_t cap) { return Solver(page, cap).run(); }

CohomologyTable abutment(const SSPage& einf) {
  CohomologyTable t;
  t.label = einf.label;
  for (const auto& [pq, v] : einf.entries) {
    const int k = pq.first + pq.second;
    if (k < 0) throw Error(ErrorKind::InvalidInput, "negative total degree in abutment");
    t.add(k, v);
  }
  return t;
}

CohomologyTable gysin_split(const CohomologyTable& open_table, const CohomologyTable& closed_table) {
  for (const auto& [k, closed] : closed_table.entries) {
    const auto& open = open_table.at(k + 1);
    if (open.empty()) continue;
    const auto wc = closed.weights(), wo = open.weights();
    std::vector<int> common;
    std::set_intersection(wc.begin(), wc.end(), wo.begin(), wo.end(), std::back_inserter(common));
    if (!common.empty())
      throw Error(ErrorKind::SplitNotJustified, "connecting map H_c^" + std::to_string(k) + "(closed) -> H_c^" +
                                                    std::to_string(k + 1) + "(open) may be nonzero");
  }
  CohomologyTable out = mhs::direct_sum(open_table, closed_table);
  out.label.clear();
  return out;
}

SSPage leray_assemble(const std::map<std::string, CohomologyTable>& base_tables, const std::vector<FiberItem>& fiber,
                      int page) {
  SSPage out;
  out.r = page;
  for (const auto& item : fiber) {
    auto it = base_tables.find(item.tag);
    if (it == base_tables.end()) throw Error(ErrorKind::MissingTag, "no base table for local system '" + item.tag + "'");
    for (const auto& [p, v] : it->second.entries)
      out.add(p, item.degree, item.twist == 0 ? v : mhs::tate_twist(v, item.twist));
  }
  return out;
}

ordered_json to_json(const SSPage& page) {
  ordered_json entries = ordered_json::array();
  for (const auto& [pq, v] : page.entries)
    entries.push_back(ordered_json{{"p", pq.first}, {"q", pq.second}, {"classes", mhs::classes_to_json(v)}});
  ordered_json knowns = ordered_json::array();
  for (const auto& k : page.knowns)
    knowns.push_back(ordered_json{{"r", k.r}, {"p", k.p}, {"q", k.q}, {"rank", k.rank}, {"citation", k.citation}});
  ordered_json j{{"label", page.label}, {"page", page.r}, {"entries", entries}, {"knowns", knowns}};
  if (page.abutment_smooth_proper) j["purity"] = true;
  if (page.abutment_dimension > 0) j["dim"] = page.abutment_dimension;
  return j;
}

SSPage page_from_json(const ordered_json& j) {
  try {
    SSPage page;
    page.label = j.value("label", "");
    page.r = j.value("page", 1);
    if (j.contains("entries"))
      for (const auto& e : j.at("entries"))
        page.add(e.at("p").get<int>(), e.at("q").get<int>(), mhs::classes_from_json(e.at("classes")));
    if (j.contains("knowns"))
      for (const auto& k : j.at("knowns"))
        page.knowns.push_back(KnownDifferential{k.at("r").get<int>(), k.at("p").get<int>(), k.at("q").get<int>(),
                                                k.at("rank").get<int>(), k.value("citation", "")});
    page.abutment_smooth_proper = j.value("purity", false);
    page.abutment_dimension = j.value("dim", 0);
    return page;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed page JSON: ") + ex.what());
  }
}

namespace {

ordered_json choice_json(const DifferentialChoice& c) {
  ordered_json by_weight = ordered_json::array();
  for (const auto& [w, k] : c.rank_by_weight) by_weight.push_back(ordered_json{{"weight", w}, {"rank", k}});
  ordered_json j{{"r", c.r}, {"p", c.p}, {"q", c.q}, {"status", std::string(to_string(c.status))}, {"rank", c.rank},
                 {"rank_by_weight", by_weight}};
  if (!c.citation.empty()) j["citation"] = c.citation;
  return j;
}

}  // namespace

ordered_json to_json(const Resolution& res) {
  ordered_json candidates = ordered_json::array();
  for (const auto& c : res.survivors) {
    ordered_json choices = ordered_json::array();
    for (const auto& d : c.choices) choices.push_back(choice_json(d));
    candidates.push_back(ordered_json{{"choices", choices}, {"einf", to_json(c.einf())}});
  }
  ordered_json determined = ordered_json::array();
  for (const auto& d : res.determined) determined.push_back(choice_json(d));
  std::string status = res.survivors.empty() ? "inconsistent" : (res.unique() ? "unique" : "ambiguous");
  return ordered_json{{"status", status},
                      {"enumerated", res.enumerated},
                      {"rejected_by_purity", res.rejected_by_purity},
                      {"distinct_outcomes", res.distinct_outcomes},
                      {"determined", determined},
                      {"candidates", candidates}};
}

namespace {

struct GridExtent {
  int pmin = 0, pmax = -1, qmin = 0, qmax = -1;
};

GridExtent extent(const SSPage& page) {
  GridExtent e;
  bool first = true;
  for (const auto& [pq, v] : page.entries) {
    if (first) {
      e = {pq.first, pq.first, pq.second, pq.second};
      first = false;
    }
    e.pmin = std::min(e.pmin, pq.first);
    e.pmax = std::max(e.pmax, pq.first);
    e.qmin = std::min(e.qmin, pq.second);
    e.qmax = std::max(e.qmax, pq.second);
  }
  return e;
}

}  // namespace

std::string to_text(const SSPage& page) {
  std::ostringstream os;
  if (!page.label.empty()) os << page.label << "\n";
  os << "E_" << page.r << "\n";
  const auto e = extent(page);
  if (e.pmax < e.pmin) {
    os << "(zero)\n";
    return os.str();
  }
  size_t width = 1;
  for (const auto& [pq, v] : page.entries) width = std::max(width, mhs::to_string(v).size());
  for (int q = e.qmax; q >= e.qmin; --q) {
    os << std::setw(3) << q << " |";
    for (int p = e.pmin; p <= e.pmax; ++p) os << " " << std::setw(static_cast<int>(width)) << mhs::to_string(page.at(p, q));
    os << "\n";
  }
  os << "    +" << std::string((width + 1) * static_cast<size_t>(e.pmax - e.pmin + 1), '-') << "\n     ";
  for (int p = e.pmin; p <= e.pmax; ++p) os << " " << std::setw(static_cast<int>(width)) << p;
  os << "\n";
  return os.str();
}

std::string to_latex(const SSPage& page) {
  std::ostringstream os;
  const auto e = extent(page);
  if (e.pmax < e.pmin) return "\\begin{array}{r|c}\nq&\\\\\n\\hline\n&p\n\\end{array}\n";
  os << "\\begin{array}{r|" << std::string(static_cast<size_t>(e.pmax - e.pmin + 2), 'c') << "}\n";
  os << "q&&&&\\\\[6pt]\n";
  for (int q = e.qmax; q >= e.qmin; --q) {
    os << q;
    for (int p = e.pmin; p <= e.pmax; ++p) os << "&" << mhs::to_latex(page.at(p, q));
    os << "\\\\\n";
  }
  os << "\\hline\n";
  for (int p = e.pmin; p <= e.pmax; ++p) os << " &" << p;
  os << "&p\n\\end{array}\n";
  return os.str();
}

std::string to_text(const Resolution& res) {
  std::ostringstream os;
  const char* status = res.survivors.empty() ? "inconsistent" : (res.unique() ? "unique" : "ambiguous");
  os << "status: " << status << " (" << res.survivors.size() << " surviving assignment(s), " << res.distinct_outcomes
     << " distinct E_inf, " << res.enumerated << " enumerated, " << res.rejected_by_purity << " rejected by purity)\n";
  for (const auto& d : res.determined)
    os << "d_" << d.r << "^{" << d.p << "," << d.q << "} rank " << d.rank << " [" << to_string(d.status) << "] "
       << d.citation << "\n";
  for (size_t i = 0; i < res.survivors.size(); ++i) {
    os << "candidate " << i + 1 << ":";
    if (res.survivors[i].choices.empty()) os << " (no undetermined differentials)";
    for (const auto& d : res.survivors[i].choices) os << " d_" << d.r << "^{" << d.p << "," << d.q << "}=" << d.rank;
    os << "\n";
  }
  return os.str();
}

}  // namespace avor3::ss
