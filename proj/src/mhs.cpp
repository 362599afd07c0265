#include "avor3/mhs.hpp"

#include "avor3/error.hpp"

#include <algorithm>
#include <sstream>

namespace avor3::mhs {

MhsVector MhsVector::tate(int n, int mult) { return MhsVector().add_tate(n, mult); }

MhsVector MhsVector::atom_f(int count) { return MhsVector().add_f(count); }

MhsVector& MhsVector::add_tate(int n, int mult) {
  if (mult < 0) throw Error(ErrorKind::InvalidInput, "negative multiplicity");
  if (mult > 0) tate_[n] += mult;
  return *this;
}

MhsVector& MhsVector::add_f(int count) {
  if (count < 0) throw Error(ErrorKind::InvalidInput, "negative atom count");
  f_count_ += count;
  return *this;
}

int MhsVector::tate_mult(int n) const {
  auto it = tate_.find(n);
  return it == tate_.end() ? 0 : it->second;
}

int MhsVector::dimension() const {
  int d = 2 * f_count_;
  for (const auto& [n, m] : tate_) d += m;
  return d;
}

std::vector<int> MhsVector::weights() const {
  std::vector<int> w;
  for (const auto& [n, m] : tate_) w.insert(w.end(), static_cast<size_t>(m), 2 * n);
  for (int i = 0; i < f_count_; ++i) {
    w.push_back(kAtomSubWeight);
    w.push_back(kAtomQuotientWeight);
  }
  std::sort(w.begin(), w.end());
  return w;
}

std::map<int, int> MhsVector::weight_counts() const {
  std::map<int, int> out;
  for (int w : weights()) ++out[w];
  return out;
}

MhsVector MhsVector::operator+(const MhsVector& o) const {
  MhsVector out = *this;
  out += o;
  return out;
}

MhsVector& MhsVector::operator+=(const MhsVector& o) {
  for (const auto& [n, m] : o.tate_) tate_[n] += m;
  f_count_ += o.f_count_;
  return *this;
}

void MhsVector::remove_tate(int n, int count) {
  if (count == 0) return;
  auto it = tate_.find(n);
  if (it == tate_.end() || it->second < count)
    throw Error(ErrorKind::InvalidInput, "cannot remove " + std::to_string(count) + " x Q(-" + std::to_string(n) + ")");
  it->second -= count;
  if (it->second == 0) tate_.erase(it);
}

void MhsVector::f_lose_sub(int count) {
  if (count > f_count_) throw Error(ErrorKind::InvalidInput, "not enough F atoms");
  f_count_ -= count;
  add_tate(kAtomQuotientWeight / 2, count);
}

void MhsVector::f_lose_quotient(int count) {
  if (count > f_count_) throw Error(ErrorKind::InvalidInput, "not enough F atoms");
  f_count_ -= count;
  add_tate(kAtomSubWeight / 2, count);
}

MhsVector tate_twist(const MhsVector& v, int n) {
  if (v.f_count() > 0) throw Error(ErrorKind::UnsupportedTwist, "F only occurs untwisted");
  MhsVector out;
  for (const auto& [m, mult] : v.tate_classes()) out.add_tate(m + n, mult);
  return out;
}

std::vector<int> weights(const MhsVector& v) { return v.weights(); }

std::string to_string(const MhsVector& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, m] : v.tate_classes()) {
    if (!first) os << " + ";
    first = false;
    os << (n == 0 ? std::string("Q") : "Q(" + std::to_string(-n) + ")");
    if (m > 1) os << "^" << m;
  }
  if (v.f_count() > 0) {
    if (!first) os << " + ";
    os << "F";
    if (v.f_count() > 1) os << "^" << v.f_count();
  }
  return os.str();
}

std::string to_latex(const MhsVector& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, m] : v.tate_classes()) {
    if (!first) os << "\\oplus ";
    first = false;
    os << (n == 0 ? std::string("\\mathbb{Q}") : "\\mathbb{Q}(" + std::to_string(-n) + ")");
    if (m > 1) os << "^{" << m << "}";
  }
  if (v.f_count() > 0) {
    if (!first) os << "\\oplus ";
    os << "F";
    if (v.f_count() > 1) os << "^{" << v.f_count() << "}";
  }
  return os.str();
}

const MhsVector& CohomologyTable::at(int degree) const {
  static const MhsVector kEmpty;
  auto it = entries.find(degree);
  return it == entries.end() ? kEmpty : it->second;
}

void CohomologyTable::add(int degree, const MhsVector& v) {
  if (v.empty()) return;
  if (degree < 0) throw Error(ErrorKind::InvalidInput, "negative degree in cohomology table");
  entries[degree] += v;
}

int CohomologyTable::total_dimension() const {
  int d = 0;
  for (const auto& [k, v] : entries) d += v.dimension();
  return d;
}

int CohomologyTable::euler_characteristic() const {
  int chi = 0;
  for (const auto& [k, v] : entries) chi += (k % 2 ? -1 : 1) * v.dimension();
  return chi;
}

std::vector<int> CohomologyTable::betti(int max_degree) const {
  std::vector<int> b(static_cast<size_t>(max_degree + 1), 0);
  for (const auto& [k, v] : entries) {
    if (k > max_degree) throw Error(ErrorKind::InvalidInput, "class above degree " + std::to_string(max_degree));
    b[static_cast<size_t>(k)] = v.dimension();
  }
  return b;
}

CohomologyTable poincare_dualize(const CohomologyTable& t, int dim) {
  CohomologyTable out;
  out.label = t.label;
  for (const auto& [k, v] : t.entries) {
    const int target = 2 * dim - k;
    if (target < 0) throw Error(ErrorKind::InvalidInput, "degree " + std::to_string(k) + " exceeds 2*dim");
    if (v.f_count() > 0 && k != dim)
      throw Error(ErrorKind::UnsupportedTwist, "F can only be reflected in the middle degree");
    MhsVector dual;
    for (const auto& [n, m] : v.tate_classes()) {
      if (dim - n < 0)
        throw Error(ErrorKind::NegativeTwist, "dualizing Q(-" + std::to_string(n) + ") in dimension " + std::to_string(dim));
      dual.add_tate(dim - n, m);
    }
    dual.add_f(v.f_count());
    out.add(target, dual);
  }
  return out;
}

CohomologyTable direct_sum(const CohomologyTable& a, const CohomologyTable& b) {
  CohomologyTable out = a;
  for (const auto& [k, v] : b.entries) out.add(k, v);
  return out;
}

ordered_json classes_to_json(const MhsVector& v) {
  ordered_json classes = ordered_json::array();
  for (const auto& [n, m] : v.tate_classes()) classes.push_back(ordered_json{{"tate", n}, {"mult", m}});
  for (int i = 0; i < v.f_count(); ++i) classes.push_back(ordered_json{{"atom", "F"}});
  return classes;
}

MhsVector classes_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "'classes' must be an array");
  MhsVector v;
  for (const auto& c : j) {
    if (c.contains("atom")) {
      if (c.at("atom") != "F") throw Error(ErrorKind::InvalidInput, "unknown atom " + c.at("atom").dump());
      v.add_f();
    } else if (c.contains("tate")) {
      v.add_tate(c.at("tate").get<int>(), c.value("mult", 1));
    } else {
      throw Error(ErrorKind::InvalidInput, "class must carry 'tate' or 'atom': " + c.dump());
    }
  }
  return v;
}

ordered_json to_json(const CohomologyTable& t) {
  ordered_json entries = ordered_json::array();
  for (const auto& [k, v] : t.entries) {
    if (v.empty()) continue;
    entries.push_back(ordered_json{{"degree", k}, {"classes", classes_to_json(v)}});
  }
  return ordered_json{{"label", t.label}, {"entries", entries}};
}

CohomologyTable table_from_json(const nlohmann::ordered_json& j) {
  try {
    CohomologyTable t;
    t.label = j.value("label", "");
    for (const auto& e : j.at("entries")) t.add(e.at("degree").get<int>(), classes_from_json(e.at("classes")));
    return t;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed table JSON: ") + ex.what());
  }
}

std::string to_text(const CohomologyTable& t) {
  std::ostringstream os;
  if (!t.label.empty()) os << t.label << "\n";
  for (const auto& [k, v] : t.entries) os << "H^" << k << " = " << to_string(v) << "\n";
  if (t.entries.empty()) os << "(zero)\n";
  return os.str();
}

std::string to_latex(const CohomologyTable& t) {
  std::ostringstream os;
  os << "\\begin{array}{r|l}\n";
  os << "k & H_c^k\\\\\n\\hline\n";
  for (const auto& [k, v] : t.entries) os << k << " & " << to_latex(v) << "\\\\\n";
  os << "\\end{array}\n";
  return os.str();
}

}  // namespace avor3::mhs
