#include "avor3/forms.hpp"

#include "avor3/error.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

namespace avor3::forms {

std::int64_t det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat3 transpose(const Mat3& m) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

Mat3 adjugate(const Mat3& m) {
  Mat3 adj{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      // cyclic index choice gives the signed cofactor directly
      adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  return adj;
}

Vec3 apply(const Mat3& m, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

Mat3 identity3() { return Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 m{};
  for (int i = 0; i < 3; ++i) {
    m[i][0] = c0[i];
    m[i][1] = c1[i];
    m[i][2] = c2[i];
  }
  return m;
}

Vec3 primitive(const Vec3& v) {
  std::int64_t g = std::gcd(std::gcd(v[0], v[1]), v[2]);
  if (g == 0) return v;
  Vec3 out{v[0] / g, v[1] / g, v[2] / g};
  for (auto x : out) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : out) y = -y;
    break;
  }
  return out;
}

SymForm SymForm::from_matrix(const Mat3& m) {
  if (m[0][1] != m[1][0] || m[0][2] != m[2][0] || m[1][2] != m[2][1])
    throw Error(ErrorKind::InvalidInput, "matrix is not symmetric");
  return SymForm{m[0][0], m[1][1], m[2][2], m[0][1], m[0][2], m[1][2]};
}

SymForm SymForm::outer(const Vec3& v) {
  return SymForm{v[0] * v[0], v[1] * v[1], v[2] * v[2], v[0] * v[1], v[0] * v[2], v[1] * v[2]};
}

Mat3 SymForm::matrix() const { return Mat3{{{a11, a12, a13}, {a12, a22, a23}, {a13, a23, a33}}}; }

int SymForm::rank() const {
  const Mat3 m = matrix();
  if (det(m) != 0) return 3;
  for (int r0 = 0; r0 < 3; ++r0)
    for (int r1 = r0 + 1; r1 < 3; ++r1)
      for (int c0 = 0; c0 < 3; ++c0)
        for (int c1 = c0 + 1; c1 < 3; ++c1)
          if (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0] != 0) return 2;
  for (const auto& row : m)
    for (auto x : row)
      if (x != 0) return 1;
  return 0;
}

std::array<std::int64_t, 6> SymForm::coords() const { return {a11, a22, a33, a23, a13, a12}; }

SymForm SymForm::from_coords(const std::array<std::int64_t, 6>& c) {
  return SymForm{c[0], c[1], c[2], c[5], c[4], c[3]};
}

SymForm SymForm::operator+(const SymForm& o) const {
  return SymForm{a11 + o.a11, a22 + o.a22, a33 + o.a33, a12 + o.a12, a13 + o.a13, a23 + o.a23};
}

GroupElement::GroupElement(const Mat3& m) : m_(m) {
  const auto d = forms::det(m);
  if (d != 1 && d != -1)
    throw Error(ErrorKind::NotUnimodular, "det = " + std::to_string(d) + " for " + to_string(m));
  det_ = static_cast<int>(d);
}

GroupElement GroupElement::identity() { return GroupElement(identity3()); }

GroupElement GroupElement::inverse() const {
  Mat3 inv = adjugate(m_);
  if (det_ == -1)
    for (auto& row : inv)
      for (auto& x : row) x = -x;
  return GroupElement(inv);
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  return GroupElement(multiply(m_, o.m_));
}

std::int64_t pairing(const SymForm& a, const Character& f) {
  const auto c = a.coords();
  std::int64_t s = 0;
  for (int k = 0; k < 6; ++k) s += c[k] * f.p[k];
  return s;
}

SymForm act_on_form(const GroupElement& g, const SymForm& q) {
  const Mat3 ginv = g.inverse().matrix();
  return SymForm::from_matrix(multiply(transpose(ginv), multiply(q.matrix(), ginv)));
}

Vec3 rank1_vector(const SymForm& q) {
  if (q.rank() != 1) throw Error(ErrorKind::NotRankOneVector, "form " + to_string(q) + " has rank " + std::to_string(q.rank()));
  const Mat3 m = q.matrix();
  int lead = 0;
  while (m[lead][lead] == 0) ++lead;
  const std::int64_t d = m[lead][lead];
  if (d < 0) throw Error(ErrorKind::NotRankOneVector, "form " + to_string(q) + " is negative");
  // q = c w w^T with w primitive; row `lead` equals c * w_lead * w.
  Vec3 row{m[lead][0], m[lead][1], m[lead][2]};
  Vec3 w = primitive(row);
  const std::int64_t wl = w[lead];
  if (d % (wl * wl) != 0) throw Error(ErrorKind::NotRankOneVector, "form " + to_string(q));
  const std::int64_t c = d / (wl * wl);
  // must be a perfect square for q = v v^T over Z
  std::int64_t s = 0;
  while (s * s < c) ++s;
  if (s * s != c || SymForm::outer(Vec3{s * w[0], s * w[1], s * w[2]}) != q)
    throw Error(ErrorKind::NotRankOneVector, "form " + to_string(q) + " is not v v^T over Z");
  return w;
}

Character dual_action_on_character(const GroupElement& g, const Character& f) {
  const GroupElement ginv = g.inverse();
  Character out;
  for (int k = 0; k < 6; ++k) {
    std::array<std::int64_t, 6> e{};
    e[k] = 1;
    out.p[k] = pairing(act_on_form(ginv, SymForm::from_coords(e)), f);
  }
  return out;
}

SymForm alpha(int i) {
  Vec3 v{};
  v.at(static_cast<size_t>(i - 1)) = 1;
  return SymForm::outer(v);
}

SymForm beta(int i) {
  const int j = i % 3, k = (i + 1) % 3;  // 0-based partners of 1-based i
  Vec3 v{};
  v[std::min(j, k)] = 1;
  v[std::max(j, k)] = -1;
  return SymForm::outer(v);
}

std::string to_string(const SymForm& q) {
  std::ostringstream os;
  os << "[[" << q.a11 << "," << q.a12 << "," << q.a13 << "],[" << q.a12 << "," << q.a22 << "," << q.a23
     << "],[" << q.a13 << "," << q.a23 << "," << q.a33 << "]]";
  return os.str();
}

std::string to_string(const Vec3& v) {
  std::ostringstream os;
  os << "(" << v[0] << "," << v[1] << "," << v[2] << ")";
  return os.str();
}

std::string to_string(const Mat3& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << (i ? ",[" : "[") << m[i][0] << "," << m[i][1] << "," << m[i][2] << "]";
  }
  os << "]";
  return os.str();
}

std::string monomial_string(const Character& f) {
  static const char* names[6] = {"t11", "t22", "t33", "t23", "t13", "t12"};
  std::string out;
  for (int k = 0; k < 6; ++k) {
    if (f.p[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[k];
    if (f.p[k] != 1) out += "^" + std::to_string(f.p[k]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace avor3::forms
