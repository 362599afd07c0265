#include "avor3/rational.hpp"

#include "avor3/error.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

namespace avor3 {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw Error(ErrorKind::InvalidInput, "cannot parse rational '" + text + "'");
    return v;
  };
  std::string_view sv(text);
  auto slash = sv.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(sv));
  auto den = parse_int(sv.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
  return Rational(parse_int(sv.substr(0, slash)), den);
}

QMatrix::QMatrix(int rows, int cols, std::vector<Rational> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != static_cast<size_t>(rows * cols))
    throw Error(ErrorKind::InvalidInput, "matrix data size mismatch");
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_integers(const std::vector<std::vector<std::int64_t>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  QMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw Error(ErrorKind::InvalidInput, "ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorKind::InvalidInput, "matrix shape mismatch in product");
  QMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& other) const {
  QMatrix out = *this;
  out += other;
  return out;
}

QMatrix& QMatrix::operator+=(const QMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorKind::InvalidInput, "matrix shape mismatch in sum");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

QMatrix QMatrix::scaled(const Rational& s) const {
  QMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

Rational QMatrix::trace() const {
  Rational t = 0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Rational QMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorKind::InvalidInput, "determinant of non-square matrix");
  QMatrix a = *this;
  Rational det = 1;
  const int n = rows_;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      Rational f = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

int QMatrix::rank() const {
  QMatrix a = *this;
  int rank = 0;
  for (int col = 0; col < cols_ && rank < rows_; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows_; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    for (int j = 0; j < cols_; ++j) std::swap(a(pivot, j), a(rank, j));
    for (int r = 0; r < rows_; ++r) {
      if (r == rank || a(r, col) == 0) continue;
      Rational f = a(r, col) / a(rank, col);
      for (int j = col; j < cols_; ++j) a(r, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

QMatrix QMatrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorKind::InvalidInput, "inverse of non-square matrix");
  const int n = rows_;
  QMatrix a = *this;
  QMatrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw Error(ErrorKind::InvalidInput, "singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(a(pivot, j), a(col, j));
      std::swap(inv(pivot, j), inv(col, j));
    }
    const Rational p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

bool QMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

QMatrix QMatrix::minor_matrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
  QMatrix out(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
  for (size_t i = 0; i < row_idx.size(); ++i)
    for (size_t j = 0; j < col_idx.size(); ++j)
      out(static_cast<int>(i), static_cast<int>(j)) = (*this)(row_idx[i], col_idx[j]);
  return out;
}

bool operator<(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  return std::lexicographical_compare(a.data_.begin(), a.data_.end(), b.data_.begin(), b.data_.end());
}

int multiplicative_order(const QMatrix& m, int max_order) {
  QMatrix power = m;
  for (int k = 1; k <= max_order; ++k) {
    if (power.is_identity()) return k;
    power = power * m;
  }
  return 0;
}

}  // namespace avor3
