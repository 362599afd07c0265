#pragma once

// Dense matrices over Q with exact arithmetic.

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

// Boost 1.74's mixed rational/integer operator== recurses forever once C++20
// synthesizes the reversed candidate. Exact non-template overloads win.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long long b) { return a == rational<std::int64_t>(b); }
}  // namespace boost

namespace avor3 {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols)) {}
  QMatrix(int rows, int cols, std::vector<Rational> data);

  static QMatrix identity(int n);
  static QMatrix from_integers(const std::vector<std::vector<std::int64_t>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return data_[static_cast<size_t>(i * cols_ + j)]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<size_t>(i * cols_ + j)]; }

  const std::vector<Rational>& data() const { return data_; }

  QMatrix operator*(const QMatrix& other) const;
  QMatrix operator+(const QMatrix& other) const;
  QMatrix& operator+=(const QMatrix& other);
  QMatrix scaled(const Rational& s) const;

  Rational trace() const;
  Rational determinant() const;
  int rank() const;
  // Throws InvalidInput if singular.
  QMatrix inverse() const;
  bool is_identity() const;

  // Submatrix on the given (sorted) row and column index sets.
  QMatrix minor_matrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const;

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const QMatrix& a, const QMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

// Order of a matrix in GL(n,Q), or 0 if it exceeds max_order.
int multiplicative_order(const QMatrix& m, int max_order = 1000);

}  // namespace avor3
