#include "avor3/equivariant.hpp"

#include "avor3/error.hpp"

#include <deque>

namespace avor3::equi {

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

int to_nonnegative_int(const Rational& x, int degree) {
  if (x.denominator() != 1 || x.numerator() < 0)
    throw Error(ErrorKind::NonIntegralInvariant,
                "invariant dimension " + to_string(x) + " in degree " + std::to_string(degree));
  return static_cast<int>(x.numerator());
}

}  // namespace

std::vector<Element> group_closure(const LinearRep& rep, int cap) {
  for (const auto& g : rep.generators)
    if (g.rows() != rep.dim || g.cols() != rep.dim)
      throw Error(ErrorKind::InvalidInput, "generator shape does not match representation dimension");
  if (!rep.signs.empty() && rep.signs.size() != rep.generators.size())
    throw Error(ErrorKind::InvalidInput, "one sign per generator required");

  std::map<QMatrix, int> seen;
  std::vector<Element> elements;
  std::deque<size_t> queue;
  auto visit = [&](QMatrix m, int chi) {
    auto [it, inserted] = seen.emplace(m, chi);
    if (!inserted) {
      if (it->second != chi)
        throw Error(ErrorKind::CharacterNotMultiplicative, "a group element carries both signs");
      return;
    }
    if (static_cast<int>(elements.size()) >= cap)
      throw Error(ErrorKind::NotClosedWithinCap, "group order exceeds cap " + std::to_string(cap));
    elements.push_back(Element{std::move(m), chi});
    queue.push_back(elements.size() - 1);
  };
  visit(QMatrix::identity(rep.dim), 1);
  while (!queue.empty()) {
    const size_t idx = queue.front();
    queue.pop_front();
    for (size_t g = 0; g < rep.generators.size(); ++g) {
      const Element& cur = elements[idx];
      visit(cur.matrix * rep.generators[g], cur.chi * rep.sign_of(g));
    }
  }
  return elements;
}

std::vector<Rational> det_one_plus_t(const QMatrix& m) {
  // char poly det(x I - m) = sum_k c_k x^{n-k}; det(I + t m) = sum_k (-1)^k c_k t^k.
  const int n = m.rows();
  std::vector<Rational> c(static_cast<size_t>(n + 1));
  c[0] = 1;
  QMatrix mk(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = m * mk + QMatrix::identity(n).scaled(c[static_cast<size_t>(k - 1)]);
    c[static_cast<size_t>(k)] = -(m * mk).trace() / Rational(k);
  }
  std::vector<Rational> e(static_cast<size_t>(n + 1));
  for (int k = 0; k <= n; ++k) e[static_cast<size_t>(k)] = (k % 2 ? -c[static_cast<size_t>(k)] : c[static_cast<size_t>(k)]);
  return e;
}

std::vector<int> exterior_invariant_dims(const std::vector<Element>& group, int dim) {
  std::vector<Rational> sum(static_cast<size_t>(dim + 1));
  for (const auto& g : group) {
    const auto e = det_one_plus_t(g.matrix);
    for (int k = 0; k <= dim; ++k) sum[static_cast<size_t>(k)] += Rational(g.chi) * e[static_cast<size_t>(k)];
  }
  std::vector<int> out;
  const Rational order(static_cast<std::int64_t>(group.size()));
  for (int k = 0; k <= dim; ++k) out.push_back(to_nonnegative_int(sum[static_cast<size_t>(k)] / order, k));
  return out;
}

std::vector<int> exterior_invariant_dims(const LinearRep& rep, int cap) {
  return exterior_invariant_dims(group_closure(rep, cap), rep.dim);
}

QMatrix exterior_power(const QMatrix& m, int k) {
  const auto subsets = subsets_of_size(m.rows(), k);
  const int n = static_cast<int>(subsets.size());
  QMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = k == 0 ? Rational(1) : m.minor_matrix(subsets[static_cast<size_t>(i)], subsets[static_cast<size_t>(j)]).determinant();
  return out;
}

std::vector<int> fixed_subspace_dims_bruteforce(const std::vector<Element>& group, int dim) {
  std::vector<int> out;
  const Rational inv_order(1, static_cast<std::int64_t>(group.size()));
  for (int k = 0; k <= dim; ++k) {
    QMatrix projector;
    for (const auto& g : group) {
      QMatrix term = exterior_power(g.matrix, k).scaled(Rational(g.chi));
      if (projector.rows() == 0)
        projector = std::move(term);
      else
        projector += term;
    }
    out.push_back(projector.scaled(inv_order).rank());
  }
  return out;
}

std::vector<int> fixed_subspace_dims_bruteforce(const LinearRep& rep, int cap) {
  return fixed_subspace_dims_bruteforce(group_closure(rep, cap), rep.dim);
}

Rational averaged_euler_characteristic(const std::vector<Element>& group) {
  Rational sum = 0;
  for (const auto& g : group) {
    const int n = g.matrix.rows();
    QMatrix a = QMatrix::identity(n);
    a += g.matrix.scaled(Rational(-1));
    sum += Rational(g.chi) * (n == 0 ? Rational(1) : a.determinant());
  }
  return sum / Rational(static_cast<std::int64_t>(group.size()));
}

std::map<int, int> order_histogram(const std::vector<QMatrix>& elements) {
  std::map<int, int> hist;
  for (const auto& m : elements) ++hist[multiplicative_order(m)];
  return hist;
}

LinearRep rep_from_integer_matrices(int dim, const std::vector<QMatrix>& generators) {
  LinearRep rep;
  rep.dim = dim;
  rep.generators = generators;
  return rep;
}

}  // namespace avor3::equi
