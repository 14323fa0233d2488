#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "a1lab/errors.hpp"
#include "a1lab/field.hpp"
#include "a1lab/multipoly.hpp"

namespace Eigen {

template <>
struct NumTraits<a1lab::Gf> : GenericNumTraits<a1lab::Gf> {
  using Real = a1lab::Gf;
  using NonInteger = a1lab::Gf;
  using Literal = a1lab::Gf;
  using Nested = a1lab::Gf;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 3
  };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Literal = mpq_class;
  using Nested = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace a1lab {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Reduced row echelon form with the pivot column of each nonzero row.
template <class S>
struct RowEchelon {
  Matrix<S> reduced;
  std::vector<Eigen::Index> pivots;
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Exact Gauss-Jordan elimination; any nonzero entry is a valid pivot.
template <class S>
RowEchelon<S> row_reduce(Matrix<S> m) {
  RowEchelon<S> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = row; i < m.rows(); ++i) {
      if (!is_zero(m(i, col))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(row));
    const S scale = inverse(m(row, col));
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * scale;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const S factor = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - factor * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class S>
Eigen::Index rank(const Matrix<S>& m) {
  return row_reduce(m).rank();
}

/// Basis of the right kernel, one vector per column. `one` fixes the field.
template <class S>
Matrix<S> kernel_basis(const Matrix<S>& m, const S& one) {
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : ech.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  const S zero = like(one, 0);
  Matrix<S> basis(m.cols(), m.cols() - ech.rank());
  basis.setConstant(zero);
  Eigen::Index out_col = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, out_col) = one;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      basis(ech.pivots[r], out_col) = -ech.reduced(static_cast<Eigen::Index>(r), free);
    ++out_col;
  }
  return basis;
}

/// Inverse of a square matrix, or nullopt when singular.
template <class S>
std::optional<Matrix<S>> inverse_matrix(const Matrix<S>& m, const S& one) {
  if (m.rows() != m.cols()) throw InputError("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  Matrix<S> aug(n, 2 * n);
  aug.setConstant(like(one, 0));
  aug.leftCols(n) = m;
  for (Eigen::Index i = 0; i < n; ++i) aug(i, n + i) = one;
  auto ech = row_reduce(std::move(aug));
  if (ech.rank() < n || ech.pivots.back() >= n) return std::nullopt;
  return Matrix<S>(ech.reduced.rightCols(n));
}

template <class S>
Vector<S> mat_vec(const Matrix<S>& m, std::span<const S> v) {
  if (static_cast<std::size_t>(m.cols()) != v.size()) throw InputError("dimension mismatch in matrix-vector product");
  Vector<S> out(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    S acc = like(v.empty() ? S(0) : v[0], 0);
    for (Eigen::Index j = 0; j < m.cols(); ++j) acc += m(i, j) * v[static_cast<std::size_t>(j)];
    out(i) = acc;
  }
  return out;
}

/// Matrix of partial derivatives of `system` at `point` (rows = polynomials).
template <class S>
Matrix<S> jacobian_at(std::span<const MultiPoly<S>> system, std::span<const S> point) {
  const auto nvars = point.size();
  Matrix<S> jac(static_cast<Eigen::Index>(system.size()), static_cast<Eigen::Index>(nvars));
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (system[i].num_vars() != nvars) throw InputError("point dimension does not match the system");
    for (std::size_t j = 0; j < nvars; ++j)
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evaluate(derivative(system[i], j), point);
  }
  return jac;
}

/// Rank of the Jacobian of `system` at a common zero `point`.
template <class S>
Eigen::Index jacobian_rank_at(std::span<const MultiPoly<S>> system, std::span<const S> point) {
  for (const auto& f : system) {
    if (f.num_vars() != point.size()) throw InputError("point dimension does not match the system");
    if (!is_zero(evaluate(f, point))) throw PreconditionError("jacobian_rank_at: point is not a zero of the system");
  }
  return rank(jacobian_at(system, point));
}

template <class S>
Eigen::Index jacobian_rank_at(const std::vector<MultiPoly<S>>& system, const std::vector<S>& point) {
  return jacobian_rank_at(std::span<const MultiPoly<S>>(system), std::span<const S>(point));
}

/// Invertible change of coordinates A with A e_0 = x: column 0 is x, the others
/// are the standard vectors except the first coordinate where x is nonzero.
template <class S>
Matrix<S> frame_at(std::span<const S> x) {
  Eigen::Index pivot = -1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_zero(x[i])) {
      pivot = static_cast<Eigen::Index>(i);
      break;
    }
  }
  if (pivot < 0) throw InputError("the zero vector is not a projective point");
  const S one = like(x[static_cast<std::size_t>(pivot)], 1), zero = like(one, 0);
  const auto n = static_cast<Eigen::Index>(x.size());
  Matrix<S> a(n, n);
  a.setConstant(zero);
  for (Eigen::Index i = 0; i < n; ++i) a(i, 0) = x[static_cast<std::size_t>(i)];
  Eigen::Index col = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == pivot) continue;
    a(i, col++) = one;
  }
  return a;
}

}  // namespace a1lab
