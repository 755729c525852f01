#pragma once

// Dense exact linear algebra over Q.
//
// All entry points accept any Eigen expression whose scalar is Rational or
// Integer, so `rank(t - lambda * identity)` works without a temporary at the
// call site. Internally rows are scaled to integers (row scaling preserves the
// row space) and reduced by fraction-free Bareiss elimination with
// deterministic pivoting: first nonzero entry, top to bottom, columns left to
// right.

#include <Eigen/Dense>

#include <type_traits>
#include <vector>

#include "hmult/rational.hpp"

namespace hmult {

template <typename Scalar>
using DenseMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RationalMatrix = DenseMatrix<Rational>;
using IntegerMatrix = DenseMatrix<Integer>;
using RationalRow = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;
using Index = Eigen::Index;

struct EchelonForm {
  RationalMatrix reduced;      // reduced row echelon form, zero rows dropped
  std::vector<Index> pivots;   // pivot column of each row of `reduced`
};

namespace detail {

IntegerMatrix scale_rows_to_integers(const RationalMatrix& m);
Index bareiss_rank(IntegerMatrix a);
EchelonForm rref_integer(IntegerMatrix a);
RationalMatrix nullspace_from_rref(const EchelonForm& e, Index cols);

template <typename Derived>
IntegerMatrix integer_rows(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  static_assert(std::is_same_v<Scalar, Rational> || std::is_same_v<Scalar, Integer>,
                "exact linear algebra needs Rational or Integer scalars");
  if constexpr (std::is_same_v<Scalar, Integer>) {
    return m;
  } else {
    return scale_rows_to_integers(m);
  }
}

}  // namespace detail

/// Rank over Q.
template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return detail::bareiss_rank(detail::integer_rows(m));
}

/// cols - rank: dimension of {v : m v = 0}.
template <typename Derived>
Index nullity(const Eigen::MatrixBase<Derived>& m) {
  return m.cols() - rank(m);
}

template <typename Derived>
EchelonForm rref(const Eigen::MatrixBase<Derived>& m) {
  return detail::rref_integer(detail::integer_rows(m));
}

/// Basis of {v : m v = 0} as the rows of a matrix in reduced echelon form.
template <typename Derived>
RationalMatrix nullspace(const Eigen::MatrixBase<Derived>& m) {
  return detail::nullspace_from_rref(rref(m), m.cols());
}

/// Basis of {v : v m = 0} (left kernel), rows in reduced echelon form.
template <typename Derived>
RationalMatrix left_nullspace(const Eigen::MatrixBase<Derived>& m) {
  return nullspace(m.transpose());
}

inline RationalMatrix identity(Index n) {
  return RationalMatrix::Identity(n, n);
}

/// Coordinates of the rows of `vectors` with respect to a reduced echelon
/// basis (rows of `basis`, pivot columns `pivots`). Assumes the rows lie in
/// the span; that is checked and violations throw.
RationalMatrix coordinates_in_echelon_basis(const RationalMatrix& vectors,
                                            const EchelonForm& basis);

/// Matrix product computed through integer numerators; identical result to
/// a * b, much cheaper when the operands share small denominators.
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace hmult
