#include "hmult/matrix.hpp"

#include <gmp.h>

#include <utility>

#include "hmult/error.hpp"

namespace hmult {
namespace detail {

namespace {

mpz_ptr raw(Integer& z) { return z.backend().data(); }
mpz_srcptr raw(const Integer& z) { return z.backend().data(); }

void swap_rows(IntegerMatrix& a, Index i, Index j) {
  if (i == j) return;
  for (Index c = 0; c < a.cols(); ++c) mpz_swap(raw(a(i, c)), raw(a(j, c)));
}

// Forward Bareiss sweep. Leaves `a` in fraction-free row echelon form and
// returns the pivot columns.
std::vector<Index> bareiss_forward(IntegerMatrix& a) {
  std::vector<Index> pivots;
  Integer prev(1);
  Integer t;
  Index r = 0;
  const Index rows = a.rows(), cols = a.cols();
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    swap_rows(a, p, r);
    const Integer& piv = a(r, c);
    for (Index i = r + 1; i < rows; ++i) {
      const bool zero_lead = a(i, c) == 0;
      for (Index j = c + 1; j < cols; ++j) {
        // a(i,j) = (piv * a(i,j) - a(i,c) * a(r,j)) / prev, exact by Sylvester.
        mpz_mul(raw(t), raw(piv), raw(a(i, j)));
        if (!zero_lead) mpz_submul(raw(t), raw(a(i, c)), raw(a(r, j)));
        mpz_divexact(raw(a(i, j)), raw(t), raw(prev));
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

IntegerMatrix scale_rows_to_integers(const RationalMatrix& m) {
  IntegerMatrix out(m.rows(), m.cols());
  Integer l;
  for (Index i = 0; i < m.rows(); ++i) {
    l = 1;
    for (Index j = 0; j < m.cols(); ++j) {
      const Integer d = denominator(m(i, j));
      if (d != 1) mpz_lcm(raw(l), raw(l), raw(d));
    }
    for (Index j = 0; j < m.cols(); ++j)
      out(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
  }
  return out;
}

Index bareiss_rank(IntegerMatrix a) {
  return static_cast<Index>(bareiss_forward(a).size());
}

EchelonForm rref_integer(IntegerMatrix a) {
  const std::vector<Index> pivots = bareiss_forward(a);
  const Index r = static_cast<Index>(pivots.size());
  EchelonForm e;
  e.pivots = pivots;
  e.reduced.resize(r, a.cols());
  for (Index i = 0; i < r; ++i) {
    const Rational lead(a(i, pivots[i]));
    for (Index j = 0; j < a.cols(); ++j)
      e.reduced(i, j) = j < pivots[i] ? Rational(0) : Rational(a(i, j)) / lead;
  }
  // Back substitution, bottom-up, clears entries above each pivot.
  for (Index i = r - 1; i >= 0; --i) {
    const Index pc = pivots[i];
    for (Index h = 0; h < i; ++h) {
      const Rational f = e.reduced(h, pc);
      if (f == 0) continue;
      for (Index j = pc; j < a.cols(); ++j)
        if (e.reduced(i, j) != 0) e.reduced(h, j) -= f * e.reduced(i, j);
    }
  }
  return e;
}

RationalMatrix nullspace_from_rref(const EchelonForm& e, Index cols) {
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : e.pivots) is_pivot[p] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  RationalMatrix basis = RationalMatrix::Zero(static_cast<Index>(free_cols.size()), cols);
  for (std::size_t n = 0; n < free_cols.size(); ++n) {
    const Index f = free_cols[n];
    basis(static_cast<Index>(n), f) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      basis(static_cast<Index>(n), e.pivots[i]) = -e.reduced(static_cast<Index>(i), f);
  }
  if (basis.rows() == 0) return basis;
  return rref(basis).reduced;
}

}  // namespace detail

RationalMatrix coordinates_in_echelon_basis(const RationalMatrix& vectors,
                                            const EchelonForm& basis) {
  const Index n = static_cast<Index>(basis.pivots.size());
  RationalMatrix coords(vectors.rows(), n);
  for (Index v = 0; v < vectors.rows(); ++v) {
    RationalRow residual = vectors.row(v);
    for (Index i = 0; i < n; ++i) {
      const Rational c = residual(basis.pivots[static_cast<std::size_t>(i)]);
      coords(v, i) = c;
      if (c != 0) residual -= c * basis.reduced.row(i);
    }
    for (Index j = 0; j < residual.cols(); ++j)
      if (residual(j) != 0)
        throw Error(ErrorKind::InvariantViolation, "vector not in the span of the echelon basis");
  }
  return coords;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "multiply: shape mismatch");
  const IntegerMatrix ai = detail::scale_rows_to_integers(a);
  const IntegerMatrix bt = detail::scale_rows_to_integers(b.transpose());
  // a.row(i) = row_scale[i] * ai.row(i), likewise for columns of b
  std::vector<Rational> row_scale(static_cast<std::size_t>(a.rows()), Rational(1));
  std::vector<Rational> col_scale(static_cast<std::size_t>(b.cols()), Rational(1));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) {
        row_scale[i] = a(i, j) / Rational(ai(i, j));
        break;
      }
  for (Index j = 0; j < b.cols(); ++j)
    for (Index i = 0; i < b.rows(); ++i)
      if (b(i, j) != 0) {
        col_scale[j] = b(i, j) / Rational(bt(j, i));
        break;
      }
  RationalMatrix out(a.rows(), b.cols());
  Integer acc;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      acc = 0;
      for (Index l = 0; l < a.cols(); ++l)
        if (ai(i, l) != 0 && bt(j, l) != 0)
          mpz_addmul(acc.backend().data(), ai(i, l).backend().data(), bt(j, l).backend().data());
      out(i, j) = acc == 0 ? Rational(0) : Rational(acc) * row_scale[i] * col_scale[j];
    }
  return out;
}

}  // namespace hmult
