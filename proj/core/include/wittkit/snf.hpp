#pragma once

#include "wittkit/matrix.hpp"

#include <optional>

namespace wittkit::exactalg {

/// Smith normal form A = U * D * V with U, V invertible over the ring and
/// D diagonal with d1 | d2 | ... and zero entries trailing. Inverses of the
/// transforms are accumulated during reduction, so they are exact by
/// construction.
struct SmithDecomposition {
  Matrix U, D, V;
  Matrix Uinv, Vinv;
  int det_u_sign = 1; // over Z: det(U), det(V) in {+1, -1}
  int det_v_sign = 1;

  int rank() const;
  /// Diagonal entry, structural zeros beyond min(rows, cols).
  Int diag(int t) const;
};

/// Pivot rule: smallest absolute value, ties broken row-major.
/// Over Z/n the matrix is lifted to Z, reduced there, and the diagonal is
/// normalized to canonical divisors gcd(d, n) by unit scaling.
SmithDecomposition snf(const Matrix &A);

/// One exact solution of A*X = B, or nullopt when the system is unsolvable.
/// Free coordinates are set to zero, so the result is deterministic.
std::optional<Matrix> solve(const Matrix &A, const Matrix &B);

/// Basis (columns) of ker(A). Over Z the basis spans a saturated sublattice.
/// Requires Z or a prime field; use kernel_generators for composite Z/n.
Matrix kernel_basis(const Matrix &A);

/// Generating set (columns) of ker(A) over any supported ring.
Matrix kernel_generators(const Matrix &A);

/// Exact determinant (Bareiss over a lift to Z, reduced back).
Int det(const Matrix &A);

bool is_unimodular(const Matrix &A);

std::optional<Matrix> inverse(const Matrix &A);

/// True when the rows of A span a free direct summand of R^cols, i.e. the
/// map R^cols -> R^rows is split surjective (all SNF invariants are units).
bool rows_split_summand(const Matrix &A);

} // namespace wittkit::exactalg
