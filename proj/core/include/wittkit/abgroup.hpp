#pragma once

#include "wittkit/snf.hpp"

#include <string>

namespace wittkit::exactalg {

/// Finitely generated abelian group in invariant-factor form:
/// Z^free (+) Z/d1 (+) ... with d1 | d2 | ..., each di >= 2.
struct AbelianGroupPresentation {
  long free_rank = 0;
  std::vector<Int> invariant_factors;

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  Int order() const; // 0 when infinite
  bool operator==(const AbelianGroupPresentation &o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
  std::string str() const;
};

/// coker(A) = Z^rows / column-span(A) together with coordinate data:
/// y = uinv * x, coordinate t taken modulo moduli[t]
/// (modulus 1: coordinate dropped, 0: free).
struct CokernelData {
  AbelianGroupPresentation group;
  std::vector<Int> moduli; // length = rows of A
  Matrix U, Uinv;

  /// Indices t with moduli[t] != 1, i.e. surviving coordinates; torsion
  /// coordinates first (ascending invariant factor), then free ones.
  std::vector<int> live_coords() const;

  /// Canonical coordinates of a vector x in Z^rows (length live_coords()).
  std::vector<Int> coords(const Matrix &x_column) const;

  /// Columns generating the group: U * e_t for live t, ordered by invariant
  /// factor then index.
  Matrix generators() const;
};

/// Presentation of coker(A : Z^cols -> Z^rows). A over Z.
CokernelData cokernel_data(const Matrix &A);
AbelianGroupPresentation cokernel_presentation(const Matrix &A);

} // namespace wittkit::exactalg
