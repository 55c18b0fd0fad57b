#pragma once

#include "wittkit/quadratic_complex.hpp"

namespace wittkit::qsurgery {

/// Nullhomotopy family for a structure on T: delta_s has pairing degree
/// n+s-1 and the coupled relations of SIGNS.md exhibit the restricted
/// structure as a boundary.
using NullHomotopy = std::vector<PairingFamily>;

/// Surgery datum on (C, psi): f : T -> C together with a nullhomotopy of
/// the restricted structure f^* psi. The relations are verified on
/// construction.
struct SurgeryDatum {
  QuadraticComplex target;
  ChainComplex t;
  ChainMap f; // t -> target.complex()
  NullHomotopy delta;

  SurgeryDatum(QuadraticComplex target, ChainMap f, NullHomotopy delta);
};

/// restricted structure f^* psi on the source of f
std::vector<PairingFamily> restrict_structure(const QuadraticComplex &x,
                                              const ChainMap &f);

/// Exhibits theta (a structure family on T of dimension n) as a boundary:
/// solves the linear system for delta, or reports the pi_0 obstruction by
/// returning nullopt.
std::optional<NullHomotopy>
solve_structure_nullhomotopy(const ChainComplex &t, int n,
                             const std::vector<PairingFamily> &theta);

/// Convenience: nullhomotopy for the datum f : T -> C on (C, psi).
std::optional<NullHomotopy> solve_nullhomotopy(const QuadraticComplex &x,
                                               const ChainMap &f);

/// Same, but with prescribed sub-blocks: used by the automatic-disjointness
/// property where the direct-sum datum must restrict to the given pieces.
/// `fixed` maps (s, p) pairs to prescribed delta-blocks on sub-summands via
/// an inclusion map incl : T_i -> T.
struct PrescribedPiece {
  ChainMap inclusion; // T_i -> T
  NullHomotopy delta; // on T_i
};
std::optional<NullHomotopy>
solve_nullhomotopy_extending(const QuadraticComplex &x, const ChainMap &f,
                             const std::vector<PrescribedPiece> &pieces);

/// Poincare cobordism left <- W -> right with Lefschetz certificate.
struct Cobordism {
  QuadraticComplex left, right;
  ChainComplex w;
  ChainMap leg_left;  // w -> left.complex()
  ChainMap leg_right; // w -> right.complex()
  bool lefschetz_checked = false;
};

/// Result of one algebraic surgery: the trace cobordism and the surgered
/// complex (== trace.right).
struct SurgeryResult {
  Cobordism trace;
  QuadraticComplex result;
  ChainMap lift; // T -> trace.w, the map whose cone is the result
};

/// Performs surgery per SIGNS.md: g = dual(f,n) o lambda, chi = fiber(g),
/// lift T -> chi from delta_0, result = cone(lift) with the induced
/// structure found by the exact solver. Poincare and Lefschetz checks are
/// hard assertions.
SurgeryResult surgery(const SurgeryDatum &datum);

/// Lefschetz homology check for an arbitrary span: the cones over the two
/// legs must have dual homology at dimension n+1 (degreewise comparison).
bool lefschetz_homology_check(const Cobordism &c);

} // namespace wittkit::qsurgery
