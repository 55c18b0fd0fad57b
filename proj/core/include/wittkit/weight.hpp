#pragma once

#include "wittkit/chain_complex.hpp"

namespace wittkit::chaincx {

/// Weight bounds on D^p(R) over a hereditary ring (Z or a prime field):
/// connective at a <=> H_k = 0 for k < a; coconnective at b <=> the dual
/// complex has H_k = 0 for k < -b.
bool weight_connective(const ChainComplex &c, int a);
bool weight_coconnective(const ChainComplex &c, int b);

/// Homotopy equivalence onto a complex without unit pivots in any
/// differential (over a field: zero differentials; over Z: all invariant
/// factors >= 2). Round trips are certified: from o to is the identity on
/// the nose, to o from is homotopic to the identity via h.
struct TrimResult {
  ChainComplex trimmed;
  ChainMap to;    // original -> trimmed
  ChainMap from;  // trimmed -> original
  Homotopy h;     // from o to ~ id_original
};

/// Iteratively splits the differential: an SNF base change turns d_k into
/// diag(1,...,1,d',0) and the unit block is a contractible direct summand
/// that can be dropped, with the inverse-pivot homotopy recording the step.
TrimResult trim(const ChainComplex &c);

} // namespace wittkit::chaincx
