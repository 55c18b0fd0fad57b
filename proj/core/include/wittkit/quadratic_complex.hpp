#pragma once

#include "wittkit/chain_complex.hpp"
#include "wittkit/form.hpp"
#include "wittkit/weight.hpp"

namespace wittkit::qsurgery {

using chaincx::ChainComplex;
using chaincx::ChainMap;
using exactalg::Matrix;
using exactalg::RingSpec;

/// Family of pairings of a fixed total degree on a chain complex:
/// block(p) pairs C_p with C_{degree - p} (see SIGNS.md).
class PairingFamily {
public:
  PairingFamily() = default;
  PairingFamily(const ChainComplex &c, int degree);

  int degree() const { return degree_; }
  Matrix block(int p) const;
  void set_block(int p, Matrix m);
  bool is_zero() const;

  PairingFamily add(const PairingFamily &o) const;
  PairingFamily sub(const PairingFamily &o) const;
  PairingFamily neg() const;
  /// (T theta)[p] = (-1)^{p (m-p)} theta[m-p]^T
  PairingFamily transposed() const;
  /// (del theta)[p] = d_p^T theta[p-1] + (-1)^p theta[p] d_{m+1-p}
  PairingFamily boundary() const;
  /// pullback along a chain map into the carrier
  PairingFamily restrict(const ChainMap &f) const;

  const ChainComplex &carrier() const { return carrier_; }

private:
  ChainComplex carrier_;
  int degree_ = 0;
  std::map<int, Matrix> blocks_;
};

/// Chain-level quadratic Poincare complex (C, psi) of formal dimension n:
/// psi_s is a degree-(n+s) pairing family and the relations
/// del psi_s = (-1)^{s+1} psi_{s+1} + T psi_{s+1} hold exactly.
class QuadraticComplex {
public:
  QuadraticComplex(ChainComplex c, int n, std::vector<PairingFamily> psi,
                   bool check_relations = true);

  /// Quadratic form (eps = +1) as a complex concentrated in degree 0;
  /// psi_0 = strict lower triangle of the gram matrix plus q on the diagonal.
  static QuadraticComplex from_form(const formcore::UnimodularForm &f);

  const ChainComplex &complex() const { return c_; }
  int dim() const { return n_; }
  int s_max() const { return static_cast<int>(psi_.size()) - 1; }
  const PairingFamily &psi(int s) const;

  /// symmetrization (1+T) psi_0
  PairingFamily symmetrized() const;
  /// adjoint chain map lambda : C -> dual(C, n); a quasi-iso iff Poincare
  ChainMap duality_map() const;

  void check_relations() const; // throws on violation

  QuadraticComplex direct_sum(const QuadraticComplex &o) const;
  /// pullback along a quasi-isomorphism u : C' -> C (e.g. a trim map)
  QuadraticComplex restrict_along(const ChainMap &u) const;

  /// form extraction for a complex concentrated in degree 0 with n = 0
  formcore::UnimodularForm extract_form() const;

private:
  ChainComplex c_;
  int n_ = 0;
  std::vector<PairingFamily> psi_;
};

struct PoincareReport {
  bool poincare;
  /// per-degree homology of the cone of the duality map (all trivial iff
  /// Poincare)
  std::map<int, exactalg::AbelianGroupPresentation> cone_homology;
};
PoincareReport check_poincare(const QuadraticComplex &x);

/// signature of the symmetric pairing induced on H_{n/2} (x) Q; ring Z,
/// n even
int rational_signature(const QuadraticComplex &x);

nlohmann::json quadratic_to_json(const QuadraticComplex &x);
QuadraticComplex quadratic_from_json(const nlohmann::json &j);

} // namespace wittkit::qsurgery
