#pragma once

#include "wittkit/form_parameter.hpp"

#include <json.hpp>

namespace wittkit::formcore {

/// Unimodular lambda-form (P, b, q) on P = R^n: gram matrix B with
/// B^T = eps*B and unit determinant, and q-values on the basis with
/// rho(q_i) = B_ii. All three invariants are checked at construction.
class UnimodularForm {
public:
  UnimodularForm(FormParameter param, Matrix gram, std::vector<QElem> qvals);

  /// rank-0 form
  static UnimodularForm zero(const FormParameter &param);
  /// rank 2k with B(e_i, f_i) = 1, B(f_i, e_i) = eps, q = 0
  static UnimodularForm hyperbolic(const FormParameter &param, int k);
  /// diagonal form <d_1, ..., d_k> with prescribed q-values
  static UnimodularForm diagonal(const FormParameter &param,
                                 const std::vector<Int> &diag,
                                 const std::vector<QElem> &qvals);
  /// Symmetric/quadratic flavor: q-values forced by the diagonal when rho is
  /// injective; this helper fills them in for the canonical flavors over
  /// rings where rho(q) = B_ii determines q uniquely.
  static UnimodularForm from_gram(const FormParameter &param, Matrix gram);

  const FormParameter &param() const { return param_; }
  int rank() const { return gram_.rows(); }
  const Matrix &gram() const { return gram_; }
  const std::vector<QElem> &qvals() const { return qvals_; }

  Int eval_b(const std::vector<Int> &x, const std::vector<Int> &y) const;
  /// q(sum x_i e_i) via the polarization identity.
  QElem eval_q(const std::vector<Int> &x) const;

  UnimodularForm orthogonal_sum(const UnimodularForm &o) const;
  UnimodularForm negate() const;
  /// Pullback along an invertible U (columns = images of the new basis).
  UnimodularForm change_basis(const Matrix &u) const;

  bool operator==(const UnimodularForm &o) const {
    return param_ == o.param_ && gram_ == o.gram_ && qvals_ == o.qvals_;
  }
  bool operator!=(const UnimodularForm &o) const { return !(*this == o); }
  /// Data order for deterministic enumeration (same parameter assumed).
  bool data_less(const UnimodularForm &o) const;

  std::string str() const;

private:
  FormParameter param_;
  Matrix gram_;
  std::vector<QElem> qvals_;
};

struct Isometry {
  UnimodularForm source, target;
  Matrix u; // target.change_basis-compatible: U^T B_t U = B_s, q pulls back
  void validate() const;
};

/// Form JSON schema:
/// {"ring":…, "flavor":…, "epsilon":…, "gram":[[…]], "q":[…],
///  optional "general":{…}}
nlohmann::json form_to_json(const UnimodularForm &f);
UnimodularForm form_from_json(const nlohmann::json &j);
nlohmann::json param_to_json(const FormParameter &p);
FormParameter param_from_json(const nlohmann::json &j);

} // namespace wittkit::formcore
