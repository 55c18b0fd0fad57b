#pragma once

#include "wittkit/abgroup.hpp"

#include <optional>

namespace wittkit::formcore {

using exactalg::Matrix;
using exactalg::RingSpec;

enum class Flavor { Symmetric, Quadratic, Even, General };

std::string flavor_name(Flavor f);
std::optional<Flavor> flavor_from_name(const std::string &s);

/// Element of the quadratic-values group Q, stored as the canonical
/// representative of its class in raw generator coordinates.
struct QElem {
  std::vector<Int> coords;
  bool operator==(const QElem &o) const { return coords == o.coords; }
  bool operator!=(const QElem &o) const { return !(*this == o); }
  bool operator<(const QElem &o) const { return coords < o.coords; }
  std::string str() const;
};

/// Data of a general form parameter over a finite ring: Q as a finitely
/// presented abelian group, tau on the additive generator of M_{C2},
/// rho per generator, and the (r (x) r)-action table per ring element.
struct GeneralParamData {
  Matrix q_relations;          // over Z, gens x rels
  std::vector<Int> tau_of_one; // raw coords of tau([1])
  std::vector<Int> rho_gens;   // rho(gen_j) as ring elements
  std::vector<Matrix> action;  // action[r] over Z, gens x gens, r = 0..n-1
};

/// A form parameter lambda = (M, sigma, tau: M_{C2} -> Q, rho: Q -> M^{C2})
/// with M = R and sigma = eps * id. The three canonical flavors synthesize
/// cyclic Q; the General flavor takes explicit finite data.
///
/// Q is an R-quadratic module: r acts additively but distributivity in r is
/// replaced by Bil(r,s)(q) = (r+s)q - rq - sq = tau[(r (x) s) rho(q)].
class FormParameter {
public:
  static FormParameter symmetric(RingSpec ring, int eps);
  static FormParameter quadratic(RingSpec ring, int eps);
  static FormParameter even(RingSpec ring, int eps);
  static FormParameter general(RingSpec ring, int eps, GeneralParamData data);
  static FormParameter make(RingSpec ring, Flavor flavor, int eps,
                            std::optional<GeneralParamData> data = {});

  const RingSpec &ring() const { return ring_; }
  int epsilon() const { return eps_; }
  Flavor flavor() const { return flavor_; }

  int q_gens() const { return gens_; }
  QElem q_zero() const { return QElem{std::vector<Int>(gens_, Int(0))}; }
  QElem canon(std::vector<Int> raw) const;
  QElem q_add(const QElem &a, const QElem &b) const;
  QElem q_neg(const QElem &a) const;
  QElem q_scale(const Int &k, const QElem &a) const; // integer scaling

  /// tau of the class of m in M_{C2} = R/(1-eps)R.
  QElem tau(const Int &m) const;
  /// rho(q) as a ring element in M^{C2}.
  Int rho(const QElem &q) const;
  /// The action of r (x) r on Q.
  QElem act(const Int &r, const QElem &q) const;

  bool q_is_finite() const;
  Int q_order() const; // 0 when infinite
  std::vector<QElem> q_elements() const;

  /// True when tau: M_{C2} -> Q is onto (Bak-style parameters).
  bool tau_surjective() const;

  /// Checks the form-parameter axioms: (1-eps) tau(1) = 0, rho tau = norm,
  /// equivariance, and axiom (*). Exhaustive over finite rings; over Z the
  /// identities are polynomial of degree <= 2 per variable, so a grid check
  /// on r, s, k in [-3, 3] proves them.
  void validate() const;

  bool operator==(const FormParameter &o) const;
  bool operator!=(const FormParameter &o) const { return !(*this == o); }

  const std::optional<GeneralParamData> &general_data() const {
    return general_;
  }

  std::string str() const;

private:
  FormParameter() = default;
  void setup_canonicalizer(const Matrix &relations);

  RingSpec ring_;
  int eps_ = 1;
  Flavor flavor_ = Flavor::Symmetric;
  int gens_ = 1;
  std::vector<Int> moduli_;     // per SNF coordinate
  Matrix can_u_, can_uinv_;     // canonicalization transforms over Z
  std::vector<Int> tau_one_;    // raw coords
  std::vector<Int> rho_gens_;   // ring elements
  std::optional<GeneralParamData> general_;
};

} // namespace wittkit::formcore
