#pragma once

#include "wittkit/abgroup.hpp"

#include <json.hpp>
#include <map>

namespace wittkit::chaincx {

using exactalg::AbelianGroupPresentation;
using exactalg::Matrix;
using exactalg::RingSpec;

/// Bounded chain complex of finitely generated free modules, homological
/// convention: d_k : C_k -> C_{k-1}, d o d = 0 (checked at construction).
class ChainComplex {
public:
  /// dims[i] = rank in degree lo + i; differentials[i] = d_{lo+1+i}.
  ChainComplex(RingSpec ring, int lo, std::vector<int> dims,
               std::vector<Matrix> differentials);

  static ChainComplex zero(RingSpec ring);
  /// free module of the given rank concentrated in one degree
  static ChainComplex concentrated(RingSpec ring, int degree, int rank);

  const RingSpec &ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  int dim(int k) const;
  /// d_k : C_k -> C_{k-1} (zero matrix outside the support)
  Matrix diff(int k) const;

  bool is_zero() const;
  int euler_characteristic() const;
  /// degrees k with dim(k) != 0 (empty for the zero complex)
  std::vector<int> support() const;

  ChainComplex direct_sum(const ChainComplex &o) const;
  bool operator==(const ChainComplex &o) const;
  std::string str() const;

private:
  RingSpec ring_;
  int lo_ = 0;
  std::vector<int> dims_;
  std::vector<Matrix> diffs_; // diffs_[i] = d_{lo+1+i}, shape dims[i] x dims[i+1]
};

/// Degreewise map f_k : C_k -> D_k with d o f = f o d (checked).
class ChainMap {
public:
  ChainMap(ChainComplex source, ChainComplex target,
           std::map<int, Matrix> components);

  static ChainMap zero(const ChainComplex &source, const ChainComplex &target);
  static ChainMap identity(const ChainComplex &c);

  const ChainComplex &source() const { return source_; }
  const ChainComplex &target() const { return target_; }
  Matrix at(int k) const; // zero outside overlap

  ChainMap compose(const ChainMap &inner) const; // this o inner
  ChainMap add(const ChainMap &o) const;
  ChainMap sub(const ChainMap &o) const;
  bool is_zero() const;

private:
  ChainComplex source_, target_;
  std::map<int, Matrix> comp_;
};

/// h_k : C_k -> D_{k+1} with f - g = d h + h d (checked at construction).
class Homotopy {
public:
  Homotopy(ChainMap f, ChainMap g, std::map<int, Matrix> components);
  const ChainMap &f() const { return f_; }
  const ChainMap &g() const { return g_; }
  Matrix at(int k) const;

private:
  ChainMap f_, g_;
  std::map<int, Matrix> comp_;
};

/// cone(f)_r = target_r (+) source_{r-1}, differential
/// [[d_target, f],[0, -d_source]].
ChainComplex cone(const ChainMap &f);
/// target -> cone(f)
ChainMap cone_inclusion(const ChainMap &f);
/// cone(f) -> shift(source, 1)
ChainMap cone_collapse(const ChainMap &f);

/// shift: shift(C, s)_k = C_{k-s}, differential (-1)^s d.
ChainComplex shift(const ChainComplex &c, int s);
ChainMap shift(const ChainMap &f, int s);

/// fiber(f) = cone(f) shifted down by 1; fiber_projection: fiber(f) -> source.
ChainComplex fiber(const ChainMap &f);
ChainMap fiber_projection(const ChainMap &f);

/// dual(C, n)_r = (C_{n-r})^dual with differential (-1)^r (d_{n-r+1})^T.
ChainComplex dual(const ChainComplex &c, int n);
/// dual of a chain map: dual(f, n) : dual(target, n) -> dual(source, n).
ChainMap dual(const ChainMap &f, int n);

/// H_k(C) = ker d_k / im d_{k+1}; requires Z or a prime field.
struct HomologyGroup {
  AbelianGroupPresentation group;
  /// cycles in C_k generating the group, ordered by invariant factor then
  /// index (columns)
  Matrix generators;
  /// canonical coordinates of a cycle
  std::vector<Int> coords(const Matrix &cycle) const;

  // internals for coordinate computation
  Matrix kernel;      // columns: basis of ker d_k
  exactalg::CokernelData coker;
};
HomologyGroup homology(const ChainComplex &c, int k);
std::map<int, AbelianGroupPresentation> homology(const ChainComplex &c);
bool acyclic(const ChainComplex &c);
/// quasi-isomorphism test via acyclicity of the cone
bool is_quasi_iso(const ChainMap &f);

/// JSON schema: {"ring":…, "lo":…, "hi":…, "dims":[…],
///               "differentials":[Matrix per degree lo+1 … hi]}
nlohmann::json complex_to_json(const ChainComplex &c);
ChainComplex complex_from_json(const nlohmann::json &j);

} // namespace wittkit::chaincx
