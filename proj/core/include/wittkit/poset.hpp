#pragma once

#include "wittkit/snf.hpp"

#include <map>
#include <string>
#include <vector>

namespace wittkit::qcat {

using exactalg::Matrix;
using exactalg::RingSpec;

/// Finite poset with explicit order bit-matrix (reflexive, antisymmetric,
/// transitive, checked at construction).
class FinPoset {
public:
  FinPoset(std::vector<std::string> labels, std::vector<std::vector<bool>> leq);

  /// [a]^r: functions {0..r-1} -> {0..a}, ordered pointwise.
  static FinPoset cube(int a, int r);
  /// twisted arrow poset: pairs (x <= y), with (x,y) <= (x',y') iff
  /// x' <= x and y <= y'.
  static FinPoset twisted_arrows(const FinPoset &p);
  /// full subposet of cube elements supported in at most one coordinate.
  static FinPoset axis_subposet(int a, int r);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string &label(int i) const { return labels_[i]; }
  bool leq(int i, int j) const { return leq_[i][j]; }
  bool covers(int i, int j) const; // j covers i (i < j, nothing between)
  std::vector<std::pair<int, int>> covering_pairs() const;

  /// for cubes: the element with the given coordinates
  int cube_index(const std::vector<int> &coords) const;
  const std::vector<int> &cube_coords(int i) const;
  bool is_cube() const { return cube_a_ >= 0; }
  int cube_side() const { return cube_a_; }
  int cube_arity() const { return cube_r_; }

private:
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
  int cube_a_ = -1, cube_r_ = 0;
  std::vector<std::vector<int>> coords_;
};

/// Functor from a finite poset to free modules: rank per element plus a
/// transition matrix per covering relation; functoriality (all composites
/// between the same endpoints agree) is checked at construction.
class ModuleDiagram {
public:
  ModuleDiagram(FinPoset poset, RingSpec ring, std::vector<int> ranks,
                std::map<std::pair<int, int>, Matrix> cover_maps);

  const FinPoset &poset() const { return poset_; }
  const RingSpec &ring() const { return ring_; }
  int rank(int i) const { return ranks_[i]; }
  /// transition map for any comparable pair i <= j
  Matrix transition(int i, int j) const;

private:
  FinPoset poset_;
  RingSpec ring_;
  std::vector<int> ranks_;
  std::map<std::pair<int, int>, Matrix> maps_; // all comparable pairs
};

/// Condition (3): every side-length-1 restricted square has an isomorphic
/// pushout comparison map coker(A -> B (+) C) -> D.
bool is_strongly_cocartesian_squares(const ModuleDiagram &d);
/// Condition (1): the diagram is left Kan extended from the subposet of
/// functions supported in at most one coordinate.
bool is_strongly_cocartesian_kan(const ModuleDiagram &d);
/// Strongly cocartesian diagram test (the two conditions above agree;
/// condition (3) is the one computed).
bool is_strongly_cocartesian(const ModuleDiagram &d);

} // namespace wittkit::qcat
