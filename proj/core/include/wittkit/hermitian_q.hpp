#pragma once

#include "wittkit/fincat.hpp"
#include "wittkit/form_classify.hpp"

namespace wittkit::qcat {

using exactalg::Matrix;
using exactalg::RingSpec;
using formcore::FormParameter;
using formcore::UnimodularForm;

/// Morphism (X,q) ~> (Y,q') of the classical hermitian Q-construction:
/// a span X <-p- w -i-> Y of free modules with p a split projection, i a
/// split inclusion, the two restricted forms agreeing on w, and
/// (q')_# o i inducing an isomorphism ker(p) -> ker(dual(i)). Stored as the
/// canonical representative of its isomorphism class (reduced column
/// echelon form of the stacked matrix [p; i]).
struct SpanMorphism {
  int w_rank;
  Matrix p; // w -> source
  Matrix i; // w -> target
  std::string key() const;
};

/// admissibility of a span between two forms (prime fields)
bool span_admissible(const UnimodularForm &x, const UnimodularForm &y,
                     const Matrix &p, const Matrix &i);

/// canonical representative under the GL(w) action
SpanMorphism canonical_span(const Matrix &p, const Matrix &i);

struct HermitianQ {
  std::vector<UnimodularForm> objects; // canonical class representatives
  std::map<std::pair<int, int>, std::vector<SpanMorphism>> spans;
  FinCategory category;
};

/// The classical hermitian Q-construction over a finite prime field:
/// objects are isometry classes of rank <= cap, morphisms the span classes,
/// composition by pullback. Category laws are checked exhaustively by the
/// FinCategory constructor; admissibility of composites is asserted.
HermitianQ build_hermitian_q(const FormParameter &param, int rank_cap);

} // namespace wittkit::qcat
