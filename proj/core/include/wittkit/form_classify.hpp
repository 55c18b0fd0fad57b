#pragma once

#include "wittkit/form.hpp"

namespace wittkit::formcore {

enum class IsoVerdict { Yes, No, Unknown };

struct IsoResult {
  IsoVerdict verdict;
  std::optional<Isometry> witness;   // present for most Yes results
  std::string distinguishing;        // set for No: which invariant differs
};

/// Isometry-class fingerprint over finite rings: rank, determinant class
/// modulo unit squares, and the histogram of (q(v), b(v,v)) over all v.
std::string iso_fingerprint(const UnimodularForm &f);

/// Finite rings: exhaustive backtracking search, complete up to rank_cap.
/// Z (symmetric/quadratic, eps = +1): indefinite forms decided by rank,
/// signature and parity; definite forms matched by brute force up to rank 4,
/// Unknown beyond.
IsoResult is_isometric(const UnimodularForm &f, const UnimodularForm &g,
                       int rank_cap = 4);

/// Lexicographically minimal (gram, qvals) pair over the GL_n(R)-orbit,
/// computed by backtracking over partial bases keeping only prefixes that
/// achieve the current minimum. Finite rings only.
UnimodularForm canonical_form(const UnimodularForm &f);

/// All isometry classes of rank <= rank_cap over a finite ring, in canonical
/// deterministic order. Built by extending classes with rank-1 and rank-2
/// forms; complete because every unimodular form over Z/n has an orthogonal
/// summand of rank <= 2.
std::vector<UnimodularForm> enumerate_classes(const FormParameter &param,
                                              int rank_cap);

/// Index of the class of f in the canonical class list (classes must cover
/// rank(f)).
int class_index(const std::vector<UnimodularForm> &classes,
                const UnimodularForm &f, int rank_cap = 6);

enum class LagrangianMode { Exhaustive, Invariant };

/// Basis (columns) of a Lagrangian: a half-rank direct summand with b = 0,
/// q = 0 and L -> Hom(P/L, M) an isomorphism. Exhaustive mode (finite rings)
/// is complete; invariant mode (Z, symmetric/quadratic, eps = +1) decides by
/// signature and constructs a witness by splitting hyperbolic summands.
std::optional<Matrix> find_lagrangian(const UnimodularForm &f,
                                      LagrangianMode mode, int cap = 6);

/// All Lagrangian submodules over a prime field (each as a column-reduced
/// basis, duplicate-free).
std::vector<Matrix> all_lagrangians(const UnimodularForm &f, int cap = 6);

/// Exact check of the Lagrangian conditions for a candidate column basis.
bool is_lagrangian(const UnimodularForm &f, const Matrix &basis);

/// n_+ - n_- of the real quadratic form, exact over Q. Requires Z, eps = +1.
int signature(const UnimodularForm &f);
int signature(const Matrix &symmetric_gram_over_Z);

/// All diagonal entries even (symmetric forms over Z).
bool is_even_parity(const UnimodularForm &f);

/// Arf invariant over F2, quadratic flavor, via symplectic basis reduction.
Int arf(const UnimodularForm &f);

} // namespace wittkit::formcore
