#pragma once

#include "wittkit/surgery.hpp"

namespace wittkit::qsurgery {

struct NormalizeStep {
  int index = 0;
  int k = 0;      // degree of the datum
  int rank_t = 0; // rank of the free module T
  std::string homology_before, homology_after;
};

struct NormalizeResult {
  formcore::UnimodularForm form;
  std::vector<Cobordism> cobordisms;
  std::vector<NormalizeStep> log;
};

/// Iterated below-middle surgery on a 0-dimensional Poincare complex over Z
/// or F_p: kill the lowest nonzero homology with a free datum surjecting
/// onto its generators, trim, repeat; extract the unimodular form in
/// degree 0. The cobordism chain certifies the Witt class.
NormalizeResult normalize_to_heart(const QuadraticComplex &x,
                                   int step_cap = 64);

nlohmann::json normalize_log_json(const NormalizeResult &r);

struct ImproveLog {
  int m = 0;
  int rank_t = 0;
  bool used_zigzag = false;
  // the reflected trace of the right-end surgery, part of the certificate
  std::optional<Cobordism> reflected_trace;
  std::optional<Cobordism> half_improved; // left <- W/T -> D_f
};

/// pi_0 surgery on a morphism: datum 0 <- T -> T with T surjecting onto the
/// lowest homology of fib(W -> left). Returns a cobordism between the same
/// endpoints whose left-leg fiber homology vanishes one degree higher
/// (requires the dimension bound d >= 2m+1 for the shifted structure, which
/// the caller is expected to respect; the improvement is verified).
Cobordism improve_morphism(const Cobordism &w, int m,
                           ImproveLog *log = nullptr);

/// homology support of the fiber of a leg (lowest degree with nonzero
/// homology), or nullopt when the fiber is acyclic
std::optional<int> lowest_fiber_homology(const ChainMap &leg);

} // namespace wittkit::qsurgery
