#pragma once

#include "wittkit/poset.hpp"

#include "testutil.hpp"

namespace testutil {

using wittkit::qcat::FinPoset;
using wittkit::qcat::ModuleDiagram;

// Random diagram on [a]^r that is left Kan extended from its axes: ranks
// rank0 at the origin and per-axis blocks that accumulate along each
// direction. Strongly cocartesian by construction.
inline ModuleDiagram random_kan_cube(Rng &rng, const RingSpec &ring, int a,
                                     int r, int maxrank) {
  FinPoset p = FinPoset::cube(a, r);
  int rank0 = 1 + int(rng.uniform(0, maxrank - 1));
  std::vector<std::vector<int>> axis_rank(r, std::vector<int>(a + 1));
  std::vector<std::vector<Matrix>> axis_map(r);
  long lo = ring.is_finite() ? 0 : -2;
  long hi = ring.is_finite() ? ring.modulus().get_si() - 1 : 2;
  for (int i = 0; i < r; ++i) {
    axis_rank[i][0] = rank0;
    for (int v = 1; v <= a; ++v)
      axis_rank[i][v] = 1 + int(rng.uniform(0, maxrank - 1));
    for (int v = 0; v < a; ++v)
      axis_map[i].push_back(
          rng.matrix(ring, axis_rank[i][v + 1], axis_rank[i][v], lo, hi));
  }
  auto rank_of = [&](const std::vector<int> &g) {
    int total = rank0;
    for (int i = 0; i < r; ++i)
      if (g[i] > 0)
        total += axis_rank[i][g[i]];
    return total;
  };
  auto axis_comp = [&](int i, int from, int to) {
    Matrix m = Matrix::identity(ring, axis_rank[i][from]);
    for (int v = from; v < to; ++v)
      m = axis_map[i][v] * m;
    return m;
  };
  std::map<std::pair<int, int>, Matrix> maps;
  for (auto [x, y] : p.covering_pairs()) {
    auto gx = p.cube_coords(x), gy = p.cube_coords(y);
    Matrix m(ring, rank_of(gy), rank_of(gx));
    int dst_offs_axis[8];
    int off = 0;
    for (int i = 0; i < r; ++i) {
      dst_offs_axis[i] = -1;
      if (gy[i] > 0) {
        dst_offs_axis[i] = off;
        off += axis_rank[i][gy[i]];
      }
    }
    int dst_m0 = off;
    int src_off = 0;
    for (int i = 0; i < r; ++i) {
      if (gx[i] == 0)
        continue;
      Matrix blk = axis_comp(i, gx[i], gy[i]);
      for (int rr = 0; rr < blk.rows(); ++rr)
        for (int cc = 0; cc < blk.cols(); ++cc)
          m.set(dst_offs_axis[i] + rr, src_off + cc, blk.at(rr, cc));
      src_off += axis_rank[i][gx[i]];
    }
    for (int rr = 0; rr < rank0; ++rr)
      m.set(dst_m0 + rr, src_off + rr, 1);
    for (int i = 0; i < r; ++i)
      if (gx[i] == 0 && gy[i] > 0) {
        Matrix blk = axis_comp(i, 0, gy[i]);
        for (int rr = 0; rr < blk.rows(); ++rr)
          for (int cc = 0; cc < blk.cols(); ++cc)
            m.set(dst_offs_axis[i] + rr, src_off + cc, blk.at(rr, cc));
      }
    maps[{x, y}] = m;
  }
  std::vector<int> ranks;
  for (int g = 0; g < p.size(); ++g)
    ranks.push_back(rank_of(p.cube_coords(g)));
  return ModuleDiagram(p, ring, ranks, maps);
}

// rank-perturbed variant: adds a summand at the terminal vertex, which
// destroys the pushout property
inline ModuleDiagram perturb_terminal(const ModuleDiagram &good) {
  const FinPoset &p = good.poset();
  std::vector<int> top(p.cube_arity(), p.cube_side());
  int terminal = p.cube_index(top);
  std::vector<int> ranks;
  for (int i = 0; i < p.size(); ++i)
    ranks.push_back(good.rank(i) + (i == terminal ? 1 : 0));
  std::map<std::pair<int, int>, Matrix> maps;
  for (auto [x, y] : p.covering_pairs()) {
    Matrix m = good.transition(x, y);
    if (y == terminal) {
      Matrix bigger(good.ring(), m.rows() + 1, m.cols());
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          bigger.set(i, j, m.at(i, j));
      m = bigger;
    }
    maps[{x, y}] = m;
  }
  return ModuleDiagram(p, good.ring(), ranks, maps);
}

} // namespace testutil
