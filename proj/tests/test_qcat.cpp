#include "wittkit/hermitian_q.hpp"
#include "wittkit/poset.hpp"
#include "wittkit/witt.hpp"

#include "testutil.hpp"

#include <doctest.h>

#include <set>

using namespace wittkit;
using namespace wittkit::qcat;
using exactalg::Matrix;
using exactalg::RingSpec;
using formcore::FormParameter;
using formcore::UnimodularForm;
using testutil::Rng;

namespace {

RingSpec Z() { return RingSpec::integers(); }

ModuleDiagram square(const RingSpec &ring, int r00, int r10, int r01, int r11,
                     const Matrix &a, const Matrix &b, const Matrix &c,
                     const Matrix &d) {
  FinPoset p = FinPoset::cube(1, 2);
  std::map<std::pair<int, int>, Matrix> maps;
  int i00 = p.cube_index({0, 0}), i10 = p.cube_index({1, 0}),
      i01 = p.cube_index({0, 1}), i11 = p.cube_index({1, 1});
  maps[{i00, i10}] = a;
  maps[{i00, i01}] = b;
  maps[{i10, i11}] = c;
  maps[{i01, i11}] = d;
  std::vector<int> ranks(4);
  ranks[i00] = r00;
  ranks[i10] = r10;
  ranks[i01] = r01;
  ranks[i11] = r11;
  return ModuleDiagram(p, ring, ranks, maps);
}

// random strongly cocartesian diagram on [a]^r built by Kan extension from
// random axis data
ModuleDiagram random_kan_cube(Rng &rng, const RingSpec &ring, int a, int r,
                              int maxrank) {
  FinPoset p = FinPoset::cube(a, r);
  // axis ranks and maps: along each axis i a chain M0 -> M(i,1) -> ... M(i,a)
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
  // Kan extension: M(g) = M0 (+) sum_i coker-part, realized by pushouts:
  // rank(g) = rank0 + sum_i (axis_rank[i][g_i] - rank0), transitions by
  // block maps; build covering maps degreewise
  auto rank_of = [&](const std::vector<int> &g) {
    int total = rank0;
    for (int i = 0; i < r; ++i)
      total += axis_rank[i][g[i]] - (g[i] == 0 ? rank0 : rank0);
    // rank0 + sum (axis_rank - rank0): simplify below
    total = rank0;
    for (int i = 0; i < r; ++i)
      if (g[i] > 0)
        total += axis_rank[i][g[i]];
    return total;
  };
  // layout of M(g): central block rank0 when all g_i = 0... to keep the
  // diagram honest we use M(g) = (+)_{g_i > 0} M_i(g_i) (+) M0 and define
  // the transition g -> g' blockwise: new axes enter via the composite
  // M0 -> M_i(g'_i), existing axes via M_i(g_i) -> M_i(g'_i)
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
    // column layout of source, row layout of target
    int src_off = 0;
    // blocks for active axes of the source
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
    for (int i = 0; i < r; ++i) {
      if (gx[i] == 0)
        continue;
      Matrix blk = axis_comp(i, gx[i], gy[i]);
      for (int rr = 0; rr < blk.rows(); ++rr)
        for (int cc = 0; cc < blk.cols(); ++cc)
          m.set(dst_offs_axis[i] + rr, src_off + cc, blk.at(rr, cc));
      src_off += axis_rank[i][gx[i]];
    }
    // M0 block: identity to M0, plus maps into newly activated axes
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

} // namespace

TEST_CASE("poset constructors") {
  FinPoset c = FinPoset::cube(2, 2);
  CHECK(c.size() == 9);
  CHECK(c.leq(c.cube_index({0, 1}), c.cube_index({2, 1})));
  CHECK(!c.leq(c.cube_index({2, 0}), c.cube_index({0, 1})));
  FinPoset tw = FinPoset::twisted_arrows(FinPoset::cube(1, 1));
  CHECK(tw.size() == 3); // (0<=0), (0<=1), (1<=1)
  FinPoset ax = FinPoset::axis_subposet(2, 2);
  CHECK(ax.size() == 5); // origin + 2 per axis
}

TEST_CASE("is_strongly_cocartesian: spec examples") {
  RingSpec ring = Z();
  Matrix one = Matrix::identity(ring, 1);
  Matrix to2a(ring, 2, 1), to2b(ring, 2, 1);
  to2a.set(0, 0, 1);
  to2b.set(1, 0, 1);
  SUBCASE("0, Z, Z, Z^2 with coordinate inclusions: pushout") {
    ModuleDiagram d = square(ring, 0, 1, 1, 2, Matrix(ring, 1, 0),
                             Matrix(ring, 1, 0), to2a, to2b);
    CHECK(is_strongly_cocartesian_squares(d));
    CHECK(is_strongly_cocartesian_kan(d));
  }
  SUBCASE("square of identities: pushout of iso along iso") {
    ModuleDiagram d = square(ring, 1, 1, 1, 1, one, one, one, one);
    CHECK(is_strongly_cocartesian_squares(d));
    CHECK(is_strongly_cocartesian_kan(d));
  }
  SUBCASE("0, Z, Z, Z^3 rank mismatch: not a pushout") {
    Matrix to3a(ring, 3, 1), to3b(ring, 3, 1);
    to3a.set(0, 0, 1);
    to3b.set(1, 0, 1);
    ModuleDiagram d = square(ring, 0, 1, 1, 3, Matrix(ring, 1, 0),
                             Matrix(ring, 1, 0), to3a, to3b);
    CHECK(!is_strongly_cocartesian_squares(d));
    CHECK(!is_strongly_cocartesian_kan(d));
  }
}

TEST_CASE("conditions (1) and (3) agree on random cubes") {
  Rng rng(41);
  int agree = 0;
  for (int trial = 0; trial < 60; ++trial) {
    RingSpec ring = trial % 2 ? RingSpec::mod(3) : Z();
    int a = 1 + trial % 2, r = 2 + (trial / 2) % 2; // [1]^2, [2]^2, [1]^3, [2]^3
    ModuleDiagram d = random_kan_cube(rng, ring, a, r, 2);
    bool c3 = is_strongly_cocartesian_squares(d);
    bool c1 = is_strongly_cocartesian_kan(d);
    CHECK(c3 == c1);
    CHECK(c3); // Kan-extended by construction
    ++agree;
  }
  CHECK(agree == 60);
}

TEST_CASE("perturbed cubes fail both conditions identically") {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    RingSpec ring = trial % 2 ? RingSpec::mod(3) : Z();
    ModuleDiagram good = random_kan_cube(rng, ring, 1, 2, 2);
    // perturb the terminal rank: replace the diagram with an extra summand
    FinPoset p = good.poset();
    int terminal = p.cube_index({1, 1});
    std::vector<int> ranks;
    for (int i = 0; i < p.size(); ++i)
      ranks.push_back(good.rank(i) + (i == terminal ? 1 : 0));
    std::map<std::pair<int, int>, Matrix> maps;
    for (auto [x, y] : p.covering_pairs()) {
      Matrix m = good.transition(x, y);
      if (y == terminal) {
        Matrix bigger(ring, m.rows() + 1, m.cols());
        for (int i = 0; i < m.rows(); ++i)
          for (int j = 0; j < m.cols(); ++j)
            bigger.set(i, j, m.at(i, j));
        m = bigger;
      }
      maps[{x, y}] = m;
    }
    ModuleDiagram bad(p, ring, ranks, maps);
    bool c3 = is_strongly_cocartesian_squares(bad);
    bool c1 = is_strongly_cocartesian_kan(bad);
    CHECK(c3 == c1);
    CHECK(!c3);
  }
}

TEST_CASE("FinCategory rejects broken data") {
  // two objects, one morphism each way, composition collapsing wrongly
  std::vector<std::string> obj = {"a", "b"};
  std::map<std::pair<int, int>, std::vector<std::string>> homs;
  homs[{0, 0}] = {"id_a"};
  homs[{1, 1}] = {"id_b"};
  homs[{0, 1}] = {"f"};
  std::map<std::tuple<int, int, int, int, int>, int> comp;
  comp[{0, 0, 0, 0, 0}] = 0;
  comp[{1, 1, 1, 0, 0}] = 0;
  comp[{0, 0, 1, 0, 0}] = 0;
  comp[{0, 1, 1, 0, 0}] = 0;
  CHECK_NOTHROW(FinCategory(obj, homs, {0, 0}, comp));
  auto bad = comp;
  bad.erase({0, 1, 1, 0, 0});
  CHECK_THROWS_AS(FinCategory(obj, homs, {0, 0}, bad), validation_error);
}

TEST_CASE("components: discrete category") {
  std::vector<std::string> obj = {"a", "b", "c"};
  std::map<std::pair<int, int>, std::vector<std::string>> homs;
  std::map<std::tuple<int, int, int, int, int>, int> comp;
  for (int i = 0; i < 3; ++i) {
    homs[{i, i}] = {"id"};
    comp[{i, i, i, 0, 0}] = 0;
  }
  FinCategory cat(obj, homs, {0, 0, 0}, comp);
  CHECK(cat.component_count() == 3);
}

TEST_CASE("hermitian Q over F2 symmetric cap 2") {
  FormParameter p = FormParameter::symmetric(RingSpec::mod(2), 1);
  HermitianQ q = build_hermitian_q(p, 2);

  SUBCASE("category laws hold (construction check) and Hom(0,0) = {id}") {
    int zero = -1;
    for (size_t i = 0; i < q.objects.size(); ++i)
      if (q.objects[i].rank() == 0)
        zero = static_cast<int>(i);
    REQUIRE(zero >= 0);
    CHECK(q.spans.at({zero, zero}).size() == 1);
  }

  SUBCASE("Hom(0, F) = Lagrangian classes of F") {
    int zero = -1;
    for (size_t i = 0; i < q.objects.size(); ++i)
      if (q.objects[i].rank() == 0)
        zero = static_cast<int>(i);
    for (size_t i = 0; i < q.objects.size(); ++i) {
      if (q.objects[i].rank() == 0)
        continue;
      auto lags = formcore::all_lagrangians(q.objects[i]);
      CHECK(q.spans.at({zero, static_cast<int>(i)}).size() == lags.size());
    }
  }

  SUBCASE("components match the Witt classes realized within the cap") {
    auto table = formcore::witt_classes(p, 2);
    std::set<std::vector<Int>> realized(table.witt_coords.begin(),
                                        table.witt_coords.end());
    CHECK(q.category.component_count() ==
          static_cast<int>(realized.size()));
    CHECK(q.category.component_count() == 2); // |W(F2)| = 2
    // same component => same Witt class
    auto comp = q.category.components();
    for (size_t i = 0; i < q.objects.size(); ++i)
      for (size_t j = 0; j < q.objects.size(); ++j)
        if (comp[i] == comp[j])
          CHECK(table.witt_coords[formcore::class_index(table.classes,
                                                        q.objects[i])] ==
                table.witt_coords[formcore::class_index(table.classes,
                                                        q.objects[j])]);
  }
}

TEST_CASE("hermitian Q over F3 symmetric cap 2") {
  FormParameter p = FormParameter::symmetric(RingSpec::mod(3), 1);
  HermitianQ q = build_hermitian_q(p, 2);
  auto table = formcore::witt_classes(p, 2);
  std::set<std::vector<Int>> realized(table.witt_coords.begin(),
                                      table.witt_coords.end());
  CHECK(q.category.component_count() == static_cast<int>(realized.size()));
  // identity spans compose as units: verified by the FinCategory
  // constructor; spot-check one composition through the zero object
  CHECK(q.category.num_objects() == static_cast<int>(q.objects.size()));
}

TEST_CASE("direct-sum surgery data give strongly cocartesian cubes") {
  // diagram T(S) = (+)_{i in S} T_i on the cube [1]^r
  Rng rng(43);
  for (int r = 2; r <= 3; ++r) {
    RingSpec ring = RingSpec::mod(3);
    FinPoset p = FinPoset::cube(1, r);
    std::vector<int> tranks;
    for (int i = 0; i < r; ++i)
      tranks.push_back(1 + int(rng.uniform(0, 1)));
    auto rank_of = [&](int g) {
      int total = 0;
      for (int i = 0; i < r; ++i)
        if (p.cube_coords(g)[i] > 0)
          total += tranks[i];
      return total;
    };
    std::map<std::pair<int, int>, Matrix> maps;
    for (auto [x, y] : p.covering_pairs()) {
      Matrix m(ring, rank_of(y), rank_of(x));
      // inclusion of the summands present in x into those of y
      int src = 0;
      for (int i = 0; i < r; ++i) {
        if (p.cube_coords(x)[i] == 0)
          continue;
        int dst = 0;
        for (int i2 = 0; i2 < i; ++i2)
          if (p.cube_coords(y)[i2] > 0)
            dst += tranks[i2];
        for (int k = 0; k < tranks[i]; ++k)
          m.set(dst + k, src + k, 1);
        src += tranks[i];
      }
      maps[{x, y}] = m;
    }
    std::vector<int> ranks;
    for (int g = 0; g < p.size(); ++g)
      ranks.push_back(rank_of(g));
    ModuleDiagram d(p, ring, ranks, maps);
    CHECK(is_strongly_cocartesian(d));
  }
}
