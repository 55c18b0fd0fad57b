#include "wittkit/weight.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace wittkit;
using namespace wittkit::chaincx;
using exactalg::Matrix;
using exactalg::RingSpec;
using testutil::Rng;

namespace {

RingSpec Z() { return RingSpec::integers(); }

Matrix m1(const RingSpec &ring, long v) {
  Matrix m(ring, 1, 1);
  m.set(0, 0, Int(v));
  return m;
}

// [R --(v)--> R] in degrees hi, hi-1
ChainComplex two_term(const RingSpec &ring, int hi, long v) {
  return ChainComplex(ring, hi - 1, {1, 1}, {m1(ring, v)});
}

ChainComplex random_complex(Rng &rng, const RingSpec &ring, int lo, int width,
                            int maxrank, long lo_e = -3, long hi_e = 3) {
  std::vector<int> dims;
  for (int i = 0; i < width; ++i)
    dims.push_back(static_cast<int>(rng.uniform(0, maxrank)));
  std::vector<Matrix> diffs;
  Matrix prev(ring, 0, 0);
  for (int i = 0; i + 1 < width; ++i) {
    // d with prev * d = 0: factor through the kernel of the previous map
    Matrix d(ring, dims[i], dims[i + 1]);
    if (i == 0 || dims[i] == 0 || dims[i + 1] == 0) {
      if (i == 0)
        d = rng.matrix(ring, dims[i], dims[i + 1], lo_e, hi_e);
    } else {
      Matrix k = exactalg::kernel_basis(prev);
      if (k.cols() > 0) {
        Matrix coeff = rng.matrix(ring, k.cols(), dims[i + 1], lo_e, hi_e);
        d = k * coeff;
      }
    }
    diffs.push_back(d);
    prev = d;
  }
  return ChainComplex(ring, lo, dims, diffs);
}

} // namespace

TEST_CASE("homology: spec examples") {
  SUBCASE("[Z --2--> Z] degrees 1,0") {
    ChainComplex c = two_term(Z(), 1, 2);
    auto h0 = homology(c, 0).group;
    CHECK(h0.str() == "Z/2");
    CHECK(homology(c, 1).group.is_trivial());
  }
  SUBCASE("cone(id) acyclic") {
    ChainComplex c = two_term(Z(), 1, 5);
    ChainMap id = ChainMap::identity(c);
    CHECK(acyclic(cone(id)));
  }
  SUBCASE("zero complex") { CHECK(acyclic(ChainComplex::zero(Z()))); }
}

TEST_CASE("cone: spec examples") {
  SUBCASE("cone of C -> 0 is C shifted up by 1") {
    ChainComplex c = two_term(Z(), 1, 3);
    ChainMap f = ChainMap::zero(c, ChainComplex::zero(Z()));
    ChainComplex cn = cone(f);
    ChainComplex expect = shift(c, 1);
    CHECK(cn.lo() == expect.lo());
    CHECK(cn.dim(1) == expect.dim(1));
    CHECK(cn.dim(2) == expect.dim(2));
    for (int k = cn.lo(); k <= cn.hi(); ++k)
      CHECK(homology(cn, k).group == homology(expect, k).group);
  }
  SUBCASE("fiber of multiplication by 2 on degree-0 complexes") {
    ChainComplex a = ChainComplex::concentrated(Z(), 0, 1);
    ChainMap f(a, a, {{0, m1(Z(), 2)}});
    ChainComplex fib = fiber(f);
    CHECK(homology(fib, -1).group.str() == "Z/2");
    CHECK(homology(fib, 0).group.is_trivial());
  }
}

TEST_CASE("euler characteristic additive under cone") {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    ChainComplex c = random_complex(rng, Z(), -1, 3, 3);
    ChainComplex d = random_complex(rng, Z(), -1, 3, 3);
    ChainMap zero = ChainMap::zero(c, d);
    CHECK(cone(zero).euler_characteristic() ==
          d.euler_characteristic() - c.euler_characteristic());
  }
}

TEST_CASE("homology of shift") {
  Rng rng(22);
  ChainComplex c = random_complex(rng, Z(), 0, 4, 3);
  for (int s : {-2, 1, 3})
    for (int k = c.lo(); k <= c.hi(); ++k)
      CHECK(homology(shift(c, s), k + s).group == homology(c, k).group);
}

TEST_CASE("dual: spec examples and coherence") {
  SUBCASE("dual of Z in degree 0") {
    ChainComplex c = ChainComplex::concentrated(Z(), 0, 1);
    CHECK(dual(c, 0) == c);
    ChainComplex d2 = dual(c, 2);
    CHECK(d2.lo() == 2);
    CHECK(d2.dim(2) == 1);
  }
  SUBCASE("ranks reverse") {
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
      ChainComplex c = random_complex(rng, Z(), -1, 4, 3);
      ChainComplex d = dual(c, 1);
      for (int k = c.lo(); k <= c.hi(); ++k)
        CHECK(d.dim(1 - k) == c.dim(k));
    }
  }
  SUBCASE("dual of dual equals the original up to the recorded sign iso") {
    Rng rng(24);
    for (int n : {0, 1, 2}) {
      ChainComplex c = random_complex(rng, Z(), -1, 4, 3);
      ChainComplex dd = dual(dual(c, n), n);
      if (c.is_zero())
        continue;
      REQUIRE(dd.lo() == c.lo());
      for (int k = c.lo(); k <= c.hi(); ++k)
        CHECK(dd.dim(k) == c.dim(k));
      // iota_r = (-1)^{(n+1) r} conjugates one differential into the other
      for (int k = c.lo() + 1; k <= c.hi(); ++k) {
        int sk = ((n + 1) * k) % 2 ? -1 : 1;
        int sk1 = ((n + 1) * (k - 1)) % 2 ? -1 : 1;
        Matrix lhs = dd.diff(k).scale(Int(sk1));
        Matrix rhs = c.diff(k).scale(Int(sk));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("weight predicates: spec examples") {
  SUBCASE("Z in degree 0") {
    ChainComplex c = ChainComplex::concentrated(Z(), 0, 1);
    CHECK(weight_connective(c, 0));
    CHECK(!weight_connective(c, 1));
  }
  SUBCASE("[Z --2--> Z] degrees 0,-1 not connective at 0") {
    ChainComplex c = two_term(Z(), 0, 2);
    CHECK(!weight_connective(c, 0));
    CHECK(weight_connective(c, -1));
  }
  SUBCASE("[Z --1--> Z] acyclic, connective at any level") {
    ChainComplex c = two_term(Z(), 0, 1);
    CHECK(weight_connective(c, 0));
    CHECK(weight_connective(c, 5));
  }
  SUBCASE("coconnective via the dual") {
    ChainComplex c = ChainComplex::concentrated(Z(), 0, 1);
    CHECK(weight_coconnective(c, 0));
    CHECK(!weight_coconnective(c, -1));
  }
}

TEST_CASE("trim: spec examples") {
  SUBCASE("C (+) cone(id) trims back to something homology-identical") {
    ChainComplex c = two_term(Z(), 1, 2);
    ChainComplex fat = c.direct_sum(
        cone(ChainMap::identity(ChainComplex::concentrated(Z(), 0, 2))));
    TrimResult t = trim(fat);
    for (int k = fat.lo(); k <= fat.hi(); ++k)
      CHECK(homology(t.trimmed, k).group == homology(fat, k).group);
    CHECK(t.trimmed.dim(0) == 1);
    CHECK(t.trimmed.dim(1) == 1);
  }
  SUBCASE("already trimmed: identity maps") {
    ChainComplex c = two_term(Z(), 1, 2);
    TrimResult t = trim(c);
    CHECK(t.trimmed == c);
    CHECK(t.to.sub(ChainMap::identity(c)).is_zero());
  }
  SUBCASE("[Z^2 --(id (+) 2)--> Z^2] trims to [Z --2--> Z]") {
    Matrix d(Z(), 2, 2);
    d.set(0, 0, 1);
    d.set(1, 1, 2);
    ChainComplex c(Z(), 0, {2, 2}, {d});
    TrimResult t = trim(c);
    CHECK(t.trimmed.dim(0) == 1);
    CHECK(t.trimmed.dim(1) == 1);
    CHECK(abs(t.trimmed.diff(1).at(0, 0)) == 2);
  }
}

TEST_CASE("trim: certified equivalence on random complexes over Z and F5") {
  Rng rng(25);
  for (int t = 0; t < 60; ++t) {
    RingSpec ring = t % 2 ? RingSpec::mod(5) : Z();
    ChainComplex c = random_complex(rng, ring, -2, 4, 3, 0, t % 2 ? 4 : 3);
    TrimResult tr = trim(c); // Homotopy constructor certifies the h-data
    for (int k = c.lo(); k <= c.hi(); ++k)
      CHECK(homology(tr.trimmed, k).group == homology(c, k).group);
    for (int k = tr.trimmed.lo() + 1; k <= tr.trimmed.hi(); ++k) {
      auto s = exactalg::snf(tr.trimmed.diff(k));
      int mn = std::min(s.D.rows(), s.D.cols());
      for (int i = 0; i < mn; ++i)
        CHECK(!ring.is_unit(s.D.at(i, i)));
    }
  }
}

TEST_CASE("heart: connective + coconnective at 0 trims into degree 0, free") {
  Rng rng(26);
  int found = 0;
  for (int t = 0; t < 200 && found < 12; ++t) {
    RingSpec ring = t % 2 ? RingSpec::mod(3) : Z();
    ChainComplex c = random_complex(rng, ring, -1, 3, 2, 0, 2);
    if (c.is_zero())
      continue;
    if (weight_connective(c, 0) && weight_coconnective(c, 0)) {
      ++found;
      TrimResult tr = trim(c);
      if (!tr.trimmed.is_zero()) {
        CHECK(tr.trimmed.lo() == 0);
        CHECK(tr.trimmed.hi() == 0);
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("complex json round-trip") {
  Rng rng(27);
  ChainComplex c = random_complex(rng, Z(), -1, 3, 3);
  ChainComplex back = complex_from_json(complex_to_json(c));
  CHECK(back == c);
}
