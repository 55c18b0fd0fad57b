#include "wittkit/normalize.hpp"
#include "wittkit/witt.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace wittkit;
using namespace wittkit::qsurgery;
using chaincx::ChainComplex;
using chaincx::ChainMap;
using exactalg::Matrix;
using exactalg::RingSpec;
using formcore::FormParameter;
using formcore::UnimodularForm;
using testutil::Rng;

namespace {

RingSpec Z() { return RingSpec::integers(); }

FormParameter quad(const RingSpec &ring) {
  return FormParameter::quadratic(ring, 1);
}

QuadraticComplex hyperbolic_complex(const RingSpec &ring, int k) {
  return QuadraticComplex::from_form(
      UnimodularForm::hyperbolic(quad(ring), k));
}

// fatten by a surgery on a random rank-1 datum in the given degree
QuadraticComplex random_surgery_step(Rng &rng, const QuadraticComplex &x,
                                     int degree, int rank) {
  const ChainComplex &c = x.complex();
  const RingSpec &ring = c.ring();
  ChainComplex t = ChainComplex::concentrated(ring, degree, rank);
  long hi = ring.is_finite() ? ring.modulus().get_si() - 1 : 2;
  for (int tries = 0; tries < 60; ++tries) {
    Matrix m(ring, c.dim(degree), rank);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        m.set(i, j, Int(rng.uniform(ring.is_finite() ? 0 : -2, hi)));
    // f must be a chain map: d o f = 0 into degree-1 (f d = 0 automatic)
    std::map<int, Matrix> comp;
    comp.emplace(degree, m);
    try {
      ChainMap f(t, c, comp);
      auto delta = solve_nullhomotopy(x, f);
      if (!delta)
        continue;
      return surgery(SurgeryDatum(x, f, *delta)).result;
    } catch (const validation_error &) {
      continue;
    }
  }
  return x; // no valid datum found; keep the input
}

QuadraticComplex trimmed(const QuadraticComplex &x) {
  auto tr = chaincx::trim(x.complex());
  return x.restrict_along(tr.from);
}

} // namespace

TEST_CASE("quadratic complexes from forms: relations and Poincare") {
  SUBCASE("hyperbolic over Z") {
    QuadraticComplex h = hyperbolic_complex(Z(), 1);
    CHECK(check_poincare(h).poincare);
    CHECK(h.extract_form() == UnimodularForm::hyperbolic(quad(Z()), 1));
  }
  SUBCASE("gram [2] with psi0 = [1] is not Poincare over Z") {
    ChainComplex c = ChainComplex::concentrated(Z(), 0, 1);
    PairingFamily psi0(c, 0);
    Matrix m(Z(), 1, 1);
    m.set(0, 0, 1);
    psi0.set_block(0, m);
    QuadraticComplex x(c, 0, {psi0});
    auto rep = check_poincare(x);
    CHECK(!rep.poincare);
    // witness: the cone has Z/2 homology somewhere
    bool z2 = false;
    for (auto &[k, h] : rep.cone_homology)
      if (h.str() == "Z/2")
        z2 = true;
    CHECK(z2);
  }
  SUBCASE("fattening by an acyclic summand with zero structure") {
    QuadraticComplex h = hyperbolic_complex(Z(), 1);
    ChainComplex ac = chaincx::cone(
        ChainMap::identity(ChainComplex::concentrated(Z(), 0, 2)));
    QuadraticComplex fat =
        h.direct_sum(QuadraticComplex(ac, 0, {}));
    CHECK(check_poincare(fat).poincare);
    // structure restricts along trim to an isometric form
    QuadraticComplex small = trimmed(fat);
    CHECK(small.complex().hi() == 0);
    CHECK(small.extract_form().rank() == 2);
  }
}

TEST_CASE("solve_nullhomotopy: spec examples") {
  QuadraticComplex h = hyperbolic_complex(Z(), 1);
  const ChainComplex &c = h.complex();

  SUBCASE("f = 0 has the zero nullhomotopy") {
    ChainComplex t = ChainComplex::concentrated(Z(), 0, 1);
    ChainMap f = ChainMap::zero(t, c);
    auto delta = solve_nullhomotopy(h, f);
    REQUIRE(delta.has_value());
    for (const auto &fam : *delta)
      CHECK(fam.is_zero());
  }
  SUBCASE("Lagrangian generator of the hyperbolic form") {
    ChainComplex t = ChainComplex::concentrated(Z(), 0, 1);
    Matrix incl(Z(), 2, 1);
    incl.set(0, 0, 1); // e-vector: q = 0, b(e,e) = 0
    ChainMap f(t, c, {{0, incl}});
    auto delta = solve_nullhomotopy(h, f);
    // restricted structure vanishes identically: a certificate must exist
    REQUIRE(delta.has_value());
  }
  SUBCASE("obstructed datum: non-isotropic vector") {
    ChainComplex t = ChainComplex::concentrated(Z(), 0, 1);
    Matrix incl(Z(), 2, 1);
    incl.set(0, 0, 1);
    incl.set(1, 0, 1); // q(e+f) = 1 != 0
    ChainMap f(t, c, {{0, incl}});
    CHECK(!solve_nullhomotopy(h, f).has_value());
  }
}

TEST_CASE("surgery: zero datum gives an equivalent complex") {
  QuadraticComplex h = hyperbolic_complex(Z(), 1);
  ChainComplex t = ChainComplex::zero(Z());
  ChainMap f = ChainMap::zero(t, h.complex());
  SurgeryResult res = surgery(SurgeryDatum(h, f, {}));
  // chi ~ C and C_f ~ C up to trim
  QuadraticComplex small = trimmed(res.result);
  CHECK(small.complex().lo() == 0);
  CHECK(small.complex().hi() == 0);
  auto iso = formcore::is_isometric(small.extract_form(), h.extract_form());
  CHECK(iso.verdict == formcore::IsoVerdict::Yes);
}

TEST_CASE("surgery on a full Lagrangian kills the hyperbolic form") {
  for (auto ring : {RingSpec::integers(), RingSpec::mod(2), RingSpec::mod(3)}) {
    QuadraticComplex h = hyperbolic_complex(ring, 1);
    ChainComplex t = ChainComplex::concentrated(ring, 0, 1);
    Matrix incl(ring, 2, 1);
    incl.set(0, 0, 1);
    ChainMap f(t, h.complex(), {{0, incl}});
    auto delta = solve_nullhomotopy(h, f);
    REQUIRE(delta.has_value());
    SurgeryResult res = surgery(SurgeryDatum(h, f, *delta));
    CHECK(res.trace.lefschetz_checked);
    for (int k = res.result.complex().lo(); k <= res.result.complex().hi();
         ++k)
      CHECK(chaincx::homology(res.result.complex(), k).group.is_trivial());
  }
}

TEST_CASE("basic estimate: datum in degree k has fiber concentrated there") {
  // T concentrated in degree k: fib(chi -> C_f) ~ T and
  // fib(chi -> C) ~ dual(T)[-1], checked through homology supports
  Rng rng(31);
  int done = 0;
  for (int trial = 0; trial < 40 && done < 12; ++trial) {
    RingSpec ring = trial % 2 ? RingSpec::mod(3) : Z();
    QuadraticComplex x = hyperbolic_complex(ring, 1 + trial % 2);
    int k = -1 - trial % 2;
    QuadraticComplex fat = random_surgery_step(rng, x, 0, 1);
    const ChainComplex &c = fat.complex();
    if (c.dim(k) == 0)
      continue;
    // datum: a random map from degree k hitting cycles
    ChainComplex t = ChainComplex::concentrated(ring, k, 1);
    Matrix m(ring, c.dim(k), 1);
    bool found = false;
    for (int tries = 0; tries < 40 && !found; ++tries) {
      for (int i = 0; i < m.rows(); ++i)
        m.set(i, 0, Int(rng.uniform(0, ring.is_finite()
                                           ? ring.modulus().get_si() - 1
                                           : 2)));
      try {
        ChainMap f(t, c, {{k, m}});
        auto delta = solve_nullhomotopy(fat, f);
        if (!delta)
          continue;
        SurgeryResult res = surgery(SurgeryDatum(fat, f, *delta));
        // fib(chi -> C_f) ~ T: homology concentrated in degree k
        ChainComplex fib_right = chaincx::fiber(res.trace.leg_right);
        for (int d = fib_right.lo(); d <= fib_right.hi(); ++d)
          if (d != k)
            CHECK(chaincx::homology(fib_right, d).group.is_trivial());
        found = true;
        ++done;
      } catch (const validation_error &) {
        continue;
      }
    }
  }
  CHECK(done >= 6);
}

TEST_CASE("rational signature: spec examples") {
  FormParameter p = quad(Z());
  SUBCASE("E8 in degree 0 has signature 8") {
    QuadraticComplex e8 = QuadraticComplex::from_form(formcore::e8_form(p));
    CHECK(rational_signature(e8) == 8);
  }
  SUBCASE("hyperbolic gives 0") {
    CHECK(rational_signature(hyperbolic_complex(Z(), 2)) == 0);
  }
  SUBCASE("X (+) -X gives 0") {
    QuadraticComplex e8 = QuadraticComplex::from_form(formcore::e8_form(p));
    QuadraticComplex neg =
        QuadraticComplex::from_form(formcore::e8_form(p).negate());
    CHECK(rational_signature(e8.direct_sum(neg)) == 0);
  }
}

TEST_CASE("normalize_to_heart: spec examples") {
  SUBCASE("a form in degree 0 comes back unchanged") {
    QuadraticComplex h = hyperbolic_complex(Z(), 2);
    NormalizeResult r = normalize_to_heart(h);
    CHECK(r.cobordisms.empty());
    CHECK(r.form == h.extract_form());
  }
  SUBCASE("form (+) split acyclic fattening recovers an isometric form") {
    FormParameter p = quad(RingSpec::mod(3));
    UnimodularForm f = UnimodularForm::hyperbolic(p, 1);
    QuadraticComplex x = QuadraticComplex::from_form(f);
    ChainComplex ac = chaincx::cone(
        ChainMap::identity(ChainComplex::concentrated(RingSpec::mod(3), -1, 2)));
    QuadraticComplex fat = x.direct_sum(QuadraticComplex(ac, 0, {}));
    NormalizeResult r = normalize_to_heart(fat);
    auto iso = formcore::is_isometric(r.form, f);
    CHECK(iso.verdict == formcore::IsoVerdict::Yes);
  }
  SUBCASE("E8 fattened by a degree -1 surgery normalizes to signature 8") {
    Rng rng(33);
    FormParameter p = quad(Z());
    QuadraticComplex e8 = QuadraticComplex::from_form(formcore::e8_form(p));
    QuadraticComplex fat = random_surgery_step(rng, e8, 0, 1);
    CHECK(rational_signature(fat) == 8);
    NormalizeResult r = normalize_to_heart(fat);
    CHECK(formcore::signature(r.form) == 8);
    for (const auto &cb : r.cobordisms)
      CHECK(cb.lefschetz_checked);
  }
}

TEST_CASE("cobordism invariance of the rational signature") {
  Rng rng(34);
  FormParameter p = quad(Z());
  for (int trial = 0; trial < 6; ++trial) {
    UnimodularForm f =
        trial % 2 ? UnimodularForm::hyperbolic(p, 1) : formcore::e8_form(p);
    QuadraticComplex x = QuadraticComplex::from_form(f);
    QuadraticComplex fat = random_surgery_step(rng, x, 0, 1);
    CHECK(rational_signature(fat) == rational_signature(x));
  }
}

TEST_CASE("automatic disjointness at pi0") {
  // two solvable data with supports k, l, k + l <= 0: the direct sum solves
  // with the given pieces prescribed
  Rng rng(35);
  int done = 0;
  for (int trial = 0; trial < 60 && done < 10; ++trial) {
    RingSpec ring = trial % 2 ? RingSpec::mod(3) : Z();
    QuadraticComplex x0 = hyperbolic_complex(ring, 1);
    QuadraticComplex fat = random_surgery_step(rng, x0, 0, 1);
    const ChainComplex &c = fat.complex();
    int k = -1; // both supports in degree -1, k + l = -2 <= 0
    if (c.dim(k) == 0)
      continue;
    // two independent data in degree -1
    auto make = [&](int seed) -> std::optional<std::pair<ChainMap, NullHomotopy>> {
      ChainComplex t = ChainComplex::concentrated(ring, k, 1);
      for (int tries = 0; tries < 30; ++tries) {
        Matrix m(ring, c.dim(k), 1);
        for (int i = 0; i < m.rows(); ++i)
          m.set(i, 0, Int(rng.uniform(0, ring.is_finite()
                                             ? ring.modulus().get_si() - 1
                                             : 2)));
        try {
          ChainMap f(t, c, {{k, m}});
          auto d = solve_nullhomotopy(fat, f);
          if (d)
            return std::make_pair(f, *d);
        } catch (const validation_error &) {
        }
      }
      return std::nullopt;
    };
    auto a = make(1), b = make(2);
    if (!a || !b)
      continue;
    // direct sum datum
    ChainComplex tsum = a->first.source().direct_sum(b->first.source());
    Matrix msum = a->first.at(k).hstack(b->first.at(k));
    ChainMap fsum(tsum, c, {{k, msum}});
    Matrix ia(ring, tsum.dim(k), 1), ib(ring, tsum.dim(k), 1);
    ia.set(0, 0, 1);
    ib.set(1, 0, 1);
    ChainMap incl_a(a->first.source(), tsum, {{k, ia}});
    ChainMap incl_b(b->first.source(), tsum, {{k, ib}});
    auto ext = solve_nullhomotopy_extending(
        fat, fsum, {{incl_a, a->second}, {incl_b, b->second}});
    REQUIRE(ext.has_value());
    ++done;
  }
  CHECK(done >= 6);
}

TEST_CASE("improve_morphism: spec examples") {
  SUBCASE("identity-legged cobordism returned unchanged") {
    QuadraticComplex h = hyperbolic_complex(Z(), 1);
    Cobordism idcb{h, h, h.complex(), ChainMap::identity(h.complex()),
                   ChainMap::identity(h.complex()), true};
    Cobordism out = improve_morphism(idcb, -1);
    CHECK(out.w == h.complex());
  }
  SUBCASE("trace of a degree -1 surgery improves at m = -1") {
    Rng rng(36);
    RingSpec ring = RingSpec::mod(3);
    QuadraticComplex x0 = hyperbolic_complex(ring, 1);
    QuadraticComplex fat = random_surgery_step(rng, x0, 0, 1);
    const ChainComplex &c = fat.complex();
    REQUIRE(c.dim(-1) > 0);
    ChainComplex t = ChainComplex::concentrated(ring, -1, 1);
    for (int tries = 0; tries < 50; ++tries) {
      Matrix m(ring, c.dim(-1), 1);
      for (int i = 0; i < m.rows(); ++i)
        m.set(i, 0, Int(rng.uniform(0, 2)));
      if (m.is_zero())
        continue;
      try {
        ChainMap f(t, c, {{-1, m}});
        auto delta = solve_nullhomotopy(fat, f);
        if (!delta)
          continue;
        SurgeryResult res = surgery(SurgeryDatum(fat, f, *delta));
        // reflect: viewed from the result, the bad leg has its fiber
        // homology in the datum degree
        Cobordism refl{res.trace.right, res.trace.left, res.trace.w,
                       res.trace.leg_right, res.trace.leg_left,
                       res.trace.lefschetz_checked};
        auto low = lowest_fiber_homology(refl.leg_left);
        if (!low || *low != -1)
          continue;
        ImproveLog lg;
        Cobordism better = improve_morphism(refl, -1, &lg);
        CHECK(lg.used_zigzag);
        // the improved zig-zag half has its left-leg fiber homology gone
        // in degree -1
        REQUIRE(lg.half_improved.has_value());
        auto newlow = lowest_fiber_homology(lg.half_improved->leg_left);
        CHECK((!newlow || *newlow >= 0));
        CHECK(lg.half_improved->lefschetz_checked);
        REQUIRE(lg.reflected_trace.has_value());
        // endpoints of the returned composite unchanged
        CHECK(better.left.complex() == refl.left.complex());
        CHECK(better.right.complex() == refl.right.complex());
        return;
      } catch (const validation_error &) {
        continue;
      }
    }
    FAIL("no improvable trace found");
  }
}
