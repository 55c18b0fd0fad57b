#include "wittkit/normalize.hpp"
#include "wittkit/weight.hpp"
#include "wittkit/witt.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace wittkit;
using chaincx::ChainComplex;
using chaincx::ChainMap;
using exactalg::Matrix;
using exactalg::RingSpec;
using formcore::FormParameter;
using formcore::UnimodularForm;

namespace {

Matrix random_matrix(std::mt19937_64 &g, const RingSpec &ring, int r, int c,
                     long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  Matrix m(ring, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      m.set(i, j, Int(d(g)));
  return m;
}

void bm_snf_z(benchmark::State &state) {
  std::mt19937_64 g(7);
  int n = static_cast<int>(state.range(0));
  std::vector<Matrix> inputs;
  for (int i = 0; i < 16; ++i)
    inputs.push_back(random_matrix(g, RingSpec::integers(), n, n, -9, 9));
  size_t k = 0;
  for (auto _ : state) {
    auto s = exactalg::snf(inputs[k++ % inputs.size()]);
    benchmark::DoNotOptimize(s.D);
  }
}
BENCHMARK(bm_snf_z)->Arg(4)->Arg(6)->Arg(8);

void bm_homology(benchmark::State &state) {
  std::mt19937_64 g(8);
  RingSpec Z = RingSpec::integers();
  // staircase complex with factored differentials
  Matrix d1 = random_matrix(g, Z, 4, 4, -3, 3);
  Matrix kb = exactalg::kernel_basis(d1);
  Matrix d2 = kb.cols() ? kb * random_matrix(g, Z, kb.cols(), 4, -3, 3)
                        : Matrix(Z, 4, 4);
  ChainComplex c(Z, -1, {4, 4, 4}, {d1, d2});
  for (auto _ : state) {
    auto h = chaincx::homology(c, 0);
    benchmark::DoNotOptimize(h.group);
  }
}
BENCHMARK(bm_homology);

void bm_trim(benchmark::State &state) {
  RingSpec Z = RingSpec::integers();
  ChainComplex base = ChainComplex::concentrated(Z, 0, 2);
  ChainComplex fat = base;
  for (int i = 0; i < 3; ++i)
    fat = fat.direct_sum(
        chaincx::cone(ChainMap::identity(ChainComplex::concentrated(Z, i - 1, 2))));
  for (auto _ : state) {
    auto t = chaincx::trim(fat);
    benchmark::DoNotOptimize(t.trimmed);
  }
}
BENCHMARK(bm_trim);

void bm_witt_f3(benchmark::State &state) {
  FormParameter p = FormParameter::symmetric(RingSpec::mod(3), 1);
  for (auto _ : state) {
    auto w = formcore::witt_group(p, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(w.group);
  }
}
BENCHMARK(bm_witt_f3)->Arg(2)->Arg(3);

void bm_canonical_form_f3(benchmark::State &state) {
  FormParameter p = FormParameter::symmetric(RingSpec::mod(3), 1);
  UnimodularForm h = UnimodularForm::hyperbolic(p, 1);
  Matrix u = Matrix::from_rows(RingSpec::mod(3), {{Int(1), Int(2)}, {Int(1), Int(1)}});
  UnimodularForm twisted = h.change_basis(u);
  for (auto _ : state) {
    auto c = formcore::canonical_form(twisted);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(bm_canonical_form_f3);

void bm_surgery_step(benchmark::State &state) {
  RingSpec Z = RingSpec::integers();
  FormParameter p = FormParameter::quadratic(Z, 1);
  qsurgery::QuadraticComplex x =
      qsurgery::QuadraticComplex::from_form(UnimodularForm::hyperbolic(p, 2));
  ChainComplex t = ChainComplex::concentrated(Z, 0, 1);
  Matrix incl(Z, 4, 1);
  incl.set(0, 0, 1);
  ChainMap f(t, x.complex(), {{0, incl}});
  auto delta = qsurgery::solve_nullhomotopy(x, f);
  for (auto _ : state) {
    auto res = qsurgery::surgery(qsurgery::SurgeryDatum(x, f, *delta));
    benchmark::DoNotOptimize(res.result);
  }
}
BENCHMARK(bm_surgery_step);

void bm_normalize(benchmark::State &state) {
  RingSpec Z = RingSpec::integers();
  FormParameter p = FormParameter::quadratic(Z, 1);
  qsurgery::QuadraticComplex x = qsurgery::QuadraticComplex::from_form(
      formcore::e8_form(p).orthogonal_sum(UnimodularForm::hyperbolic(p, 1)));
  // one middle surgery along twice a hyperbolic generator: isotropic, and
  // the non-primitive pairing leaves Z/2 homology below the middle
  ChainComplex t = ChainComplex::concentrated(Z, 0, 1);
  Matrix m(Z, 10, 1);
  m.set(8, 0, 2);
  ChainMap f(t, x.complex(), {{0, m}});
  auto delta = qsurgery::solve_nullhomotopy(x, f);
  qsurgery::QuadraticComplex fat =
      qsurgery::surgery(qsurgery::SurgeryDatum(x, f, *delta)).result;
  for (auto _ : state) {
    auto res = qsurgery::normalize_to_heart(fat);
    benchmark::DoNotOptimize(res.form);
  }
}
BENCHMARK(bm_normalize);

} // namespace

BENCHMARK_MAIN();
