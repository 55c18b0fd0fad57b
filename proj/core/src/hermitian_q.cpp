#include "wittkit/hermitian_q.hpp"

#include <sstream>

namespace wittkit::qcat {

namespace {

using exactalg::kernel_basis;
using exactalg::rows_split_summand;
using exactalg::snf;

// reduced column echelon form over a prime field: the canonical basis of
// the column span
Matrix column_echelon(const Matrix &m) {
  const RingSpec &ring = m.ring();
  Matrix a = m;
  int rows = a.rows(), cols = a.cols();
  int col = 0;
  for (int row = 0; row < rows && col < cols; ++row) {
    int piv = -1;
    for (int c2 = col; c2 < cols; ++c2)
      if (a.at(row, c2) != 0) {
        piv = c2;
        break;
      }
    if (piv < 0)
      continue;
    // swap columns
    if (piv != col)
      for (int r2 = 0; r2 < rows; ++r2) {
        Int t = a.at(r2, col);
        a.set(r2, col, a.at(r2, piv));
        a.set(r2, piv, t);
      }
    Int inv = *ring.inverse(a.at(row, col));
    for (int r2 = 0; r2 < rows; ++r2)
      a.set(r2, col, ring.mul(a.at(r2, col), inv));
    for (int c2 = 0; c2 < cols; ++c2) {
      if (c2 == col || a.at(row, c2) == 0)
        continue;
      Int f = a.at(row, c2);
      for (int r2 = 0; r2 < rows; ++r2)
        a.set(r2, c2, ring.sub(a.at(r2, c2), ring.mul(f, a.at(r2, col))));
    }
    ++col;
  }
  return a;
}

} // namespace

std::string SpanMorphism::key() const {
  return p.str() + "|" + i.str();
}

SpanMorphism canonical_span(const Matrix &p, const Matrix &i) {
  Matrix stacked = p.vstack(i);
  Matrix ech = column_echelon(stacked);
  SpanMorphism out;
  out.w_rank = p.cols();
  out.p = ech.submatrix(0, 0, p.rows(), p.cols());
  out.i = ech.submatrix(p.rows(), 0, i.rows(), i.cols());
  return out;
}

bool span_admissible(const UnimodularForm &x, const UnimodularForm &y,
                     const Matrix &p, const Matrix &i) {
  const RingSpec &ring = x.param().ring();
  if (!ring.is_field())
    throw validation_error("span_admissible: prime fields only");
  int w = p.cols();
  if (i.cols() != w)
    return false;
  // p split projection, i split inclusion
  if (snf(p).rank() < x.rank())
    return false;
  if (snf(i).rank() < w)
    return false;
  // parity forces 2 w = rank x + rank y for the kernel-duality condition
  if (2 * w != x.rank() + y.rank())
    return false;
  // (1) restricted forms agree: bilinear parts and q on a basis
  Matrix bx = p.transpose() * x.gram() * p;
  Matrix by = i.transpose() * y.gram() * i;
  if (!(bx == by))
    return false;
  for (int c = 0; c < w; ++c)
    if (x.eval_q(p.col_entries(c)) != y.eval_q(i.col_entries(c)))
      return false;
  // (2) (q')_# o i : ker(p) -> ker(dual(i)) an isomorphism
  Matrix k = kernel_basis(p); // w x (w - rank x)
  Matrix img = y.gram() * i * k;
  Matrix a = kernel_basis(i.transpose()); // functionals vanishing on i(w)
  if (k.cols() != a.cols())
    return false;
  auto coords = exactalg::solve(a, img);
  if (!coords)
    return false;
  if (k.cols() > 0 && !exactalg::is_unimodular(*coords))
    return false;
  return true;
}

namespace {

// enumerate all admissible span classes X ~> Y
std::vector<SpanMorphism> enumerate_spans(const UnimodularForm &x,
                                          const UnimodularForm &y) {
  const RingSpec &ring = x.param().ring();
  std::vector<SpanMorphism> out;
  if ((x.rank() + y.rank()) % 2 != 0)
    return out;
  int w = (x.rank() + y.rank()) / 2;
  if (w < x.rank() || w > y.rank())
    return out;
  if (w == 0) {
    // unique empty span between rank-0 forms
    SpanMorphism s;
    s.w_rank = 0;
    s.p = Matrix(ring, 0, 0);
    s.i = Matrix(ring, 0, 0);
    out.push_back(s);
    return out;
  }
  int rows = x.rank() + y.rank();
  long q = ring.modulus().get_si();
  long total = 1;
  for (int e = 0; e < rows * w; ++e) {
    total *= q;
    if (total > 50000000L)
      throw cap_error("enumerate_spans: search space too large");
  }
  std::map<std::string, SpanMorphism> seen;
  std::vector<Int> entries(static_cast<size_t>(rows) * w, Int(0));
  for (long code = 0; code < total; ++code) {
    long t = code;
    Matrix m(ring, rows, w);
    for (int idx = 0; idx < rows * w; ++idx) {
      m.set(idx / w, idx % w, Int(t % q));
      t /= q;
    }
    Matrix p = m.submatrix(0, 0, x.rank(), w);
    Matrix i = m.submatrix(x.rank(), 0, y.rank(), w);
    // quick rank screens before the full check
    if (snf(i).rank() < w || snf(p).rank() < x.rank())
      continue;
    SpanMorphism canon = canonical_span(p, i);
    std::string key = canon.key();
    if (seen.count(key))
      continue;
    if (!span_admissible(x, y, canon.p, canon.i))
      continue;
    seen.emplace(key, canon);
  }
  for (auto &[k, s] : seen)
    out.push_back(s);
  return out;
}

} // namespace

HermitianQ build_hermitian_q(const FormParameter &param, int rank_cap) {
  const RingSpec &ring = param.ring();
  if (!ring.is_field())
    throw validation_error("build_hermitian_q: prime fields only");
  long defaults = ring.modulus() == 2 ? 4 : 3;
  if (rank_cap > defaults)
    throw cap_error("build_hermitian_q: rank cap exceeds the configured "
                    "maximum for this field");

  HermitianQ out;
  out.objects = formcore::enumerate_classes(param, rank_cap);
  int n = static_cast<int>(out.objects.size());

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.spans[{a, b}] = enumerate_spans(out.objects[a], out.objects[b]);

  // identities
  std::vector<int> identities(n, -1);
  for (int a = 0; a < n; ++a) {
    const UnimodularForm &xa = out.objects[a];
    SpanMorphism id = canonical_span(Matrix::identity(ring, xa.rank()),
                                     Matrix::identity(ring, xa.rank()));
    auto &list = out.spans[{a, a}];
    for (size_t idx = 0; idx < list.size(); ++idx)
      if (list[idx].key() == id.key())
        identities[a] = static_cast<int>(idx);
    if (identities[a] < 0)
      throw std::logic_error("build_hermitian_q: identity span missing");
  }

  // composition by pullback of spans; admissibility asserted, result located
  std::map<std::tuple<int, int, int, int, int>, int> comp;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const auto &ab = out.spans[{a, b}];
        const auto &bc = out.spans[{b, c}];
        const auto &ac = out.spans[{a, c}];
        for (size_t f = 0; f < ab.size(); ++f)
          for (size_t g = 0; g < bc.size(); ++g) {
            // pullback middle: kernel of [i1 | -p2] : w1 (+) w2 -> Y
            const SpanMorphism &s1 = ab[f];
            const SpanMorphism &s2 = bc[g];
            Matrix diff = s1.i.hstack(s2.p.neg());
            Matrix k = kernel_basis(diff);
            Matrix k1 = k.submatrix(0, 0, s1.w_rank, k.cols());
            Matrix k2 = k.submatrix(s1.w_rank, 0, s2.w_rank, k.cols());
            Matrix newp = s1.p * k1;
            Matrix newi = s2.i * k2;
            if (!span_admissible(out.objects[a], out.objects[c], newp, newi))
              throw std::logic_error(
                  "build_hermitian_q: composite span not admissible");
            SpanMorphism canon = canonical_span(newp, newi);
            int found = -1;
            for (size_t idx = 0; idx < ac.size(); ++idx)
              if (ac[idx].key() == canon.key())
                found = static_cast<int>(idx);
            if (found < 0)
              throw std::logic_error(
                  "build_hermitian_q: composite span not enumerated");
            comp[{a, b, c, static_cast<int>(f), static_cast<int>(g)}] = found;
          }
      }

  std::vector<std::string> labels;
  for (const auto &o : out.objects) {
    std::ostringstream os;
    os << "rank " << o.rank() << " " << o.gram().str();
    labels.push_back(os.str());
  }
  std::map<std::pair<int, int>, std::vector<std::string>> homs;
  for (auto &[key, list] : out.spans) {
    std::vector<std::string> payloads;
    for (auto &s : list)
      payloads.push_back(s.key());
    if (!payloads.empty())
      homs[key] = payloads;
  }
  out.category = FinCategory(labels, homs, identities, comp);
  return out;
}

} // namespace wittkit::qcat
