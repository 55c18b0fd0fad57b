#include "wittkit/form_classify.hpp"

#include <functional>

namespace wittkit::formcore {

namespace {

using exactalg::kernel_basis;
using exactalg::rows_split_summand;
using exactalg::snf;

// completion of the column span of K to a basis of R^n: columns m.. of U
// where K = U D V with unit diagonal
Matrix basis_completion(const Matrix &k) {
  auto s = snf(k);
  std::vector<int> rest;
  for (int j = k.cols(); j < k.rows(); ++j)
    rest.push_back(j);
  return s.U.select_columns(rest);
}

} // namespace

bool is_lagrangian(const UnimodularForm &f, const Matrix &basis) {
  int n = f.rank();
  if (n % 2 != 0)
    return false;
  int m = n / 2;
  if (basis.rows() != n || basis.cols() != m)
    return false;
  if (!rows_split_summand(basis.transpose()))
    return false;
  // b and q vanish on the basis (hence on L by polarization)
  Matrix pair = basis.transpose() * f.gram() * basis;
  if (!pair.is_zero())
    return false;
  for (int j = 0; j < m; ++j)
    if (f.eval_q(basis.col_entries(j)) != f.param().q_zero())
      return false;
  // duality: L -> Hom(P/L, M) an isomorphism, i.e. C^T B K invertible
  Matrix comp = basis_completion(basis);
  Matrix dual_map = comp.transpose() * f.gram() * basis;
  return exactalg::is_unimodular(dual_map);
}

namespace {

std::vector<std::vector<Int>> vectors_mod(const RingSpec &ring, int n) {
  std::vector<std::vector<Int>> out;
  long m = ring.modulus().get_si();
  long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= m;
    if (total > 4000000)
      throw cap_error("vector enumeration too large");
  }
  std::vector<Int> v(n, Int(0));
  for (long code = 0; code < total; ++code) {
    long t = code;
    for (int i = 0; i < n; ++i) {
      v[i] = Int(t % m);
      t /= m;
    }
    out.push_back(v);
  }
  return out;
}

Matrix cols_to_matrix(const RingSpec &ring,
                      const std::vector<std::vector<Int>> &cols, int n) {
  Matrix m(ring, n, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i)
      m.set(i, static_cast<int>(j), cols[j][i]);
  return m;
}

// exhaustive backtracking over isotropic split tuples; if collect is set,
// gathers every Lagrangian submodule (deduplicated), otherwise returns the
// first hit through `found`
void lagrangian_search(const UnimodularForm &f, bool collect,
                       std::optional<Matrix> &found,
                       std::vector<Matrix> *collection) {
  const RingSpec &ring = f.param().ring();
  int n = f.rank();
  int half = n / 2;
  auto vectors = vectors_mod(ring, n);
  std::vector<QElem> qv;
  for (const auto &v : vectors)
    qv.push_back(f.eval_q(v));

  std::vector<std::vector<Int>> chosen;
  std::vector<Matrix> seen; // column-reduced submodule keys

  std::function<bool(size_t)> rec = [&](size_t start) -> bool {
    if (static_cast<int>(chosen.size()) == half) {
      Matrix k = cols_to_matrix(ring, chosen, n);
      if (!is_lagrangian(f, k))
        return false;
      if (!collect) {
        found = k;
        return true;
      }
      // canonical key: reduced column echelon of the span (prime fields)
      auto s = snf(k);
      Matrix key = k * s.Vinv; // normalizes the generating set
      // fall back to pairwise span-equality for dedup
      for (const Matrix &other : *collection) {
        bool same = exactalg::solve(other, k).has_value() &&
                    exactalg::solve(k, other).has_value();
        if (same)
          return false;
      }
      collection->push_back(k);
      return false;
    }
    for (size_t idx = collect ? start : 0; idx < vectors.size(); ++idx) {
      const auto &v = vectors[idx];
      if (qv[idx] != f.param().q_zero())
        continue;
      bool ok = f.eval_b(v, v) == 0;
      for (const auto &p : chosen)
        if (!ok || f.eval_b(p, v) != 0)
          ok = false;
      if (!ok)
        continue;
      chosen.push_back(v);
      if (rows_split_summand(cols_to_matrix(ring, chosen, n).transpose())) {
        if (rec(idx + 1))
          return true;
      }
      chosen.pop_back();
    }
    return false;
  };
  rec(0);
}

// invariant route over Z: split hyperbolic summands along primitive
// isotropic vectors of growing height
std::optional<Matrix> lagrangian_over_Z(const UnimodularForm &f, int cap) {
  int n = f.rank();
  if (n % 2 != 0)
    return std::nullopt;
  if (n == 0)
    return Matrix(f.param().ring(), 0, 0);
  if (signature(f) != 0)
    return std::nullopt; // metabolic forms have signature 0
  const RingSpec &ring = f.param().ring();

  // find a primitive isotropic vector (q = 0 and b(v,v) = 0) by height
  std::optional<std::vector<Int>> iso;
  for (long h = 1; h <= (1L << cap) && !iso; h *= 2) {
    std::vector<Int> v(n, Int(0));
    std::function<bool(int)> rec = [&](int i) -> bool {
      if (i == n) {
        bool zero = true;
        Int g = 0;
        for (const Int &x : v) {
          if (x != 0)
            zero = false;
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        }
        if (zero || g != 1)
          return false;
        if (f.eval_b(v, v) != 0)
          return false;
        if (f.eval_q(v) != f.param().q_zero())
          return false;
        iso = v;
        return true;
      }
      for (long x = -h; x <= h; ++x) {
        v[i] = x;
        if (rec(i + 1))
          return true;
      }
      return false;
    };
    rec(0);
  }
  if (!iso)
    throw cap_error("find_lagrangian: isotropic vector search cap exceeded");

  if (n == 2) {
    Matrix k = Matrix::column(ring, *iso);
    if (!is_lagrangian(f, k))
      throw std::logic_error("find_lagrangian: invariant-route witness bad");
    return k;
  }

  // split the hyperbolic-ish plane spanned by v and a dual partner w
  Matrix v = Matrix::column(ring, *iso);
  Matrix bv = f.gram() * v; // primitive since B unimodular
  auto w = exactalg::solve(bv.transpose(), Matrix::from_rows(ring, {{Int(1)}}));
  if (!w)
    throw std::logic_error("find_lagrangian: no dual partner for primitive v");
  // orthogonal complement of span(v, w)
  Matrix rows = (f.gram() * v).transpose().vstack((f.gram() * *w).transpose());
  Matrix comp = kernel_basis(rows);
  // restricted form on the complement
  Matrix bc = comp.transpose() * f.gram() * comp;
  std::vector<QElem> qc;
  for (int j = 0; j < comp.cols(); ++j)
    qc.push_back(f.eval_q(comp.col_entries(j)));
  UnimodularForm rest(f.param(), bc, qc);
  auto sub = lagrangian_over_Z(rest, cap);
  if (!sub)
    return std::nullopt;
  Matrix lifted = comp * *sub;
  Matrix k = v.hstack(lifted);
  if (!is_lagrangian(f, k))
    throw std::logic_error("find_lagrangian: assembled basis not Lagrangian");
  return k;
}

} // namespace

std::optional<Matrix> find_lagrangian(const UnimodularForm &f,
                                      LagrangianMode mode, int cap) {
  if (f.rank() % 2 != 0)
    return std::nullopt;
  if (mode == LagrangianMode::Exhaustive) {
    if (!f.param().ring().is_finite())
      throw validation_error("find_lagrangian: exhaustive mode needs a "
                             "finite ring");
    if (f.rank() > cap)
      throw cap_error("find_lagrangian: rank exceeds cap");
    if (f.rank() == 0)
      return Matrix(f.param().ring(), 0, 0);
    std::optional<Matrix> found;
    lagrangian_search(f, false, found, nullptr);
    return found;
  }
  if (!f.param().ring().is_integers() || f.param().epsilon() != 1 ||
      (f.param().flavor() != Flavor::Symmetric &&
       f.param().flavor() != Flavor::Quadratic))
    throw validation_error(
        "find_lagrangian: invariant mode needs Z, symmetric/quadratic, +1");
  return lagrangian_over_Z(f, cap);
}

std::vector<Matrix> all_lagrangians(const UnimodularForm &f, int cap) {
  if (!f.param().ring().is_field())
    throw validation_error("all_lagrangians: prime fields only");
  if (f.rank() > cap)
    throw cap_error("all_lagrangians: rank exceeds cap");
  std::vector<Matrix> out;
  if (f.rank() % 2 != 0)
    return out;
  if (f.rank() == 0) {
    out.push_back(Matrix(f.param().ring(), 0, 0));
    return out;
  }
  std::optional<Matrix> unused;
  lagrangian_search(f, true, unused, &out);
  return out;
}

} // namespace wittkit::formcore
