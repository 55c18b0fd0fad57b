#include "wittkit/snf.hpp"

namespace wittkit::exactalg {

int SmithDecomposition::rank() const {
  int r = 0;
  int n = std::min(D.rows(), D.cols());
  for (int t = 0; t < n; ++t)
    if (D.at(t, t) != 0)
      ++r;
  return r;
}

Int SmithDecomposition::diag(int t) const {
  if (t < std::min(D.rows(), D.cols()))
    return D.at(t, t);
  return 0;
}

namespace {

// Mutable integer workspace with accumulated transforms.
struct Workspace {
  int r, c;
  std::vector<Int> w;        // r x c, over Z
  std::vector<Int> u, uinv;  // r x r
  std::vector<Int> v, vinv;  // c x c
  int su = 1, sv = 1;

  Workspace(const Matrix &A) : r(A.rows()), c(A.cols()) {
    w.resize(size_t(r) * c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        w[size_t(i) * c + j] = A.at(i, j);
    u.assign(size_t(r) * r, 0);
    uinv.assign(size_t(r) * r, 0);
    for (int i = 0; i < r; ++i)
      u[size_t(i) * r + i] = uinv[size_t(i) * r + i] = 1;
    v.assign(size_t(c) * c, 0);
    vinv.assign(size_t(c) * c, 0);
    for (int i = 0; i < c; ++i)
      v[size_t(i) * c + i] = vinv[size_t(i) * c + i] = 1;
  }

  Int &W(int i, int j) { return w[size_t(i) * c + j]; }

  void swap_rows(int a, int b) {
    if (a == b)
      return;
    for (int j = 0; j < c; ++j)
      std::swap(W(a, j), W(b, j));
    for (int j = 0; j < r; ++j) {
      std::swap(uinv[size_t(a) * r + j], uinv[size_t(b) * r + j]); // E*Uinv
      std::swap(u[size_t(j) * r + a], u[size_t(j) * r + b]);       // U*E^-1
    }
    su = -su;
  }

  void swap_cols(int a, int b) {
    if (a == b)
      return;
    for (int i = 0; i < r; ++i)
      std::swap(W(i, a), W(i, b));
    for (int i = 0; i < c; ++i) {
      std::swap(vinv[size_t(i) * c + a], vinv[size_t(i) * c + b]); // Vinv*F
      std::swap(v[size_t(a) * c + i], v[size_t(b) * c + i]);       // F^-1*V
    }
    sv = -sv;
  }

  void negate_row(int a) {
    for (int j = 0; j < c; ++j)
      W(a, j) = -W(a, j);
    for (int j = 0; j < r; ++j) {
      uinv[size_t(a) * r + j] = -uinv[size_t(a) * r + j];
      u[size_t(j) * r + a] = -u[size_t(j) * r + a];
    }
    su = -su;
  }

  // row b += q * row a
  void add_row(int a, int b, const Int &q) {
    if (q == 0)
      return;
    for (int j = 0; j < c; ++j)
      W(b, j) += q * W(a, j);
    for (int j = 0; j < r; ++j) {
      uinv[size_t(b) * r + j] += q * uinv[size_t(a) * r + j];
      u[size_t(j) * r + a] -= q * u[size_t(j) * r + b];
    }
  }

  // col b += q * col a
  void add_col(int a, int b, const Int &q) {
    if (q == 0)
      return;
    for (int i = 0; i < r; ++i)
      W(i, b) += q * W(i, a);
    for (int i = 0; i < c; ++i) {
      vinv[size_t(i) * c + b] += q * vinv[size_t(i) * c + a];
      v[size_t(a) * c + i] -= q * v[size_t(b) * c + i];
    }
  }
};

// smallest |entry| != 0 in the trailing block, ties row-major
bool find_pivot(Workspace &ws, int t, int &pi, int &pj) {
  bool found = false;
  Int best;
  for (int i = t; i < ws.r; ++i)
    for (int j = t; j < ws.c; ++j) {
      const Int &x = ws.W(i, j);
      if (x == 0)
        continue;
      Int a = abs(x);
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

void smith_over_z(Workspace &ws) {
  int n = std::min(ws.r, ws.c);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      int pi, pj;
      if (!find_pivot(ws, t, pi, pj))
        return; // all zero from here on
      ws.swap_rows(t, pi);
      ws.swap_cols(t, pj);
      if (ws.W(t, t) < 0)
        ws.negate_row(t);

      bool dirty = false;
      for (int i = t + 1; i < ws.r; ++i) {
        if (ws.W(i, t) == 0)
          continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), ws.W(i, t).get_mpz_t(),
                   ws.W(t, t).get_mpz_t());
        ws.add_row(t, i, -q);
        if (ws.W(i, t) != 0)
          dirty = true;
      }
      for (int j = t + 1; j < ws.c; ++j) {
        if (ws.W(t, j) == 0)
          continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), ws.W(t, j).get_mpz_t(),
                   ws.W(t, t).get_mpz_t());
        ws.add_col(t, j, -q);
        if (ws.W(t, j) != 0)
          dirty = true;
      }
      if (dirty)
        continue; // a smaller pivot appeared in row/col t

      // divisibility: pivot must divide the whole trailing block
      bool fixed = true;
      for (int i = t + 1; i < ws.r && fixed; ++i)
        for (int j = t + 1; j < ws.c && fixed; ++j)
          if (!mpz_divisible_p(ws.W(i, j).get_mpz_t(),
                               ws.W(t, t).get_mpz_t())) {
            ws.add_row(i, t, 1);
            fixed = false;
          }
      if (fixed)
        break;
    }
  }
}

Matrix to_matrix(const std::vector<Int> &data, int r, int c,
                 const RingSpec &ring) {
  Matrix m(ring, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      m.set(i, j, data[size_t(i) * c + j]);
  return m;
}

// unit u with u*d == gcd(d,n) mod n;  0 < d < n
Int unit_scaling_to_gcd(const Int &d, const Int &n) {
  Int g;
  mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Int dd = d / g, nn = n / g;
  Int u0;
  if (nn == 1)
    u0 = 0; // any residue works mod 1
  else if (mpz_invert(u0.get_mpz_t(), dd.get_mpz_t(), nn.get_mpz_t()) == 0)
    throw std::logic_error("unit_scaling_to_gcd: d/g not invertible mod n/g");
  for (Int k = 0; k < g; ++k) {
    Int cand = u0 + k * nn;
    Int gg;
    mpz_gcd(gg.get_mpz_t(), cand.get_mpz_t(), n.get_mpz_t());
    if (gg == 1)
      return cand % n;
  }
  throw std::logic_error("unit_scaling_to_gcd: no unit lift found");
}

} // namespace

SmithDecomposition snf(const Matrix &A) {
  const RingSpec &ring = A.ring();
  Workspace ws(A); // entries are canonical reps, i.e. a lift to Z
  smith_over_z(ws);

  SmithDecomposition out;
  out.det_u_sign = ws.su;
  out.det_v_sign = ws.sv;
  out.U = to_matrix(ws.u, ws.r, ws.r, ring);
  out.Uinv = to_matrix(ws.uinv, ws.r, ws.r, ring);
  out.V = to_matrix(ws.v, ws.c, ws.c, ring);
  out.Vinv = to_matrix(ws.vinv, ws.c, ws.c, ring);
  out.D = to_matrix(ws.w, ws.r, ws.c, ring);

  if (ring.is_finite()) {
    // normalize each diagonal entry to its canonical divisor gcd(d, n)
    const Int &n = ring.modulus();
    int m = std::min(ws.r, ws.c);
    for (int t = 0; t < m; ++t) {
      Int d = out.D.at(t, t);
      if (d == 0)
        continue;
      Int g;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      if (g == n) {
        out.D.set(t, t, 0);
        continue;
      }
      if (d == g)
        continue;
      Int u = unit_scaling_to_gcd(d, n);
      Int uinv = *ring.inverse(u);
      // D' = diag(u at t) * D, U' = U * diag(uinv at t), Uinv' = diag(u) Uinv
      out.D.set(t, t, ring.mul(u, d));
      for (int i = 0; i < ws.r; ++i)
        out.U.set(i, t, ring.mul(out.U.at(i, t), uinv));
      for (int j = 0; j < ws.r; ++j)
        out.Uinv.set(t, j, ring.mul(out.Uinv.at(t, j), u));
    }
  }
  return out;
}

namespace {

// one solution of d*y = c in the ring, or nullopt
std::optional<Int> solve_scalar(const RingSpec &ring, const Int &d,
                                const Int &c) {
  if (ring.is_integers()) {
    if (d == 0)
      return c == 0 ? std::optional<Int>(0) : std::nullopt;
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
      return std::nullopt;
    return Int(c / d);
  }
  const Int &n = ring.modulus();
  if (d == 0)
    return c == 0 ? std::optional<Int>(0) : std::nullopt;
  Int g;
  mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (!mpz_divisible_p(c.get_mpz_t(), g.get_mpz_t()))
    return std::nullopt;
  Int dd = d / g, nn = n / g, cc = c / g;
  Int inv;
  if (nn == 1)
    return Int(0);
  if (mpz_invert(inv.get_mpz_t(), dd.get_mpz_t(), nn.get_mpz_t()) == 0)
    return std::nullopt;
  return ring.normalize(cc * inv);
}

} // namespace

std::optional<Matrix> solve(const Matrix &A, const Matrix &B) {
  if (A.ring() != B.ring())
    throw validation_error("solve: ring mismatch");
  if (A.rows() != B.rows())
    throw validation_error("solve: shape mismatch");
  SmithDecomposition s = snf(A);
  Matrix C = s.Uinv * B;
  int m = std::min(A.rows(), A.cols());
  Matrix Y(A.ring(), A.cols(), B.cols());
  for (int t = 0; t < A.rows(); ++t) {
    Int d = t < m ? s.D.at(t, t) : Int(0);
    for (int j = 0; j < B.cols(); ++j) {
      auto y = solve_scalar(A.ring(), d, C.at(t, j));
      if (!y)
        return std::nullopt;
      if (t < A.cols())
        Y.set(t, j, *y);
      else if (C.at(t, j) != 0)
        return std::nullopt;
    }
  }
  return s.Vinv * Y;
}

Matrix kernel_basis(const Matrix &A) {
  const RingSpec &ring = A.ring();
  if (ring.is_finite() && !ring.is_field())
    throw validation_error("kernel_basis: composite Z/n has non-free kernels; "
                           "use kernel_generators");
  SmithDecomposition s = snf(A);
  int m = std::min(A.rows(), A.cols());
  std::vector<int> zero_cols;
  for (int t = 0; t < A.cols(); ++t)
    if (t >= m || s.D.at(t, t) == 0)
      zero_cols.push_back(t);
  return s.Vinv.select_columns(zero_cols);
}

Matrix kernel_generators(const Matrix &A) {
  const RingSpec &ring = A.ring();
  if (!ring.is_finite() || ring.is_field())
    return kernel_basis(A);
  const Int &n = ring.modulus();
  SmithDecomposition s = snf(A);
  int m = std::min(A.rows(), A.cols());
  Matrix Y(ring, A.cols(), 0);
  for (int t = 0; t < A.cols(); ++t) {
    Int d = t < m ? s.D.at(t, t) : Int(0);
    Matrix e(ring, A.cols(), 1);
    if (d == 0) {
      e.set(t, 0, 1);
    } else if (d == 1) {
      continue;
    } else {
      e.set(t, 0, n / d); // annihilator generator of d in Z/n
    }
    Y = Y.hstack(e);
  }
  return s.Vinv * Y;
}

Int det(const Matrix &A) {
  if (!A.is_square())
    throw validation_error("det: matrix not square");
  int n = A.rows();
  if (n == 0)
    return 1;
  // Bareiss fraction-free elimination on the canonical lift
  std::vector<Int> m(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[size_t(i) * n + j] = A.at(i, j);
  int sign = 1;
  Int prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[size_t(k) * n + k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[size_t(i) * n + k] != 0) {
          piv = i;
          break;
        }
      if (piv < 0)
        return A.ring().normalize(0);
      for (int j = 0; j < n; ++j)
        std::swap(m[size_t(k) * n + j], m[size_t(piv) * n + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = m[size_t(i) * n + j] * m[size_t(k) * n + k] -
                m[size_t(i) * n + k] * m[size_t(k) * n + j];
        mpz_divexact(m[size_t(i) * n + j].get_mpz_t(), t.get_mpz_t(),
                     prev.get_mpz_t());
      }
    prev = m[size_t(k) * n + k];
  }
  Int d = m[size_t(n - 1) * n + (n - 1)];
  if (sign < 0)
    d = -d;
  return A.ring().normalize(d);
}

bool is_unimodular(const Matrix &A) {
  return A.is_square() && A.ring().is_unit(det(A));
}

std::optional<Matrix> inverse(const Matrix &A) {
  if (!A.is_square())
    return std::nullopt;
  auto X = solve(A, Matrix::identity(A.ring(), A.rows()));
  if (!X)
    return std::nullopt;
  if (!((*X) * A == Matrix::identity(A.ring(), A.rows())))
    return std::nullopt;
  return X;
}

bool rows_split_summand(const Matrix &A) {
  if (A.rows() == 0)
    return true;
  SmithDecomposition s = snf(A);
  if (s.rank() < A.rows())
    return false;
  for (int t = 0; t < A.rows(); ++t)
    if (!A.ring().is_unit(s.D.at(t, t)))
      return false;
  return true;
}

} // namespace wittkit::exactalg
