#include "wittkit/surgery.hpp"

#include <functional>

namespace wittkit::qsurgery {

namespace {

using exactalg::RingSpec;

// ---------------------------------------------------------------------
// small linear solver over matrix unknowns: terms  coeff * L * X^(T?) * R
// ---------------------------------------------------------------------

struct Term {
  Int coeff;
  std::optional<Matrix> left;
  int var;
  bool transposed;
  std::optional<Matrix> right;
};

struct EqBlock {
  int rows, cols;
  std::vector<Term> terms;
  Matrix constant; // sum(terms) + constant = 0
};

struct BlockSolver {
  RingSpec ring;
  std::vector<std::pair<int, int>> shapes;
  std::vector<EqBlock> eqs;

  explicit BlockSolver(RingSpec r) : ring(r) {}

  int add_var(int rows, int cols) {
    shapes.push_back({rows, cols});
    return static_cast<int>(shapes.size()) - 1;
  }

  std::optional<std::vector<Matrix>> solve() {
    std::vector<int> offset(shapes.size() + 1, 0);
    for (size_t v = 0; v < shapes.size(); ++v)
      offset[v + 1] = offset[v] + shapes[v].first * shapes[v].second;
    int ncols = offset.back();

    // sparse rows: col -> coeff, plus right-hand side
    std::vector<std::map<int, Int>> rows;
    std::vector<Int> rhs;
    for (const auto &eq : eqs) {
      size_t base = rows.size();
      rows.resize(base + size_t(eq.rows) * eq.cols);
      rhs.resize(rows.size(), Int(0));
      for (int i = 0; i < eq.rows; ++i)
        for (int j = 0; j < eq.cols; ++j)
          rhs[base + size_t(i) * eq.cols + j] =
              ring.neg(eq.constant.at(i, j));
      for (const Term &t : eq.terms) {
        auto [vr, vc] = shapes[t.var];
        int lcols = t.left ? t.left->cols() : (t.transposed ? vc : vr);
        for (int i = 0; i < eq.rows; ++i)
          for (int k = 0; k < lcols; ++k) {
            Int lv = t.left ? t.left->at(i, k) : Int(k == i ? 1 : 0);
            if (lv == 0)
              continue;
            int rrows = t.right ? t.right->rows() : (t.transposed ? vr : vc);
            for (int l = 0; l < rrows; ++l)
              for (int j = 0; j < eq.cols; ++j) {
                Int rv = t.right ? t.right->at(l, j) : Int(l == j ? 1 : 0);
                if (rv == 0)
                  continue;
                int xi = t.transposed ? l : k;
                int xj = t.transposed ? k : l;
                int col = offset[t.var] + xi * vc + xj;
                auto &row = rows[base + size_t(i) * eq.cols + j];
                Int v = ring.add(row.count(col) ? row[col] : Int(0),
                                 ring.mul(t.coeff, lv * rv));
                if (v == 0)
                  row.erase(col);
                else
                  row[col] = v;
              }
          }
      }
    }

    // peel unit pivots: substitution order recorded for back-substitution
    std::vector<Int> value(ncols, Int(0));
    std::vector<bool> assigned(ncols, false);
    std::vector<std::tuple<int, std::map<int, Int>, Int>> subst; // col, row, rhs
    std::vector<bool> used(rows.size(), false);
    bool progress = true;
    while (progress) {
      progress = false;
      for (size_t r = 0; r < rows.size(); ++r) {
        if (used[r])
          continue;
        if (rows[r].empty()) {
          if (rhs[r] != 0)
            return std::nullopt;
          used[r] = true;
          continue;
        }
        int piv = -1;
        for (const auto &[col, cf] : rows[r])
          if (ring.is_unit(cf)) {
            piv = col;
            break;
          }
        if (piv < 0)
          continue;
        Int pc = rows[r][piv];
        Int pinv = *ring.inverse(pc);
        // normalize the pivot row
        std::map<int, Int> prow;
        for (const auto &[col, cf] : rows[r])
          if (col != piv)
            prow[col] = ring.mul(cf, pinv);
        Int prhs = ring.mul(rhs[r], pinv);
        // eliminate from the other rows
        for (size_t r2 = 0; r2 < rows.size(); ++r2) {
          if (r2 == r || used[r2])
            continue;
          auto it = rows[r2].find(piv);
          if (it == rows[r2].end())
            continue;
          Int c = it->second;
          rows[r2].erase(it);
          for (const auto &[col, cf] : prow) {
            Int v = ring.sub(rows[r2].count(col) ? rows[r2][col] : Int(0),
                             ring.mul(c, cf));
            if (v == 0)
              rows[r2].erase(col);
            else
              rows[r2][col] = v;
          }
          rhs[r2] = ring.sub(rhs[r2], ring.mul(c, prhs));
        }
        subst.push_back({piv, std::move(prow), prhs});
        used[r] = true;
        progress = true;
      }
    }

    // residual dense system on the remaining rows/columns
    std::vector<int> live_cols;
    {
      std::map<int, int> col_index;
      std::vector<size_t> live_rows;
      for (size_t r = 0; r < rows.size(); ++r) {
        if (used[r])
          continue;
        if (rows[r].empty()) {
          if (rhs[r] != 0)
            return std::nullopt;
          continue;
        }
        live_rows.push_back(r);
        for (const auto &[col, cf] : rows[r])
          if (!col_index.count(col)) {
            col_index[col] = static_cast<int>(live_cols.size());
            live_cols.push_back(col);
          }
      }
      if (!live_rows.empty()) {
        Matrix a(ring, static_cast<int>(live_rows.size()),
                 static_cast<int>(live_cols.size()));
        Matrix b(ring, static_cast<int>(live_rows.size()), 1);
        for (size_t i = 0; i < live_rows.size(); ++i) {
          for (const auto &[col, cf] : rows[live_rows[i]])
            a.set(static_cast<int>(i), col_index[col], cf);
          b.set(static_cast<int>(i), 0, rhs[live_rows[i]]);
        }
        auto x = exactalg::solve(a, b);
        if (!x)
          return std::nullopt;
        for (size_t j = 0; j < live_cols.size(); ++j) {
          value[live_cols[j]] = x->at(static_cast<int>(j), 0);
          assigned[live_cols[j]] = true;
        }
      }
    }

    // back-substitution in reverse order
    for (auto it = subst.rbegin(); it != subst.rend(); ++it) {
      auto &[col, row, prhs] = *it;
      Int acc = prhs;
      for (const auto &[c2, cf] : row)
        acc = ring.sub(acc, ring.mul(cf, value[c2]));
      value[col] = ring.normalize(acc);
      assigned[col] = true;
    }

    std::vector<Matrix> out;
    for (size_t v = 0; v < shapes.size(); ++v) {
      Matrix m(ring, shapes[v].first, shapes[v].second);
      for (int i = 0; i < shapes[v].first; ++i)
        for (int j = 0; j < shapes[v].second; ++j)
          m.set(i, j, value[offset[v] + i * shapes[v].second + j]);
      out.push_back(std::move(m));
    }
    return out;
  }
};

int sgn(int k) { return k % 2 == 0 ? 1 : -1; }

} // namespace

std::vector<PairingFamily> restrict_structure(const QuadraticComplex &x,
                                              const ChainMap &f) {
  std::vector<PairingFamily> out;
  for (int s = 0; s <= x.s_max(); ++s)
    out.push_back(x.psi(s).restrict(f));
  // pad so the family covers the full shape inventory of the source
  const ChainComplex &t = f.source();
  int want = std::max(0, 2 * t.hi() - x.dim()) + 1;
  while (static_cast<int>(out.size()) < want)
    out.emplace_back(t, x.dim() + static_cast<int>(out.size()));
  return out;
}

namespace {

// verify the coupled relations of a nullhomotopy against theta
bool verify_nullhomotopy(const ChainComplex &t, int n,
                         const std::vector<PairingFamily> &theta,
                         const NullHomotopy &delta) {
  auto delta_at = [&](int s) -> PairingFamily {
    if (s >= 0 && s < static_cast<int>(delta.size()))
      return delta[s];
    return PairingFamily(t, n + s - 1);
  };
  auto theta_at = [&](int s) -> PairingFamily {
    if (s >= 0 && s < static_cast<int>(theta.size()))
      return theta[s];
    return PairingFamily(t, n + s);
  };
  int smax = std::max(static_cast<int>(theta.size()),
                      static_cast<int>(delta.size())) +
             1;
  // delta_{s+1} + (-1)^{s+1} T delta_{s+1} + (-1)^s del delta_s = theta_s
  for (int s = 0; s <= smax; ++s) {
    PairingFamily next = delta_at(s + 1);
    PairingFamily tnext = next.transposed();
    if (s % 2 == 0)
      tnext = tnext.neg();
    PairingFamily lhs = next.add(tnext);
    PairingFamily bd = delta_at(s).boundary();
    if (s % 2 != 0)
      bd = bd.neg();
    lhs = lhs.add(bd);
    if (!lhs.sub(theta_at(s)).is_zero())
      return false;
  }
  return true;
}

} // namespace

SurgeryDatum::SurgeryDatum(QuadraticComplex target_, ChainMap f_,
                           NullHomotopy delta_)
    : target(std::move(target_)), t(f_.source()), f(std::move(f_)),
      delta(std::move(delta_)) {
  if (!(f.target() == target.complex()))
    throw validation_error("SurgeryDatum: f must land in the target complex");
  if (t.ring() != target.complex().ring())
    throw validation_error("SurgeryDatum: ring mismatch");
  auto theta = restrict_structure(target, f);
  if (!verify_nullhomotopy(t, target.dim(), theta, delta))
    throw validation_error("SurgeryDatum: delta does not null-homotope the "
                           "restricted structure");
}

std::optional<NullHomotopy>
solve_structure_nullhomotopy(const ChainComplex &t, int n,
                             const std::vector<PairingFamily> &theta) {
  // unknown blocks delta_s[p], s = 0 .. smax, pairing degree n+s-1
  int smax = std::max(0, 2 * t.hi() - n + 1) + 1;
  BlockSolver solver(t.ring());
  std::map<std::pair<int, int>, int> var; // (s, p) -> var id
  for (int s = 0; s <= smax; ++s)
    for (int p = t.lo(); p <= t.hi(); ++p) {
      int q = n + s - 1 - p;
      if (t.dim(p) > 0 && t.dim(q) > 0)
        var[{s, p}] = solver.add_var(t.dim(p), t.dim(q));
    }
  auto theta_block = [&](int s, int p) -> Matrix {
    int q = n + s - p;
    if (s < static_cast<int>(theta.size()))
      return theta[s].block(p);
    return Matrix(t.ring(), t.dim(p), t.dim(q));
  };
  // relations: delta_{s+1}[p] + (-1)^{s+1} T delta_{s+1}[p]
  //            + (-1)^s (del delta_s)[p] = theta_s[p]
  for (int s = 0; s <= smax; ++s)
    for (int p = t.lo(); p <= t.hi(); ++p) {
      int q = n + s - p;
      if (t.dim(p) == 0 || t.dim(q) == 0)
        continue;
      EqBlock eq{t.dim(p), t.dim(q), {}, theta_block(s, p).neg()};
      auto it = var.find({s + 1, p});
      if (it != var.end())
        eq.terms.push_back({Int(1), std::nullopt, it->second, false,
                            std::nullopt});
      // T-term: (-1)^{s+1} (-1)^{p q} (delta_{s+1}[q])^T
      auto it2 = var.find({s + 1, q});
      if (it2 != var.end()) {
        Int c = Int(sgn(s + 1) * sgn(p * q));
        eq.terms.push_back({c, std::nullopt, it2->second, true, std::nullopt});
      }
      // boundary terms of delta_s: (d_p)^T delta_s[p-1] + (-1)^p delta_s[p] d_q
      auto it3 = var.find({s, p - 1});
      if (it3 != var.end())
        eq.terms.push_back({Int(sgn(s)), t.diff(p).transpose(), it3->second,
                            false, std::nullopt});
      auto it4 = var.find({s, p});
      if (it4 != var.end())
        eq.terms.push_back({Int(sgn(s) * sgn(p)), std::nullopt, it4->second,
                            false, t.diff(q)});
      if (!eq.terms.empty() || !eq.constant.is_zero())
        solver.eqs.push_back(std::move(eq));
    }
  auto sol = solver.solve();
  if (!sol)
    return std::nullopt;
  NullHomotopy out;
  for (int s = 0; s <= smax; ++s) {
    PairingFamily fam(t, n + s - 1);
    for (int p = t.lo(); p <= t.hi(); ++p) {
      auto it = var.find({s, p});
      if (it != var.end())
        fam.set_block(p, (*sol)[it->second]);
    }
    out.push_back(std::move(fam));
  }
  if (!verify_nullhomotopy(t, n, theta, out))
    throw std::logic_error("solve_structure_nullhomotopy: solution fails "
                           "verification");
  return out;
}

std::optional<NullHomotopy> solve_nullhomotopy(const QuadraticComplex &x,
                                               const ChainMap &f) {
  if (f.source().ring() != x.complex().ring())
    throw validation_error("solve_nullhomotopy: ring mismatch");
  return solve_structure_nullhomotopy(f.source(), x.dim(),
                                      restrict_structure(x, f));
}

std::optional<NullHomotopy>
solve_nullhomotopy_extending(const QuadraticComplex &x, const ChainMap &f,
                             const std::vector<PrescribedPiece> &pieces) {
  auto sol = solve_nullhomotopy(x, f);
  if (!sol)
    return std::nullopt;
  // correct the solution so it restricts to the prescribed pieces: the
  // difference on each piece is a cycle of nullhomotopies; because the
  // pieces sit in complementary summands we can overwrite blockwise.
  // Solve again with the piece-restrictions as additional constraints.
  const ChainComplex &t = f.source();
  int n = x.dim();
  auto theta = restrict_structure(x, f);
  int smax = std::max(0, 2 * t.hi() - n + 1) + 1;
  BlockSolver solver(t.ring());
  std::map<std::pair<int, int>, int> var;
  for (int s = 0; s <= smax; ++s)
    for (int p = t.lo(); p <= t.hi(); ++p) {
      int q = n + s - 1 - p;
      if (t.dim(p) > 0 && t.dim(q) > 0)
        var[{s, p}] = solver.add_var(t.dim(p), t.dim(q));
    }
  auto theta_block = [&](int s, int p) -> Matrix {
    int q = n + s - p;
    if (s < static_cast<int>(theta.size()))
      return theta[s].block(p);
    return Matrix(t.ring(), t.dim(p), t.dim(q));
  };
  for (int s = 0; s <= smax; ++s)
    for (int p = t.lo(); p <= t.hi(); ++p) {
      int q = n + s - p;
      if (t.dim(p) == 0 || t.dim(q) == 0)
        continue;
      EqBlock eq{t.dim(p), t.dim(q), {}, theta_block(s, p).neg()};
      auto it = var.find({s + 1, p});
      if (it != var.end())
        eq.terms.push_back({Int(1), std::nullopt, it->second, false,
                            std::nullopt});
      auto it2 = var.find({s + 1, q});
      if (it2 != var.end())
        eq.terms.push_back({Int(sgn(s + 1) * sgn(p * q)), std::nullopt,
                            it2->second, true, std::nullopt});
      auto it3 = var.find({s, p - 1});
      if (it3 != var.end())
        eq.terms.push_back({Int(sgn(s)), t.diff(p).transpose(), it3->second,
                            false, std::nullopt});
      auto it4 = var.find({s, p});
      if (it4 != var.end())
        eq.terms.push_back({Int(sgn(s) * sgn(p)), std::nullopt, it4->second,
                            false, t.diff(q)});
      if (!eq.terms.empty() || !eq.constant.is_zero())
        solver.eqs.push_back(std::move(eq));
    }
  // pinning equations: incl^T delta_s[p] incl = prescribed delta_s[p]
  for (const auto &piece : pieces) {
    const ChainComplex &ti = piece.inclusion.source();
    for (int s = 0; s <= smax; ++s)
      for (int p = ti.lo(); p <= ti.hi(); ++p) {
        int q = n + s - 1 - p;
        if (ti.dim(p) == 0 || ti.dim(q) == 0)
          continue;
        auto it = var.find({s, p});
        if (it == var.end())
          continue;
        Matrix want = s < static_cast<int>(piece.delta.size())
                          ? piece.delta[s].block(p)
                          : Matrix(t.ring(), ti.dim(p), ti.dim(q));
        EqBlock eq{ti.dim(p), ti.dim(q), {}, want.neg()};
        eq.terms.push_back({Int(1), piece.inclusion.at(p).transpose(),
                            it->second, false, piece.inclusion.at(q)});
        solver.eqs.push_back(std::move(eq));
      }
  }
  auto solved = solver.solve();
  if (!solved)
    return std::nullopt;
  NullHomotopy out;
  for (int s = 0; s <= smax; ++s) {
    PairingFamily fam(t, n + s - 1);
    for (int p = t.lo(); p <= t.hi(); ++p) {
      auto it = var.find({s, p});
      if (it != var.end())
        fam.set_block(p, (*solved)[it->second]);
    }
    out.push_back(std::move(fam));
  }
  if (!verify_nullhomotopy(t, n, theta, out))
    throw std::logic_error("solve_nullhomotopy_extending: bad solution");
  return out;
}

namespace {

// induced structure on cone(lift): unknown families theta' on C_f and a
// correction mu on chi, constrained by
//   (i)  the structure relations for theta' on C_f, and
//   (ii) incl^* theta' = pi^* psi + D(mu),
// i.e. the restriction along chi -> C_f agrees with the pulled-back
// structure up to an explicit homotopy. Any solution is a valid descended
// structure; Poincare/Lefschetz checks certify it afterwards.
std::vector<PairingFamily>
induced_structure(const QuadraticComplex &x, const ChainComplex &chi,
                  const ChainMap &incl, const ChainMap &pi,
                  const ChainComplex &cf, const ChainComplex &dual_t,
                  const ChainComplex &t) {
  const RingSpec &ring = cf.ring();
  int n = x.dim();
  int smax = std::max(0, 2 * cf.hi() - n) + 1;

  BlockSolver solver(ring);
  std::map<std::pair<int, int>, int> tvar; // theta'_s[p]
  std::map<std::pair<int, int>, int> mvar; // mu_s[p], degree n+s-1 on chi
  for (int s = 0; s <= smax; ++s)
    for (int p = cf.lo(); p <= cf.hi(); ++p) {
      int q = n + s - p;
      if (cf.dim(p) > 0 && cf.dim(q) > 0)
        tvar[{s, p}] = solver.add_var(cf.dim(p), cf.dim(q));
    }
  for (int s = 0; s <= smax + 1; ++s)
    for (int p = chi.lo(); p <= chi.hi(); ++p) {
      int q = n + s - 1 - p;
      if (chi.dim(p) > 0 && chi.dim(q) > 0)
        mvar[{s, p}] = solver.add_var(chi.dim(p), chi.dim(q));
    }

  // (i) relations on C_f:
  // (d_p)^T th_s[p-1] + (-1)^p th_s[p] d_q - (-1)^{s+1} th_{s+1}[p]
  //   - (-1)^{pq} th_{s+1}[q]^T = 0,  q = n+s+1-p
  for (int s = 0; s <= smax; ++s)
    for (int p = cf.lo(); p <= cf.hi() + 1; ++p) {
      int q = n + s + 1 - p;
      if (cf.dim(p) == 0 || cf.dim(q) == 0)
        continue;
      EqBlock eq{cf.dim(p), cf.dim(q), {}, Matrix(ring, cf.dim(p), cf.dim(q))};
      auto it = tvar.find({s, p - 1});
      if (it != tvar.end())
        eq.terms.push_back({Int(1), cf.diff(p).transpose(), it->second, false,
                            std::nullopt});
      it = tvar.find({s, p});
      if (it != tvar.end())
        eq.terms.push_back({Int(sgn(p)), std::nullopt, it->second, false,
                            cf.diff(q)});
      it = tvar.find({s + 1, p});
      if (it != tvar.end())
        eq.terms.push_back({Int(-sgn(s + 1)), std::nullopt, it->second, false,
                            std::nullopt});
      it = tvar.find({s + 1, q});
      if (it != tvar.end())
        eq.terms.push_back({Int(-sgn(p * q)), std::nullopt, it->second, true,
                            std::nullopt});
      if (!eq.terms.empty())
        solver.eqs.push_back(std::move(eq));
    }

  // (ii) anchoring on chi:
  // incl^T th_s incl - [mu_{s+1} + (-1)^{s+1} T mu_{s+1} + (-1)^s del mu_s]
  //   = pi^T psi_s pi
  for (int s = 0; s <= smax; ++s)
    for (int p = chi.lo(); p <= chi.hi(); ++p) {
      int q = n + s - p;
      if (chi.dim(p) == 0 || chi.dim(q) == 0)
        continue;
      Matrix target(ring, chi.dim(p), chi.dim(q));
      if (s <= x.s_max()) {
        Matrix blk = x.psi(s).block(p);
        target = pi.at(p).transpose() * blk * pi.at(q);
      }
      EqBlock eq{chi.dim(p), chi.dim(q), {}, target.neg()};
      auto it = tvar.find({s, p});
      if (it != tvar.end())
        eq.terms.push_back({Int(1), incl.at(p).transpose(), it->second, false,
                            incl.at(q)});
      auto mt = mvar.find({s + 1, p});
      if (mt != mvar.end())
        eq.terms.push_back({Int(-1), std::nullopt, mt->second, false,
                            std::nullopt});
      mt = mvar.find({s + 1, q});
      if (mt != mvar.end())
        eq.terms.push_back({Int(-sgn(s + 1) * sgn(p * q)), std::nullopt,
                            mt->second, true, std::nullopt});
      mt = mvar.find({s, p - 1});
      if (mt != mvar.end())
        eq.terms.push_back({Int(-sgn(s)), chi.diff(p).transpose(), mt->second,
                            false, std::nullopt});
      mt = mvar.find({s, p});
      if (mt != mvar.end())
        eq.terms.push_back({Int(-sgn(s) * sgn(p)), std::nullopt, mt->second,
                            false, chi.diff(q)});
      if (!eq.terms.empty() || !eq.constant.is_zero())
        solver.eqs.push_back(std::move(eq));
    }

  // (iii) triangularity and nondegeneracy pinning. The descended structure
  // is triangular for the dual(T)-subcomplex filtration: the a-rows of every
  // psi'_s vanish against the a- and x-parts, and in psi'_0 they pair the
  // T-summand by the evaluation matrix. This pins the duality map of the
  // result to a filtered map with unimodular diagonal pieces.
  for (int s = 0; s <= smax; ++s)
    for (int p = cf.lo(); p <= cf.hi(); ++p) {
      int q = n + s - p;
      int ad = dual_t.dim(p + 1);
      if (ad == 0 || cf.dim(p) == 0 || cf.dim(q) == 0)
        continue;
      auto it = tvar.find({s, p});
      if (it == tvar.end())
        continue;
      Matrix sel_a(ring, cf.dim(p), ad);
      for (int i = 0; i < ad; ++i)
        sel_a.set(i, i, 1);
      int cd2 = cf.dim(q) - t.dim(q - 1); // a + x columns
      if (cd2 > 0) {
        // a-rows against the chi-part (a and x columns) vanish
        Matrix sel_ax(ring, cf.dim(q), cd2);
        for (int i = 0; i < cd2; ++i)
          sel_ax.set(i, i, 1);
        EqBlock eq{ad, cd2, {}, Matrix(ring, ad, cd2)};
        eq.terms.push_back(
            {Int(1), sel_a.transpose(), it->second, false, sel_ax});
        solver.eqs.push_back(std::move(eq));
      }
      int td = t.dim(q - 1);
      if (td > 0) {
        Matrix sel_t(ring, cf.dim(q), td);
        for (int i = 0; i < td; ++i)
          sel_t.set(cf.dim(q) - td + i, i, 1);
        Matrix want(ring, ad, td);
        if (s == 0)
          for (int i = 0; i < std::min(ad, td); ++i)
            want.set(i, i, 1);
        EqBlock eq{ad, td, {}, want.neg()};
        eq.terms.push_back(
            {Int(1), sel_a.transpose(), it->second, false, sel_t});
        solver.eqs.push_back(std::move(eq));
      }
    }
  // a-columns vanish throughout (the T-image of the a-rows carries the
  // evaluation pairing, so the direct blocks stay zero)
  for (int s = 0; s <= smax; ++s)
    for (int p = cf.lo(); p <= cf.hi(); ++p) {
      int q = n + s - p;
      int ad = dual_t.dim(q + 1);
      if (ad == 0 || cf.dim(p) == 0 || cf.dim(q) == 0)
        continue;
      auto it = tvar.find({s, p});
      if (it == tvar.end())
        continue;
      int rd = cf.dim(p) - dual_t.dim(p + 1); // x + t rows
      if (rd == 0)
        continue;
      Matrix sel_xt(ring, cf.dim(p), rd);
      for (int i = 0; i < rd; ++i)
        sel_xt.set(dual_t.dim(p + 1) + i, i, 1);
      Matrix sel_a2(ring, cf.dim(q), ad);
      for (int i = 0; i < ad; ++i)
        sel_a2.set(i, i, 1);
      EqBlock eq{rd, ad, {}, Matrix(ring, rd, ad)};
      eq.terms.push_back(
          {Int(1), sel_xt.transpose(), it->second, false, sel_a2});
      solver.eqs.push_back(std::move(eq));
    }

  auto sol = solver.solve();
  if (!sol)
    throw std::logic_error("surgery: induced-structure system unsolvable "
                           "(convention bug)");

  std::vector<PairingFamily> out;
  for (int s = 0; s <= smax; ++s) {
    PairingFamily fam(cf, n + s);
    for (int p = cf.lo(); p <= cf.hi(); ++p) {
      auto it = tvar.find({s, p});
      if (it != tvar.end())
        fam.set_block(p, (*sol)[it->second]);
    }
    out.push_back(std::move(fam));
  }
  return out;
}

} // namespace

SurgeryResult surgery(const SurgeryDatum &datum) {
  const QuadraticComplex &x = datum.target;
  const ChainComplex &c = x.complex();
  const ChainComplex &t = datum.t;
  const RingSpec &ring = c.ring();
  int n = x.dim();

  PoincareReport pre = check_poincare(x);
  if (!pre.poincare)
    throw validation_error("surgery: target is not Poincare");

  // g = dual(f, n) o lambda : C -> dual(T, n)
  ChainMap lambda = x.duality_map();
  ChainMap g = chaincx::dual(datum.f, n).compose(lambda);
  ChainComplex chi = chaincx::fiber(g);
  ChainMap pi = chaincx::fiber_projection(g);

  // lift ell = (h, f) : T -> chi with h_r = (-1)^r ((1+T) delta_0 [r])^T
  PairingFamily delta0 = datum.delta.empty() ? PairingFamily(t, n - 1)
                                             : datum.delta[0];
  PairingFamily w = delta0.add(delta0.transposed());
  const ChainComplex &d = g.target(); // dual(T, n)
  std::map<int, Matrix> lift_comp;
  for (int r = t.lo(); r <= t.hi(); ++r) {
    if (t.dim(r) == 0 || chi.dim(r) == 0)
      continue;
    Matrix m(ring, chi.dim(r), t.dim(r));
    // chi_r = D_{r+1} (+) C_r
    Matrix h = w.block(r).transpose();
    if (r % 2 != 0)
      h = h.neg();
    for (int i = 0; i < d.dim(r + 1); ++i)
      for (int j = 0; j < t.dim(r); ++j)
        m.set(i, j, h.at(i, j));
    Matrix fr = datum.f.at(r);
    for (int i = 0; i < fr.rows(); ++i)
      for (int j = 0; j < fr.cols(); ++j)
        m.set(d.dim(r + 1) + i, j, fr.at(i, j));
    lift_comp.emplace(r, std::move(m));
  }
  ChainMap lift(t, chi, lift_comp); // constructor checks d ell = ell d
  ChainComplex cf = chaincx::cone(lift);
  ChainMap coll = chaincx::cone_inclusion(lift); // chi -> cf

  std::vector<PairingFamily> psi2 =
      induced_structure(x, chi, coll, pi, cf, d, t);
  QuadraticComplex result(cf, n, psi2); // validates relations

  PoincareReport post = check_poincare(result);
  if (!post.poincare)
    throw std::logic_error("surgery: result fails the Poincare check");

  Cobordism trace{x, result, chi, pi, coll, false};
  if (!lefschetz_homology_check(trace))
    throw std::logic_error("surgery: Lefschetz verification failure");
  trace.lefschetz_checked = true;
  return SurgeryResult{trace, result, lift};
}

bool lefschetz_homology_check(const Cobordism &cb) {
  // cones over the two legs must have dual homology at dimension n+1
  ChainComplex cone_l = chaincx::cone(cb.leg_left);
  ChainComplex cone_r = chaincx::cone(cb.leg_right);
  ChainComplex dual_r = chaincx::dual(cone_r, cb.left.dim() + 1);
  int lo = std::min(cone_l.lo(), dual_r.lo());
  int hi = std::max(cone_l.hi(), dual_r.hi());
  for (int k = lo; k <= hi; ++k) {
    auto a = cone_l.dim(k) == 0
                 ? exactalg::AbelianGroupPresentation{}
                 : chaincx::homology(cone_l, k).group;
    auto b = dual_r.dim(k) == 0 ? exactalg::AbelianGroupPresentation{}
                                : chaincx::homology(dual_r, k).group;
    if (!(a == b))
      return false;
  }
  return true;
}

} // namespace wittkit::qsurgery
