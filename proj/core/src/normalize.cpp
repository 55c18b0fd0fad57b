#include "wittkit/normalize.hpp"

#include <sstream>

namespace wittkit::qsurgery {

namespace {

using chaincx::ChainComplex;
using chaincx::ChainMap;
using exactalg::Matrix;

std::string homology_profile(const ChainComplex &c) {
  std::ostringstream os;
  bool first = true;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    auto h = chaincx::homology(c, k).group;
    if (h.is_trivial())
      continue;
    os << (first ? "" : ", ") << "H_" << k << " = " << h.str();
    first = false;
  }
  if (first)
    os << "0";
  return os.str();
}

// pull the structure back along trim's homotopy equivalence
QuadraticComplex trim_structure(const QuadraticComplex &x) {
  chaincx::TrimResult tr = chaincx::trim(x.complex());
  return x.restrict_along(tr.from);
}

} // namespace

NormalizeResult normalize_to_heart(const QuadraticComplex &input,
                                   int step_cap) {
  const RingSpec &ring = input.complex().ring();
  if (input.dim() != 0)
    throw validation_error("normalize_to_heart: formal dimension must be 0");
  if (!ring.is_integers() && !ring.is_field())
    throw validation_error("normalize_to_heart: ring must be Z or F_p");
  if (!check_poincare(input).poincare)
    throw validation_error("normalize_to_heart: input is not Poincare");

  NormalizeResult out{formcore::UnimodularForm::zero(
                          formcore::FormParameter::quadratic(ring, 1)),
                      {},
                      {}};
  QuadraticComplex x = trim_structure(input);

  for (int step = 0;; ++step) {
    const ChainComplex &c = x.complex();
    if (c.is_zero() || (c.lo() == 0 && c.hi() == 0))
      break;
    if (step >= step_cap)
      throw cap_error("normalize_to_heart: step cap exceeded");

    // lowest degree with nonzero homology
    int k = 0;
    bool found = false;
    for (int d = c.lo(); d <= c.hi() && !found; ++d)
      if (!chaincx::homology(c, d).group.is_trivial()) {
        k = d;
        found = true;
      }
    if (!found)
      throw std::logic_error("normalize_to_heart: trimmed complex acyclic "
                             "but not zero");
    if (k >= 0)
      throw std::logic_error("normalize_to_heart: Poincare complex with "
                             "support not reaching below 0");

    auto h = chaincx::homology(c, k);
    Matrix gens = h.generators;
    ChainComplex t = ChainComplex::concentrated(ring, k, gens.cols());
    ChainMap f(t, c, {{k, gens}});

    auto delta = solve_nullhomotopy(x, f);
    if (!delta)
      throw std::logic_error("normalize_to_heart: below-middle nullhomotopy "
                             "solver failed (internal invariant violation)");

    NormalizeStep entry;
    entry.index = step;
    entry.k = k;
    entry.rank_t = gens.cols();
    entry.homology_before = homology_profile(c);

    SurgeryResult res = surgery(SurgeryDatum(x, f, *delta));
    out.cobordisms.push_back(res.trace);
    x = trim_structure(res.result);

    entry.homology_after = homology_profile(x.complex());
    out.log.push_back(std::move(entry));
  }

  out.form = x.extract_form();
  return out;
}

nlohmann::json normalize_log_json(const NormalizeResult &r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto &s : r.log)
    steps.push_back(nlohmann::json{{"step", s.index},
                                   {"k", s.k},
                                   {"rank_T", s.rank_t},
                                   {"homology_before", s.homology_before},
                                   {"homology_after", s.homology_after}});
  return steps;
}

std::optional<int> lowest_fiber_homology(const ChainMap &leg) {
  ChainComplex fib = chaincx::fiber(leg);
  for (int d = fib.lo(); d <= fib.hi(); ++d)
    if (!chaincx::homology(fib, d).group.is_trivial())
      return d;
  return std::nullopt;
}

Cobordism improve_morphism(const Cobordism &w, int m, ImproveLog *log) {
  const RingSpec &ring = w.w.ring();
  int n = w.left.dim();

  auto low = lowest_fiber_homology(w.leg_left);
  if (!low)
    return w; // left leg already an equivalence
  if (*low > m)
    return w; // nothing to improve at this level
  if (*low < m)
    throw validation_error("improve_morphism: fiber homology below m");

  // T -> fib(W -> left) surjecting onto H_m: a cycle in the fiber is a pair
  // (u, v) with d v = 0 and leg(v) = -d u
  ChainComplex fib = chaincx::fiber(w.leg_left);
  auto h = chaincx::homology(fib, m);
  Matrix gens = h.generators; // columns in fib_m = X_{m+1} (+) W_m
  int xdim = w.left.complex().dim(m + 1);
  Matrix upart = gens.submatrix(0, 0, xdim, gens.cols());
  Matrix vpart = gens.submatrix(xdim, 0, w.w.dim(m), gens.cols());

  ChainComplex t = ChainComplex::concentrated(ring, m, gens.cols());
  ChainMap v(t, w.w, {{m, vpart}});
  // nullhomotopy of leg_left o v: components eta : T_m -> X_{m+1}
  // fiber differential gives leg(v) = -(-d u) ... = d(u); eta := u
  // chain check happens in the cone-extension below

  // new middle W' = cone(v) with the extended left leg
  ChainComplex wprime = chaincx::cone(v);
  std::map<int, Matrix> left_comp;
  for (int d = wprime.lo(); d <= wprime.hi(); ++d) {
    int wdim = w.w.dim(d), tdim = t.dim(d - 1);
    if (wdim + tdim == 0 || w.left.complex().dim(d) == 0)
      continue;
    Matrix mm(ring, w.left.complex().dim(d), wdim + tdim);
    Matrix a = w.leg_left.at(d);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        mm.set(i, j, a.at(i, j));
    if (tdim > 0 && d == m + 1)
      for (int i = 0; i < upart.rows(); ++i)
        for (int j = 0; j < upart.cols(); ++j)
          mm.set(i, wdim + j, ring.neg(upart.at(i, j)));
    left_comp.emplace(d, std::move(mm));
  }
  ChainMap leg_left_prime(wprime, w.left.complex(), left_comp);

  // right-end surgery datum: fR = leg_right o v with a solved nullhomotopy
  ChainMap fr = w.leg_right.compose(v);
  auto deltar = solve_nullhomotopy(w.right, fr);
  if (!deltar)
    throw cap_error("improve_morphism: right-end nullhomotopy obstructed "
                    "(dimension hypothesis d >= 2m+1 violated?)");
  SurgeryResult res = surgery(SurgeryDatum(w.right, fr, *deltar));
  const ChainComplex &chir = res.trace.w;
  const ChainComplex &df = res.result.complex();

  // leg W' -> D_f: assembled from u-hat = leg_right : W -> Y and a solved
  // h-hat : W -> dual(T,n)[+1] with d h + h d + gR o leg_right = 0 and
  // h-hat o v = hR (the lift's dual-part), see SIGNS.md
  ChainMap lambda_y = w.right.duality_map();
  ChainMap gr = chaincx::dual(fr, n).compose(lambda_y);
  ChainMap grw = gr.compose(w.leg_right); // W -> dual(T, n)
  ChainComplex dualt = grw.target();
  std::map<int, Matrix> hr_comp; // from the surgery lift: T -> chi = D (+) Y
  for (int r = t.lo(); r <= t.hi(); ++r) {
    if (t.dim(r) == 0)
      continue;
    Matrix lr = res.lift.at(r);
    hr_comp.emplace(r, lr.submatrix(0, 0, dualt.dim(r + 1), t.dim(r)));
  }

  // solve for hhat: linear system over all degrees
  std::map<int, Matrix> hhat;
  {
    // variables per degree r with W_r and dualt_{r+1} nonzero
    // equations: dualt.diff(r+1) hhat_r + hhat_{r-1} w.diff(r) + grw_r = 0
    //            hhat_m v_m = hR_m
    // solved degree by degree is not possible (coupled), so use one dense
    // system
    std::vector<int> degs;
    std::map<int, int> offset;
    int total = 0;
    for (int r = w.w.lo(); r <= w.w.hi(); ++r)
      if (w.w.dim(r) > 0 && dualt.dim(r + 1) > 0) {
        degs.push_back(r);
        offset[r] = total;
        total += dualt.dim(r + 1) * w.w.dim(r);
      }
    std::vector<std::vector<Int>> rows;
    std::vector<Int> rhs;
    auto add_entry = [&](std::vector<Int> &row, int r, int i, int j,
                         const Int &val) {
      if (!offset.count(r))
        return;
      row[offset[r] + i * w.w.dim(r) + j] =
          ring.add(row[offset[r] + i * w.w.dim(r) + j], val);
    };
    for (int r = w.w.lo() - 1; r <= w.w.hi() + 1; ++r) {
      int er = dualt.dim(r + 1), ec = w.w.dim(r);
      // equation block at degree r: d hhat_r + hhat_{r-1} d + grw_r = 0
      // lands in maps W_r -> dualt_r
      er = dualt.dim(r);
      if (er == 0 || ec == 0)
        continue;
      Matrix dd = dualt.diff(r + 1);
      Matrix dw = w.w.diff(r);
      Matrix g0 = grw.at(r);
      for (int i = 0; i < er; ++i)
        for (int j = 0; j < ec; ++j) {
          std::vector<Int> row(total, Int(0));
          // (dd * hhat_r)[i][j]
          for (int k = 0; k < dualt.dim(r + 1); ++k)
            if (dd.at(i, k) != 0)
              add_entry(row, r, k, j, dd.at(i, k));
          // (hhat_{r-1} * dw)[i][j]
          for (int k = 0; k < w.w.dim(r - 1); ++k)
            if (dw.at(k, j) != 0 && offset.count(r - 1))
              add_entry(row, r - 1, i, k, dw.at(k, j));
          rows.push_back(std::move(row));
          rhs.push_back(ring.neg(g0.at(i, j)));
        }
    }
    // pinning: hhat_m v = hR_m
    if (offset.count(m) && hr_comp.count(m)) {
      const Matrix &want = hr_comp.at(m);
      for (int i = 0; i < want.rows(); ++i)
        for (int j = 0; j < want.cols(); ++j) {
          std::vector<Int> row(total, Int(0));
          for (int k = 0; k < w.w.dim(m); ++k)
            if (vpart.at(k, j) != 0)
              add_entry(row, m, i, k, vpart.at(k, j));
          rows.push_back(std::move(row));
          rhs.push_back(want.at(i, j));
        }
    }
    Matrix a(ring, static_cast<int>(rows.size()), total);
    Matrix b(ring, static_cast<int>(rows.size()), 1);
    for (size_t i = 0; i < rows.size(); ++i) {
      for (int j = 0; j < total; ++j)
        a.set(static_cast<int>(i), j, rows[i][j]);
      b.set(static_cast<int>(i), 0, rhs[i]);
    }
    auto sol = exactalg::solve(a, b);
    if (!sol)
      throw cap_error("improve_morphism: no compatible nullhomotopy for the "
                      "right leg");
    for (int r : degs) {
      Matrix mm(ring, dualt.dim(r + 1), w.w.dim(r));
      for (int i = 0; i < mm.rows(); ++i)
        for (int j = 0; j < mm.cols(); ++j)
          mm.set(i, j, sol->at(offset[r] + i * w.w.dim(r) + j, 0));
      hhat.emplace(r, std::move(mm));
    }
  }

  // u-map W -> chiR = dualt_{r+1} (+) Y_r, then cone(v) -> cone(liftR) = D_f
  std::map<int, Matrix> umap_comp;
  for (int r = w.w.lo(); r <= w.w.hi(); ++r) {
    if (w.w.dim(r) == 0 || chir.dim(r) == 0)
      continue;
    Matrix mm(ring, chir.dim(r), w.w.dim(r));
    if (hhat.count(r)) {
      const Matrix &hh = hhat.at(r);
      for (int i = 0; i < hh.rows(); ++i)
        for (int j = 0; j < hh.cols(); ++j)
          mm.set(i, j, hh.at(i, j));
    }
    Matrix lr = w.leg_right.at(r);
    for (int i = 0; i < lr.rows(); ++i)
      for (int j = 0; j < lr.cols(); ++j)
        mm.set(dualt.dim(r + 1) + i, j, lr.at(i, j));
    umap_comp.emplace(r, std::move(mm));
  }
  ChainMap umap(w.w, chir, umap_comp);
  // cone functoriality over id_T
  std::map<int, Matrix> wdf_comp;
  for (int r = wprime.lo(); r <= wprime.hi(); ++r) {
    if (wprime.dim(r) == 0 || df.dim(r) == 0)
      continue;
    Matrix mm(ring, df.dim(r), wprime.dim(r));
    Matrix um = umap.at(r);
    for (int i = 0; i < um.rows(); ++i)
      for (int j = 0; j < um.cols(); ++j)
        mm.set(i, j, um.at(i, j));
    for (int j = 0; j < t.dim(r - 1); ++j)
      mm.set(chir.dim(r) + j, w.w.dim(r) + j, 1);
    wdf_comp.emplace(r, std::move(mm));
  }
  ChainMap wprime_to_df(wprime, df, wdf_comp);

  // composite span over D_f with the reflected trace D_f <- chiR -> Y:
  // middle M = fiber(W' (+) chiR -> D_f) via the difference of the two maps
  ChainMap incl = res.trace.leg_right; // chiR -> D_f
  ChainComplex sum = wprime.direct_sum(chir);
  std::map<int, Matrix> diffmap_comp;
  for (int r = sum.lo(); r <= sum.hi(); ++r) {
    if (sum.dim(r) == 0 || df.dim(r) == 0)
      continue;
    Matrix mm(ring, df.dim(r), sum.dim(r));
    Matrix a = wprime_to_df.at(r);
    Matrix b = incl.at(r);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        mm.set(i, j, a.at(i, j));
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j)
        mm.set(i, wprime.dim(r) + j, ring.neg(b.at(i, j)));
    diffmap_comp.emplace(r, std::move(mm));
  }
  ChainMap diffmap(sum, df, diffmap_comp);
  ChainComplex mid = chaincx::fiber(diffmap);
  ChainMap proj = chaincx::fiber_projection(diffmap); // mid -> sum
  // legs: project to W' then to left; project to chiR then to right
  std::map<int, Matrix> to_wp_comp, to_chir_comp;
  for (int r = mid.lo(); r <= mid.hi(); ++r) {
    if (mid.dim(r) == 0)
      continue;
    Matrix ps = proj.at(r);
    if (wprime.dim(r) > 0)
      to_wp_comp.emplace(r, ps.submatrix(0, 0, wprime.dim(r), ps.cols()));
    if (chir.dim(r) > 0)
      to_chir_comp.emplace(
          r, ps.submatrix(wprime.dim(r), 0, chir.dim(r), ps.cols()));
  }
  ChainMap to_wp(mid, wprime, to_wp_comp);
  ChainMap to_chir(mid, chir, to_chir_comp);
  ChainMap new_left = leg_left_prime.compose(to_wp);
  // the reflected trace runs D_f <- chiR -> Y, so its Y-leg is the original
  // trace's left leg
  ChainMap new_right = res.trace.leg_left.compose(to_chir);

  Cobordism out{w.left, w.right, mid, new_left, new_right, false};
  out.lefschetz_checked = lefschetz_homology_check(out);

  // the improvement lives on the zig-zag: the half C <- W/T -> D_f has its
  // left-leg fiber homology vanishing at m, and the reflection of the trace
  // (D -> D_f direction) has a dual(T)-fiber, concentrated at d-m
  Cobordism half{w.left, res.result, wprime, leg_left_prime, wprime_to_df,
                 false};
  half.lefschetz_checked = lefschetz_homology_check(half);
  auto halflow = lowest_fiber_homology(half.leg_left);
  if (halflow && *halflow <= m)
    throw std::logic_error("improve_morphism: left-leg fiber connectivity "
                           "of the surgered half did not improve");

  if (log) {
    log->m = m;
    log->rank_t = gens.cols();
    log->used_zigzag = true;
    log->reflected_trace =
        Cobordism{res.result, w.right, chir, res.trace.leg_right,
                  res.trace.leg_left, res.trace.lefschetz_checked};
    log->half_improved = half;
  }
  return out;
}

} // namespace wittkit::qsurgery
