#include "wittkit/weight.hpp"

namespace wittkit::chaincx {

bool weight_connective(const ChainComplex &c, int a) {
  for (int k = c.lo(); k <= std::min(a - 1, c.hi()); ++k)
    if (!homology(c, k).group.is_trivial())
      return false;
  return true;
}

bool weight_coconnective(const ChainComplex &c, int b) {
  ChainComplex d = dual(c, 0);
  for (int k = d.lo(); k <= std::min(-b - 1, d.hi()); ++k)
    if (!homology(d, k).group.is_trivial())
      return false;
  return true;
}

namespace {

using exactalg::snf;

struct Equivalence {
  ChainComplex cur;
  ChainMap to;   // original -> cur
  ChainMap from; // cur -> original
  std::map<int, Matrix> h; // homotopy components on the original complex
};

// iso given by invertible components at every degree
ChainMap iso_map(const ChainComplex &src, const ChainComplex &tgt,
                 const std::map<int, Matrix> &phi) {
  std::map<int, Matrix> comp;
  for (int k = src.lo(); k <= src.hi(); ++k) {
    if (src.dim(k) == 0)
      continue;
    auto it = phi.find(k);
    comp.emplace(k, it == phi.end()
                        ? Matrix::identity(src.ring(), src.dim(k))
                        : it->second);
  }
  return ChainMap(src, tgt, comp);
}

} // namespace

TrimResult trim(const ChainComplex &c0) {
  const RingSpec &ring = c0.ring();
  if (ring.is_finite() && !ring.is_field())
    throw validation_error("trim: composite Z/n not supported");

  ChainComplex cur = c0;
  ChainMap to = ChainMap::identity(c0);
  ChainMap from = ChainMap::identity(c0);
  std::map<int, Matrix> h_comp; // on c0

  for (;;) {
    // first degree whose differential has a unit pivot in Smith form
    int kfound = 0;
    int units = 0;
    exactalg::SmithDecomposition s;
    for (int k = cur.lo() + 1; k <= cur.hi(); ++k) {
      if (cur.dim(k) == 0 || cur.dim(k - 1) == 0)
        continue;
      s = snf(cur.diff(k));
      int m = 0;
      int mn = std::min(s.D.rows(), s.D.cols());
      for (int t = 0; t < mn; ++t)
        if (ring.is_unit(s.D.at(t, t)))
          ++m;
      if (m > 0) {
        kfound = k;
        units = m;
        break;
      }
    }
    if (units == 0)
      break;
    int k = kfound;

    // base change: phi_k = V, phi_{k-1} = Uinv turns d_k into D
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int d = cur.lo(); d <= cur.hi(); ++d)
      dims.push_back(cur.dim(d));
    for (int d = cur.lo() + 1; d <= cur.hi(); ++d) {
      Matrix m = cur.diff(d);
      if (d == k)
        m = s.Uinv * m * s.Vinv;
      else if (d == k + 1)
        m = s.V * m;
      else if (d == k - 1)
        m = m * s.U;
      diffs.push_back(m);
    }
    ChainComplex cnew(ring, cur.lo(), dims, diffs);
    std::map<int, Matrix> phi = {{k, s.V}, {k - 1, s.Uinv}};
    std::map<int, Matrix> phi_inv = {{k, s.Vinv}, {k - 1, s.U}};
    ChainMap phi_map = iso_map(cur, cnew, phi);
    ChainMap phi_inv_map = iso_map(cnew, cur, phi_inv);

    // normalize the unit pivots to 1 so the split block is the identity
    // (over Z units are already +1 from SNF; over a field scale the rows)
    int m = units;
    {
      bool need = false;
      for (int t = 0; t < m; ++t)
        if (cnew.diff(k).at(t, t) != 1)
          need = true;
      if (need) {
        Matrix scale = Matrix::identity(ring, cnew.dim(k - 1));
        Matrix scale_inv = Matrix::identity(ring, cnew.dim(k - 1));
        for (int t = 0; t < m; ++t) {
          Int u = cnew.diff(k).at(t, t);
          scale.set(t, t, *ring.inverse(u));
          scale_inv.set(t, t, u);
        }
        std::vector<Matrix> diffs2;
        for (int d = cnew.lo() + 1; d <= cnew.hi(); ++d) {
          Matrix mm = cnew.diff(d);
          if (d == k)
            mm = scale * mm;
          else if (d == k - 1)
            mm = mm * scale_inv;
          diffs2.push_back(mm);
        }
        ChainComplex cscaled(ring, cnew.lo(), dims, diffs2);
        ChainMap sc = iso_map(cnew, cscaled, {{k - 1, scale}});
        ChainMap sc_inv = iso_map(cscaled, cnew, {{k - 1, scale_inv}});
        phi_map = sc.compose(phi_map);
        phi_inv_map = phi_inv_map.compose(sc_inv);
        cnew = cscaled;
      }
    }

    // drop the contractible summand: first m basis vectors in degrees k, k-1
    std::vector<int> dims2;
    for (int d = cnew.lo(); d <= cnew.hi(); ++d) {
      int dd = cnew.dim(d);
      if (d == k || d == k - 1)
        dd -= m;
      dims2.push_back(dd);
    }
    std::vector<Matrix> diffs2;
    for (int d = cnew.lo() + 1; d <= cnew.hi(); ++d) {
      Matrix mm = cnew.diff(d);
      if (d == k)
        mm = mm.submatrix(m, m, mm.rows() - m, mm.cols() - m);
      else if (d == k + 1)
        mm = mm.submatrix(m, 0, mm.rows() - m, mm.cols());
      else if (d == k - 1)
        mm = mm.submatrix(0, m, mm.rows(), mm.cols() - m);
      diffs2.push_back(mm);
    }
    ChainComplex csmall(ring, cnew.lo(), dims2, diffs2);

    std::map<int, Matrix> pcomp, icomp, hs;
    for (int d = cnew.lo(); d <= cnew.hi(); ++d) {
      if (csmall.dim(d) == 0 || cnew.dim(d) == 0)
        continue;
      int drop = (d == k || d == k - 1) ? m : 0;
      Matrix p(ring, csmall.dim(d), cnew.dim(d));
      for (int i = 0; i < csmall.dim(d); ++i)
        p.set(i, drop + i, 1);
      pcomp.emplace(d, p);
      icomp.emplace(d, p.transpose());
    }
    {
      // h on cnew: degree k-1 -> k, minus identity on the unit block
      Matrix hk(ring, cnew.dim(k), cnew.dim(k - 1));
      for (int t = 0; t < m; ++t)
        hk.set(t, t, -1);
      hs.emplace(k - 1, hk);
    }
    ChainMap f_step(cnew, csmall, pcomp);
    ChainMap g_step(csmall, cnew, icomp);

    // accumulate: f' = f_step phi f, g' = g phi^-1 g_step,
    // h' = h + (g phi^-1) h_step (phi f)
    ChainMap phi_f = phi_map.compose(to);
    ChainMap g_phi_inv = from.compose(phi_inv_map);
    for (int d = c0.lo() - 1; d <= c0.hi() + 1; ++d) {
      if (c0.dim(d) == 0)
        continue;
      auto it = hs.find(d);
      Matrix add = it == hs.end()
                       ? Matrix(ring, cnew.dim(d + 1), cnew.dim(d))
                       : it->second;
      Matrix term = g_phi_inv.at(d + 1) * add * phi_f.at(d);
      if (term.rows() == 0 || term.cols() == 0 || term.is_zero())
        continue;
      auto hit = h_comp.find(d);
      if (hit == h_comp.end())
        h_comp.emplace(d, term);
      else
        hit->second = hit->second + term;
    }
    to = f_step.compose(phi_f);
    from = g_phi_inv.compose(g_step);
    cur = csmall;
  }

  // certify the round trips
  ChainMap gf = from.compose(to);
  Homotopy h(gf, ChainMap::identity(c0), h_comp);
  ChainMap fg = to.compose(from);
  if (!fg.sub(ChainMap::identity(cur)).is_zero())
    throw std::logic_error("trim: to o from is not the identity");
  return TrimResult{cur, to, from, h};
}

} // namespace wittkit::chaincx
