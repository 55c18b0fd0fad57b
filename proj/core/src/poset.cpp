#include "wittkit/poset.hpp"

#include <functional>

namespace wittkit::qcat {

FinPoset::FinPoset(std::vector<std::string> labels,
                   std::vector<std::vector<bool>> leq)
    : labels_(std::move(labels)), leq_(std::move(leq)) {
  int n = size();
  if (static_cast<int>(leq_.size()) != n)
    throw validation_error("FinPoset: relation size mismatch");
  for (const auto &row : leq_)
    if (static_cast<int>(row.size()) != n)
      throw validation_error("FinPoset: relation row size mismatch");
  for (int i = 0; i < n; ++i)
    if (!leq_[i][i])
      throw validation_error("FinPoset: not reflexive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq_[i][j] && leq_[j][i])
        throw validation_error("FinPoset: not antisymmetric");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (leq_[i][j] && leq_[j][k] && !leq_[i][k])
          throw validation_error("FinPoset: not transitive");
}

FinPoset FinPoset::cube(int a, int r) {
  if (a < 0 || r < 0)
    throw validation_error("FinPoset::cube: negative parameters");
  int n = 1;
  for (int i = 0; i < r; ++i)
    n *= (a + 1);
  std::vector<std::vector<int>> coords;
  std::vector<std::string> labels;
  for (int code = 0; code < n; ++code) {
    int t = code;
    std::vector<int> c(r);
    std::string lab = "(";
    for (int i = 0; i < r; ++i) {
      c[i] = t % (a + 1);
      t /= (a + 1);
      lab += (i ? "," : "") + std::to_string(c[i]);
    }
    lab += ")";
    coords.push_back(c);
    labels.push_back(lab);
  }
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool ok = true;
      for (int k = 0; k < r; ++k)
        if (coords[i][k] > coords[j][k])
          ok = false;
      leq[i][j] = ok;
    }
  FinPoset p(labels, leq);
  p.cube_a_ = a;
  p.cube_r_ = r;
  p.coords_ = coords;
  return p;
}

FinPoset FinPoset::twisted_arrows(const FinPoset &p) {
  std::vector<std::pair<int, int>> arrows;
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (p.leq(x, y))
        arrows.push_back({x, y});
  int n = static_cast<int>(arrows.size());
  std::vector<std::string> labels;
  for (auto &[x, y] : arrows)
    labels.push_back(p.label(x) + "<=" + p.label(y));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      leq[i][j] = p.leq(arrows[j].first, arrows[i].first) &&
                  p.leq(arrows[i].second, arrows[j].second);
  return FinPoset(labels, leq);
}

FinPoset FinPoset::axis_subposet(int a, int r) {
  FinPoset full = cube(a, r);
  std::vector<int> keep;
  for (int i = 0; i < full.size(); ++i) {
    int nz = 0;
    for (int c : full.cube_coords(i))
      if (c != 0)
        ++nz;
    if (nz <= 1)
      keep.push_back(i);
  }
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq(keep.size(),
                                     std::vector<bool>(keep.size(), false));
  for (size_t i = 0; i < keep.size(); ++i) {
    labels.push_back(full.label(keep[i]));
    for (size_t j = 0; j < keep.size(); ++j)
      leq[i][j] = full.leq(keep[i], keep[j]);
  }
  return FinPoset(labels, leq);
}

bool FinPoset::covers(int i, int j) const {
  if (i == j || !leq_[i][j])
    return false;
  for (int k = 0; k < size(); ++k)
    if (k != i && k != j && leq_[i][k] && leq_[k][j])
      return false;
  return true;
}

std::vector<std::pair<int, int>> FinPoset::covering_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (covers(i, j))
        out.push_back({i, j});
  return out;
}

int FinPoset::cube_index(const std::vector<int> &coords) const {
  if (!is_cube() || static_cast<int>(coords.size()) != cube_r_)
    throw validation_error("FinPoset::cube_index: not a cube");
  int code = 0, mult = 1;
  for (int i = 0; i < cube_r_; ++i) {
    if (coords[i] < 0 || coords[i] > cube_a_)
      throw validation_error("FinPoset::cube_index: out of range");
    code += coords[i] * mult;
    mult *= (cube_a_ + 1);
  }
  return code;
}

const std::vector<int> &FinPoset::cube_coords(int i) const {
  if (!is_cube())
    throw validation_error("FinPoset::cube_coords: not a cube");
  return coords_[i];
}

ModuleDiagram::ModuleDiagram(FinPoset poset, RingSpec ring,
                             std::vector<int> ranks,
                             std::map<std::pair<int, int>, Matrix> cover_maps)
    : poset_(std::move(poset)), ring_(ring), ranks_(std::move(ranks)) {
  if (static_cast<int>(ranks_.size()) != poset_.size())
    throw validation_error("ModuleDiagram: rank list size mismatch");
  // seed with identities and covering maps, then close under composition,
  // checking that all factorizations agree
  for (int i = 0; i < poset_.size(); ++i)
    maps_[{i, i}] = Matrix::identity(ring_, ranks_[i]);
  for (auto &[pair, m] : cover_maps) {
    if (!poset_.covers(pair.first, pair.second))
      throw validation_error("ModuleDiagram: map not on a covering pair");
    if (m.rows() != ranks_[pair.second] || m.cols() != ranks_[pair.first])
      throw validation_error("ModuleDiagram: transition shape mismatch");
    maps_[pair] = m;
  }
  for (auto [i, j] : poset_.covering_pairs())
    if (!maps_.count({i, j}))
      throw validation_error("ModuleDiagram: missing covering map " +
                             poset_.label(i) + " -> " + poset_.label(j));
  // breadth-first closure in order of chain length
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < poset_.size(); ++i)
      for (int j = 0; j < poset_.size(); ++j) {
        if (!poset_.leq(i, j) || i == j)
          continue;
        for (int k = 0; k < poset_.size(); ++k) {
          if (k == i || k == j || !poset_.leq(i, k) || !poset_.leq(k, j))
            continue;
          auto a = maps_.find({i, k});
          auto b = maps_.find({k, j});
          if (a == maps_.end() || b == maps_.end())
            continue;
          Matrix comp = b->second * a->second;
          auto it = maps_.find({i, j});
          if (it == maps_.end()) {
            maps_[{i, j}] = comp;
            progress = true;
          } else if (!(it->second == comp)) {
            throw validation_error("ModuleDiagram: functoriality fails "
                                   "between " +
                                   poset_.label(i) + " and " +
                                   poset_.label(j));
          }
        }
      }
  }
}

Matrix ModuleDiagram::transition(int i, int j) const {
  if (!poset_.leq(i, j))
    throw validation_error("ModuleDiagram::transition: not comparable");
  auto it = maps_.find({i, j});
  if (it == maps_.end())
    throw std::logic_error("ModuleDiagram::transition: closure incomplete");
  return it->second;
}

namespace {

// pushout comparison for the square x -> y1, y2 -> z:
// coker(M(x) -> M(y1) (+) M(y2)) -> M(z) must be an isomorphism, i.e.
// [f1; f2]-combined map onto z is surjective with kernel exactly the image
// of (g1, -g2)
bool square_is_pushout(const ModuleDiagram &d, int x, int y1, int y2, int z) {
  const RingSpec &ring = d.ring();
  Matrix g1 = d.transition(x, y1), g2 = d.transition(x, y2);
  Matrix f1 = d.transition(y1, z), f2 = d.transition(y2, z);
  // u : y1 (+) y2 -> z, v : x -> y1 (+) y2
  Matrix u = f1.hstack(f2);
  Matrix v = g1.vstack(g2.neg());
  // exactness in the middle + surjectivity of u <=> coker comparison iso.
  // Lift everything to Z for composite rings; fields and Z handled directly.
  if (ring.is_finite() && !ring.is_field()) {
    // comparison over Z/n via presentation: coker(v) ~ coker([v | nI]) over Z
    Matrix vz = v.cast(RingSpec::integers());
    Matrix uz = u.cast(RingSpec::integers());
    int m = v.rows();
    Matrix nid = Matrix::identity(RingSpec::integers(), m)
                     .scale(ring.modulus());
    Matrix rel = vz.hstack(nid);
    // coker comparison iso <=> [u] induces iso coker(rel) -> coker([nI_z])
    // test: u surjective over Z/n and ker(u) = im(v) over Z/n via lifts
    auto s = exactalg::snf(u);
    for (int t = 0; t < u.rows(); ++t)
      if (!ring.is_unit(s.diag(t)))
        return false;
    // kernel generators of u over Z/n must be solvable from v, and vice versa
    Matrix ker = exactalg::kernel_generators(u);
    if (!exactalg::solve(v, ker))
      return false;
    if (!(u * v).is_zero())
      return false;
    (void)rel;
    return true;
  }
  // u surjective (split over field/Z means all invariants units)
  auto s = exactalg::snf(u);
  if (s.rank() < u.rows())
    return false;
  for (int t = 0; t < u.rows(); ++t)
    if (!ring.is_unit(s.diag(t)))
      return false;
  if (!(u * v).is_zero())
    return false;
  Matrix ker = exactalg::kernel_basis(u);
  // im(v) = ker(u): both inclusions via exact solving
  if (!exactalg::solve(ker, v))
    return false;
  if (!exactalg::solve(v, ker))
    return false;
  return true;
}

} // namespace

bool is_strongly_cocartesian_squares(const ModuleDiagram &d) {
  const FinPoset &p = d.poset();
  if (!p.is_cube())
    throw validation_error("is_strongly_cocartesian: cube posets only");
  int a = p.cube_side(), r = p.cube_arity();
  if (r < 2)
    return true;
  // all pairs of axes, all strictly monotone [1] -> [a] on those axes, all
  // base points for the other coordinates
  std::vector<int> base(r, 0);
  std::function<bool(int, int, int)> scan_base = [&](int axis_i, int axis_j,
                                                     int pos) -> bool {
    if (pos == r) {
      for (int bi = 0; bi < a; ++bi)
        for (int ci = bi + 1; ci <= a; ++ci)
          for (int bj = 0; bj < a; ++bj)
            for (int cj = bj + 1; cj <= a; ++cj) {
              auto at = [&](int vi, int vj) {
                std::vector<int> c = base;
                c[axis_i] = vi;
                c[axis_j] = vj;
                return p.cube_index(c);
              };
              if (!square_is_pushout(d, at(bi, bj), at(ci, bj), at(bi, cj),
                                     at(ci, cj)))
                return false;
            }
      return true;
    }
    if (pos == axis_i || pos == axis_j)
      return scan_base(axis_i, axis_j, pos + 1);
    for (int v = 0; v <= a; ++v) {
      base[pos] = v;
      if (!scan_base(axis_i, axis_j, pos + 1))
        return false;
      base[pos] = 0;
    }
    return true;
  };
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (!scan_base(i, j, 0))
        return false;
  return true;
}

bool is_strongly_cocartesian_kan(const ModuleDiagram &d) {
  const FinPoset &p = d.poset();
  if (!p.is_cube())
    throw validation_error("is_strongly_cocartesian: cube posets only");
  const RingSpec &ring = d.ring();
  int r = p.cube_arity();
  (void)r;
  // pointwise Kan condition at g: colim over {h <= g supported in <= 1
  // coordinate} compares isomorphically to M(g)
  for (int g = 0; g < p.size(); ++g) {
    std::vector<int> sub; // axis-supported elements below g
    for (int h = 0; h < p.size(); ++h) {
      int nz = 0;
      for (int c : p.cube_coords(h))
        if (c != 0)
          ++nz;
      if (nz <= 1 && p.leq(h, g))
        sub.push_back(h);
    }
    // colim = coker( (+)_{x<y in sub} M(x) --(iota_y t - iota_x)--> (+) M(z) )
    std::vector<int> off(sub.size() + 1, 0);
    for (size_t i = 0; i < sub.size(); ++i)
      off[i + 1] = off[i] + d.rank(sub[i]);
    int total = off.back();
    std::vector<std::pair<int, int>> rels;
    for (size_t i = 0; i < sub.size(); ++i)
      for (size_t j = 0; j < sub.size(); ++j)
        if (i != j && p.leq(sub[i], sub[j]))
          rels.push_back({static_cast<int>(i), static_cast<int>(j)});
    int relcols = 0;
    for (auto &[i, j] : rels)
      relcols += d.rank(sub[i]);
    Matrix relm(ring, total, relcols);
    int c0 = 0;
    for (auto &[i, j] : rels) {
      Matrix t = d.transition(sub[i], sub[j]);
      for (int row = 0; row < t.rows(); ++row)
        for (int col = 0; col < t.cols(); ++col)
          relm.set(off[j] + row, c0 + col, t.at(row, col));
      for (int row = 0; row < d.rank(sub[i]); ++row)
        relm.set(off[i] + row, c0 + row,
                 ring.sub(relm.at(off[i] + row, c0 + row), Int(1)));
      c0 += d.rank(sub[i]);
    }
    // comparison map colim -> M(g) induced by the transitions
    Matrix cmp(ring, d.rank(g), total);
    for (size_t i = 0; i < sub.size(); ++i) {
      Matrix t = d.transition(sub[i], g);
      for (int row = 0; row < t.rows(); ++row)
        for (int col = 0; col < t.cols(); ++col)
          cmp.set(row, off[i] + col, t.at(row, col));
    }
    // iso <=> cmp surjective (unit invariants) and ker(cmp) = im(relm)
    if (!(cmp * relm).is_zero())
      return false;
    auto s = exactalg::snf(cmp);
    if (s.rank() < cmp.rows())
      return false;
    for (int t = 0; t < cmp.rows(); ++t)
      if (!ring.is_unit(s.diag(t)))
        return false;
    if (ring.is_finite() && !ring.is_field()) {
      Matrix ker = exactalg::kernel_generators(cmp);
      if (!exactalg::solve(relm, ker))
        return false;
    } else {
      Matrix ker = exactalg::kernel_basis(cmp);
      if (!exactalg::solve(relm, ker))
        return false;
      if (!exactalg::solve(ker, relm))
        return false;
    }
  }
  return true;
}

bool is_strongly_cocartesian(const ModuleDiagram &d) {
  return is_strongly_cocartesian_squares(d);
}

} // namespace wittkit::qcat
