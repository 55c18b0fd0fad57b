#include "wittkit/chain_complex.hpp"

#include <sstream>

namespace wittkit::chaincx {

ChainComplex::ChainComplex(RingSpec ring, int lo, std::vector<int> dims,
                           std::vector<Matrix> differentials)
    : ring_(ring), lo_(lo), dims_(std::move(dims)),
      diffs_(std::move(differentials)) {
  // trim zero padding at both ends for a canonical support window
  while (!dims_.empty() && dims_.back() == 0) {
    dims_.pop_back();
    if (!diffs_.empty())
      diffs_.pop_back();
  }
  while (!dims_.empty() && dims_.front() == 0) {
    dims_.erase(dims_.begin());
    if (!diffs_.empty())
      diffs_.erase(diffs_.begin());
    ++lo_;
  }
  if (dims_.empty()) {
    lo_ = 0;
    diffs_.clear();
    return;
  }
  if (diffs_.size() + 1 != dims_.size())
    throw validation_error("ChainComplex: need one differential per "
                           "consecutive degree pair");
  for (size_t i = 0; i < diffs_.size(); ++i) {
    if (diffs_[i].ring() != ring_)
      throw validation_error("ChainComplex: differential ring mismatch");
    if (diffs_[i].rows() != dims_[i] || diffs_[i].cols() != dims_[i + 1])
      throw validation_error("ChainComplex: differential shape mismatch at "
                             "degree " +
                             std::to_string(lo_ + 1 + static_cast<int>(i)));
  }
  for (size_t i = 0; i + 1 < diffs_.size(); ++i)
    if (!(diffs_[i] * diffs_[i + 1]).is_zero())
      throw validation_error("ChainComplex: d o d != 0 at degree " +
                             std::to_string(lo_ + 2 + static_cast<int>(i)));
}

ChainComplex ChainComplex::zero(RingSpec ring) {
  return ChainComplex(ring, 0, {}, {});
}

ChainComplex ChainComplex::concentrated(RingSpec ring, int degree, int rank) {
  if (rank == 0)
    return zero(ring);
  return ChainComplex(ring, degree, {rank}, {});
}

int ChainComplex::dim(int k) const {
  if (dims_.empty() || k < lo_ || k > hi())
    return 0;
  return dims_[k - lo_];
}

Matrix ChainComplex::diff(int k) const {
  // d_k : C_k -> C_{k-1}
  if (dims_.empty() || k <= lo_ || k > hi())
    return Matrix(ring_, dim(k - 1), dim(k));
  return diffs_[k - lo_ - 1];
}

bool ChainComplex::is_zero() const { return dims_.empty(); }

int ChainComplex::euler_characteristic() const {
  int chi = 0;
  for (int k = lo_; k <= hi(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * dim(k);
  return chi;
}

std::vector<int> ChainComplex::support() const {
  std::vector<int> s;
  for (int k = lo_; k <= hi(); ++k)
    if (dim(k) != 0)
      s.push_back(k);
  return s;
}

ChainComplex ChainComplex::direct_sum(const ChainComplex &o) const {
  if (ring_ != o.ring_)
    throw validation_error("direct_sum: ring mismatch");
  if (is_zero())
    return o;
  if (o.is_zero())
    return *this;
  int nlo = std::min(lo_, o.lo_), nhi = std::max(hi(), o.hi());
  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int k = nlo; k <= nhi; ++k)
    dims.push_back(dim(k) + o.dim(k));
  for (int k = nlo + 1; k <= nhi; ++k) {
    Matrix d(ring_, dim(k - 1) + o.dim(k - 1), dim(k) + o.dim(k));
    Matrix a = diff(k), b = o.diff(k);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        d.set(i, j, a.at(i, j));
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j)
        d.set(dim(k - 1) + i, dim(k) + j, b.at(i, j));
    diffs.push_back(d);
  }
  return ChainComplex(ring_, nlo, dims, diffs);
}

bool ChainComplex::operator==(const ChainComplex &o) const {
  if (ring_ != o.ring_ || lo_ != o.lo_ || dims_ != o.dims_)
    return false;
  for (size_t i = 0; i < diffs_.size(); ++i)
    if (diffs_[i] != o.diffs_[i])
      return false;
  return true;
}

std::string ChainComplex::str() const {
  std::ostringstream os;
  os << "complex[" << lo_ << ".." << hi() << "] dims(";
  for (size_t i = 0; i < dims_.size(); ++i)
    os << (i ? "," : "") << dims_[i];
  os << ")";
  return os.str();
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target,
                   std::map<int, Matrix> components)
    : source_(std::move(source)), target_(std::move(target)),
      comp_(std::move(components)) {
  if (source_.ring() != target_.ring())
    throw validation_error("ChainMap: ring mismatch");
  for (auto &[k, m] : comp_)
    if (m.rows() != target_.dim(k) || m.cols() != source_.dim(k))
      throw validation_error("ChainMap: component shape mismatch at degree " +
                             std::to_string(k));
  // chain condition d f = f d on the combined support
  int lo = std::min(source_.lo(), target_.lo());
  int hi = std::max(source_.hi(), target_.hi());
  for (int k = lo; k <= hi + 1; ++k) {
    Matrix lhs = target_.diff(k) * at(k);
    Matrix rhs = at(k - 1) * source_.diff(k);
    if (!(lhs == rhs))
      throw validation_error("ChainMap: d f != f d at degree " +
                             std::to_string(k));
  }
}

ChainMap ChainMap::zero(const ChainComplex &source,
                        const ChainComplex &target) {
  return ChainMap(source, target, {});
}

ChainMap ChainMap::identity(const ChainComplex &c) {
  std::map<int, Matrix> comp;
  for (int k = c.lo(); k <= c.hi(); ++k)
    if (c.dim(k) > 0)
      comp.emplace(k, Matrix::identity(c.ring(), c.dim(k)));
  return ChainMap(c, c, comp);
}

Matrix ChainMap::at(int k) const {
  auto it = comp_.find(k);
  if (it != comp_.end())
    return it->second;
  return Matrix(source_.ring(), target_.dim(k), source_.dim(k));
}

ChainMap ChainMap::compose(const ChainMap &inner) const {
  if (!(inner.target_ == source_))
    throw validation_error("ChainMap::compose: middle mismatch");
  std::map<int, Matrix> comp;
  for (int k = inner.source_.lo(); k <= inner.source_.hi(); ++k)
    if (inner.source_.dim(k) > 0 && target_.dim(k) > 0)
      comp.emplace(k, at(k) * inner.at(k));
  return ChainMap(inner.source_, target_, comp);
}

ChainMap ChainMap::add(const ChainMap &o) const {
  if (!(source_ == o.source_) || !(target_ == o.target_))
    throw validation_error("ChainMap::add: mismatch");
  std::map<int, Matrix> comp;
  for (int k = std::min(source_.lo(), target_.lo());
       k <= std::max(source_.hi(), target_.hi()); ++k)
    if (source_.dim(k) > 0 && target_.dim(k) > 0)
      comp.emplace(k, at(k) + o.at(k));
  return ChainMap(source_, target_, comp);
}

ChainMap ChainMap::sub(const ChainMap &o) const {
  if (!(source_ == o.source_) || !(target_ == o.target_))
    throw validation_error("ChainMap::sub: mismatch");
  std::map<int, Matrix> comp;
  for (int k = std::min(source_.lo(), target_.lo());
       k <= std::max(source_.hi(), target_.hi()); ++k)
    if (source_.dim(k) > 0 && target_.dim(k) > 0)
      comp.emplace(k, at(k) - o.at(k));
  return ChainMap(source_, target_, comp);
}

bool ChainMap::is_zero() const {
  for (const auto &[k, m] : comp_)
    if (!m.is_zero())
      return false;
  return true;
}

Homotopy::Homotopy(ChainMap f, ChainMap g, std::map<int, Matrix> components)
    : f_(std::move(f)), g_(std::move(g)), comp_(std::move(components)) {
  if (!(f_.source() == g_.source()) || !(f_.target() == g_.target()))
    throw validation_error("Homotopy: f, g must be parallel");
  const ChainComplex &s = f_.source();
  const ChainComplex &t = f_.target();
  for (auto &[k, m] : comp_)
    if (m.rows() != t.dim(k + 1) || m.cols() != s.dim(k))
      throw validation_error("Homotopy: component shape mismatch");
  for (int k = std::min(s.lo(), t.lo()) - 1; k <= std::max(s.hi(), t.hi()) + 1;
       ++k) {
    Matrix want = f_.at(k) - g_.at(k);
    Matrix have = t.diff(k + 1) * at(k) + at(k - 1) * s.diff(k);
    if (!(want == have))
      throw validation_error("Homotopy: f - g != d h + h d at degree " +
                             std::to_string(k));
  }
}

Matrix Homotopy::at(int k) const {
  auto it = comp_.find(k);
  if (it != comp_.end())
    return it->second;
  return Matrix(f_.source().ring(), f_.target().dim(k + 1),
                f_.source().dim(k));
}

ChainComplex cone(const ChainMap &f) {
  const ChainComplex &s = f.source();
  const ChainComplex &t = f.target();
  const RingSpec &ring = s.ring();
  int lo = std::min(t.lo(), s.lo() + 1);
  int hi = std::max(t.hi(), s.hi() + 1);
  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int k = lo; k <= hi; ++k)
    dims.push_back(t.dim(k) + s.dim(k - 1));
  for (int k = lo + 1; k <= hi; ++k) {
    // block [[d_t, f],[0, -d_s]] : t_k (+) s_{k-1} -> t_{k-1} (+) s_{k-2}
    Matrix d(ring, t.dim(k - 1) + s.dim(k - 2), t.dim(k) + s.dim(k - 1));
    Matrix dt = t.diff(k), fk = f.at(k - 1), ds = s.diff(k - 1);
    for (int i = 0; i < dt.rows(); ++i)
      for (int j = 0; j < dt.cols(); ++j)
        d.set(i, j, dt.at(i, j));
    for (int i = 0; i < fk.rows(); ++i)
      for (int j = 0; j < fk.cols(); ++j)
        d.set(i, t.dim(k) + j, fk.at(i, j));
    for (int i = 0; i < ds.rows(); ++i)
      for (int j = 0; j < ds.cols(); ++j)
        d.set(t.dim(k - 1) + i, t.dim(k) + j, ring.neg(ds.at(i, j)));
    diffs.push_back(d);
  }
  return ChainComplex(ring, lo, dims, diffs);
}

ChainMap cone_inclusion(const ChainMap &f) {
  ChainComplex c = cone(f);
  const ChainComplex &t = f.target();
  std::map<int, Matrix> comp;
  for (int k = t.lo(); k <= t.hi(); ++k) {
    if (t.dim(k) == 0)
      continue;
    Matrix m(t.ring(), c.dim(k), t.dim(k));
    for (int i = 0; i < t.dim(k); ++i)
      m.set(i, i, 1);
    comp.emplace(k, m);
  }
  return ChainMap(t, c, comp);
}

ChainMap cone_collapse(const ChainMap &f) {
  ChainComplex c = cone(f);
  ChainComplex s1 = shift(f.source(), 1);
  std::map<int, Matrix> comp;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    int tdim = f.target().dim(k);
    int sdim = f.source().dim(k - 1);
    if (sdim == 0 || c.dim(k) == 0)
      continue;
    Matrix m(c.ring(), s1.dim(k), c.dim(k));
    for (int i = 0; i < sdim; ++i)
      m.set(i, tdim + i, 1);
    comp.emplace(k, m);
  }
  return ChainMap(c, s1, comp);
}

ChainComplex shift(const ChainComplex &c, int s) {
  if (c.is_zero())
    return c;
  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int k = c.lo(); k <= c.hi(); ++k)
    dims.push_back(c.dim(k));
  for (int k = c.lo() + 1; k <= c.hi(); ++k)
    diffs.push_back(s % 2 == 0 ? c.diff(k) : c.diff(k).neg());
  return ChainComplex(c.ring(), c.lo() + s, dims, diffs);
}

ChainMap shift(const ChainMap &f, int s) {
  ChainComplex src = shift(f.source(), s);
  ChainComplex tgt = shift(f.target(), s);
  std::map<int, Matrix> comp;
  for (int k = src.lo(); k <= src.hi(); ++k)
    if (src.dim(k) > 0 && tgt.dim(k) > 0)
      comp.emplace(k, f.at(k - s));
  return ChainMap(src, tgt, comp);
}

ChainComplex fiber(const ChainMap &f) { return shift(cone(f), -1); }

ChainMap fiber_projection(const ChainMap &f) {
  ChainComplex fib = fiber(f);
  const ChainComplex &t = f.target();
  const ChainComplex &s = f.source();
  // fib_k = t_{k+1} (+) s_k; project to s
  std::map<int, Matrix> comp;
  for (int k = fib.lo(); k <= fib.hi(); ++k) {
    if (s.dim(k) == 0 || fib.dim(k) == 0)
      continue;
    Matrix m(s.ring(), s.dim(k), fib.dim(k));
    for (int i = 0; i < s.dim(k); ++i)
      m.set(i, t.dim(k + 1) + i, 1);
    comp.emplace(k, m);
  }
  return ChainMap(fib, s, comp);
}

ChainComplex dual(const ChainComplex &c, int n) {
  if (c.is_zero())
    return c;
  // degree r has (C_{n-r})^dual; support [n-hi, n-lo]
  int lo = n - c.hi(), hi = n - c.lo();
  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int r = lo; r <= hi; ++r)
    dims.push_back(c.dim(n - r));
  for (int r = lo + 1; r <= hi; ++r) {
    Matrix d = c.diff(n - r + 1).transpose();
    diffs.push_back(r % 2 == 0 ? d : d.neg());
  }
  return ChainComplex(c.ring(), lo, dims, diffs);
}

ChainMap dual(const ChainMap &f, int n) {
  ChainComplex src = dual(f.target(), n);
  ChainComplex tgt = dual(f.source(), n);
  std::map<int, Matrix> comp;
  for (int r = src.lo(); r <= src.hi(); ++r)
    if (src.dim(r) > 0 && tgt.dim(r) > 0)
      comp.emplace(r, f.at(n - r).transpose());
  return ChainMap(src, tgt, comp);
}

HomologyGroup homology(const ChainComplex &c, int k) {
  const RingSpec &ring = c.ring();
  if (ring.is_finite() && !ring.is_field())
    throw validation_error("homology: composite Z/n not supported");
  HomologyGroup out;
  if (c.dim(k) == 0) {
    out.kernel = Matrix(ring, 0, 0);
    out.generators = Matrix(ring, 0, 0);
    out.coker = exactalg::cokernel_data(Matrix(RingSpec::integers(), 0, 0));
    out.group = out.coker.group;
    return out;
  }
  Matrix kern = exactalg::kernel_basis(c.diff(k));
  Matrix img = c.diff(k + 1);
  // express the image in kernel coordinates: kern * X = img
  auto x = exactalg::solve(kern, img);
  if (!x)
    throw std::logic_error("homology: image not inside kernel");
  out.kernel = kern;
  if (ring.is_integers()) {
    out.coker = exactalg::cokernel_data(*x);
    out.group = out.coker.group;
  } else {
    // prime field: same SNF mechanics, reading invariant factors as p
    auto s = exactalg::snf(*x);
    exactalg::CokernelData data;
    data.U = s.U;
    data.Uinv = s.Uinv;
    data.moduli.resize(kern.cols());
    int m = std::min(x->rows(), x->cols());
    for (int t = 0; t < kern.cols(); ++t) {
      Int d = t < m ? s.D.at(t, t) : Int(0);
      data.moduli[t] = d == 0 ? Int(0) : Int(1);
      if (d == 0)
        data.group.free_rank++; // an F_p summand, reported as factor p below
    }
    // report H as (Z/p)^r
    exactalg::AbelianGroupPresentation g;
    for (long i = 0; i < data.group.free_rank; ++i)
      g.invariant_factors.push_back(ring.modulus());
    data.group = g;
    out.coker = data;
    out.group = g;
  }
  out.generators = kern * out.coker.generators().cast(ring);
  return out;
}

std::vector<Int> HomologyGroup::coords(const Matrix &cycle) const {
  auto x = exactalg::solve(kernel, cycle);
  if (!x)
    throw validation_error("HomologyGroup::coords: not a cycle");
  return coker.coords(x->cast(RingSpec::integers()));
}

std::map<int, AbelianGroupPresentation> homology(const ChainComplex &c) {
  std::map<int, AbelianGroupPresentation> out;
  for (int k = c.lo(); k <= c.hi(); ++k)
    out.emplace(k, homology(c, k).group);
  return out;
}

bool acyclic(const ChainComplex &c) {
  for (int k = c.lo(); k <= c.hi(); ++k)
    if (!homology(c, k).group.is_trivial())
      return false;
  return true;
}

bool is_quasi_iso(const ChainMap &f) { return acyclic(cone(f)); }

nlohmann::json complex_to_json(const ChainComplex &c) {
  nlohmann::json dims = nlohmann::json::array();
  nlohmann::json diffs = nlohmann::json::array();
  for (int k = c.lo(); k <= c.hi(); ++k)
    dims.push_back(c.dim(k));
  for (int k = c.lo() + 1; k <= c.hi(); ++k)
    diffs.push_back(exactalg::matrix_to_json(c.diff(k)));
  return nlohmann::json{{"ring", exactalg::ring_to_json(c.ring())},
                        {"lo", c.lo()},
                        {"hi", c.hi()},
                        {"dims", dims},
                        {"differentials", diffs}};
}

ChainComplex complex_from_json(const nlohmann::json &j) {
  RingSpec ring = exactalg::ring_from_json(j.at("ring"));
  int lo = j.at("lo").get<int>();
  std::vector<int> dims;
  for (const auto &d : j.at("dims"))
    dims.push_back(d.get<int>());
  std::vector<Matrix> diffs;
  for (const auto &d : j.at("differentials"))
    diffs.push_back(exactalg::matrix_from_json(d));
  return ChainComplex(ring, lo, dims, diffs);
}

} // namespace wittkit::chaincx
