#include "wittkit/quadratic_complex.hpp"

#include "wittkit/form_classify.hpp"

namespace wittkit::qsurgery {

PairingFamily::PairingFamily(const ChainComplex &c, int degree)
    : carrier_(c), degree_(degree) {}

Matrix PairingFamily::block(int p) const {
  auto it = blocks_.find(p);
  if (it != blocks_.end())
    return it->second;
  return Matrix(carrier_.ring(), carrier_.dim(p), carrier_.dim(degree_ - p));
}

void PairingFamily::set_block(int p, Matrix m) {
  if (m.rows() != carrier_.dim(p) || m.cols() != carrier_.dim(degree_ - p))
    throw validation_error("PairingFamily: block shape mismatch at p=" +
                           std::to_string(p));
  blocks_[p] = std::move(m);
}

bool PairingFamily::is_zero() const {
  for (const auto &[p, m] : blocks_)
    if (!m.is_zero())
      return false;
  return true;
}

PairingFamily PairingFamily::add(const PairingFamily &o) const {
  if (degree_ != o.degree_ || !(carrier_ == o.carrier_))
    throw validation_error("PairingFamily::add: mismatch");
  PairingFamily out(carrier_, degree_);
  for (int p = carrier_.lo(); p <= carrier_.hi(); ++p)
    if (carrier_.dim(p) > 0 && carrier_.dim(degree_ - p) > 0)
      out.set_block(p, block(p) + o.block(p));
  return out;
}

PairingFamily PairingFamily::sub(const PairingFamily &o) const {
  return add(o.neg());
}

PairingFamily PairingFamily::neg() const {
  PairingFamily out(carrier_, degree_);
  for (const auto &[p, m] : blocks_)
    out.blocks_[p] = m.neg();
  return out;
}

PairingFamily PairingFamily::transposed() const {
  PairingFamily out(carrier_, degree_);
  for (int p = carrier_.lo(); p <= carrier_.hi(); ++p) {
    int q = degree_ - p;
    if (carrier_.dim(p) == 0 || carrier_.dim(q) == 0)
      continue;
    Matrix m = block(q).transpose();
    if ((p * q) % 2 != 0)
      m = m.neg();
    out.set_block(p, std::move(m));
  }
  return out;
}

PairingFamily PairingFamily::boundary() const {
  PairingFamily out(carrier_, degree_ + 1);
  for (int p = carrier_.lo(); p <= carrier_.hi(); ++p) {
    int q = degree_ + 1 - p;
    if (carrier_.dim(p) == 0 || carrier_.dim(q) == 0)
      continue;
    Matrix m = carrier_.diff(p).transpose() * block(p - 1);
    Matrix second = block(p) * carrier_.diff(q);
    m = (p % 2 == 0) ? m + second : m - second;
    out.set_block(p, std::move(m));
  }
  return out;
}

PairingFamily PairingFamily::restrict(const ChainMap &f) const {
  if (!(f.target() == carrier_))
    throw validation_error("PairingFamily::restrict: target mismatch");
  const ChainComplex &t = f.source();
  PairingFamily out(t, degree_);
  for (int p = t.lo(); p <= t.hi(); ++p) {
    int q = degree_ - p;
    if (t.dim(p) == 0 || t.dim(q) == 0)
      continue;
    out.set_block(p, f.at(p).transpose() * block(p) * f.at(q));
  }
  return out;
}

QuadraticComplex::QuadraticComplex(ChainComplex c, int n,
                                   std::vector<PairingFamily> psi,
                                   bool check)
    : c_(std::move(c)), n_(n), psi_(std::move(psi)) {
  int want = std::max(0, 2 * c_.hi() - n_) + 1;
  while (static_cast<int>(psi_.size()) < want)
    psi_.emplace_back(c_, n_ + static_cast<int>(psi_.size()));
  for (int s = 0; s < static_cast<int>(psi_.size()); ++s) {
    if (!(psi_[s].carrier() == c_))
      throw validation_error("QuadraticComplex: psi carrier mismatch");
    if (psi_[s].degree() != n_ + s)
      throw validation_error("QuadraticComplex: psi_s degree must be n+s");
  }
  if (check)
    check_relations();
}

QuadraticComplex
QuadraticComplex::from_form(const formcore::UnimodularForm &f) {
  if (f.param().flavor() != formcore::Flavor::Quadratic ||
      f.param().epsilon() != 1)
    throw validation_error(
        "QuadraticComplex::from_form: quadratic flavor with eps=+1 required");
  ChainComplex c = ChainComplex::concentrated(f.param().ring(), 0, f.rank());
  PairingFamily psi0(c, 0);
  if (f.rank() > 0) {
    Matrix m(f.param().ring(), f.rank(), f.rank());
    for (int i = 0; i < f.rank(); ++i) {
      for (int j = 0; j < i; ++j)
        m.set(i, j, f.gram().at(i, j));
      m.set(i, i, f.qvals()[i].coords[0]);
    }
    psi0.set_block(0, m);
  }
  return QuadraticComplex(c, 0, {psi0});
}

const PairingFamily &QuadraticComplex::psi(int s) const {
  if (s < 0 || s > s_max())
    throw validation_error("QuadraticComplex::psi: s out of range");
  return psi_[s];
}

PairingFamily QuadraticComplex::symmetrized() const {
  if (psi_.empty())
    return PairingFamily(c_, n_);
  return psi_[0].add(psi_[0].transposed());
}

ChainMap QuadraticComplex::duality_map() const {
  PairingFamily phi = symmetrized();
  ChainComplex target = chaincx::dual(c_, n_);
  std::map<int, Matrix> comp;
  for (int p = c_.lo(); p <= c_.hi(); ++p) {
    if (c_.dim(p) == 0 || c_.dim(n_ - p) == 0)
      continue;
    Matrix m = phi.block(p).transpose();
    if (p % 2 != 0)
      m = m.neg();
    comp.emplace(p, std::move(m));
  }
  return ChainMap(c_, target, comp);
}

void QuadraticComplex::check_relations() const {
  for (int s = 0; s <= s_max(); ++s) {
    PairingFamily lhs = psi_[s].boundary();
    PairingFamily next =
        s + 1 <= s_max() ? psi_[s + 1] : PairingFamily(c_, n_ + s + 1);
    PairingFamily rhs = (s % 2 == 0) ? next.neg() : next;
    rhs = rhs.add(next.transposed());
    if (!lhs.sub(rhs).is_zero())
      throw validation_error(
          "QuadraticComplex: structure relation fails at s=" +
          std::to_string(s));
  }
  // relations close: boundary of the top family must symmetrize to zero
  // (automatic when the top family vanishes, which bounded support forces)
}

QuadraticComplex QuadraticComplex::direct_sum(const QuadraticComplex &o) const {
  if (n_ != o.n_)
    throw validation_error("QuadraticComplex::direct_sum: dimension mismatch");
  ChainComplex c = c_.direct_sum(o.c_);
  int smax = std::max(s_max(), o.s_max());
  std::vector<PairingFamily> psi;
  for (int s = 0; s <= smax; ++s) {
    PairingFamily fam(c, n_ + s);
    for (int p = c.lo(); p <= c.hi(); ++p) {
      int q = n_ + s - p;
      if (c.dim(p) == 0 || c.dim(q) == 0)
        continue;
      Matrix m(c.ring(), c.dim(p), c.dim(q));
      Matrix a = s <= s_max() ? psi_[s].block(p)
                              : Matrix(c.ring(), c_.dim(p), c_.dim(q));
      Matrix b = s <= o.s_max() ? o.psi_[s].block(p)
                                : Matrix(c.ring(), o.c_.dim(p), o.c_.dim(q));
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
          m.set(i, j, a.at(i, j));
      for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
          m.set(c_.dim(p) + i, c_.dim(q) + j, b.at(i, j));
      fam.set_block(p, std::move(m));
    }
    psi.push_back(std::move(fam));
  }
  return QuadraticComplex(c, n_, std::move(psi));
}

QuadraticComplex QuadraticComplex::restrict_along(const ChainMap &u) const {
  if (!(u.target() == c_))
    throw validation_error("restrict_along: target mismatch");
  std::vector<PairingFamily> psi;
  for (int s = 0; s <= s_max(); ++s)
    psi.push_back(psi_[s].restrict(u));
  return QuadraticComplex(u.source(), n_, std::move(psi));
}

formcore::UnimodularForm QuadraticComplex::extract_form() const {
  if (n_ != 0)
    throw validation_error("extract_form: formal dimension must be 0");
  if (!c_.is_zero() && (c_.lo() != 0 || c_.hi() != 0))
    throw validation_error("extract_form: complex not concentrated in 0");
  formcore::FormParameter param =
      formcore::FormParameter::quadratic(c_.ring(), 1);
  if (c_.is_zero())
    return formcore::UnimodularForm::zero(param);
  Matrix m = psi_[0].block(0);
  Matrix gram = m + m.transpose();
  std::vector<formcore::QElem> qv;
  for (int i = 0; i < m.rows(); ++i)
    qv.push_back(param.canon({m.at(i, i)}));
  return formcore::UnimodularForm(param, gram, qv);
}

PoincareReport check_poincare(const QuadraticComplex &x) {
  ChainMap lambda = x.duality_map();
  ChainComplex cn = chaincx::cone(lambda);
  PoincareReport report;
  report.poincare = true;
  for (int k = cn.lo(); k <= cn.hi(); ++k) {
    auto h = chaincx::homology(cn, k).group;
    if (!h.is_trivial())
      report.poincare = false;
    report.cone_homology.emplace(k, std::move(h));
  }
  return report;
}

int rational_signature(const QuadraticComplex &x) {
  if (!x.complex().ring().is_integers())
    throw validation_error("rational_signature: ring Z required");
  if (x.dim() % 2 != 0)
    throw validation_error("rational_signature: n must be even");
  int mid = x.dim() / 2;
  auto h = chaincx::homology(x.complex(), mid);
  // generators of the free part
  std::vector<int> free_cols;
  auto live = h.coker.live_coords();
  for (size_t i = 0; i < live.size(); ++i)
    if (h.coker.moduli[live[i]] == 0)
      free_cols.push_back(static_cast<int>(i));
  Matrix gens = h.generators.select_columns(free_cols);
  PairingFamily phi = x.symmetrized();
  Matrix pairing = gens.transpose() * phi.block(mid) * gens;
  return formcore::signature(pairing);
}

nlohmann::json quadratic_to_json(const QuadraticComplex &x) {
  nlohmann::json j = chaincx::complex_to_json(x.complex());
  j["n"] = x.dim();
  nlohmann::json psi = nlohmann::json::array();
  for (int s = 0; s <= x.s_max(); ++s) {
    nlohmann::json blocks = nlohmann::json::array();
    const ChainComplex &c = x.complex();
    for (int p = c.lo(); p <= c.hi(); ++p) {
      if (c.dim(p) == 0 || c.dim(x.dim() + s - p) == 0)
        continue;
      nlohmann::json b;
      b["p"] = p;
      b["matrix"] = exactalg::matrix_to_json(x.psi(s).block(p));
      blocks.push_back(b);
    }
    psi.push_back(blocks);
  }
  j["psi"] = psi;
  return j;
}

QuadraticComplex quadratic_from_json(const nlohmann::json &j) {
  ChainComplex c = chaincx::complex_from_json(j);
  int n = j.at("n").get<int>();
  std::vector<PairingFamily> psi;
  int s = 0;
  for (const auto &blocks : j.at("psi")) {
    PairingFamily fam(c, n + s);
    for (const auto &b : blocks)
      fam.set_block(b.at("p").get<int>(),
                    exactalg::matrix_from_json(b.at("matrix")));
    psi.push_back(std::move(fam));
    ++s;
  }
  return QuadraticComplex(c, n, std::move(psi));
}

} // namespace wittkit::qsurgery
