#include "wittkit/form_parameter.hpp"

#include <algorithm>
#include <sstream>

namespace wittkit::formcore {

std::string flavor_name(Flavor f) {
  switch (f) {
  case Flavor::Symmetric:
    return "symmetric";
  case Flavor::Quadratic:
    return "quadratic";
  case Flavor::Even:
    return "even";
  case Flavor::General:
    return "general";
  }
  return "?";
}

std::optional<Flavor> flavor_from_name(const std::string &s) {
  if (s == "symmetric")
    return Flavor::Symmetric;
  if (s == "quadratic")
    return Flavor::Quadratic;
  if (s == "even")
    return Flavor::Even;
  if (s == "general")
    return Flavor::General;
  return std::nullopt;
}

std::string QElem::str() const {
  if (coords.size() == 1)
    return coords[0].get_str();
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coords.size(); ++i)
    os << (i ? "," : "") << coords[i].get_str();
  os << ")";
  return os.str();
}

namespace {

Matrix single_relation(const Int &order) {
  RingSpec Z = RingSpec::integers();
  if (order == 0)
    return Matrix(Z, 1, 0);
  Matrix m(Z, 1, 1);
  m.set(0, 0, order);
  return m;
}

// additive order of x in (Z/n, +); x != 0
Int additive_order_mod(const Int &x, const Int &n) {
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  return n / g;
}

} // namespace

void FormParameter::setup_canonicalizer(const Matrix &relations) {
  gens_ = relations.rows();
  auto data = exactalg::cokernel_data(relations);
  moduli_ = data.moduli;
  can_u_ = data.U;
  can_uinv_ = data.Uinv;
}

FormParameter FormParameter::symmetric(RingSpec ring, int eps) {
  if (eps != 1 && eps != -1)
    throw validation_error("FormParameter: eps must be +1 or -1");
  FormParameter p;
  p.ring_ = ring;
  p.eps_ = eps;
  p.flavor_ = Flavor::Symmetric;
  // Q = M^{C2} = ker(1-eps : R -> R), cyclic with generator gamma
  if (eps == 1) {
    p.setup_canonicalizer(
        single_relation(ring.is_integers() ? Int(0) : ring.modulus()));
    p.tau_one_ = {Int(2)};
    p.rho_gens_ = {Int(1)};
  } else {
    if (ring.is_integers()) {
      p.setup_canonicalizer(single_relation(1)); // Q = 0
      p.tau_one_ = {Int(0)};
      p.rho_gens_ = {Int(0)};
    } else {
      Int n = ring.modulus();
      Int g2, two = 2;
      mpz_gcd(g2.get_mpz_t(), two.get_mpz_t(), n.get_mpz_t());
      Int gamma = n / g2; // generates {x : 2x = 0}
      p.setup_canonicalizer(single_relation(g2));
      p.tau_one_ = {Int(0)}; // norm m -> (1+eps)m = 0
      p.rho_gens_ = {ring.normalize(gamma)};
    }
  }
  return p;
}

FormParameter FormParameter::quadratic(RingSpec ring, int eps) {
  if (eps != 1 && eps != -1)
    throw validation_error("FormParameter: eps must be +1 or -1");
  FormParameter p;
  p.ring_ = ring;
  p.eps_ = eps;
  p.flavor_ = Flavor::Quadratic;
  // Q = R/(1-eps)R with generator [1]; tau = id, rho = (1+eps)-mult
  Int order;
  if (eps == 1)
    order = ring.is_integers() ? Int(0) : ring.modulus();
  else {
    if (ring.is_integers())
      order = 2;
    else {
      Int n = ring.modulus(), two = 2, g2;
      mpz_gcd(g2.get_mpz_t(), two.get_mpz_t(), n.get_mpz_t());
      order = g2; // |Zn / 2Zn|
    }
  }
  p.setup_canonicalizer(single_relation(order));
  p.tau_one_ = {Int(1)};
  p.rho_gens_ = {ring.normalize(Int(1 + eps))};
  return p;
}

FormParameter FormParameter::even(RingSpec ring, int eps) {
  if (eps != 1 && eps != -1)
    throw validation_error("FormParameter: eps must be +1 or -1");
  FormParameter p;
  p.ring_ = ring;
  p.eps_ = eps;
  p.flavor_ = Flavor::Even;
  // Q = (1+eps)R with generator gamma = 1+eps, rho the inclusion
  Int gamma = ring.normalize(Int(1 + eps));
  Int order;
  if (gamma == 0)
    order = 1; // Q = 0
  else if (ring.is_integers())
    order = 0;
  else
    order = additive_order_mod(gamma, ring.modulus());
  p.setup_canonicalizer(single_relation(order));
  p.tau_one_ = {gamma == 0 ? Int(0) : Int(1)};
  p.rho_gens_ = {gamma};
  return p;
}

FormParameter FormParameter::general(RingSpec ring, int eps,
                                     GeneralParamData data) {
  if (!ring.is_finite())
    throw validation_error(
        "FormParameter: general form parameters require a finite ring");
  if (eps != 1 && eps != -1)
    throw validation_error("FormParameter: eps must be +1 or -1");
  FormParameter p;
  p.ring_ = ring;
  p.eps_ = eps;
  p.flavor_ = Flavor::General;
  p.setup_canonicalizer(data.q_relations);
  if (static_cast<int>(data.tau_of_one.size()) != p.gens_ ||
      static_cast<int>(data.rho_gens.size()) != p.gens_)
    throw validation_error("FormParameter: general data shape mismatch");
  if (static_cast<long>(data.action.size()) != ring.modulus().get_si())
    throw validation_error(
        "FormParameter: action table needs one matrix per ring element");
  for (const Matrix &a : data.action)
    if (a.rows() != p.gens_ || a.cols() != p.gens_)
      throw validation_error("FormParameter: action matrix shape mismatch");
  p.tau_one_ = data.tau_of_one;
  for (const Int &r : data.rho_gens)
    p.rho_gens_.push_back(ring.normalize(r));
  p.general_ = std::move(data);
  p.validate();
  return p;
}

FormParameter FormParameter::make(RingSpec ring, Flavor flavor, int eps,
                                  std::optional<GeneralParamData> data) {
  switch (flavor) {
  case Flavor::Symmetric:
    return symmetric(ring, eps);
  case Flavor::Quadratic:
    return quadratic(ring, eps);
  case Flavor::Even:
    return even(ring, eps);
  case Flavor::General:
    if (!data)
      throw validation_error("FormParameter: general flavor needs data");
    return general(ring, eps, std::move(*data));
  }
  throw validation_error("FormParameter: unknown flavor");
}

QElem FormParameter::canon(std::vector<Int> raw) const {
  if (static_cast<int>(raw.size()) != gens_)
    throw validation_error("QElem: wrong coordinate length");
  Matrix x = Matrix::column(RingSpec::integers(), raw);
  Matrix y = can_uinv_ * x;
  for (int t = 0; t < gens_; ++t) {
    if (moduli_[t] == 0)
      continue;
    Int r;
    mpz_mod(r.get_mpz_t(), y.at(t, 0).get_mpz_t(), moduli_[t].get_mpz_t());
    y.set(t, 0, r);
  }
  Matrix back = can_u_ * y;
  std::vector<Int> out(gens_);
  for (int t = 0; t < gens_; ++t)
    out[t] = back.at(t, 0);
  return QElem{std::move(out)};
}

QElem FormParameter::q_add(const QElem &a, const QElem &b) const {
  std::vector<Int> raw(gens_);
  for (int i = 0; i < gens_; ++i)
    raw[i] = a.coords[i] + b.coords[i];
  return canon(std::move(raw));
}

QElem FormParameter::q_neg(const QElem &a) const {
  std::vector<Int> raw(gens_);
  for (int i = 0; i < gens_; ++i)
    raw[i] = -a.coords[i];
  return canon(std::move(raw));
}

QElem FormParameter::q_scale(const Int &k, const QElem &a) const {
  std::vector<Int> raw(gens_);
  for (int i = 0; i < gens_; ++i)
    raw[i] = k * a.coords[i];
  return canon(std::move(raw));
}

QElem FormParameter::tau(const Int &m) const {
  std::vector<Int> raw(gens_);
  Int lift = ring_.normalize(m);
  for (int i = 0; i < gens_; ++i)
    raw[i] = lift * tau_one_[i];
  return canon(std::move(raw));
}

Int FormParameter::rho(const QElem &q) const {
  Int acc = 0;
  for (int i = 0; i < gens_; ++i)
    acc += q.coords[i] * rho_gens_[i];
  return ring_.normalize(acc);
}

QElem FormParameter::act(const Int &r, const QElem &q) const {
  Int rr = ring_.normalize(r);
  if (flavor_ != Flavor::General)
    return q_scale(rr * rr, q); // cyclic: (r (x) r) is r^2-multiplication
  const Matrix &a = general_->action[rr.get_si()];
  std::vector<Int> raw(gens_, Int(0));
  for (int i = 0; i < gens_; ++i)
    for (int j = 0; j < gens_; ++j)
      raw[i] += a.at(i, j) * q.coords[j];
  return canon(std::move(raw));
}

bool FormParameter::q_is_finite() const {
  for (const Int &m : moduli_)
    if (m == 0)
      return false;
  return true;
}

Int FormParameter::q_order() const {
  if (!q_is_finite())
    return 0;
  Int n = 1;
  for (const Int &m : moduli_)
    n *= m;
  return n;
}

std::vector<QElem> FormParameter::q_elements() const {
  if (!q_is_finite())
    throw validation_error("q_elements: infinite Q");
  std::vector<QElem> out;
  std::vector<Int> y(gens_, Int(0));
  for (;;) {
    Matrix yc = Matrix::column(RingSpec::integers(), y);
    Matrix back = can_u_ * yc;
    std::vector<Int> raw(gens_);
    for (int t = 0; t < gens_; ++t)
      raw[t] = back.at(t, 0);
    out.push_back(canon(raw));
    int t = gens_ - 1;
    while (t >= 0) {
      y[t] += 1;
      if (y[t] < moduli_[t])
        break;
      y[t] = 0;
      --t;
    }
    if (t < 0)
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool FormParameter::tau_surjective() const {
  if (flavor_ == Flavor::Quadratic)
    return true;
  if (!ring_.is_finite()) {
    if (flavor_ == Flavor::Even)
      return true; // m -> m*gamma hits all of (1+eps)R
    return eps_ == -1; // symmetric: Q = 0 iff eps = -1 over Z
  }
  std::vector<QElem> image;
  for (const Int &m : ring_.elements())
    image.push_back(tau(m));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return image.size() == q_elements().size();
}

void FormParameter::validate() const {
  QElem t1 = tau(1);
  if (q_scale(Int(1 - eps_), t1) != q_zero())
    throw validation_error("form parameter: (1-eps)*tau(1) != 0");

  std::vector<Int> test_m;
  if (ring_.is_finite())
    test_m = ring_.elements();
  else
    for (long m = -3; m <= 3; ++m)
      test_m.push_back(Int(m));

  for (const Int &m : test_m) {
    Int lhs = rho(tau(m));
    Int rhs = ring_.normalize(m + eps_ * m);
    if (lhs != rhs)
      throw validation_error("form parameter: rho(tau(m)) != m + eps*m at m=" +
                             m.get_str());
  }

  std::vector<QElem> qs;
  if (q_is_finite())
    qs = q_elements();
  else
    for (long k = -3; k <= 3; ++k) {
      std::vector<Int> raw(gens_, Int(0));
      raw[0] = k;
      qs.push_back(canon(raw));
    }

  for (const QElem &q : qs) {
    if (act(0, q) != q_zero())
      throw validation_error("form parameter: act(0) != 0");
    if (act(1, q) != q)
      throw validation_error("form parameter: act(1) != id");
  }

  // axiom (*): (r+s)q - rq - sq = tau[(r*s) rho(q)]; the identities are
  // polynomial of degree <= 2 per variable, so the grid check proves them
  // over Z as well
  for (const Int &r : test_m)
    for (const Int &s : test_m)
      for (const QElem &q : qs) {
        QElem lhs = q_add(act(r + s, q), q_neg(q_add(act(r, q), act(s, q))));
        QElem rhs = tau(ring_.mul(ring_.mul(r, s), rho(q)));
        if (lhs != rhs)
          throw validation_error("form parameter: axiom (*) fails at r=" +
                                 r.get_str() + " s=" + s.get_str());
      }

  for (const Int &r : test_m)
    for (const QElem &q : qs)
      if (rho(act(r, q)) != ring_.mul(ring_.mul(r, r), rho(q)))
        throw validation_error("form parameter: rho not equivariant");

  for (const Int &r : test_m)
    for (const Int &m : test_m)
      if (tau(ring_.mul(ring_.mul(r, r), m)) != act(r, tau(m)))
        throw validation_error("form parameter: tau not equivariant");
}

bool FormParameter::operator==(const FormParameter &o) const {
  if (!(ring_ == o.ring_) || eps_ != o.eps_ || flavor_ != o.flavor_)
    return false;
  if (flavor_ != Flavor::General)
    return true;
  return general_->q_relations == o.general_->q_relations &&
         general_->tau_of_one == o.general_->tau_of_one &&
         general_->rho_gens == o.general_->rho_gens;
}

std::string FormParameter::str() const {
  std::ostringstream os;
  os << flavor_name(flavor_) << (eps_ == 1 ? "(+)" : "(-)") << " over "
     << ring_.str();
  return os.str();
}

} // namespace wittkit::formcore
