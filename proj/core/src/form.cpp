#include "wittkit/form.hpp"

#include <sstream>

namespace wittkit::formcore {

UnimodularForm::UnimodularForm(FormParameter param, Matrix gram,
                               std::vector<QElem> qvals)
    : param_(std::move(param)), gram_(std::move(gram)),
      qvals_(std::move(qvals)) {
  if (!gram_.is_square())
    throw validation_error("UnimodularForm: gram must be square");
  if (gram_.ring() != param_.ring())
    throw validation_error("UnimodularForm: gram ring != parameter ring");
  if (static_cast<int>(qvals_.size()) != gram_.rows())
    throw validation_error("UnimodularForm: qvals length != rank");
  int n = gram_.rows();
  const Int eps = param_.epsilon();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (gram_.at(j, i) != param_.ring().mul(eps, gram_.at(i, j)))
        throw validation_error("UnimodularForm: B^T != eps*B");
  if (n > 0 && !exactalg::is_unimodular(gram_))
    throw validation_error("UnimodularForm: det(B) is not a unit");
  for (int i = 0; i < n; ++i) {
    qvals_[i] = param_.canon(qvals_[i].coords);
    if (param_.rho(qvals_[i]) != gram_.at(i, i))
      throw validation_error("UnimodularForm: rho(q_i) != B_ii at i=" +
                             std::to_string(i));
  }
}

UnimodularForm UnimodularForm::zero(const FormParameter &param) {
  return UnimodularForm(param, Matrix(param.ring(), 0, 0), {});
}

UnimodularForm UnimodularForm::hyperbolic(const FormParameter &param, int k) {
  Matrix b(param.ring(), 2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    b.set(i, k + i, 1);
    b.set(k + i, i, param.epsilon());
  }
  return UnimodularForm(param, b,
                        std::vector<QElem>(2 * k, param.q_zero()));
}

UnimodularForm UnimodularForm::diagonal(const FormParameter &param,
                                        const std::vector<Int> &diag,
                                        const std::vector<QElem> &qvals) {
  Matrix b(param.ring(), static_cast<int>(diag.size()),
           static_cast<int>(diag.size()));
  for (size_t i = 0; i < diag.size(); ++i)
    b.set(static_cast<int>(i), static_cast<int>(i), diag[i]);
  return UnimodularForm(param, b, qvals);
}

UnimodularForm UnimodularForm::from_gram(const FormParameter &param,
                                         Matrix gram) {
  // find q_i with rho(q_i) = B_ii; unique for Symmetric (rho = id) and for
  // Quadratic when 1+eps is injective, e.g. Z or odd characteristic
  int n = gram.rows();
  std::vector<QElem> qv;
  for (int i = 0; i < n; ++i) {
    const Int target = gram.at(i, i);
    std::optional<QElem> found;
    if (param.flavor() == Flavor::Symmetric) {
      // rho is the inclusion of the cyclic group generated by gamma
      found = param.q_zero();
      if (target != 0) {
        // solve c * gamma = target over the ring
        bool ok = false;
        if (param.ring().is_finite()) {
          Int order = param.q_order();
          for (Int c = 0; c < (order == 0 ? param.ring().modulus() : order);
               ++c) {
            QElem cand = param.canon({c});
            if (param.rho(cand) == target) {
              found = cand;
              ok = true;
              break;
            }
          }
        } else {
          QElem cand = param.canon({target});
          ok = param.rho(cand) == target;
          found = cand;
        }
        if (!ok)
          throw validation_error("from_gram: diagonal entry outside M^{C2}");
      }
    } else if (param.q_is_finite()) {
      for (const QElem &q : param.q_elements())
        if (param.rho(q) == target) {
          found = q;
          break;
        }
    } else {
      // Z quadratic/even: rho multiplies the generator by 2; need even diag
      Int gamma_rho = param.rho(param.canon({Int(1)}));
      if (gamma_rho != 0 &&
          mpz_divisible_p(target.get_mpz_t(), gamma_rho.get_mpz_t()))
        found = param.canon({target / gamma_rho});
      else if (target == 0)
        found = param.q_zero();
    }
    if (!found)
      throw validation_error("from_gram: no q-value with rho(q) = B_ii");
    qv.push_back(*found);
  }
  return UnimodularForm(param, std::move(gram), std::move(qv));
}

Int UnimodularForm::eval_b(const std::vector<Int> &x,
                           const std::vector<Int> &y) const {
  if (static_cast<int>(x.size()) != rank() ||
      static_cast<int>(y.size()) != rank())
    throw validation_error("eval_b: length mismatch");
  Int acc = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      acc += x[i] * gram_.at(i, j) * y[j];
  return param_.ring().normalize(acc);
}

QElem UnimodularForm::eval_q(const std::vector<Int> &x) const {
  if (static_cast<int>(x.size()) != rank())
    throw validation_error("eval_q: length mismatch");
  // q(sum x_i e_i) = sum act(x_i) q_i + sum_{i<j} tau(x_i x_j B_ij)
  QElem acc = param_.q_zero();
  for (int i = 0; i < rank(); ++i)
    acc = param_.q_add(acc, param_.act(x[i], qvals_[i]));
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      acc = param_.q_add(
          acc, param_.tau(param_.ring().normalize(x[i] * x[j] * gram_.at(i, j))));
  return acc;
}

UnimodularForm UnimodularForm::orthogonal_sum(const UnimodularForm &o) const {
  if (param_ != o.param_)
    throw validation_error("orthogonal_sum: parameter mismatch");
  int n = rank(), m = o.rank();
  Matrix b(param_.ring(), n + m, n + m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b.set(i, j, gram_.at(i, j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      b.set(n + i, n + j, o.gram_.at(i, j));
  std::vector<QElem> qv = qvals_;
  qv.insert(qv.end(), o.qvals_.begin(), o.qvals_.end());
  return UnimodularForm(param_, b, qv);
}

UnimodularForm UnimodularForm::negate() const {
  std::vector<QElem> qv;
  for (const QElem &q : qvals_)
    qv.push_back(param_.q_neg(q));
  return UnimodularForm(param_, gram_.neg(), qv);
}

UnimodularForm UnimodularForm::change_basis(const Matrix &u) const {
  if (u.rows() != rank() || u.cols() != rank())
    throw validation_error("change_basis: shape mismatch");
  if (!exactalg::is_unimodular(u))
    throw validation_error("change_basis: matrix not invertible");
  Matrix b = u.transpose() * gram_ * u;
  std::vector<QElem> qv;
  for (int j = 0; j < rank(); ++j)
    qv.push_back(eval_q(u.col_entries(j)));
  return UnimodularForm(param_, b, qv);
}

bool UnimodularForm::data_less(const UnimodularForm &o) const {
  if (rank() != o.rank())
    return rank() < o.rank();
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) {
      if (gram_.at(i, j) != o.gram_.at(i, j))
        return gram_.at(i, j) < o.gram_.at(i, j);
    }
  for (int i = 0; i < rank(); ++i)
    if (qvals_[i] != o.qvals_[i])
      return qvals_[i] < o.qvals_[i];
  return false;
}

std::string UnimodularForm::str() const {
  std::ostringstream os;
  os << "form rank " << rank() << " over " << param_.str() << " gram "
     << gram_.str() << " q [";
  for (int i = 0; i < rank(); ++i)
    os << (i ? "," : "") << qvals_[i].str();
  os << "]";
  return os.str();
}

void Isometry::validate() const {
  if (source.param() != target.param())
    throw validation_error("Isometry: parameter mismatch");
  if (u.rows() != target.rank() || u.cols() != source.rank() ||
      source.rank() != target.rank())
    throw validation_error("Isometry: shape mismatch");
  if (!exactalg::is_unimodular(u))
    throw validation_error("Isometry: matrix not invertible");
  if (!(u.transpose() * target.gram() * u == source.gram()))
    throw validation_error("Isometry: gram condition fails");
  for (int i = 0; i < source.rank(); ++i)
    if (target.eval_q(u.col_entries(i)) != source.qvals()[i])
      throw validation_error("Isometry: q condition fails");
}

nlohmann::json param_to_json(const FormParameter &p) {
  nlohmann::json j{{"ring", exactalg::ring_to_json(p.ring())},
                   {"flavor", flavor_name(p.flavor())},
                   {"epsilon", p.epsilon()}};
  if (p.flavor() == Flavor::General && p.general_data()) {
    const GeneralParamData &g = *p.general_data();
    nlohmann::json tau = nlohmann::json::array(),
                   rho = nlohmann::json::array(),
                   action = nlohmann::json::array();
    for (const Int &x : g.tau_of_one)
      tau.push_back(x.get_str());
    for (const Int &x : g.rho_gens)
      rho.push_back(x.get_str());
    for (const Matrix &a : g.action)
      action.push_back(exactalg::matrix_to_json(a));
    j["general"] = nlohmann::json{
        {"q_relations", exactalg::matrix_to_json(g.q_relations)},
        {"tau_of_one", tau},
        {"rho", rho},
        {"action", action}};
  }
  return j;
}

FormParameter param_from_json(const nlohmann::json &j) {
  RingSpec ring = exactalg::ring_from_json(j.at("ring"));
  auto fl = flavor_from_name(j.at("flavor").get<std::string>());
  if (!fl)
    throw validation_error("param_from_json: unknown flavor");
  int eps = j.at("epsilon").get<int>();
  if (*fl == Flavor::General) {
    const auto &g = j.at("general");
    GeneralParamData data;
    data.q_relations = exactalg::matrix_from_json(g.at("q_relations"));
    for (const auto &x : g.at("tau_of_one"))
      data.tau_of_one.push_back(x.is_string() ? Int(x.get<std::string>())
                                              : Int(x.get<long>()));
    for (const auto &x : g.at("rho"))
      data.rho_gens.push_back(x.is_string() ? Int(x.get<std::string>())
                                            : Int(x.get<long>()));
    for (const auto &a : g.at("action"))
      data.action.push_back(exactalg::matrix_from_json(a));
    return FormParameter::general(ring, eps, std::move(data));
  }
  return FormParameter::make(ring, *fl, eps);
}

nlohmann::json form_to_json(const UnimodularForm &f) {
  nlohmann::json j = param_to_json(f.param());
  nlohmann::json gram = nlohmann::json::array();
  for (int i = 0; i < f.rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < f.rank(); ++k)
      row.push_back(f.gram().at(i, k).get_str());
    gram.push_back(row);
  }
  nlohmann::json q = nlohmann::json::array();
  for (const QElem &x : f.qvals()) {
    if (x.coords.size() == 1)
      q.push_back(x.coords[0].get_str());
    else {
      nlohmann::json v = nlohmann::json::array();
      for (const Int &c : x.coords)
        v.push_back(c.get_str());
      q.push_back(v);
    }
  }
  j["gram"] = gram;
  j["q"] = q;
  return j;
}

namespace {
Int json_int(const nlohmann::json &j) {
  if (j.is_number_integer())
    return Int(j.get<long>());
  if (j.is_string())
    return Int(j.get<std::string>());
  throw validation_error("expected integer");
}
} // namespace

UnimodularForm form_from_json(const nlohmann::json &j) {
  FormParameter p = param_from_json(j);
  const auto &gram = j.at("gram");
  int n = static_cast<int>(gram.size());
  Matrix b(p.ring(), n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(gram[i].size()) != n)
      throw validation_error("form_from_json: gram not square");
    for (int k = 0; k < n; ++k)
      b.set(i, k, json_int(gram[i][k]));
  }
  std::vector<QElem> qv;
  const auto &q = j.at("q");
  if (static_cast<int>(q.size()) != n)
    throw validation_error("form_from_json: q length mismatch");
  for (int i = 0; i < n; ++i) {
    std::vector<Int> coords;
    if (q[i].is_array())
      for (const auto &c : q[i])
        coords.push_back(json_int(c));
    else
      coords.push_back(json_int(q[i]));
    if (static_cast<int>(coords.size()) != p.q_gens())
      throw validation_error("form_from_json: q coordinate length mismatch");
    qv.push_back(p.canon(coords));
  }
  return UnimodularForm(p, b, qv);
}

} // namespace wittkit::formcore
