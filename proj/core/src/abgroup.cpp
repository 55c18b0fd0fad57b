#include "wittkit/abgroup.hpp"

#include <sstream>

namespace wittkit::exactalg {

Int AbelianGroupPresentation::order() const {
  if (free_rank > 0)
    return 0;
  Int n = 1;
  for (const Int &d : invariant_factors)
    n *= d;
  return n;
}

std::string AbelianGroupPresentation::str() const {
  if (is_trivial())
    return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank == 1) {
    os << "Z";
    first = false;
  } else if (free_rank > 1) {
    os << "Z^" << free_rank;
    first = false;
  }
  for (const Int &d : invariant_factors) {
    os << (first ? "" : " (+) ") << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

CokernelData cokernel_data(const Matrix &A) {
  if (!A.ring().is_integers())
    throw validation_error("cokernel_data: matrix must be over Z");
  SmithDecomposition s = snf(A);
  CokernelData out;
  out.U = s.U;
  out.Uinv = s.Uinv;
  out.moduli.resize(A.rows());
  int m = std::min(A.rows(), A.cols());
  for (int t = 0; t < A.rows(); ++t)
    out.moduli[t] = t < m ? s.D.at(t, t) : Int(0);
  for (int t = 0; t < A.rows(); ++t) {
    if (out.moduli[t] == 0)
      out.group.free_rank++;
    else if (out.moduli[t] > 1)
      out.group.invariant_factors.push_back(out.moduli[t]);
  }
  return out;
}

std::vector<int> CokernelData::live_coords() const {
  std::vector<int> idx;
  for (int t = 0; t < static_cast<int>(moduli.size()); ++t)
    if (moduli[t] != 1)
      idx.push_back(t);
  return idx;
}

std::vector<Int> CokernelData::coords(const Matrix &x_column) const {
  Matrix y = Uinv * x_column;
  std::vector<Int> out;
  for (int t : live_coords()) {
    Int v = y.at(t, 0);
    if (moduli[t] > 1) {
      Int r;
      mpz_mod(r.get_mpz_t(), v.get_mpz_t(), moduli[t].get_mpz_t());
      out.push_back(r);
    } else {
      out.push_back(v);
    }
  }
  return out;
}

Matrix CokernelData::generators() const { return U.select_columns(live_coords()); }

AbelianGroupPresentation cokernel_presentation(const Matrix &A) {
  return cokernel_data(A).group;
}

} // namespace wittkit::exactalg
