#include "wittkit/witt.hpp"

#include <sstream>

namespace wittkit::formcore {

namespace {

using exactalg::cokernel_data;
using exactalg::CokernelData;
using exactalg::Matrix;

// Hermite form of the row lattice (integer row reduction, no column ops)
Matrix hnf_rows(Matrix a) {
  int r = a.rows(), c = a.cols();
  int row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    // gcd-reduce the column below `row`
    for (;;) {
      int piv = -1;
      Int best;
      for (int i = row; i < r; ++i) {
        Int v = abs(a.at(i, col));
        if (v != 0 && (piv < 0 || v < best)) {
          piv = i;
          best = v;
        }
      }
      if (piv < 0)
        break;
      // swap pivot into place
      if (piv != row)
        for (int j = 0; j < c; ++j) {
          Int t = a.at(row, j);
          a.set(row, j, a.at(piv, j));
          a.set(piv, j, t);
        }
      if (a.at(row, col) < 0)
        for (int j = 0; j < c; ++j)
          a.set(row, j, -a.at(row, j));
      bool clean = true;
      for (int i = row + 1; i < r; ++i) {
        if (a.at(i, col) == 0)
          continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a.at(i, col).get_mpz_t(),
                   a.at(row, col).get_mpz_t());
        for (int j = 0; j < c; ++j)
          a.set(i, j, a.at(i, j) - q * a.at(row, j));
        if (a.at(i, col) != 0)
          clean = false;
      }
      if (clean)
        break;
    }
    if (a.at(row, col) != 0) {
      // reduce entries above the pivot
      for (int i = 0; i < row; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a.at(i, col).get_mpz_t(),
                   a.at(row, col).get_mpz_t());
        for (int j = 0; j < c; ++j)
          a.set(i, j, a.at(i, j) - q * a.at(row, j));
      }
      ++row;
    }
  }
  return a.submatrix(0, 0, row, c);
}

std::string lattice_description(const Matrix &basis, int ambient) {
  // pretty-print a sublattice of Z^ambient when its Hermite basis is diagonal
  bool diagonal = basis.rows() == ambient;
  for (int i = 0; diagonal && i < basis.rows(); ++i)
    for (int j = 0; j < basis.cols(); ++j)
      if (i != j && basis.at(i, j) != 0)
        diagonal = false;
  std::ostringstream os;
  if (diagonal) {
    for (int i = 0; i < basis.rows(); ++i) {
      Int d = basis.at(i, i);
      os << (i ? " (+) " : "") << (d == 1 ? "Z" : d.get_str() + "Z");
    }
  } else {
    os << "lattice" << basis.str();
  }
  os << " inside ";
  for (int i = 0; i < ambient; ++i)
    os << (i ? " (+) " : "") << "Z";
  return os.str();
}

std::vector<Int> z_coords(const UnimodularForm &f) {
  int sig = signature(f);
  // positive rank from signature and rank (nondegenerate over R)
  Int npos = Int(f.rank() + sig) / 2;
  return {Int(sig), npos};
}

GroupResult gw0_over_Z(const FormParameter &param,
                       const std::vector<UnimodularForm> &gens) {
  if (param.epsilon() != 1 || (param.flavor() != Flavor::Symmetric &&
                               param.flavor() != Flavor::Quadratic))
    throw validation_error("gw0 over Z: symmetric/quadratic with eps=+1 only");
  GroupResult out;
  Matrix rows(RingSpec::integers(), static_cast<int>(gens.size()), 2);
  for (size_t i = 0; i < gens.size(); ++i) {
    auto c = z_coords(gens[i]);
    rows.set(static_cast<int>(i), 0, c[0]);
    rows.set(static_cast<int>(i), 1, c[1]);
    out.generator_images.push_back(
        {"g" + std::to_string(i), {c[0], c[1]}});
  }
  Matrix basis = hnf_rows(rows);
  out.image_basis = basis;
  out.group.free_rank = basis.rows();
  out.description = lattice_description(basis, 2);
  return out;
}

struct FinitePresentation {
  std::vector<UnimodularForm> classes;
  CokernelData data;
};

// group completion of the class monoid truncated at rank_cap, with extra
// kill-relations (class indices)
FinitePresentation finite_presentation(const FormParameter &param,
                                       int rank_cap,
                                       const std::vector<int> &killed,
                                       std::vector<UnimodularForm> classes) {
  int n = static_cast<int>(classes.size());
  std::vector<std::vector<Int>> relations;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (classes[i].rank() == 0 || classes[j].rank() == 0)
        continue;
      if (classes[i].rank() + classes[j].rank() > rank_cap)
        continue;
      int k = class_index(classes, classes[i].orthogonal_sum(classes[j]),
                          rank_cap);
      std::vector<Int> rel(n, Int(0));
      rel[i] += 1;
      rel[j] += 1;
      rel[k] -= 1;
      relations.push_back(rel);
    }
  // the zero class is the monoid unit
  for (int i = 0; i < n; ++i)
    if (classes[i].rank() == 0) {
      std::vector<Int> rel(n, Int(0));
      rel[i] = 1;
      relations.push_back(rel);
    }
  for (int i : killed) {
    std::vector<Int> rel(n, Int(0));
    rel[i] = 1;
    relations.push_back(rel);
  }
  Matrix relm(RingSpec::integers(), n, static_cast<int>(relations.size()));
  for (size_t j = 0; j < relations.size(); ++j)
    for (int i = 0; i < n; ++i)
      relm.set(i, static_cast<int>(j), relations[j][i]);
  return {std::move(classes), cokernel_data(relm)};
}

GroupResult result_from_presentation(const FinitePresentation &p) {
  GroupResult out;
  out.group = p.data.group;
  for (size_t i = 0; i < p.classes.size(); ++i) {
    Matrix e(RingSpec::integers(), static_cast<int>(p.classes.size()), 1);
    e.set(static_cast<int>(i), 0, 1);
    out.generator_images.push_back(
        {"class" + std::to_string(i), p.data.coords(e)});
  }
  out.description = p.data.group.str();
  return out;
}

} // namespace

GroupResult gw0(const FormParameter &param,
                const std::vector<UnimodularForm> &generators_over_Z,
                int rank_cap) {
  if (param.ring().is_integers())
    return gw0_over_Z(param, generators_over_Z);
  auto classes = enumerate_classes(param, rank_cap);
  auto pres = finite_presentation(param, rank_cap, {}, std::move(classes));
  return result_from_presentation(pres);
}

GroupResult witt_group(const FormParameter &param, int rank_cap) {
  return witt_classes(param, rank_cap).group;
}

UnimodularForm e8_form(const FormParameter &param) {
  // Cartan matrix of E8, node 8 attached to node 5
  std::vector<std::vector<Int>> rows(8, std::vector<Int>(8, Int(0)));
  for (int i = 0; i < 8; ++i)
    rows[i][i] = 2;
  auto link = [&](int a, int b) {
    rows[a][b] = -1;
    rows[b][a] = -1;
  };
  for (int i = 0; i + 1 < 7; ++i)
    link(i, i + 1);
  link(4, 7);
  return UnimodularForm::from_gram(
      param, Matrix::from_rows(param.ring(), rows));
}

WittClassTable witt_classes(const FormParameter &param, int rank_cap) {
  WittClassTable out;
  if (param.ring().is_integers()) {
    if (param.epsilon() != 1 || (param.flavor() != Flavor::Symmetric &&
                                 param.flavor() != Flavor::Quadratic))
      throw validation_error("witt over Z: symmetric/quadratic eps=+1 only");
    // W(Z) = Z via signature; quadratic flavor lands in 8Z
    out.group.group.free_rank = 1;
    out.group.description =
        param.flavor() == Flavor::Symmetric
            ? "Z (signature)"
            : "Z (signature; image 8Z generated by E8)";
    return out;
  }
  auto classes = enumerate_classes(param, rank_cap);
  std::vector<int> metabolic;
  for (size_t i = 0; i < classes.size(); ++i)
    if (classes[i].rank() > 0 &&
        find_lagrangian(classes[i], LagrangianMode::Exhaustive,
                        std::max(rank_cap, classes[i].rank())))
      metabolic.push_back(static_cast<int>(i));
  auto pres =
      finite_presentation(param, rank_cap, metabolic, std::move(classes));
  GroupResult g = result_from_presentation(pres);
  out.classes = pres.classes;
  for (size_t i = 0; i < pres.classes.size(); ++i)
    out.witt_coords.push_back(g.generator_images[i].second);
  out.group = std::move(g);
  return out;
}

} // namespace wittkit::formcore
