#include "wittkit/matrix.hpp"

#include <sstream>

namespace wittkit::exactalg {

Matrix Matrix::identity(RingSpec ring, int n) {
  Matrix m(ring, n, n);
  for (int i = 0; i < n; ++i)
    m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(RingSpec ring,
                         const std::vector<std::vector<Int>> &rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(ring, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw validation_error("Matrix::from_rows: ragged rows");
    for (int j = 0; j < c; ++j)
      m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::column(RingSpec ring, const std::vector<Int> &entries) {
  Matrix m(ring, static_cast<int>(entries.size()), 1);
  for (int i = 0; i < m.rows(); ++i)
    m.set(i, 0, entries[i]);
  return m;
}

bool Matrix::is_zero() const {
  for (const Int &x : e_)
    if (x != 0)
      return false;
  return true;
}

Matrix Matrix::add(const Matrix &o) const {
  if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_)
    throw validation_error("Matrix::add: shape or ring mismatch");
  Matrix m(ring_, rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k)
    m.e_[k] = ring_.normalize(e_[k] + o.e_[k]);
  return m;
}

Matrix Matrix::sub(const Matrix &o) const { return add(o.neg()); }

Matrix Matrix::neg() const {
  Matrix m(ring_, rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k)
    m.e_[k] = ring_.neg(e_[k]);
  return m;
}

Matrix Matrix::mul(const Matrix &o) const {
  if (ring_ != o.ring_)
    throw validation_error("Matrix::mul: ring mismatch");
  if (cols_ != o.rows_)
    throw validation_error("Matrix::mul: shape mismatch");
  Matrix m(ring_, rows_, o.cols_);
  Int acc;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      acc = 0;
      for (int k = 0; k < cols_; ++k)
        acc += e_[idx(i, k)] * o.e_[o.idx(k, j)];
      m.e_[m.idx(i, j)] = ring_.normalize(acc);
    }
  return m;
}

Matrix Matrix::scale(const Int &c) const {
  Matrix m(ring_, rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k)
    m.e_[k] = ring_.normalize(c * e_[k]);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      m.e_[m.idx(j, i)] = e_[idx(i, j)];
  return m;
}

Matrix Matrix::hstack(const Matrix &o) const {
  if (ring_ != o.ring_ || rows_ != o.rows_)
    throw validation_error("Matrix::hstack: mismatch");
  Matrix m(ring_, rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j)
      m.e_[m.idx(i, j)] = e_[idx(i, j)];
    for (int j = 0; j < o.cols_; ++j)
      m.e_[m.idx(i, cols_ + j)] = o.e_[o.idx(i, j)];
  }
  return m;
}

Matrix Matrix::vstack(const Matrix &o) const {
  if (ring_ != o.ring_ || cols_ != o.cols_)
    throw validation_error("Matrix::vstack: mismatch");
  Matrix m(ring_, rows_ + o.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      m.e_[m.idx(i, j)] = e_[idx(i, j)];
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      m.e_[m.idx(rows_ + i, j)] = o.e_[o.idx(i, j)];
  return m;
}

Matrix Matrix::submatrix(int i0, int j0, int nrows, int ncols) const {
  Matrix m(ring_, nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j)
      m.e_[m.idx(i, j)] = at(i0 + i, j0 + j);
  return m;
}

Matrix Matrix::select_columns(const std::vector<int> &js) const {
  Matrix m(ring_, rows_, static_cast<int>(js.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < js.size(); ++j)
      m.e_[m.idx(i, static_cast<int>(j))] = at(i, js[j]);
  return m;
}

std::vector<Int> Matrix::col_entries(int j) const {
  std::vector<Int> v(rows_);
  for (int i = 0; i < rows_; ++i)
    v[i] = at(i, j);
  return v;
}

std::vector<Int> Matrix::row_entries(int i) const {
  std::vector<Int> v(cols_);
  for (int j = 0; j < cols_; ++j)
    v[j] = at(i, j);
  return v;
}

Matrix Matrix::cast(const RingSpec &target) const {
  Matrix m(target, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      m.set(i, j, at(i, j));
  return m;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j)
      os << (j ? " " : "") << at(i, j).get_str();
  }
  os << "]";
  return os.str();
}

Matrix operator*(const Matrix &a, const Matrix &b) { return a.mul(b); }
Matrix operator+(const Matrix &a, const Matrix &b) { return a.add(b); }
Matrix operator-(const Matrix &a, const Matrix &b) { return a.sub(b); }

nlohmann::json ring_to_json(const RingSpec &ring) {
  if (ring.is_integers())
    return "Z";
  return nlohmann::json{{"Zmod", ring.modulus().get_si()}};
}

RingSpec ring_from_json(const nlohmann::json &j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Z")
      return RingSpec::integers();
    throw validation_error("ring_from_json: unknown ring string");
  }
  if (j.is_object() && j.contains("Zmod"))
    return RingSpec::mod(Int(j["Zmod"].get<long>()));
  throw validation_error("ring_from_json: bad ring spec");
}

nlohmann::json matrix_to_json(const Matrix &m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(m.at(i, j).get_str());
    rows.push_back(row);
  }
  return nlohmann::json{{"ring", ring_to_json(m.ring())},
                        {"rows", m.rows()},
                        {"cols", m.cols()},
                        {"entries", rows}};
}

static Int int_from_json(const nlohmann::json &j) {
  if (j.is_number_integer())
    return Int(j.get<long>());
  if (j.is_string())
    return Int(j.get<std::string>());
  throw validation_error("expected integer or integer string");
}

Matrix matrix_from_json(const nlohmann::json &j) {
  RingSpec ring = ring_from_json(j.at("ring"));
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  Matrix m(ring, rows, cols);
  const auto &entries = j.at("entries");
  if (static_cast<int>(entries.size()) != rows)
    throw validation_error("matrix_from_json: row count mismatch");
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(entries[i].size()) != cols)
      throw validation_error("matrix_from_json: col count mismatch");
    for (int c = 0; c < cols; ++c)
      m.set(i, c, int_from_json(entries[i][c]));
  }
  return m;
}

} // namespace wittkit::exactalg
