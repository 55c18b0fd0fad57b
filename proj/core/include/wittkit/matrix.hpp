#pragma once

#include "wittkit/ring.hpp"

#include <json.hpp>
#include <vector>

namespace wittkit::exactalg {

/// Dense matrix over a RingSpec, entries kept canonical. Row-major.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(RingSpec ring, int rows, int cols)
      : ring_(ring), rows_(rows), cols_(cols),
        e_(static_cast<size_t>(rows) * cols, Int(0)) {
    if (rows < 0 || cols < 0)
      throw validation_error("Matrix: negative dimensions");
  }

  static Matrix identity(RingSpec ring, int n);
  static Matrix from_rows(RingSpec ring,
                          const std::vector<std::vector<Int>> &rows);
  /// Column vector from entries.
  static Matrix column(RingSpec ring, const std::vector<Int> &entries);

  const RingSpec &ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Int &at(int i, int j) const { return e_[idx(i, j)]; }
  void set(int i, int j, const Int &v) { e_[idx(i, j)] = ring_.normalize(v); }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix add(const Matrix &o) const;
  Matrix sub(const Matrix &o) const;
  Matrix neg() const;
  Matrix mul(const Matrix &o) const;
  Matrix scale(const Int &c) const;
  Matrix transpose() const;

  /// [this | o] side by side.
  Matrix hstack(const Matrix &o) const;
  /// [this; o] stacked.
  Matrix vstack(const Matrix &o) const;
  Matrix submatrix(int i0, int j0, int nrows, int ncols) const;
  Matrix select_columns(const std::vector<int> &js) const;
  Matrix column_vector(int j) const { return select_columns({j}); }

  std::vector<Int> col_entries(int j) const;
  std::vector<Int> row_entries(int i) const;

  /// Reinterpret entries in another ring (reduction Z -> Z/n, or lift with
  /// canonical representatives).
  Matrix cast(const RingSpec &target) const;

  bool operator==(const Matrix &o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           e_ == o.e_;
  }
  bool operator!=(const Matrix &o) const { return !(*this == o); }

  std::string str() const;

private:
  size_t idx(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw validation_error("Matrix: index out of range");
    return static_cast<size_t>(i) * cols_ + j;
  }

  RingSpec ring_;
  int rows_, cols_;
  std::vector<Int> e_;
};

Matrix operator*(const Matrix &a, const Matrix &b);
Matrix operator+(const Matrix &a, const Matrix &b);
Matrix operator-(const Matrix &a, const Matrix &b);

/// JSON schema: {"ring": "Z" | {"Zmod": n}, "rows": r, "cols": c,
///               "entries": [[...row...], ...]}
nlohmann::json ring_to_json(const RingSpec &ring);
RingSpec ring_from_json(const nlohmann::json &j);
nlohmann::json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const nlohmann::json &j);

} // namespace wittkit::exactalg
