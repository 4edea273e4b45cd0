#pragma once

#include "koszul/field.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace koszul {

/// Dense matrix over one field, row-major. A matrix is read as a linear map
/// k^cols -> k^rows acting on column vectors; subspaces keep their bases as
/// rows.
class Mat {
 public:
  Mat() : field_(Field::rationals()) {}
  Mat(Field f, std::size_t rows, std::size_t cols);
  static Mat identity(Field f, std::size_t n);
  /// Row-major integer entries reduced into `f`; the count must be rows*cols.
  static Mat from_ints(Field f, std::size_t rows, std::size_t cols,
                       const std::vector<std::int64_t>& entries);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void set(std::size_t r, std::size_t c, std::int64_t v) { set(r, c, Scalar(field_, v)); }
  void add_to(std::size_t r, std::size_t c, const Scalar& v);
  bool is_zero_at(std::size_t r, std::size_t c) const;
  bool is_zero() const;

  Mat transpose() const;
  Mat row(std::size_t r) const { return row_block(r, 1); }
  Mat row_block(std::size_t start, std::size_t count) const;
  Mat select_rows(std::span<const std::size_t> idx) const;
  Mat select_cols(std::span<const std::size_t> idx) const;
  Mat scaled(const Scalar& s) const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  /// Raw storage: residues for F_p, fractions for Q.
  std::span<const std::uint32_t> residues() const { return fp_; }
  std::span<std::uint32_t> residues() { return fp_; }
  std::span<const mpq_class> rationals() const { return q_; }
  std::span<mpq_class> rationals() { return q_; }

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> fp_;
  std::vector<mpq_class> q_;
};

Mat kron(const Mat& a, const Mat& b);
Mat vstack(const Mat& top, const Mat& bottom);
Mat hstack(const Mat& left, const Mat& right);
/// Direct sum diag(a, b).
Mat block_diag(const Mat& a, const Mat& b);

/// Sparse matrix as a list of column entries, for chain-complex
/// differentials and coalgebra structure maps. Duplicate (row, col) entries
/// are summed by `compress()`.
class SparseMat {
 public:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
  };

  SparseMat() : field_(Field::rationals()) {}
  SparseMat(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols) {}
  static SparseMat from_dense(const Mat& m);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }

  void add(std::size_t r, std::size_t c, const Scalar& v);
  /// Adds a residue (F_p only); skips zero.
  void add_residue(std::size_t r, std::size_t c, std::uint32_t v);

  /// Sorts by (col, row), merges duplicates, drops zeros.
  void compress();
  /// Same, sorted by (row, col).
  void compress_by_rows();

  const std::vector<Entry>& entries() const { return entries_; }
  std::span<const std::uint32_t> residues() const { return fp_; }
  std::span<const mpq_class> rationals() const { return q_; }
  Scalar value(std::size_t k) const;

  bool is_zero() const;
  SparseMat transpose() const;
  Mat to_dense() const;

  friend SparseMat operator*(const SparseMat& a, const SparseMat& b);

 private:
  void sort_and_merge(bool by_rows);

  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> fp_;
  std::vector<mpq_class> q_;
};

SparseMat kron(const SparseMat& a, const SparseMat& b);
/// Entrywise equality after compression.
bool same_entries(SparseMat a, SparseMat b);
SparseMat sparse_identity(Field f, std::size_t n);

}  // namespace koszul
