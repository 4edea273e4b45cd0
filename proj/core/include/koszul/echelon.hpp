#pragma once

#include "koszul/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace koszul {

/// Sparse vector: parallel index/value arrays. Residues are used over F_p,
/// fractions over Q. Duplicate indices are summed wherever a vector is read.
struct SparseVec {
  std::vector<std::uint32_t> idx;
  std::vector<std::uint32_t> res;
  std::vector<mpq_class> q;

  std::size_t size() const { return idx.size(); }
  bool empty() const { return idx.empty(); }
  void push(std::uint32_t i, const Scalar& s) {
    idx.push_back(i);
    if (s.field().is_rational())
      q.push_back(s.rational());
    else
      res.push_back(s.residue());
  }
  void push_residue(std::uint32_t i, std::uint32_t r) {
    idx.push_back(i);
    res.push_back(r);
  }
  Scalar value(Field f, std::size_t k) const {
    return f.is_rational() ? Scalar(f, q[k]) : Scalar::from_residue(f, res[k]);
  }
};

SparseVec sparse_row(const Mat& m, std::size_t r);
/// Dense 1 x width matrix holding `v`.
Mat dense_row(Field f, const SparseVec& v, std::size_t width);

/// Incremental reduced row-echelon form. Rows are inserted one at a time and
/// the stored basis stays fully reduced, so a new row only needs one
/// subtraction per nonzero it carries in a pivot column. Columns at or past
/// `pivot_limit` never become pivots; they act as tag columns that record
/// which combination of inserted rows produced a stored row.
class Echelon {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Echelon(Field f, std::size_t width, std::size_t pivot_limit = npos);
  ~Echelon();
  Echelon(Echelon&&) noexcept;
  Echelon& operator=(Echelon&&) noexcept;
  Echelon(const Echelon& other);
  Echelon& operator=(const Echelon& other);

  Field field() const { return field_; }
  std::size_t width() const;
  std::size_t rank() const;

  /// Returns the new pivot column, or npos when the row reduced to zero in
  /// the pivot range.
  std::size_t insert(const SparseVec& v);
  std::size_t insert_row(const Mat& m, std::size_t r) { return insert(sparse_row(m, r)); }
  void insert_rows(const Mat& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) insert_row(m, r);
  }

  /// The residual of `v` after reduction by the stored rows, sorted by index.
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const;

  /// Pivot columns in increasing order.
  std::vector<std::uint32_t> pivots() const;
  /// Stored rows sorted by pivot column: the canonical RREF of the span.
  Mat basis() const;
  /// Row `k` of `basis()`.
  SparseVec basis_row(std::size_t k) const;
  /// Basis of {x : B x = 0} over the first min(width, pivot_limit) columns,
  /// one row per free column.
  Mat null_space() const;

  struct Impl;

 private:
  Field field_;
  std::unique_ptr<Impl> impl_;
};

Mat rref(const Mat& m);
std::size_t rank(const Mat& m);
/// Rank of a sparse matrix; the shorter orientation is used for elimination.
std::size_t rank(const SparseMat& m);
/// Kernel of the map k^cols -> k^rows, as rows.
Mat kernel(const Mat& m);
Mat kernel(const SparseMat& m);
/// Image of the map (column space), as RREF rows.
Mat image(const Mat& m);
Mat image(const SparseMat& m);
/// Inverse of a square matrix; throws InputError when singular.
Mat inverse(const Mat& m);

}  // namespace koszul
