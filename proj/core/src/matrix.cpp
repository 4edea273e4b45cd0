#include "koszul/matrix.hpp"

#include "koszul/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace koszul {

namespace {
void require_same_field(Field a, Field b) {
  if (a != b) throw InputError("matrices over different fields");
}
}  // namespace

Mat::Mat(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols) {
  if (f.is_rational())
    q_.assign(rows * cols, mpq_class(0));
  else
    fp_.assign(rows * cols, 0);
}

Mat Mat::identity(Field f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
  return m;
}

Mat Mat::from_ints(Field f, std::size_t rows, std::size_t cols,
                   const std::vector<std::int64_t>& entries) {
  if (entries.size() != rows * cols)
    throw InputError(fmt::format("expected {} entries, got {}", rows * cols, entries.size()));
  Mat m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, Scalar(f, entries[r * cols + c]));
  return m;
}

Scalar Mat::at(std::size_t r, std::size_t c) const {
  std::size_t k = r * cols_ + c;
  if (field_.is_rational()) return Scalar(field_, q_[k]);
  return Scalar::from_residue(field_, fp_[k]);
}

void Mat::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (v.field() != field_) throw InputError("entry from a different field");
  std::size_t k = r * cols_ + c;
  if (field_.is_rational())
    q_[k] = v.rational();
  else
    fp_[k] = v.residue();
}

void Mat::add_to(std::size_t r, std::size_t c, const Scalar& v) { set(r, c, at(r, c) + v); }

bool Mat::is_zero_at(std::size_t r, std::size_t c) const {
  std::size_t k = r * cols_ + c;
  return field_.is_rational() ? q_[k] == 0 : fp_[k] == 0;
}

bool Mat::is_zero() const {
  if (field_.is_rational())
    return std::all_of(q_.begin(), q_.end(), [](const mpq_class& x) { return x == 0; });
  return std::all_of(fp_.begin(), fp_.end(), [](std::uint32_t x) { return x == 0; });
}

Mat Mat::transpose() const {
  Mat t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      if (field_.is_rational())
        t.q_[c * rows_ + r] = q_[r * cols_ + c];
      else
        t.fp_[c * rows_ + r] = fp_[r * cols_ + c];
    }
  return t;
}

Mat Mat::row_block(std::size_t start, std::size_t count) const {
  Mat m(field_, count, cols_);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      if (field_.is_rational())
        m.q_[r * cols_ + c] = q_[(start + r) * cols_ + c];
      else
        m.fp_[r * cols_ + c] = fp_[(start + r) * cols_ + c];
    }
  return m;
}

Mat Mat::select_rows(std::span<const std::size_t> idx) const {
  Mat m(field_, idx.size(), cols_);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      if (field_.is_rational())
        m.q_[r * cols_ + c] = q_[idx[r] * cols_ + c];
      else
        m.fp_[r * cols_ + c] = fp_[idx[r] * cols_ + c];
    }
  return m;
}

Mat Mat::select_cols(std::span<const std::size_t> idx) const {
  Mat m(field_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) {
      if (field_.is_rational())
        m.q_[r * idx.size() + c] = q_[r * cols_ + idx[c]];
      else
        m.fp_[r * idx.size() + c] = fp_[r * cols_ + idx[c]];
    }
  return m;
}

Mat Mat::scaled(const Scalar& s) const {
  Mat m = *this;
  if (field_.is_rational()) {
    for (auto& x : m.q_) x *= s.rational();
  } else {
    std::uint64_t p = field_.characteristic();
    for (auto& x : m.fp_) x = static_cast<std::uint32_t>(x * std::uint64_t{s.residue()} % p);
  }
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  require_same_field(a.field_, b.field_);
  if (a.cols_ != b.rows_)
    throw InputError(fmt::format("cannot multiply {}x{} by {}x{}", a.rows_, a.cols_, b.rows_, b.cols_));
  Mat m(a.field_, a.rows_, b.cols_);
  if (a.field_.is_rational()) {
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const mpq_class& x = a.q_[i * a.cols_ + k];
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const mpq_class& y = b.q_[k * b.cols_ + j];
          if (y != 0) m.q_[i * b.cols_ + j] += x * y;
        }
      }
    return m;
  }
  std::uint64_t p = a.field_.characteristic();
  std::vector<std::uint64_t> acc(b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      std::uint64_t x = a.fp_[i * a.cols_ + k];
      if (x == 0) continue;
      const std::uint32_t* brow = &b.fp_[k * b.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + x * brow[j]) % p;
    }
    for (std::size_t j = 0; j < b.cols_; ++j) m.fp_[i * b.cols_ + j] = static_cast<std::uint32_t>(acc[j]);
  }
  return m;
}

Mat operator+(const Mat& a, const Mat& b) {
  require_same_field(a.field_, b.field_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("shape mismatch in matrix sum");
  Mat m = a;
  if (a.field_.is_rational()) {
    for (std::size_t k = 0; k < m.q_.size(); ++k) m.q_[k] += b.q_[k];
  } else {
    std::uint32_t p = a.field_.characteristic();
    for (std::size_t k = 0; k < m.fp_.size(); ++k)
      m.fp_[k] = static_cast<std::uint32_t>((std::uint64_t{m.fp_[k]} + b.fp_[k]) % p);
  }
  return m;
}

Mat operator-(const Mat& a, const Mat& b) {
  return a + b.scaled(-Scalar::one(b.field()));
}

bool operator==(const Mat& a, const Mat& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.fp_ == b.fp_ &&
         a.q_ == b.q_;
}

std::string Mat::to_string() const {
  std::string s = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    s += r ? ", [" : "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) s += ", ";
      s += at(r, c).to_string();
    }
    s += "]";
  }
  return s + "]";
}

Mat kron(const Mat& a, const Mat& b) {
  require_same_field(a.field(), b.field());
  Mat m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.is_zero_at(i, j)) continue;
      Scalar x = a.at(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b.is_zero_at(k, l)) m.set(i * b.rows() + k, j * b.cols() + l, x * b.at(k, l));
    }
  return m;
}

Mat vstack(const Mat& top, const Mat& bottom) {
  require_same_field(top.field(), bottom.field());
  if (top.cols() != bottom.cols() && top.rows() && bottom.rows())
    throw InputError("column mismatch in vstack");
  std::size_t cols = top.rows() ? top.cols() : bottom.cols();
  Mat m(top.field(), top.rows() + bottom.rows(), cols);
  for (std::size_t r = 0; r < top.rows(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, top.at(r, c));
  for (std::size_t r = 0; r < bottom.rows(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(top.rows() + r, c, bottom.at(r, c));
  return m;
}

Mat hstack(const Mat& left, const Mat& right) {
  return vstack(left.transpose(), right.transpose()).transpose();
}

Mat block_diag(const Mat& a, const Mat& b) {
  require_same_field(a.field(), b.field());
  Mat m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m.set(r, c, a.at(r, c));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m.set(a.rows() + r, a.cols() + c, b.at(r, c));
  return m;
}

SparseMat SparseMat::from_dense(const Mat& m) {
  SparseMat s(m.field(), m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m.is_zero_at(r, c)) s.add(r, c, m.at(r, c));
  return s;
}

void SparseMat::add(std::size_t r, std::size_t c, const Scalar& v) {
  if (v.field() != field_) throw InputError("entry from a different field");
  if (v.is_zero()) return;
  entries_.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)});
  if (field_.is_rational())
    q_.push_back(v.rational());
  else
    fp_.push_back(v.residue());
}

void SparseMat::add_residue(std::size_t r, std::size_t c, std::uint32_t v) {
  if (v == 0) return;
  entries_.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)});
  fp_.push_back(v);
}

Scalar SparseMat::value(std::size_t k) const {
  if (field_.is_rational()) return Scalar(field_, q_[k]);
  return Scalar::from_residue(field_, fp_[k]);
}

void SparseMat::sort_and_merge(bool by_rows) {
  std::vector<std::size_t> order(entries_.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t k) {
    const Entry& e = entries_[k];
    return by_rows ? std::pair{e.row, e.col} : std::pair{e.col, e.row};
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
  std::vector<Entry> ne;
  std::vector<std::uint32_t> nf;
  std::vector<mpq_class> nq;
  bool rational = field_.is_rational();
  std::uint64_t p = field_.characteristic();
  for (std::size_t k : order) {
    const Entry& e = entries_[k];
    if (!ne.empty() && ne.back().row == e.row && ne.back().col == e.col) {
      if (rational)
        nq.back() += q_[k];
      else
        nf.back() = static_cast<std::uint32_t>((std::uint64_t{nf.back()} + fp_[k]) % p);
      continue;
    }
    if (!ne.empty() && (rational ? nq.back() == 0 : nf.back() == 0)) {
      ne.pop_back();
      if (rational)
        nq.pop_back();
      else
        nf.pop_back();
    }
    ne.push_back(e);
    if (rational)
      nq.push_back(q_[k]);
    else
      nf.push_back(fp_[k]);
  }
  if (!ne.empty() && (rational ? nq.back() == 0 : nf.back() == 0)) {
    ne.pop_back();
    if (rational)
      nq.pop_back();
    else
      nf.pop_back();
  }
  entries_ = std::move(ne);
  fp_ = std::move(nf);
  q_ = std::move(nq);
}

void SparseMat::compress() { sort_and_merge(false); }
void SparseMat::compress_by_rows() { sort_and_merge(true); }

bool SparseMat::is_zero() const {
  SparseMat c = *this;
  c.compress();
  return c.nnz() == 0;
}

SparseMat SparseMat::transpose() const {
  SparseMat t(field_, cols_, rows_);
  t.entries_.reserve(entries_.size());
  for (const Entry& e : entries_) t.entries_.push_back({e.col, e.row});
  t.fp_ = fp_;
  t.q_ = q_;
  return t;
}

Mat SparseMat::to_dense() const {
  Mat m(field_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k)
    m.add_to(entries_[k].row, entries_[k].col, value(k));
  return m;
}

SparseMat operator*(const SparseMat& a, const SparseMat& b) {
  require_same_field(a.field_, b.field_);
  if (a.cols_ != b.rows_) throw InputError("shape mismatch in sparse product");
  SparseMat bc = b;
  bc.compress();
  // Entries of a grouped by column k, so each b entry (k, j) meets column k of a.
  SparseMat ak = a;
  ak.compress();
  std::vector<std::size_t> col_start(ak.cols_ + 1, 0);
  for (const auto& e : ak.entries_) ++col_start[e.col + 1];
  for (std::size_t c = 0; c < ak.cols_; ++c) col_start[c + 1] += col_start[c];
  SparseMat out(a.field_, a.rows_, b.cols_);
  for (std::size_t kb = 0; kb < bc.entries_.size(); ++kb) {
    std::uint32_t k = bc.entries_[kb].row, j = bc.entries_[kb].col;
    for (std::size_t ka = col_start[k]; ka < col_start[k + 1]; ++ka) {
      std::uint32_t i = ak.entries_[ka].row;
      if (a.field_.is_rational()) {
        out.entries_.push_back({i, j});
        out.q_.push_back(ak.q_[ka] * bc.q_[kb]);
      } else {
        std::uint64_t v = std::uint64_t{ak.fp_[ka]} * bc.fp_[kb] % a.field_.characteristic();
        out.add_residue(i, j, static_cast<std::uint32_t>(v));
      }
    }
  }
  out.compress();
  return out;
}

SparseMat kron(const SparseMat& a, const SparseMat& b) {
  require_same_field(a.field(), b.field());
  SparseMat m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t x = 0; x < a.nnz(); ++x)
    for (std::size_t y = 0; y < b.nnz(); ++y) {
      const auto& ea = a.entries()[x];
      const auto& eb = b.entries()[y];
      m.add(ea.row * b.rows() + eb.row, ea.col * b.cols() + eb.col, a.value(x) * b.value(y));
    }
  return m;
}

SparseMat sparse_identity(Field f, std::size_t n) {
  SparseMat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.add(i, i, Scalar::one(f));
  return m;
}

bool same_entries(SparseMat a, SparseMat b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.field() != b.field()) return false;
  a.compress();
  b.compress();
  if (a.nnz() != b.nnz()) return false;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    if (a.entries()[k].row != b.entries()[k].row || a.entries()[k].col != b.entries()[k].col) return false;
    if (a.value(k) != b.value(k)) return false;
  }
  return true;
}

}  // namespace koszul
