#include "koszul/echelon.hpp"

#include "koszul/error.hpp"

#include <algorithm>
#include <numeric>
#include <type_traits>

namespace koszul {

SparseVec sparse_row(const Mat& m, std::size_t r) {
  SparseVec v;
  bool rational = m.field().is_rational();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t k = r * m.cols() + c;
    if (rational) {
      if (m.rationals()[k] != 0) {
        v.idx.push_back(static_cast<std::uint32_t>(c));
        v.q.push_back(m.rationals()[k]);
      }
    } else if (m.residues()[k] != 0) {
      v.push_residue(static_cast<std::uint32_t>(c), m.residues()[k]);
    }
  }
  return v;
}

Mat dense_row(Field f, const SparseVec& v, std::size_t width) {
  Mat m(f, 1, width);
  for (std::size_t k = 0; k < v.size(); ++k) m.add_to(0, v.idx[k], v.value(f, k));
  return m;
}

namespace {

struct F2Ops {
  using Value = std::uint32_t;
  using Row = std::vector<std::uint64_t>;
  std::size_t width;

  Row zero() const { return Row((width + 63) / 64, 0); }
  Value get(const Row& r, std::size_t c) const { return (r[c >> 6] >> (c & 63)) & 1u; }
  static bool nz(Value v) { return v != 0; }
  void scatter(Row& r, std::uint32_t c, const SparseVec& v, std::size_t k) const {
    if (v.res[k] & 1u) r[c >> 6] ^= std::uint64_t{1} << (c & 63);
  }
  void axpy(Row& w, Value, const Row& r, std::size_t from) const {
    for (std::size_t i = from >> 6; i < w.size(); ++i) w[i] ^= r[i];
  }
  Value inv(Value v) const { return v; }
  void scale(Row&, Value, std::size_t) const {}
  Value neg(Value v) const { return v; }
  std::size_t first_nonzero(const Row& r, std::size_t limit) const {
    for (std::size_t i = 0; i * 64 < limit; ++i) {
      if (!r[i]) continue;
      std::size_t c = i * 64 + static_cast<std::size_t>(__builtin_ctzll(r[i]));
      return c < limit ? c : Echelon::npos;
    }
    return Echelon::npos;
  }
  void emit(SparseVec& out, std::size_t c, Value v) const {
    if (v) out.push_residue(static_cast<std::uint32_t>(c), 1);
  }
};

template <std::uint32_t P>
struct ConstMod {
  static constexpr bool small = true;
  constexpr std::uint32_t p() const { return P; }
};

struct RuntimeMod {
  static constexpr bool small = false;
  std::uint32_t value;
  std::uint32_t p() const { return value; }
};

template <class M>
struct FpOps {
  using Value = std::uint32_t;
  using Row = std::vector<std::uint32_t>;
  using Wide = std::conditional_t<M::small, std::uint32_t, std::uint64_t>;
  std::size_t width;
  M mod;

  Row zero() const { return Row(width, 0); }
  Value get(const Row& r, std::size_t c) const { return r[c]; }
  static bool nz(Value v) { return v != 0; }
  void scatter(Row& r, std::uint32_t c, const SparseVec& v, std::size_t k) const {
    r[c] = static_cast<Value>((Wide{r[c]} + v.res[k]) % mod.p());
  }
  void axpy(Row& w, Value f, const Row& r, std::size_t from) const {
    const Wide g = mod.p() - f;
    const std::uint32_t p = mod.p();
    std::uint32_t* wd = w.data();
    const std::uint32_t* rd = r.data();
    const std::size_t n = w.size();
    for (std::size_t i = from; i < n; ++i)
      wd[i] = static_cast<std::uint32_t>((Wide{wd[i]} + g * rd[i]) % p);
  }
  Value inv(Value v) const { return inverse_mod(v, mod.p()); }
  void scale(Row& w, Value f, std::size_t from) const {
    if (f == 1) return;
    for (std::size_t i = from; i < w.size(); ++i)
      w[i] = static_cast<std::uint32_t>(std::uint64_t{w[i]} * f % mod.p());
  }
  Value neg(Value v) const { return v ? mod.p() - v : 0; }
  std::size_t first_nonzero(const Row& r, std::size_t limit) const {
    for (std::size_t i = 0; i < limit; ++i)
      if (r[i]) return i;
    return Echelon::npos;
  }
  void emit(SparseVec& out, std::size_t c, Value v) const {
    if (v) out.push_residue(static_cast<std::uint32_t>(c), v);
  }
};

struct QOps {
  using Value = mpq_class;
  using Row = std::vector<mpq_class>;
  std::size_t width;

  Row zero() const { return Row(width, mpq_class(0)); }
  const Value& get(const Row& r, std::size_t c) const { return r[c]; }
  static bool nz(const Value& v) { return v != 0; }
  void scatter(Row& r, std::uint32_t c, const SparseVec& v, std::size_t k) const { r[c] += v.q[k]; }
  void axpy(Row& w, Value f, const Row& r, std::size_t from) const {
    for (std::size_t i = from; i < w.size(); ++i)
      if (r[i] != 0) w[i] -= f * r[i];
  }
  Value inv(const Value& v) const { return 1 / v; }
  void scale(Row& w, const Value& f, std::size_t from) const {
    if (f == 1) return;
    for (std::size_t i = from; i < w.size(); ++i)
      if (w[i] != 0) w[i] *= f;
  }
  Value neg(const Value& v) const { return -v; }
  std::size_t first_nonzero(const Row& r, std::size_t limit) const {
    for (std::size_t i = 0; i < limit; ++i)
      if (r[i] != 0) return i;
    return Echelon::npos;
  }
  void emit(SparseVec& out, std::size_t c, const Value& v) const {
    if (v != 0) {
      out.idx.push_back(static_cast<std::uint32_t>(c));
      out.q.push_back(v);
    }
  }
};

}  // namespace

struct Echelon::Impl {
  virtual ~Impl() = default;
  virtual std::unique_ptr<Impl> clone() const = 0;
  virtual std::size_t width() const = 0;
  virtual std::size_t rank() const = 0;
  virtual std::size_t insert(const SparseVec& v) = 0;
  virtual SparseVec reduce(const SparseVec& v) const = 0;
  virtual std::vector<std::uint32_t> pivots() const = 0;
  virtual SparseVec row(std::size_t k) const = 0;  // k-th row in pivot order
  virtual Mat null_space(Field f) const = 0;
};

namespace {

template <class Ops>
class Engine final : public Echelon::Impl {
 public:
  using Row = typename Ops::Row;

  Engine(Ops ops, std::size_t width, std::size_t limit)
      : ops_(std::move(ops)), width_(width), limit_(std::min(width, limit)),
        col_to_row_(width, -1) {}

  std::unique_ptr<Echelon::Impl> clone() const override { return std::make_unique<Engine>(*this); }
  std::size_t width() const override { return width_; }
  std::size_t rank() const override { return rows_.size(); }

  std::size_t insert(const SparseVec& v) override {
    Row w = reduced(v);
    std::size_t c = ops_.first_nonzero(w, limit_);
    if (c == Echelon::npos) return c;
    auto inv = ops_.inv(ops_.get(w, c));
    ops_.scale(w, inv, c);
    for (Row& r : rows_) {
      auto f = ops_.get(r, c);
      if (Ops::nz(f)) ops_.axpy(r, f, w, c);
    }
    col_to_row_[c] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(w));
    piv_.push_back(static_cast<std::uint32_t>(c));
    order_dirty_ = true;
    return c;
  }

  SparseVec reduce(const SparseVec& v) const override {
    Row w = reduced(v);
    SparseVec out;
    for (std::size_t c = 0; c < width_; ++c) ops_.emit(out, c, ops_.get(w, c));
    return out;
  }

  std::vector<std::uint32_t> pivots() const override {
    std::vector<std::uint32_t> p = piv_;
    std::sort(p.begin(), p.end());
    return p;
  }

  SparseVec row(std::size_t k) const override {
    const Row& r = rows_[order()[k]];
    SparseVec out;
    for (std::size_t c = 0; c < width_; ++c) ops_.emit(out, c, ops_.get(r, c));
    return out;
  }

  Mat null_space(Field f) const override {
    std::vector<std::uint32_t> free;
    for (std::size_t c = 0; c < limit_; ++c)
      if (col_to_row_[c] < 0) free.push_back(static_cast<std::uint32_t>(c));
    Mat out(f, free.size(), limit_);
    for (std::size_t k = 0; k < free.size(); ++k) {
      out.set(k, free[k], Scalar::one(f));
      for (std::size_t j = 0; j < rows_.size(); ++j) {
        auto x = ops_.get(rows_[j], free[k]);
        if (!Ops::nz(x)) continue;
        SparseVec tmp;
        ops_.emit(tmp, piv_[j], ops_.neg(x));
        out.set(k, piv_[j], tmp.value(f, 0));
      }
    }
    return out;
  }

 private:
  Row reduced(const SparseVec& v) const {
    Row w = ops_.zero();
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v.idx[k] >= width_) throw InternalError("vector index beyond echelon width");
      ops_.scatter(w, v.idx[k], v, k);
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::uint32_t c = v.idx[k];
      if (c >= limit_) continue;
      std::int32_t j = col_to_row_[c];
      if (j < 0) continue;
      auto f = ops_.get(w, c);
      if (Ops::nz(f)) ops_.axpy(w, f, rows_[static_cast<std::size_t>(j)], c);
    }
    return w;
  }

  const std::vector<std::size_t>& order() const {
    if (order_dirty_) {
      order_.resize(rows_.size());
      std::iota(order_.begin(), order_.end(), 0);
      std::sort(order_.begin(), order_.end(),
                [&](std::size_t a, std::size_t b) { return piv_[a] < piv_[b]; });
      order_dirty_ = false;
    }
    return order_;
  }

  Ops ops_;
  std::size_t width_, limit_;
  std::vector<Row> rows_;
  std::vector<std::uint32_t> piv_;
  std::vector<std::int32_t> col_to_row_;
  mutable std::vector<std::size_t> order_;
  mutable bool order_dirty_ = false;
};

std::unique_ptr<Echelon::Impl> make_impl(Field f, std::size_t width, std::size_t limit) {
  if (f.is_rational()) return std::make_unique<Engine<QOps>>(QOps{width}, width, limit);
  switch (f.characteristic()) {
    case 2:
      return std::make_unique<Engine<F2Ops>>(F2Ops{width}, width, limit);
    case 3:
      return std::make_unique<Engine<FpOps<ConstMod<3>>>>(FpOps<ConstMod<3>>{width, {}}, width, limit);
    case 5:
      return std::make_unique<Engine<FpOps<ConstMod<5>>>>(FpOps<ConstMod<5>>{width, {}}, width, limit);
    case 7:
      return std::make_unique<Engine<FpOps<ConstMod<7>>>>(FpOps<ConstMod<7>>{width, {}}, width, limit);
    default:
      return std::make_unique<Engine<FpOps<RuntimeMod>>>(
          FpOps<RuntimeMod>{width, RuntimeMod{f.characteristic()}}, width, limit);
  }
}

}  // namespace

Echelon::Echelon(Field f, std::size_t width, std::size_t pivot_limit)
    : field_(f), impl_(make_impl(f, width, pivot_limit)) {}
Echelon::~Echelon() = default;
Echelon::Echelon(Echelon&&) noexcept = default;
Echelon& Echelon::operator=(Echelon&&) noexcept = default;
Echelon::Echelon(const Echelon& other) : field_(other.field_), impl_(other.impl_->clone()) {}
Echelon& Echelon::operator=(const Echelon& other) {
  if (this != &other) {
    field_ = other.field_;
    impl_ = other.impl_->clone();
  }
  return *this;
}

std::size_t Echelon::width() const { return impl_->width(); }
std::size_t Echelon::rank() const { return impl_->rank(); }
std::size_t Echelon::insert(const SparseVec& v) { return impl_->insert(v); }
SparseVec Echelon::reduce(const SparseVec& v) const { return impl_->reduce(v); }
bool Echelon::contains(const SparseVec& v) const { return impl_->reduce(v).empty(); }
std::vector<std::uint32_t> Echelon::pivots() const { return impl_->pivots(); }
SparseVec Echelon::basis_row(std::size_t k) const { return impl_->row(k); }
Mat Echelon::null_space() const { return impl_->null_space(field_); }

Mat Echelon::basis() const {
  Mat m(field_, rank(), width());
  for (std::size_t k = 0; k < rank(); ++k) {
    SparseVec v = basis_row(k);
    for (std::size_t j = 0; j < v.size(); ++j) m.set(k, v.idx[j], v.value(field_, j));
  }
  return m;
}

Mat rref(const Mat& m) {
  Echelon e(m.field(), m.cols());
  e.insert_rows(m);
  return e.basis();
}

std::size_t rank(const Mat& m) {
  if (m.cols() <= m.rows()) {
    Echelon e(m.field(), m.cols());
    e.insert_rows(m);
    return e.rank();
  }
  return rank(m.transpose());
}

namespace {
// Groups entries of a compressed matrix into vectors along `by_rows`.
template <class F>
void for_each_line(SparseMat m, bool by_rows, F&& f) {
  if (by_rows)
    m.compress_by_rows();
  else
    m.compress();
  const auto& es = m.entries();
  bool rational = m.field().is_rational();
  std::size_t k = 0;
  while (k < es.size()) {
    std::uint32_t key = by_rows ? es[k].row : es[k].col;
    SparseVec v;
    while (k < es.size() && (by_rows ? es[k].row : es[k].col) == key) {
      std::uint32_t other = by_rows ? es[k].col : es[k].row;
      v.idx.push_back(other);
      if (rational)
        v.q.push_back(m.rationals()[k]);
      else
        v.res.push_back(m.residues()[k]);
      ++k;
    }
    f(v);
  }
}
}  // namespace

std::size_t rank(const SparseMat& m) {
  bool by_rows = m.cols() <= m.rows();
  Echelon e(m.field(), by_rows ? m.cols() : m.rows());
  for_each_line(m, by_rows, [&](const SparseVec& v) {
    if (e.rank() < e.width()) e.insert(v);
  });
  return e.rank();
}

Mat kernel(const Mat& m) {
  Echelon e(m.field(), m.cols());
  e.insert_rows(m);
  return e.null_space();
}

Mat kernel(const SparseMat& m) {
  Echelon e(m.field(), m.cols());
  for_each_line(m, true, [&](const SparseVec& v) {
    if (e.rank() < e.width()) e.insert(v);
  });
  return e.null_space();
}

Mat image(const Mat& m) { return rref(m.transpose()); }

Mat image(const SparseMat& m) {
  Echelon e(m.field(), m.rows());
  for_each_line(m, false, [&](const SparseVec& v) {
    if (e.rank() < e.width()) e.insert(v);
  });
  return e.basis();
}

Mat inverse(const Mat& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InputError("inverse of a non-square matrix");
  Echelon e(m.field(), 2 * n, n);
  Mat aug = hstack(m, Mat::identity(m.field(), n));
  e.insert_rows(aug);
  if (e.rank() != n || e.pivots().size() != n || (n && e.pivots().back() >= n))
    throw InputError("matrix is singular");
  Mat b = e.basis();
  std::vector<std::size_t> right(n);
  for (std::size_t k = 0; k < n; ++k) right[k] = n + k;
  return b.select_cols(right);
}

}  // namespace koszul
