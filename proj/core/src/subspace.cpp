#include "koszul/subspace.hpp"

#include "koszul/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <unordered_map>

namespace koszul {

namespace {
std::vector<std::uint32_t> find_pivots(const Mat& m) {
  std::vector<std::uint32_t> p;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.is_zero_at(r, c)) {
        p.push_back(static_cast<std::uint32_t>(c));
        break;
      }
  return p;
}

void require_compatible(const Subspace& x, const Subspace& y) {
  if (x.field() != y.field()) throw InputError("subspaces over different fields");
  if (x.ambient_dim() != y.ambient_dim())
    throw InputError(fmt::format("ambient mismatch: {} vs {}", x.ambient_dim(), y.ambient_dim()));
}
}  // namespace

Subspace::Subspace(Mat basis) : basis_(std::move(basis)), pivots_(find_pivots(basis_)) {}

Subspace Subspace::span(const Mat& m) { return Subspace(rref(m)); }
Subspace Subspace::from_rref(Mat basis) { return Subspace(std::move(basis)); }

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.field() != b.field()) return a.field().characteristic() < b.field().characteristic();
  if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim();
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
  if (a.field().is_rational()) {
    auto x = a.basis_.rationals(), y = b.basis_.rationals();
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k] != y[k]) return x[k] < y[k];
    return false;
  }
  auto x = a.basis_.residues(), y = b.basis_.residues();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

Echelon Subspace::echelon() const {
  Echelon e(field(), ambient_dim());
  e.insert_rows(basis_);
  return e;
}

bool Subspace::contains(const SparseVec& v) const {
  // A vector lies in the span iff subtracting its pivot-coordinate
  // combination leaves zero.
  std::vector<Scalar> c;
  try {
    c = coordinates(v);
  } catch (const InternalError&) {
    return false;
  }
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < other.dim(); ++k)
    if (!contains(other.row(k))) return false;
  return true;
}

std::vector<Scalar> Subspace::coordinates(const SparseVec& v) const {
  Field f = field();
  Mat w = dense_row(f, v, ambient_dim());
  std::vector<Scalar> coords;
  coords.reserve(dim());
  for (std::size_t r = 0; r < dim(); ++r) coords.push_back(w.at(0, pivots_[r]));
  for (std::size_t r = 0; r < dim(); ++r) {
    if (coords[r].is_zero()) continue;
    for (std::size_t c = pivots_[r]; c < ambient_dim(); ++c)
      if (!basis_.is_zero_at(r, c)) w.add_to(0, c, -(coords[r] * basis_.at(r, c)));
  }
  if (!w.is_zero()) throw InternalError("vector outside the subspace");
  return coords;
}

Subspace echelonize(const Mat& m) { return Subspace::span(m); }

Subspace sum(const Subspace& x, const Subspace& y) {
  require_compatible(x, y);
  Echelon e = x.echelon();
  for (std::size_t k = 0; k < y.dim(); ++k) e.insert(y.row(k));
  return Subspace::from_echelon(e);
}

Subspace intersect(const Subspace& x, const Subspace& y) {
  require_compatible(x, y);
  const std::size_t n = x.ambient_dim();
  if (x.dim() == 0 || y.dim() == 0) return Subspace(x.field(), n);
  // Zassenhaus: rows [x | x] and [y | 0]; RREF rows with a pivot in the right
  // half span the intersection, and are already reduced there.
  auto n32 = static_cast<std::uint32_t>(n);
  Echelon e(x.field(), 2 * n);
  for (std::size_t k = 0; k < x.dim(); ++k) {
    SparseVec v = x.row(k);
    SparseVec w = v;
    for (std::size_t j = 0; j < v.size(); ++j) {
      w.idx.push_back(v.idx[j] + n32);
      if (x.field().is_rational())
        w.q.push_back(v.q[j]);
      else
        w.res.push_back(v.res[j]);
    }
    e.insert(w);
  }
  for (std::size_t k = 0; k < y.dim(); ++k) e.insert(y.row(k));
  Mat b = e.basis();
  std::vector<std::uint32_t> piv = e.pivots();
  std::size_t first = static_cast<std::size_t>(
      std::lower_bound(piv.begin(), piv.end(), n32) - piv.begin());
  Mat out(x.field(), piv.size() - first, n);
  for (std::size_t r = first; r < piv.size(); ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!b.is_zero_at(r, n + c)) out.set(r - first, c, b.at(r, n + c));
  return Subspace::from_rref(std::move(out));
}

Mat quotient_map(const Subspace& x) {
  Field f = x.field();
  const std::size_t n = x.ambient_dim();
  std::vector<std::int64_t> free_pos(n, -1);
  std::vector<bool> is_pivot(n, false);
  for (auto p : x.pivots()) is_pivot[p] = true;
  std::size_t k = 0;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_pos[c] = static_cast<std::int64_t>(k++);
  Mat q(f, k, n);
  for (std::size_t c = 0; c < n; ++c)
    if (free_pos[c] >= 0) q.set(static_cast<std::size_t>(free_pos[c]), c, Scalar::one(f));
  // e_{p_r} = b_r - (free part of b_r), so it maps to minus that free part.
  for (std::size_t r = 0; r < x.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (free_pos[c] >= 0 && !x.basis().is_zero_at(r, c))
        q.set(static_cast<std::size_t>(free_pos[c]), x.pivots()[r], -x.basis().at(r, c));
  return q;
}

Mat quotient_projection(const Subspace& x) {
  Field f = x.field();
  const std::size_t n = x.ambient_dim();
  Mat q = quotient_map(x);
  Mat p(f, n, n);
  std::size_t k = 0;
  std::vector<bool> is_pivot(n, false);
  for (auto c : x.pivots()) is_pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!q.is_zero_at(k, j)) p.set(c, j, q.at(k, j));
    ++k;
  }
  return p;
}

Subspace padded(const Subspace& s, std::size_t left, std::size_t right) {
  Field f = s.field();
  const std::size_t m = s.ambient_dim();
  const std::size_t n = left * m * right;
  Mat b(f, left * s.dim() * right, n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < left; ++i)
    for (std::size_t r = 0; r < s.dim(); ++r) {
      SparseVec v = s.row(r);
      for (std::size_t j = 0; j < right; ++j, ++row)
        for (std::size_t t = 0; t < v.size(); ++t)
          b.set(row, (i * m + v.idx[t]) * right + j, v.value(f, t));
    }
  return Subspace::from_rref(std::move(b));
}

Subspace map_subspace(const Mat& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) throw InputError("map domain does not match the subspace");
  if (s.dim() == 0) return Subspace(m.field(), m.rows());
  return Subspace::span(s.basis() * m.transpose());
}

Subspace preimage(const Mat& m, const Subspace& s) {
  if (m.rows() != s.ambient_dim()) throw InputError("map target does not match the subspace");
  return kernel_subspace(quotient_map(s) * m);
}

Subspace kernel_subspace(const Mat& m) {
  if (m.rows() == 0) return Subspace::full(m.field(), m.cols());
  return Subspace::span(kernel(m));
}

std::variant<Subspace, Mat> combine(const Subspace& x, const Subspace& y, CombineOp op) {
  require_compatible(x, y);
  switch (op) {
    case CombineOp::Sum:
      return sum(x, y);
    case CombineOp::Intersect:
      return intersect(x, y);
    case CombineOp::QuotientMap:
      return quotient_map(x);
  }
  throw InternalError("unknown combine operation");
}

const char* to_string(LatticeStatus s) {
  switch (s) {
    case LatticeStatus::Distributive:
      return "Distributive";
    case LatticeStatus::NotDistributive:
      return "NotDistributive";
    case LatticeStatus::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

namespace {

class LatticeClosure {
 public:
  explicit LatticeClosure(std::size_t cap) : cap_(cap) {}

  std::uint32_t add(const Subspace& s) {
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    if (elems_.size() >= cap_) throw Overflow{};
    auto id = static_cast<std::uint32_t>(elems_.size());
    elems_.push_back(s);
    index_.emplace(s, id);
    return id;
  }

  std::uint32_t join(std::uint32_t a, std::uint32_t b) { return op(a, b, true); }
  std::uint32_t meet(std::uint32_t a, std::uint32_t b) { return op(a, b, false); }

  std::size_t size() const { return elems_.size(); }
  const Subspace& at(std::uint32_t i) const { return elems_[i]; }
  std::vector<Subspace>& elements() { return elems_; }
  void raise_cap(std::size_t cap) { cap_ = cap; }

  struct Overflow {};

 private:
  std::uint32_t op(std::uint32_t a, std::uint32_t b, bool is_join) {
    if (a > b) std::swap(a, b);
    if (a == b) return a;
    std::uint64_t key = (std::uint64_t{a} << 32) | b;
    auto& table = is_join ? joins_ : meets_;
    auto it = table.find(key);
    if (it != table.end()) return it->second;
    Subspace s = is_join ? sum(elems_[a], elems_[b]) : intersect(elems_[a], elems_[b]);
    std::uint32_t id = add(s);
    table.emplace(key, id);
    return id;
  }

  std::size_t cap_;
  std::vector<Subspace> elems_;
  std::map<Subspace, std::uint32_t> index_;
  std::unordered_map<std::uint64_t, std::uint32_t> joins_, meets_;
};

}  // namespace

LatticeVerdict distributivity_check(const std::vector<Subspace>& xs, std::size_t budget) {
  LatticeVerdict v;
  v.budget = budget;
  if (xs.empty()) return v;
  if (budget < xs.size()) throw InputError("lattice budget smaller than the input collection");
  for (const auto& x : xs) require_compatible(xs.front(), x);

  const std::size_t ambient = xs.front().ambient_dim();
  const bool overflow_decides = ambient < 63 && budget >= (std::size_t{1} << ambient);
  LatticeClosure lat(budget);
  bool overflowed = false;

  // Processes elements in creation order; once element `idx` is reached every
  // pair among 0..idx has its join and meet, and each triple with maximum
  // index idx is tested.
  std::size_t idx = 0;
  try {
    for (const auto& x : xs) lat.add(x);
    for (;;) {
      try {
        while (idx < lat.size()) {
          auto i = static_cast<std::uint32_t>(idx);
          for (std::uint32_t a = 0; a <= i; ++a) {
            lat.join(a, i);
            lat.meet(a, i);
          }
          for (std::uint32_t x = 0; x <= i; ++x)
            for (std::uint32_t y = x; y <= i; ++y)
              for (std::uint32_t z = 0; z <= i; ++z) {
                if (x != i && y != i && z != i) continue;
                std::uint32_t lhs = lat.meet(lat.join(x, y), z);
                std::uint32_t rhs = lat.join(lat.meet(x, z), lat.meet(y, z));
                if (lhs != rhs) {
                  v.status = LatticeStatus::NotDistributive;
                  v.witness = std::array<Subspace, 3>{lat.at(x), lat.at(y), lat.at(z)};
                  v.closure_size = std::min(lat.size(), budget);
                  return v;
                }
              }
          ++idx;
        }
        break;
      } catch (const LatticeClosure::Overflow&) {
        if (!overflow_decides || overflowed) throw;
        // A distributive lattice in k^n has at most 2^n members, so the
        // closure is known to fail; keep searching for an explicit witness.
        overflowed = true;
        lat.raise_cap(budget * 16);
      }
    }
  } catch (const LatticeClosure::Overflow&) {
    v.closure_size = budget;
    if (overflowed)
      throw BudgetError("lattice closure overflowed without producing a witness triple");
    v.status = LatticeStatus::Inconclusive;
    return v;
  }
  if (overflowed) throw BudgetError("lattice closure overflowed without producing a witness triple");
  v.status = LatticeStatus::Distributive;
  v.closure_size = lat.size();
  v.elements = std::move(lat.elements());
  return v;
}

}  // namespace koszul
