#pragma once

#include "koszul/echelon.hpp"
#include "koszul/matrix.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace koszul {

/// A subspace of k^n stored by its canonical reduced row-echelon basis, so two
/// subspaces are equal exactly when their stored bases are.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, std::size_t ambient) : basis_(f, 0, ambient) {}
  /// Row space of `m`.
  static Subspace span(const Mat& m);
  /// Wraps a matrix already known to be in RREF with rows sorted by pivot.
  static Subspace from_rref(Mat basis);
  static Subspace full(Field f, std::size_t n) { return from_rref(Mat::identity(f, n)); }
  static Subspace from_echelon(const Echelon& e) { return from_rref(e.basis()); }

  Field field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  SparseVec row(std::size_t k) const { return sparse_row(basis_, k); }

  bool contains(const SparseVec& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of `v` in the stored basis; throws InternalError when `v`
  /// is not in the subspace.
  std::vector<Scalar> coordinates(const SparseVec& v) const;
  /// A fresh elimination engine preloaded with this basis.
  Echelon echelon() const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
  /// Total order on canonical bases, for deterministic containers.
  friend bool operator<(const Subspace& a, const Subspace& b);

 private:
  explicit Subspace(Mat basis);
  Mat basis_;
  std::vector<std::uint32_t> pivots_;
};

Subspace echelonize(const Mat& m);
Subspace sum(const Subspace& x, const Subspace& y);
Subspace intersect(const Subspace& x, const Subspace& y);
/// Coordinates on the complement spanned by the non-pivot standard vectors:
/// an (n - dim x) x n matrix whose kernel is exactly x.
Mat quotient_map(const Subspace& x);
/// The n x n idempotent with kernel x and image the standard complement.
Mat quotient_projection(const Subspace& x);
/// k^left ⊗ s ⊗ k^right with the row-major tensor index convention.
Subspace padded(const Subspace& s, std::size_t left, std::size_t right);
/// Image of a subspace under the linear map `m` (acting on column vectors).
Subspace map_subspace(const Mat& m, const Subspace& s);
/// Preimage of `s` under `m`.
Subspace preimage(const Mat& m, const Subspace& s);
/// Kernel of `m` as a subspace of its domain.
Subspace kernel_subspace(const Mat& m);

enum class CombineOp { Sum, Intersect, QuotientMap };
/// Sum and Intersect return a Subspace. QuotientMap returns the coordinate
/// map of `quotient_map(x)`; `y` is only checked for a matching ambient.
std::variant<Subspace, Mat> combine(const Subspace& x, const Subspace& y, CombineOp op);

enum class LatticeStatus { Distributive, NotDistributive, Inconclusive };
const char* to_string(LatticeStatus s);

struct LatticeVerdict {
  LatticeStatus status = LatticeStatus::Distributive;
  std::optional<std::array<Subspace, 3>> witness;
  std::size_t closure_size = 0;
  std::size_t budget = 0;
  /// The closed lattice when the status is Distributive.
  std::vector<Subspace> elements;
};

inline constexpr std::size_t kDefaultLatticeBudget = 10000;

/// Closes `xs` under sum and intersection and tests
/// (X + Y) ∩ Z = X ∩ Z + Y ∩ Z on the generated lattice. Triples are tested
/// while the closure grows, so failures usually surface long before the
/// lattice is complete.
LatticeVerdict distributivity_check(const std::vector<Subspace>& xs,
                                    std::size_t budget = kDefaultLatticeBudget);

}  // namespace koszul
