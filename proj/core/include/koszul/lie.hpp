#pragma once

#include "koszul/homology.hpp"
#include "koszul/koszulity.hpp"
#include "koszul/quadratic.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace koszul {

/// Lie: brackets x⊗y - y⊗x, generators even. SuperLie: generators odd
/// (parity = degree mod 2), brackets x⊗y + y⊗x and squares x⊗x.
enum class LieFlavor { Lie, SuperLie };
const char* to_string(LieFlavor f);

/// A quadratic (super-)Lie algebra on degree-1 generators: the free one
/// modulo the ideal generated by `relations` ⊆ V⊗V.
struct LiePresentation {
  Field field = Field::rationals();
  std::vector<std::string> labels;
  LieFlavor flavor = LieFlavor::Lie;
  Subspace relations;

  std::size_t dim() const { return labels.size(); }
  /// Relations must lie in the admissible subspace; throws InputError.
  void validate() const;
};

/// Antisymmetric tensors (Lie) or symmetric tensors (SuperLie) in V⊗V.
Subspace admissible_relations(Field f, std::size_t d, LieFlavor flavor);

/// The free algebra (no relations) and the abelian one (all admissible
/// relations) on the given labels.
LiePresentation free_lie(Field f, std::vector<std::string> labels, LieFlavor flavor);
LiePresentation abelian_lie(Field f, std::vector<std::string> labels, LieFlavor flavor);

/// U(L) = T(V)/(R).
QuadPresentation enveloping_presentation(const LiePresentation& l);

/// Hilbert dims of U(L) in degrees 0..n from the dims of L (lie_dims[k-1]
/// = dim L_k), by the PBW product: even degrees contribute symmetric
/// powers, odd-parity degrees exterior powers.
std::vector<std::size_t> pbw_dims(const std::vector<std::size_t>& lie_dims, LieFlavor flavor, int n);

/// For the free and the abelian algebra, where dim L_k is known, the dims
/// of U(L) from its presentation against pbw_dims; nullopt otherwise.
std::optional<bool> pbw_consistent(const LiePresentation& l, int window,
                                   std::size_t budget = kDefaultAmbientBudget);

/// Dims of the free (super-)Lie algebra on d degree-1 generators in degrees
/// 1..n (entry k-1 is degree k). Necklace counting with the Möbius function,
/// and an explicit Hall basis (with squares of odd Hall elements in the
/// super case). free_lie_dims runs both and throws InternalError when they
/// disagree.
std::vector<std::size_t> free_lie_dims_mobius(std::size_t d, LieFlavor flavor, int n);
std::vector<std::size_t> free_lie_dims_hall(std::size_t d, LieFlavor flavor, int n);
std::vector<std::size_t> free_lie_dims(std::size_t d, LieFlavor flavor, int n);

/// Both: the flip and the signed flip agree on every component (char 2, or
/// components too small to tell).
enum class CoalgebraSymmetry { Cocommutative, SkewCocommutative, Both, Neither };
const char* to_string(CoalgebraSymmetry s);

struct SymmetryReport {
  int window = 0;
  CoalgebraSymmetry verdict = CoalgebraSymmetry::Both;
  std::optional<int> flip_fails_at, signed_flip_fails_at;  // first degree
};

/// Reads ⟨V,R⟩ and tests Δ_{j,i} = τΔ_{i,j} on C_n for n <= window, with
/// τ the plain flip and the flip with sign (-1)^{ij}.
SymmetryReport cocommutativity_check(const QuadPresentation& p, int window,
                                     std::size_t budget = kDefaultAmbientBudget);

enum class TableSymmetry { Commutative, SkewCommutative, Both, Neither };
const char* to_string(TableSymmetry s);
/// ab = ba, resp. ab = (-1)^{|a||b|} ba, on every product of the table.
TableSymmetry table_symmetry(const GradedAlgebraTable& a);

struct LieFreenessReport {
  int window = 0;
  TableSymmetry symmetry = TableSymmetry::Both;
  BigradedTable tor;                 // H_{i,j}(A, B)
  bool band_vanishes = false;        // H_{i,j} = 0 whenever j - i is not 0 or 1
  std::optional<std::pair<int, int>> band_failure;
  bool koszul_module = false;        // B a Koszul A-module in the window
  bool surjective = false;           // f onto in every degree of the window
  std::vector<bool> dual_surjective; // f^? per degree 0..window
  std::optional<bool> pairing_agrees;  // f onto: koszul_module == all dual_surjective
};

/// For f : A -> B between Koszul tables that are both commutative or both
/// skew-commutative (InputError otherwise).
LieFreenessReport freeness_report(const MorphismPresentation& f, int window,
                                  std::size_t budget = kDefaultTermBudget);

}  // namespace koszul
