#pragma once

#include "koszul/matrix.hpp"
#include "koszul/subspace.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

/// Which reading of a pair {V,R}: the quotient algebra T(V)/(R) or the
/// subcoalgebra of the tensor coalgebra cut out by R.
enum class Side { Algebra, Coalgebra };
const char* to_string(Side s);

/// Generators V (by label) and relations R ⊆ V⊗V, with e_i⊗e_j at index
/// i*dim(V) + j.
struct QuadPresentation {
  Field field = Field::rationals();
  std::vector<std::string> v_labels;
  Subspace r;
  Side side = Side::Algebra;

  std::size_t dim() const { return v_labels.size(); }
  /// Throws InputError on duplicate labels or a wrong ambient.
  void validate() const;
  friend bool operator==(const QuadPresentation& a, const QuadPresentation& b) {
    return a.field == b.field && a.v_labels == b.v_labels && a.r == b.r && a.side == b.side;
  }
};

/// Module generators U and relations S ⊆ V⊗U, e_i⊗u_j at index i*dim(U) + j.
struct QuadModulePresentation {
  std::vector<std::string> u_labels;
  Subspace s;
  Side side = Side::Algebra;

  std::size_t dim() const { return u_labels.size(); }
  void validate(const QuadPresentation& over) const;
  friend bool operator==(const QuadModulePresentation& a, const QuadModulePresentation& b) {
    return a.u_labels == b.u_labels && a.s == b.s && a.side == b.side;
  }
};

QuadPresentation make_presentation(Field f, std::vector<std::string> labels, const Mat& relations,
                                   Side side = Side::Algebra);
/// Square-zero, tensor, exterior (squares and anticommutators) and
/// polynomial (commutators) presentations on the given labels.
QuadPresentation tensor_presentation(Field f, std::vector<std::string> labels);
QuadPresentation square_zero_presentation(Field f, std::vector<std::string> labels);
QuadPresentation exterior_algebra(Field f, std::vector<std::string> labels);
QuadPresentation polynomial_algebra(Field f, std::vector<std::string> labels);
/// The trivial module k = {k, V⊗k}.
QuadModulePresentation trivial_module(const QuadPresentation& p);
/// The free module A⊗U, S = 0.
QuadModulePresentation free_module(const QuadPresentation& p, std::vector<std::string> labels);

inline constexpr std::size_t kDefaultAmbientBudget = 500000;

/// dim(V)^n * u, or BudgetError naming n.
std::size_t tensor_ambient(std::size_t d, int n, std::size_t u, std::size_t budget);

/// Σ_k V^{k-1}⊗R⊗V^{n-k-1} (⊗U), plus V^{n-1}⊗S when a module is given.
Subspace relation_space(const QuadPresentation& p, const QuadModulePresentation* mod, int n,
                        std::size_t budget = kDefaultAmbientBudget);
/// ∩_k V^{k-1}⊗R⊗V^{n-k-1} (⊗U), intersected with V^{n-1}⊗S for a module.
Subspace coalgebra_space(const QuadPresentation& p, const QuadModulePresentation* mod, int n,
                         std::size_t budget = kDefaultAmbientBudget);

struct Component {
  std::size_t dim = 0;
  /// Algebra side: the quotient coordinate map V^n(⊗U) -> component.
  /// Coalgebra side: the inclusion component -> V^n(⊗U).
  Mat realization;
};

Component component(const QuadPresentation& p, Side side, const QuadModulePresentation* mod, int n,
                    std::size_t budget = kDefaultAmbientBudget);

QuadPresentation dual_presentation(const QuadPresentation& p);
QuadModulePresentation dual_presentation(const QuadModulePresentation& m);

/// A graded algebra through degree max_degree: dims d_0..d_n and the
/// products A_i⊗A_j -> A_{i+j} (column index a*d_j + b) for i + j <= n.
struct GradedAlgebraTable {
  Field field = Field::rationals();
  std::vector<std::size_t> dims;
  std::vector<std::vector<Mat>> mult;
  std::vector<std::string> labels;  // optional names for the A_1 basis

  int max_degree() const { return static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int n) const {
    return n >= 0 && n <= max_degree() ? dims[static_cast<std::size_t>(n)] : 0;
  }
  const Mat& mul(int i, int j) const {
    return mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  /// Unit, shape and associativity checks; throws InputError.
  void validate() const;
  /// The same table cut at degree n <= max_degree.
  GradedAlgebraTable truncated(int n) const;
};

/// A graded module through degree max_degree. act[i][j] is the action of
/// A_i on M_j with target M_{i+j}; columns are a*m_j + m for a left module
/// and m*d_i + a for a right module.
struct GradedModuleTable {
  Field field = Field::rationals();
  std::vector<std::size_t> dims;
  std::vector<std::vector<Mat>> act;
  bool right = false;
  std::vector<std::string> labels;  // optional names for the M_0 basis

  int max_degree() const { return static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int n) const {
    return n >= 0 && n <= max_degree() ? dims[static_cast<std::size_t>(n)] : 0;
  }
  const Mat& action(int i, int j) const {
    return act[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  void validate(const GradedAlgebraTable& a) const;
  GradedModuleTable truncated(int n) const;
};

/// The augmentation module k over `a`, on the given side.
GradedModuleTable trivial_module_table(const GradedAlgebraTable& a, bool right = false);
/// `a` as a module over itself.
GradedModuleTable regular_module_table(const GradedAlgebraTable& a, bool right = false);
/// Opposite multiplication; a right module becomes a left module over it.
GradedAlgebraTable opposite(const GradedAlgebraTable& a);
GradedModuleTable opposite(const GradedModuleTable& m);
/// Grading shifted up by s (components M(s)_i = M_{i-s}), cut at max_degree.
GradedModuleTable shifted(const GradedModuleTable& m, int s, int max_degree);

struct PresentedTables {
  GradedAlgebraTable algebra;
  std::optional<GradedModuleTable> module;
};

PresentedTables table_from_presentation(const QuadPresentation& p, const QuadModulePresentation* mod,
                                        int n, std::size_t budget = kDefaultAmbientBudget);

enum class CompareKind { Iso, Mono, Fails };
const char* to_string(CompareKind k);

struct DegreeComparison {
  int degree = 0;
  bool injective = true;
  bool surjective = true;
  CompareKind kind() const {
    return injective ? (surjective ? CompareKind::Iso : CompareKind::Mono) : CompareKind::Fails;
  }
};

struct QuadraticPart {
  QuadPresentation algebra;
  std::optional<QuadModulePresentation> module;
  std::vector<DegreeComparison> algebra_comparison;  // degrees 0..n
  std::vector<DegreeComparison> module_comparison;
  bool algebra_iso() const;
  bool module_iso() const;
};

/// q A (and q_A M) with the per-degree comparison of r_A : qA -> A
/// (r_{A,M}) realized through iterated products.
QuadraticPart quadratic_part(const GradedAlgebraTable& a, const GradedModuleTable* m = nullptr,
                             std::size_t budget = kDefaultAmbientBudget);

/// The products A_1^{⊗n} -> A_n, and A_1^{⊗n}⊗M_0 -> M_n.
Mat iterated_product(const GradedAlgebraTable& a, int n);
Mat iterated_action(const GradedAlgebraTable& a, const GradedModuleTable& m, int n);

}  // namespace koszul
