#pragma once

#include "koszul/groups.hpp"
#include "koszul/matrix.hpp"
#include "koszul/quadratic.hpp"
#include "koszul/subspace.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace koszul {

/// A finite-dimensional coaugmented coalgebra. delta has dim^2 rows
/// (index a*dim + b for e_a⊗e_b), eps is 1 x dim, chi is dim x 1.
struct FDCoalgebra {
  Field field = Field::rationals();
  std::size_t dim = 0;
  Mat delta, eps, chi;

  /// Coassociativity, counit, ε∘χ = 1 and Δχ = χ⊗χ; throws InputError.
  void validate() const;
};

/// A comodule over an FDCoalgebra. Left: P -> C⊗P (row c*dim + p);
/// right: P -> P⊗C (row p*dimC + c).
struct FDComodule {
  Field field = Field::rationals();
  std::size_t dim = 0;
  Mat coact;
  bool right = false;

  void validate(const FDCoalgebra& c) const;
};

FDCoalgebra trivial_coalgebra(Field f);
/// The comodule k, with coaction 1 -> χ(1)⊗1.
FDComodule trivial_comodule(const FDCoalgebra& c, bool right = false);
/// C over itself.
FDComodule regular_comodule(const FDCoalgebra& c, bool right = false);

/// k(G): functions on G with Δδ_g = Σ_{hk=g} δ_h⊗δ_k, ε = evaluation at
/// the identity and χ the constant functions.
FDCoalgebra group_coalgebra(const GroupTable& g, Field f);

/// The subcoalgebra carried by `sub`, in the basis of sub's RREF rows.
/// Throws InputError when Δ(sub) ⊄ sub⊗sub or χ ∉ sub.
FDCoalgebra restrict_coalgebra(const FDCoalgebra& c, const Subspace& sub);

/// The coalgebra with basis changed by the invertible g (new = g * old).
FDCoalgebra change_basis(const FDCoalgebra& c, const Mat& g);

struct CoalgebraMorphism {
  FDCoalgebra source, target;
  Mat map;  // target.dim x source.dim
  /// Compatibility with Δ, ε and χ; throws InputError.
  void validate() const;
};

/// The source viewed as a left (or right) comodule over the target.
FDComodule comodule_along(const CoalgebraMorphism& g, bool right = false);

/// A graded coalgebra through degree max_degree: delta[i][j] maps C_{i+j}
/// to C_i⊗C_j (row a*d_j + b).
struct GradedCoalgebraTable {
  Field field = Field::rationals();
  std::vector<std::size_t> dims;
  std::vector<std::vector<Mat>> delta;
  std::vector<std::string> labels;

  int max_degree() const { return static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int n) const {
    return n >= 0 && n <= max_degree() ? dims[static_cast<std::size_t>(n)] : 0;
  }
  const Mat& comul(int i, int j) const {
    return delta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  void validate() const;
};

/// A graded comodule: coact[i][j] maps P_{i+j} to C_i⊗P_j (left, row
/// c*p_j + p) or P_j⊗C_i (right, row p*c_i + c).
struct GradedComoduleTable {
  Field field = Field::rationals();
  std::vector<std::size_t> dims;
  std::vector<std::vector<Mat>> coact;
  bool right = false;
  std::vector<std::string> labels;

  int max_degree() const { return static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int n) const {
    return n >= 0 && n <= max_degree() ? dims[static_cast<std::size_t>(n)] : 0;
  }
  const Mat& coaction(int i, int j) const {
    return coact[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  void validate(const GradedCoalgebraTable& c) const;
};

/// Graded duals: transposing every structure map.
GradedAlgebraTable dual_algebra(const GradedCoalgebraTable& c);
GradedCoalgebraTable dual_coalgebra(const GradedAlgebraTable& a);
GradedModuleTable dual_module(const GradedComoduleTable& p);
GradedComoduleTable dual_comodule(const GradedModuleTable& m);

GradedComoduleTable trivial_comodule_table(const GradedCoalgebraTable& c, bool right = false);
GradedComoduleTable regular_comodule_table(const GradedCoalgebraTable& c, bool right = false);
GradedCoalgebraTable opposite(const GradedCoalgebraTable& c);
GradedComoduleTable opposite(const GradedComoduleTable& p);

struct PresentedCoalgebra {
  GradedCoalgebraTable coalgebra;
  std::optional<GradedComoduleTable> comodule;
  /// RREF bases of C_n ⊆ V^n and P_n ⊆ V^n⊗U.
  std::vector<Subspace> c_spaces, p_spaces;
};

/// ⟨V,R⟩ (and ⟨U,S⟩) through degree n, with the comultiplication
/// restricted from the tensor coalgebra.
PresentedCoalgebra coalgebra_table_from_presentation(const QuadPresentation& p,
                                                     const QuadModulePresentation* mod, int n,
                                                     std::size_t budget = kDefaultAmbientBudget);

/// The FD coalgebra underlying a graded table (χ = the degree 0 line).
FDCoalgebra total_coalgebra(const GradedCoalgebraTable& c);

}  // namespace koszul
