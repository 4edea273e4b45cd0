#pragma once

#include "koszul/certificate.hpp"
#include "koszul/coalgebra.hpp"
#include "koszul/homology.hpp"
#include "koszul/quadratic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace koszul {

struct CertifyOptions {
  std::vector<Method> methods{Method::Homology, Method::Distributivity, Method::KoszulComplex};
  std::size_t ambient_budget = kDefaultAmbientBudget;
  std::size_t term_budget = kDefaultTermBudget;
  std::size_t lattice_budget = kDefaultLatticeBudget;
};

/// Koszulity of a quadratic algebra (and module, when given) through internal
/// degree `window`, by each requested method. Completed methods must agree;
/// a disagreement throws CrossValidationError.
Certificate certify(const QuadPresentation& p, const QuadModulePresentation* mod, int window,
                    const CertifyOptions& opt = {});
/// Same for arbitrary graded tables. The lattice and Koszul-complex methods
/// run on the quadratic part and only when the comparison map is an
/// isomorphism through the window.
Certificate certify(const GradedAlgebraTable& a, const GradedModuleTable* m, int window,
                    const CertifyOptions& opt = {});

/// The lattices V^{k-1}⊗R⊗V^{n-k-1} (and with a module, those ⊗U together
/// with V^{n-1}⊗S inside V^n⊗U).
std::vector<Subspace> algebra_lattice(const QuadPresentation& p, int n);
std::vector<Subspace> module_lattice(const QuadPresentation& p, const QuadModulePresentation& m, int n);

/// A table is Koszul in the grading shifted by s when every H_{i,j} off the
/// line j = i + s vanishes.
bool concentrated_on_shift(const BigradedTable& t, int s);

/// Module-table helpers. Subspaces are given per degree; submodules must be
/// closed under the action.
GradedModuleTable submodule_table(const GradedModuleTable& m, const GradedAlgebraTable& a,
                                  const std::vector<Subspace>& sub);
GradedModuleTable quotient_module_table(const GradedModuleTable& m, const GradedAlgebraTable& a,
                                        const std::vector<Subspace>& sub);
/// Columns of `m` picked so that m restricted to them is invertible, and the
/// resulting right inverse.
Mat right_inverse(const Mat& m);

/// A degree-preserving algebra map f_n : A_n -> B_n, n = 0..max_degree.
struct MorphismPresentation {
  GradedAlgebraTable source, target;
  std::vector<Mat> maps;
  /// Quadratic presentations of the ends, when the morphism came from them.
  std::optional<QuadPresentation> source_presentation, target_presentation;

  int max_degree() const { return static_cast<int>(maps.size()) - 1; }
  /// Shapes, f_0 = 1 and f_{i+j} m_A = m_B (f_i⊗f_j); throws InputError
  /// naming the first failing pair.
  void validate() const;
};

/// From f_1 : V_A -> V_B; requires (f_1⊗f_1)(R_A) ⊆ R_B.
MorphismPresentation morphism_from_presentations(const QuadPresentation& a, const QuadPresentation& b,
                                                 const Mat& f1, int n,
                                                 std::size_t budget = kDefaultAmbientBudget);
/// From f_1 between tables, the source generated in degree 1.
MorphismPresentation morphism_from_degree_one(const GradedAlgebraTable& a, const GradedAlgebraTable& b,
                                              const Mat& f1);

/// B as a left (right) A-module through f.
GradedModuleTable target_as_module(const MorphismPresentation& f, bool right = false);
/// Kernel of f as a left A-module, and coker f = B/f(A).
GradedModuleTable kernel_module(const MorphismPresentation& f, bool right = false);
GradedModuleTable cokernel_module(const MorphismPresentation& f);

/// The coalgebra map f^? : A^? -> B^? in degree n, in the bases of the
/// coalgebra-side components (rows of their RREF bases).
Mat dual_map(const QuadPresentation& a, const QuadPresentation& b, const Mat& f1, int n,
             std::size_t budget = kDefaultAmbientBudget);

struct FreenessFacts {
  bool target_free_left = false;   // B free as a left A-module in the window
  bool kernel_free_left = false;   // f surjective and J free as a left A-module
  std::vector<bool> dual_injective, dual_surjective;  // f^? per degree
  std::optional<bool> h0_koszul;   // right B-module B/A_+B Koszul
  std::optional<int> generator_shift;  // J/A_+J Koszul shifted by 1 or 2
  bool band_vanishes = true;       // H_{i,j}(B^opp, J/A_+J) = 0 for j-i != 1,2
  bool consistent = true;
};

struct MorphismReport {
  BigradedTable tor;  // H_{i,j}(A, B)
  bool first_kind = false, second_kind = false;
  std::vector<bool> injective, surjective;  // f_n per degree
  bool source_koszul = false, target_koszul = false;
  std::vector<char> module_cases, freeness_cases;
  std::optional<bool> trivial_rows_criterion;  // empty when not evaluated
  FreenessFacts freeness;
  std::vector<std::string> notes;
};

MorphismReport morphism_report(const MorphismPresentation& f, Window w, std::size_t budget = kDefaultTermBudget);

struct DualityReport {
  BigradedTable tor;        // H_{i,j}(A, B) via bar
  BigradedTable cot;        // H^{j-i,j}(B^?opp, A^?opp) via cobar, keyed (i, j)
  BigradedTable complex;    // homology of K(f; A^?, B) at A^?_i⊗B_{j-i}
  bool agree = false;
  std::optional<bool> free_right_iff_comodule_koszul;  // free right module iff Koszul comodule
  std::optional<bool> surjective_diagonal_vanishes;   // H_{i,i}(B^?, A^?) = 0, i > 0
};

/// Needs quadratic presentations on both ends, each certified Koszul in the
/// window; otherwise throws InputError naming the failing end.
DualityReport duality_crosscheck(const MorphismPresentation& f, Window w,
                                   std::size_t budget = kDefaultTermBudget);

}  // namespace koszul
