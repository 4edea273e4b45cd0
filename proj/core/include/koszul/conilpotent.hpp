#pragma once

#include "koszul/coalgebra.hpp"
#include "koszul/groups.hpp"
#include "koszul/homology.hpp"
#include "koszul/koszulity.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace koszul {

/// N_0 ⊆ N_1 ⊆ ... inside the carrier, listed up to the first repeat.
struct Filtration {
  std::vector<Subspace> levels;
  int stabilization = 0;  // first n with N_n = N_{n+1}

  const Subspace& top() const { return levels.back(); }
};

/// Coaugmentation filtrations, the associated graded objects and Nilp C.
struct FiltrationResult {
  Filtration coalgebra;
  std::optional<Filtration> comodule;
  GradedCoalgebraTable gr;
  std::optional<GradedComoduleTable> gr_comodule;
  FDCoalgebra nilp;
  Mat nilp_inclusion;  // dim C x dim Nilp C
  bool conilpotent = false;
  bool gr_one_cogenerated = false;
  std::optional<bool> gr_comodule_one_cogenerated;
};

/// N_nC = {c : Δ^(n+1)(c) ∈ Σ C^{i-1}⊗χ(k)⊗C^{n-i+1}}, computed through the
/// reduced comultiplication; for a left comodule N_nP = {p : Δ'(p) ∈ N_nC⊗P}.
/// The graded pieces are taken along an adapted basis; compatibility of Δ
/// (and Δ') with the filtrations and one-cogeneration of the graded objects
/// are asserted (InternalError).
FiltrationResult filtration_and_gr(const FDCoalgebra& c, const FDComodule* p = nullptr);

/// Incidence coalgebra of a finite poset on {0..n-1} given by its order
/// relation (pairs x <= y, reflexive pairs implied): basis the intervals
/// [x,y], Δ[x,y] = Σ [x,z]⊗[z,y], ε[x,y] = δ_xy, χ = [base,base].
FDCoalgebra incidence_coalgebra(Field f, std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& le,
                                std::size_t base = 0);

/// H^*(C, P) as a left H^*(C)-module, products taken by concatenating
/// cobar representatives; both cohomologies need representatives.
GradedModuleTable cohomology_module(const FDCohomology& ha, const FDCohomology& hp, const FDCoalgebra& c);

/// Hypotheses on A = H^*(C): qA Koszul, qA -> A iso in degree 2 and mono in
/// degree 3. Degree 3 must be available.
struct CohomologyHypotheses {
  bool quadratic_part_koszul = false;
  bool degree2_iso = false;
  bool degree3_mono = false;
  bool holds() const { return quadratic_part_koszul && degree2_iso && degree3_mono; }
  std::string first_failure() const;
};
CohomologyHypotheses cohomology_hypotheses(const GradedAlgebraTable& a, int window);

struct ComparisonReport {
  int window = 0;
  std::vector<std::size_t> nilp_dims, full_dims;  // H^i(Nilp C), H^i(C)
  std::vector<std::size_t> ranks;                 // of H^i(Nilp C) -> H^i(C)
  std::size_t nilp_dim = 0;
  bool degree1_iso = false, degree2_mono = false;
  std::optional<CohomologyHypotheses> hypotheses;  // evaluated when window >= 3
  std::optional<bool> matches_quadratic_part;      // dim H^i(Nilp C) = dim qH^i(C)
  std::optional<bool> koszul_iso;                  // H^*(C) Koszul: the map is an iso
  std::vector<std::string> notes;
};

/// H^*(Nilp C) -> H^*(C) on cobar representatives. The degree-1 iso and
/// degree-2 mono always hold and are asserted (CrossValidationError).
ComparisonReport comparison_report(const FDCoalgebra& c, int window, std::size_t budget = kDefaultTermBudget);

/// The group form: H^*(G^(l)) -> H^*(G) through the coalgebra map
/// k(G^(l)) -> k(G) dual to the projection, with coefficients F_l.
struct GroupComparison {
  std::size_t quotient_order = 0;  // |G^(l)|
  ComparisonReport coalgebra;      // the same data through Nilp k(G)
  std::vector<std::size_t> ranks; // of H^i(G^(l)) -> H^i(G)
  bool nilp_is_quotient_coalgebra = false;  // Nilp k(G) = image of k(G^(l))
};
GroupComparison group_comparison(const GroupTable& g, std::uint32_t l, int window,
                                 std::size_t budget = kDefaultTermBudget);

struct PipelineReport {
  int window = 0;
  GradedAlgebraTable cohomology;  // A = H^*(C)
  std::optional<GradedModuleTable> module_cohomology;  // M = H^*(C, P)
  CohomologyHypotheses hypotheses;
  std::optional<bool> module_hypotheses;
  std::string failure;          // first failed hypothesis, empty if none
  bool conclusions_checked = false;
  std::vector<std::size_t> gr_dual_dims, gr_module_dual_dims;  // (gr C)^!, (gr P)^!
  std::vector<std::string> notes;
};

/// For conilpotent C: computes A = H^*(C) (and M = H^*(C,P)), checks the
/// hypotheses and, when they hold, asserts A quadratic, gr_N C Koszul and
/// dim A_i = dim (gr_N C)^!_i, with module analogues (CrossValidationError).
/// When qA -> A already fails in degree 2, A is reported through degree 2
/// only. Throws InputError for a non-conilpotent C.
PipelineReport grading_pipeline(const FDCoalgebra& c, const FDComodule* p, int window,
                                std::size_t budget = kDefaultTermBudget);

struct CofreenessReport {
  int window = 0;
  std::vector<std::size_t> cohomology;  // H^i(D, C)
  bool cofree_in_window = false;        // H^i(D, C) = 0 for 1 <= i <= window
  bool ends_koszul = false;             // H^*(C), H^*(D) certified in the window
  std::optional<BigradedTable> tor;     // H_{i,j}(A^opp, B^opp)
  std::vector<int> vanishing_bands;     // t >= 1 with H_{i,i+t} = 0 in the window
  std::optional<bool> implication_holds;
};

/// C as a left D-comodule through g. When both cohomology algebras are
/// Koszul in the window, every band t with vanishing Tor must give
/// H^i(D, C) = 0 for t <= i <= window; a violation is reported, not thrown,
/// since the hypothesis is only seen through the window.
CofreenessReport cofreeness_check(const CoalgebraMorphism& g, int window, std::size_t budget = kDefaultTermBudget);

enum class KernelVerdict { Vacuous, Consistent, Undetermined };
const char* to_string(KernelVerdict v);

struct GroupCofreenessReport {
  CofreenessReport cofreeness;
  std::size_t kernel_order = 1;
  BigradedTable tor;  // H_{i,j}(A, B), A = H^*(G''), B = H^*(G')
  std::optional<std::pair<int, int>> band_failure;  // first nonzero with j - i >= 2
  bool module_koszul = false;  // B a Koszul A-module in the window
  KernelVerdict verdict = KernelVerdict::Undetermined;
};

/// G' -> G'' = G'/N for an l-group G'. A nontrivial finite kernel is never
/// free, so the band j - i <= 1 must fail somewhere; inside the window the
/// failure is either found (Consistent) or not yet visible (Undetermined).
/// A Koszul module B forces N trivial, asserted.
GroupCofreenessReport group_cofreeness(const GroupTable& gprime, const std::vector<std::uint32_t>& normal,
                                       std::uint32_t l, int window, std::size_t budget = kDefaultTermBudget);

struct KernelShapeReport {
  int window = 0;
  bool iso_degree1 = false, epi_degree2 = false;
  bool kernel_starts_in_degree2 = false;  // J_0 = J_1 = 0
  std::optional<bool> kernel_comparison;   // q_A K -> K iso in 1, mono in 2
  std::optional<bool> algebra_koszul, module_koszul;
  bool holds = false;
  std::string first_failure;
};

/// Hypotheses for freeness of a kernel subgroup read off a map of
/// cohomology algebras f : A -> B with kernel J = K(2): f iso in degree 1
/// and onto in degree 2; J_0 = J_1 = 0 and q_A K -> K iso in degree 1,
/// mono in degree 2; A and q_A K Koszul. Only the hypotheses are checked.
KernelShapeReport kernel_shape_hypotheses(const MorphismPresentation& f, const GradedModuleTable& j_kernel,
                                          int window);

}  // namespace koszul
