#pragma once

#include "koszul/certificate.hpp"
#include "koszul/coalgebra.hpp"
#include "koszul/echelon.hpp"
#include "koszul/quadratic.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace koszul {

struct Window {
  int i_max = 0;
  int j_max = 0;
};

/// Dimensions H_{i,j} (or H^{i,j}) for 0 <= i <= i_max, i <= j <= j_max.
struct BigradedTable {
  int i_max = 0, j_max = 0;
  std::map<std::pair<int, int>, std::size_t> entries;
  /// Cycle representatives as rows in the complex term, when requested.
  std::map<std::pair<int, int>, Mat> representatives;

  std::size_t at(int i, int j) const;
  /// First nonzero slot with i != j, in (i, j) order.
  std::optional<std::pair<int, int>> first_off_diagonal() const;
  bool diagonal() const { return !first_off_diagonal(); }
  friend bool operator==(const BigradedTable& a, const BigradedTable& b) {
    return a.i_max == b.i_max && a.j_max == b.j_max && a.entries == b.entries;
  }
};

/// Largest admissible dimension of a single complex term.
inline constexpr std::size_t kDefaultTermBudget = 4000000;

/// Tor^A(N, M) from the bar complex N⊗A_+^{⊗i}⊗M. N is a right module, M a
/// left module; tables must reach degree j_max.
BigradedTable tor_bigraded(const GradedModuleTable& n, const GradedAlgebraTable& a,
                           const GradedModuleTable& m, Window w, std::size_t budget = kDefaultTermBudget,
                           bool representatives = false);
/// Convenience forms: H_{i,j}(A) and H_{i,j}(A, M).
BigradedTable algebra_homology(const GradedAlgebraTable& a, Window w, std::size_t budget = kDefaultTermBudget);
BigradedTable module_homology(const GradedAlgebraTable& a, const GradedModuleTable& m, Window w,
                              std::size_t budget = kDefaultTermBudget);
/// Dimensions of the bar terms, keyed by (i, j).
std::map<std::pair<int, int>, std::size_t> bar_term_dims(const GradedModuleTable& n, const GradedAlgebraTable& a,
                                                         const GradedModuleTable& m, Window w);

/// Cot^C(P, Q) from the cobar complex P⊗C_+^{⊗i}⊗Q. P is a right comodule,
/// Q a left comodule.
BigradedTable cot_bigraded(const GradedComoduleTable& p, const GradedCoalgebraTable& c,
                           const GradedComoduleTable& q, Window w, std::size_t budget = kDefaultTermBudget,
                           bool representatives = false);
BigradedTable coalgebra_cohomology(const GradedCoalgebraTable& c, Window w,
                                   std::size_t budget = kDefaultTermBudget);
BigradedTable comodule_cohomology(const GradedCoalgebraTable& c, const GradedComoduleTable& q, Window w,
                                  std::size_t budget = kDefaultTermBudget);

/// C_+ = C/χ(k), realized as ker ε: `incl` maps it into C and `coord`
/// sends c to the coordinates of c - χε(c).
struct ReducedCoalgebra {
  std::size_t dim = 0;
  Mat incl, coord;
  Mat delta;  // C_+ -> C_+⊗C_+
};
ReducedCoalgebra reduce(const FDCoalgebra& c);

/// Cohomology of the cobar complex P⊗C_+^{⊗i}⊗Q of an FD coalgebra, single
/// graded. A missing comodule means the trivial comodule k.
struct FDCohomology {
  Field field = Field::rationals();
  std::vector<std::size_t> term_dims;  // i = 0..max_degree+1
  std::vector<std::size_t> dims;       // i = 0..max_degree
  std::vector<Mat> reps;               // cocycle rows, when requested
  std::vector<Echelon> classes;        // coboundaries plus tagged representatives

  int max_degree() const { return static_cast<int>(dims.size()) - 1; }
  /// Class coordinates (h_i x k) of the cocycle rows of `cocycles`.
  Mat coordinates(int i, const Mat& cocycles) const;
};

FDCohomology fd_cohomology(const FDCoalgebra& c, const FDComodule* p_right, const FDComodule* q_left,
                           int max_degree, bool representatives = false,
                           std::size_t budget = kDefaultTermBudget);

/// H^*(C) with the concatenation product, as a graded algebra table.
GradedAlgebraTable cohomology_algebra(const FDCoalgebra& c, int max_degree,
                                      std::size_t budget = kDefaultTermBudget);
GradedAlgebraTable cohomology_algebra(const FDCohomology& h, const FDCoalgebra& c);

/// Map H^i(S) -> H^i(T) induced by a coalgebra morphism S -> T, in class
/// coordinates (h_i(T) x h_i(S)); both cohomologies need representatives.
Mat induced_cohomology_map(const CoalgebraMorphism& g, const FDCohomology& hs, const FDCohomology& ht, int i);

struct ComplexCheck {
  std::string name;
  bool holds = true;
  bool square_zero = true;
  std::optional<std::pair<int, int>> fails_at;  // term (p, q)
  std::size_t homology_dim = 0;
};

/// Builds K(A, A^?), and K(A, M^?), K(A^?, M) with a module, through total
/// degree `window`; asserts δ² = 0 and checks the exactness pattern.
Certificate koszul_check(const QuadPresentation& p, const QuadModulePresentation* mod, int window,
                         std::size_t budget = kDefaultAmbientBudget, std::vector<ComplexCheck>* detail = nullptr);

}  // namespace koszul
