#include "koszul/echelon.hpp"
#include "koszul/error.hpp"
#include "koszul/quadratic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace koszul;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t power(std::size_t d, int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) r *= d;
  return r;
}

std::vector<std::string> names(std::size_t d) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < d; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

QuadPresentation random_presentation(Field f, std::size_t d, std::size_t nrel, std::mt19937& rng) {
  Mat m(f, nrel, d * d);
  std::uniform_int_distribution<int> val(-2, 2);
  for (std::size_t i = 0; i < nrel; ++i)
    for (std::size_t j = 0; j < d * d; ++j)
      if (rng() % 3 == 0) m.set(i, j, val(rng));
  return make_presentation(f, names(d), m);
}

// k[x]/(x^3) written out by hand through degree n.
GradedAlgebraTable truncated_polynomial(Field f, int n) {
  GradedAlgebraTable a;
  a.field = f;
  for (int k = 0; k <= n; ++k) a.dims.push_back(k <= 2 ? 1 : 0);
  a.mult.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      Mat m(f, a.dims[i + j], a.dims[i] * a.dims[j]);
      if (m.rows() && m.cols()) m.set(0, 0, 1);
      a.mult[i].push_back(m);
    }
  return a;
}

}  // namespace

TEST(Quadratic, ExteriorOnTwoGenerators) {
  Field f = Field::prime(3);
  QuadPresentation p = exterior_algebra(f, {"x", "y"});
  const std::size_t alg[] = {1, 2, 1, 0, 0};
  for (int n = 0; n <= 4; ++n) {
    EXPECT_EQ(component(p, Side::Algebra, nullptr, n).dim, alg[n]) << n;
    EXPECT_EQ(component(p, Side::Coalgebra, nullptr, n).dim, static_cast<std::size_t>(n + 1)) << n;
  }
}

TEST(Quadratic, KnownHilbertSeries) {
  for (Field f : {Field::prime(5), Field::rationals()})
    for (std::size_t d = 1; d <= 3; ++d) {
      QuadPresentation sym = polynomial_algebra(f, names(d));
      QuadPresentation ext = exterior_algebra(f, names(d));
      QuadPresentation tens = tensor_presentation(f, names(d));
      QuadPresentation zero = square_zero_presentation(f, names(d));
      for (int n = 0; n <= 4; ++n) {
        EXPECT_EQ(component(sym, Side::Algebra, nullptr, n).dim, binom(n + d - 1, d - 1));
        EXPECT_EQ(component(ext, Side::Algebra, nullptr, n).dim, binom(d, n));
        EXPECT_EQ(component(sym, Side::Coalgebra, nullptr, n).dim, binom(d, n));
        EXPECT_EQ(component(ext, Side::Coalgebra, nullptr, n).dim, binom(n + d - 1, d - 1));
        EXPECT_EQ(component(tens, Side::Algebra, nullptr, n).dim, power(d, n));
        EXPECT_EQ(component(zero, Side::Algebra, nullptr, n).dim, n <= 1 ? power(d, n) : 0);
        EXPECT_EQ(component(zero, Side::Coalgebra, nullptr, n).dim, power(d, n));
      }
    }
}

TEST(Quadratic, ComponentRealizations) {
  std::mt19937 rng(21);
  Field f = Field::prime(7);
  for (int t = 0; t < 10; ++t) {
    QuadPresentation p = random_presentation(f, 2 + t % 2, 1 + t % 4, rng);
    for (int n = 0; n <= 3; ++n) {
      Subspace rel = relation_space(p, nullptr, n);
      Component a = component(p, Side::Algebra, nullptr, n);
      EXPECT_EQ(a.dim + rel.dim(), power(p.dim(), n));
      EXPECT_EQ(kernel_subspace(a.realization), rel);
      Component c = component(p, Side::Coalgebra, nullptr, n);
      EXPECT_EQ(rank(c.realization), c.dim);
      // C_n sits inside every V^{k-1}⊗R⊗V^{n-k-1}.
      for (int k = 1; k <= n - 1; ++k) {
        Subspace pad = padded(p.r, power(p.dim(), k - 1), power(p.dim(), n - k - 1));
        EXPECT_TRUE(pad.contains(echelonize(c.realization.transpose())));
      }
    }
  }
}

TEST(Quadratic, ModulesAndComodules) {
  Field f = Field::prime(5);
  QuadPresentation p = polynomial_algebra(f, {"x", "y"});
  QuadModulePresentation k = trivial_module(p);
  QuadModulePresentation fr = free_module(p, {"u", "v"});
  for (int n = 0; n <= 3; ++n) {
    EXPECT_EQ(component(p, Side::Algebra, &k, n).dim, n == 0 ? 1u : 0u);
    EXPECT_EQ(component(p, Side::Algebra, &fr, n).dim, 2 * (n + 1));
  }
  // P_0 = U and P_1 = S on the comodule side.
  QuadModulePresentation m = fr;
  Mat s(f, 1, 4);
  s.set(0, 0, 1);
  s.set(0, 3, 1);
  m.s = echelonize(s);
  EXPECT_EQ(component(p, Side::Coalgebra, &m, 0).dim, 2u);
  EXPECT_EQ(component(p, Side::Coalgebra, &m, 1).dim, 1u);
  EXPECT_EQ(component(p, Side::Coalgebra, &k, 1).dim, 2u);
  EXPECT_EQ(component(p, Side::Coalgebra, &k, 2).dim, 1u);
}

TEST(Quadratic, DualFlipsSideOnly) {
  QuadPresentation p = exterior_algebra(Field::prime(3), {"a", "b"});
  QuadPresentation q = dual_presentation(p);
  EXPECT_EQ(q.side, Side::Coalgebra);
  EXPECT_EQ(q.r, p.r);
  EXPECT_EQ(dual_presentation(q), p);
}

TEST(Quadratic, TablesAreAssociativeAndRoundTrip) {
  std::mt19937 rng(31);
  for (Field f : {Field::prime(2), Field::prime(3), Field::rationals()})
    for (int t = 0; t < 8; ++t) {
      QuadPresentation p = random_presentation(f, 2 + t % 2, t % 5, rng);
      QuadModulePresentation m = free_module(p, {"u", "w"});
      Mat s(f, 1, m.s.ambient_dim());
      s.set(0, static_cast<std::size_t>(t) % s.cols(), 1);
      m.s = echelonize(s);
      PresentedTables tab = table_from_presentation(p, &m, 4);
      EXPECT_NO_THROW(tab.algebra.validate());
      EXPECT_NO_THROW(tab.module->validate(tab.algebra));
      QuadraticPart q = quadratic_part(tab.algebra, &*tab.module);
      EXPECT_EQ(q.algebra, p);
      EXPECT_EQ(*q.module, m);
      EXPECT_TRUE(q.algebra_iso());
      EXPECT_TRUE(q.module_iso());
    }
}

TEST(Quadratic, NonQuadraticAlgebraComparison) {
  Field f = Field::prime(5);
  GradedAlgebraTable a = truncated_polynomial(f, 4);
  ASSERT_NO_THROW(a.validate());
  QuadraticPart q = quadratic_part(a);
  EXPECT_EQ(q.algebra.r.dim(), 0u);
  EXPECT_EQ(q.algebra_comparison[2].kind(), CompareKind::Iso);
  EXPECT_EQ(q.algebra_comparison[3].kind(), CompareKind::Fails);
  EXPECT_FALSE(q.algebra_iso());
}

TEST(Quadratic, BrokenTablesRejected) {
  Field f = Field::prime(3);
  GradedAlgebraTable a = table_from_presentation(polynomial_algebra(f, {"x", "y"}), nullptr, 3).algebra;
  GradedAlgebraTable bad = a;
  bad.mult[1][1] = Mat(f, bad.dims[2], 4);
  bad.mult[1][1].set(0, 1, 1);
  EXPECT_THROW(bad.validate(), InputError);
  bad = a;
  bad.dims[0] = 2;
  EXPECT_THROW(bad.validate(), InputError);
}

TEST(Quadratic, OppositeTables) {
  Field f = Field::prime(7);
  std::mt19937 rng(41);
  QuadPresentation p = random_presentation(f, 2, 2, rng);
  GradedAlgebraTable a = table_from_presentation(p, nullptr, 4).algebra;
  GradedAlgebraTable o = opposite(a);
  EXPECT_NO_THROW(o.validate());
  EXPECT_EQ(opposite(o).mult, a.mult);
  GradedModuleTable r = regular_module_table(a, true);
  EXPECT_NO_THROW(r.validate(a));
  GradedModuleTable l = opposite(r);
  EXPECT_FALSE(l.right);
  EXPECT_NO_THROW(l.validate(o));
  EXPECT_NO_THROW(trivial_module_table(a, true).validate(a));
}

TEST(Quadratic, AmbientBudget) {
  QuadPresentation p = tensor_presentation(Field::prime(2), names(4));
  try {
    component(p, Side::Algebra, nullptr, 6, 1000);
    FAIL() << "expected BudgetError";
  } catch (const BudgetError& e) {
    EXPECT_EQ(e.degree(), 6);
  }
}
