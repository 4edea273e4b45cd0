#include "koszul/error.hpp"
#include "koszul/galois.hpp"
#include "random_objects.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace koszul;
using koszul::testing::binom;
using koszul::testing::names;
using koszul::testing::random_subspace;

namespace {

FieldSpec tower(std::uint64_t q, std::uint32_t l, int h) {
  FieldSpec s;
  s.kind = h ? FieldSpec::Kind::LaurentTower : FieldSpec::Kind::FiniteField;
  s.q = q;
  s.l = l;
  s.height = h;
  return s;
}

// Does some Steinberg symbol {a, 1-a} of F_p give a nonzero multiple of
// u⊗u in F*/F*^l ⊗ F*/F*^l? Logs by brute-force powering.
bool steinberg_touches_square(std::uint64_t p, std::uint32_t l) {
  std::uint64_t g = 0;
  for (std::uint64_t c = 2; c < p && !g; ++c) {
    std::uint64_t x = c, ord = 1;
    while (x != 1) x = x * c % p, ++ord;
    if (ord == p - 1) g = c;
  }
  auto dlog = [&](std::uint64_t a) {
    std::uint64_t x = 1, e = 0;
    while (x != a) x = x * g % p, ++e;
    return e;
  };
  for (std::uint64_t a = 2; a < p; ++a)
    if (dlog(a) * dlog(p + 1 - a) % l) return true;
  return false;
}

// J_n spelled out from all products A_i · J_2 · A_k.
std::vector<Subspace> ideal_by_products(const GradedAlgebraTable& a, const Subspace& j2) {
  std::vector<Subspace> out;
  for (int n = 0; n <= a.max_degree(); ++n) out.push_back(Subspace(a.field, a.dim(n)));
  for (int i = 0; i + 2 <= a.max_degree(); ++i)
    for (int k = 0; i + 2 + k <= a.max_degree(); ++k) {
      const int n = i + 2 + k;
      Mat rows(a.field, 0, a.dim(n));
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t w = 0; w < j2.dim(); ++w)
          for (std::size_t y = 0; y < a.dim(k); ++y) {
            Mat ex(a.field, a.dim(i), 1), ey(a.field, a.dim(k), 1);
            ex.set(x, 0, 1);
            ey.set(y, 0, 1);
            Mat left = a.mul(i, 2) * kron(ex, j2.basis().row(w).transpose());
            Mat v = a.mul(i + 2, k) * kron(left, ey);
            rows = vstack(rows, v.transpose());
          }
      out[n] = sum(out[n], echelonize(rows));
    }
  return out;
}

}  // namespace

TEST(FieldSpec, Validation) {
  EXPECT_NO_THROW(tower(7, 3, 0).validate());
  EXPECT_NO_THROW(tower(5, 2, 2).validate());
  EXPECT_NO_THROW(tower(9, 2, 1).validate());
  EXPECT_THROW(tower(7, 2, 0).validate(), InputError);   // no sqrt(-1)
  EXPECT_THROW(tower(6, 5, 0).validate(), InputError);   // not a prime power
  EXPECT_THROW(tower(7, 4, 0).validate(), InputError);   // l not prime
  EXPECT_THROW(tower(7, 5, 0).validate(), InputError);   // l does not divide 6
  EXPECT_THROW(tower(7, 3, 4).validate(), InputError);
  FieldSpec bad = tower(7, 3, 0);
  bad.height = 1;
  EXPECT_THROW(bad.validate(), InputError);
}

TEST(ExteriorPresentation, Dims) {
  for (std::uint32_t l : {2u, 3u, 5u})
    for (std::size_t d = 0; d <= 3; ++d) {
      QuadPresentation p = exterior_presentation(names(d), l);
      EXPECT_EQ(p.r.dim(), d * (d + 1) / 2);
      GradedAlgebraTable a = table_from_presentation(p, nullptr, 4).algebra;
      for (int n = 0; n <= 4; ++n) EXPECT_EQ(a.dim(n), binom(d, static_cast<std::size_t>(n))) << d << " " << n;
    }
  EXPECT_THROW(exterior_presentation(names(2), 6), InputError);
}

TEST(MilnorTower, DimsAreBinomial) {
  const std::vector<std::vector<std::size_t>> expect{{1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}};
  for (int h = 0; h <= 2; ++h) {
    SteinbergData d = milnor_tower(tower(7, 3, h), 4);
    EXPECT_EQ(d.milnor_dims, expect[static_cast<std::size_t>(h)]);
    EXPECT_EQ(d.j_dims, std::vector<std::size_t>(5, 0));
    EXPECT_EQ(d.v_labels.size(), static_cast<std::size_t>(h) + 1);
    EXPECT_EQ(d.j_generators.dim(), 0u);
  }
  SteinbergData three = milnor_tower(tower(13, 2, 3), 5);
  EXPECT_EQ(three.milnor_dims, (std::vector<std::size_t>{1, 4, 6, 4, 1, 0}));
}

TEST(MilnorTower, ResidueSymbolsDieInTheExteriorSquare) {
  for (auto [p, l] : std::vector<std::pair<std::uint64_t, std::uint32_t>>{{7, 3}, {13, 3}, {5, 2}, {13, 2}, {11, 5}, {31, 5}}) {
    SteinbergData d = milnor_tower(tower(p, l, 0), 2);
    ASSERT_TRUE(d.residue_symbol_rank.has_value());
    EXPECT_EQ(*d.residue_symbol_rank, steinberg_touches_square(p, l) ? 1u : 0u) << p << " " << l;
  }
  // prime powers skip the enumeration
  EXPECT_FALSE(milnor_tower(tower(9, 2, 0), 2).residue_symbol_rank.has_value());
}

TEST(SteinbergPipeline, TowersSucceed) {
  for (int h = 0; h <= 2; ++h) {
    SteinbergData d = milnor_tower(tower(7, 3, h), 4);
    SteinbergPipelineReport r = steinberg_pipeline(d, 4);
    EXPECT_TRUE(r.success) << r.first_failure;
    EXPECT_TRUE(r.quotient_koszul);
    EXPECT_EQ(r.km_dims, d.milnor_dims);
  }
}

TEST(SteinbergPipeline, KillingTheTopOfAPlane) {
  const Field f = Field::prime(3);
  QuadPresentation lam = exterior_presentation({"x", "y"}, 3);
  GradedAlgebraTable a = table_from_presentation(lam, nullptr, 4).algebra;
  std::vector<Subspace> j = generated_ideal(a, Subspace::full(f, 1));
  SteinbergPipelineReport r = steinberg_pipeline(lam, j, 4);
  EXPECT_TRUE(r.success) << r.first_failure;
  EXPECT_TRUE(r.quotient_koszul);
  EXPECT_EQ(r.km_dims, (std::vector<std::size_t>{1, 2, 0, 0, 0}));
  EXPECT_EQ(r.j_dims, (std::vector<std::size_t>{0, 0, 1, 0, 0}));
}

TEST(SteinbergPipeline, CubicKernelFails) {
  const Field f = Field::prime(3);
  QuadPresentation lam = exterior_presentation(names(3), 3);
  GradedAlgebraTable a = table_from_presentation(lam, nullptr, 4).algebra;
  std::vector<Subspace> j;
  for (int n = 0; n <= 4; ++n) j.push_back(Subspace(f, a.dim(n)));
  j[3] = Subspace::full(f, 1);
  SteinbergPipelineReport r = steinberg_pipeline(lam, j, 4);
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.quotient_koszul);
  EXPECT_FALSE(r.kernel_module_koszul);
  EXPECT_EQ(r.kernel_shape.kernel_comparison, std::optional<bool>(false));
  EXPECT_EQ(r.first_failure, r.kernel_shape.first_failure);
}

TEST(SteinbergPipeline, RejectsBadInput) {
  const Field f = Field::prime(3);
  QuadPresentation lam = exterior_presentation(names(2), 3);
  std::vector<Subspace> j{Subspace(f, 1), Subspace::full(f, 2)};
  EXPECT_THROW(steinberg_pipeline(lam, j, 4), InputError);
  EXPECT_THROW(steinberg_pipeline(lam, {}, 3), InputError);
  std::vector<Subspace> wrong{Subspace(f, 1), Subspace(f, 3)};
  EXPECT_THROW(steinberg_pipeline(lam, wrong, 4), InputError);
}

TEST(QuotientByIdeal, RejectsNonIdeals) {
  const Field f = Field::prime(3);
  GradedAlgebraTable a = table_from_presentation(exterior_presentation(names(2), 3), nullptr, 3).algebra;
  std::vector<Subspace> j{Subspace(f, 1), Subspace(f, 2), Subspace(f, 1), Subspace(f, 0)};
  EXPECT_NO_THROW(quotient_by_ideal(a, j));
  j[1] = echelonize(Mat::from_ints(f, 1, 2, {1, 0}));
  EXPECT_THROW(quotient_by_ideal(a, j), InputError);
}

TEST(GeneratedIdeal, MatchesProducts) {
  std::mt19937 rng(11);
  for (std::uint32_t p : {2u, 3u}) {
    const Field f = Field::prime(p);
    for (int trial = 0; trial < 6; ++trial) {
      QuadPresentation lam = koszul::testing::random_presentation(f, 3, 1 + rng() % 5, rng);
      GradedAlgebraTable a = table_from_presentation(lam, nullptr, 4).algebra;
      if (a.dim(2) == 0) continue;
      Subspace w = random_subspace(f, a.dim(2), 1 + rng() % a.dim(2), rng);
      EXPECT_EQ(generated_ideal(a, w), ideal_by_products(a, w));
    }
  }
}

TEST(SteinbergPipeline, ZeroKernelAlwaysSucceeds) {
  for (std::uint32_t l : {2u, 3u})
    for (std::size_t d = 1; d <= 3; ++d) {
      QuadPresentation lam = exterior_presentation(names(d), l);
      SteinbergPipelineReport r = steinberg_pipeline(lam, {}, 4);
      EXPECT_TRUE(r.success) << d << " " << r.first_failure;
      EXPECT_TRUE(r.quotient_koszul);
    }
}

TEST(SteinbergPipeline, RandomQuadraticKernelsAreConsistent) {
  std::mt19937 rng(5);
  int succeeded = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t l = trial % 2 ? 3 : 2;
    const Field f = Field::prime(l);
    QuadPresentation lam = exterior_presentation(names(3), l);
    GradedAlgebraTable a = table_from_presentation(lam, nullptr, 4).algebra;
    Subspace w = random_subspace(f, 3, 1 + rng() % 3, rng);
    std::vector<Subspace> j = generated_ideal(a, w);
    SteinbergPipelineReport r;
    ASSERT_NO_THROW(r = steinberg_pipeline(lam, j, 4));
    if (r.success) {
      ++succeeded;
      EXPECT_TRUE(r.quotient_koszul);
    }
    EXPECT_EQ(r.j_dims[2], w.dim());
  }
  EXPECT_GT(succeeded, 0);
}
