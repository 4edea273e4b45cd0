#include "koszul/error.hpp"
#include "koszul/koszulity.hpp"

#include "random_objects.hpp"

#include <gtest/gtest.h>

using namespace koszul;
using namespace koszul::testing;

namespace {

bool all_complete_and(const Certificate& c, Verdict v) {
  for (const auto& r : c.results)
    if (r.status != v) return false;
  return !c.results.empty();
}

GradedAlgebraTable truncated_polynomial(Field f, int top, int n) {
  GradedAlgebraTable a;
  a.field = f;
  for (int k = 0; k <= n; ++k) a.dims.push_back(k <= top ? 1 : 0);
  a.mult.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      Mat m(f, a.dims[i + j], a.dims[i] * a.dims[j]);
      if (m.rows() && m.cols()) m.set(0, 0, 1);
      a.mult[i].push_back(m);
    }
  return a;
}

Mat projection(Field f, std::size_t rows, std::size_t cols) {
  Mat m(f, rows, cols);
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) m.set(i, i, 1);
  return m;
}

}  // namespace

TEST(Certify, ExteriorAlgebrasAllMethods) {
  for (std::size_t d = 1; d <= 3; ++d) {
    Certificate c = certify(exterior_algebra(Field::prime(3), names(d)), nullptr, d < 3 ? 5 : 4);
    EXPECT_TRUE(c.holds()) << d;
    EXPECT_TRUE(c.agreement);
    EXPECT_TRUE(all_complete_and(c, Verdict::Holds)) << d;
  }
}

TEST(Certify, GroundFieldVacuous) {
  Certificate c = certify(tensor_presentation(Field::prime(2), {}), nullptr, 4);
  EXPECT_TRUE(all_complete_and(c, Verdict::Holds));
}

TEST(Certify, TrivialModuleOverKoszulAlgebra) {
  QuadPresentation p = polynomial_algebra(Field::prime(3), {"x", "y"});
  QuadModulePresentation k = trivial_module(p);
  Certificate c = certify(p, &k, 4);
  EXPECT_EQ(c.subject, "module");
  EXPECT_TRUE(all_complete_and(c, Verdict::Holds));
}

TEST(Certify, MethodsAgreeOnRandomPresentations) {
  std::mt19937 rng(101);
  int fails = 0, complete_pairs = 0;
  for (Field f : {Field::prime(2), Field::prime(3)})
    for (std::size_t d = 2; d <= 3; ++d)
      for (int t = 0; t < 6; ++t) {
        QuadPresentation p = random_presentation(f, d, 1 + rng() % (d * d - 1), rng);
        Certificate c;
        ASSERT_NO_THROW(c = certify(p, nullptr, 4));
        int done = 0;
        for (const auto& r : c.results) done += r.status != Verdict::Inconclusive;
        complete_pairs += done >= 2;
        fails += c.status == Verdict::FailsAt;
      }
  EXPECT_GT(complete_pairs, 10);
  EXPECT_GT(fails, 0);
}

TEST(Certify, ModuleMethodsAgree) {
  std::mt19937 rng(103);
  Field f = Field::prime(2);
  int checked = 0;
  for (int t = 0; t < 12; ++t) {
    QuadPresentation p = t % 2 ? polynomial_algebra(f, names(2)) : exterior_algebra(f, names(2));
    QuadModulePresentation m = free_module(p, names(2, "u"));
    m.s = random_subspace(f, 4, 1 + t % 3, rng);
    Certificate c;
    ASSERT_NO_THROW(c = certify(p, &m, 4));
    EXPECT_TRUE(c.agreement);
    ++checked;
  }
  EXPECT_EQ(checked, 12);
}

TEST(Certify, NonQuadraticTable) {
  GradedAlgebraTable a = truncated_polynomial(Field::prime(5), 2, 4);
  Certificate c = certify(a, nullptr, 4);
  EXPECT_EQ(c.status, Verdict::FailsAt);
  ASSERT_EQ(c.results.size(), 3u);
  EXPECT_EQ(c.results[1].status, Verdict::Inconclusive);
  EXPECT_EQ(c.results[2].status, Verdict::Inconclusive);
  EXPECT_FALSE(c.notes.empty());
  // k[x]/(x^3): the comparison breaks in degree 3, seen as H_{2,3} != 0.
  EXPECT_EQ(c.at, std::make_pair(2, 3));
  ASSERT_EQ(c.quadraticity.size(), 5u);
  EXPECT_TRUE(c.quadraticity[2].comparison_iso);
  EXPECT_FALSE(c.quadraticity[3].comparison_iso);
  EXPECT_FALSE(c.quadraticity[3].homology_vanishes);
}

TEST(Certify, KoszulImpliesQuadratic) {
  std::mt19937 rng(107);
  for (int t = 0; t < 10; ++t) {
    QuadPresentation p = random_presentation(Field::prime(3), 2, t % 5, rng);
    GradedAlgebraTable a = table_from_presentation(p, nullptr, 4).algebra;
    Certificate c = certify(a, nullptr, 4);
    if (c.holds())
      for (const auto& q : c.quadraticity) EXPECT_TRUE(q.comparison_iso);
  }
}

TEST(Certify, PartialVanishingDuality) {
  // With a = b = 2: H_{i,j}(A) = 0 for i <= 3, 0 < j-i <= 1 exactly when the
  // same holds for H^{i,j} of the dual coalgebra.
  std::mt19937 rng(109);
  int nontrivial = 0;
  for (Field f : {Field::prime(2), Field::prime(3)})
    for (int t = 0; t < 10; ++t) {
      QuadPresentation p = random_presentation(f, 2 + t % 2, 1 + rng() % 6, rng);
      GradedAlgebraTable a = table_from_presentation(p, nullptr, 4).algebra;
      GradedCoalgebraTable c = coalgebra_table_from_presentation(p, nullptr, 4).coalgebra;
      BigradedTable h = algebra_homology(a, {3, 4});
      BigradedTable hc = coalgebra_cohomology(c, {3, 4});
      auto band = [](const BigradedTable& t) {
        for (int i = 0; i <= 3; ++i)
          if (t.at(i, i + 1)) return false;
        return true;
      };
      EXPECT_EQ(band(h), band(hc));
      nontrivial += !band(h);
    }
  EXPECT_GT(nontrivial, 0);
}

TEST(Certify, LatticeCollections) {
  QuadPresentation p = exterior_algebra(Field::prime(3), {"x", "y"});
  auto xs = algebra_lattice(p, 4);
  ASSERT_EQ(xs.size(), 3u);
  LatticeVerdict v = distributivity_check(xs);
  EXPECT_EQ(v.status, LatticeStatus::Distributive);
  EXPECT_GT(v.closure_size, 3u);
}

TEST(Morphism, IdentityIsFirstKind) {
  Field f = Field::prime(3);
  QuadPresentation p = exterior_algebra(f, {"x", "y"});
  MorphismPresentation id = morphism_from_presentations(p, p, Mat::identity(f, 2), 4);
  MorphismReport r = morphism_report(id, {4, 4});
  for (const auto& [ij, d] : r.tor.entries) EXPECT_EQ(d, ij == std::make_pair(0, 0) ? 1u : 0u);
  EXPECT_TRUE(r.first_kind);
  EXPECT_TRUE(r.second_kind);
}

TEST(Morphism, UnitInclusion) {
  Field f = Field::prime(3);
  QuadPresentation k = tensor_presentation(f, {});
  QuadPresentation b = polynomial_algebra(f, {"x", "y"});
  MorphismPresentation u = morphism_from_presentations(k, b, Mat(f, 2, 0), 4);
  MorphismReport r = morphism_report(u, {4, 4});
  for (int j = 0; j <= 4; ++j) EXPECT_EQ(r.tor.at(0, j), static_cast<std::size_t>(j + 1));
  for (int i = 1; i <= 4; ++i)
    for (int j = i; j <= 4; ++j) EXPECT_EQ(r.tor.at(i, j), 0u);
  EXPECT_FALSE(r.second_kind);
  EXPECT_TRUE(r.freeness.target_free_left);
}

TEST(Morphism, SurjectionOfExteriorAlgebras) {
  Field f = Field::prime(3);
  QuadPresentation a = exterior_algebra(f, {"x", "y"});
  QuadPresentation b = exterior_algebra(f, {"x"});
  MorphismPresentation g = morphism_from_presentations(a, b, projection(f, 1, 2), 4);
  MorphismReport r = morphism_report(g, {4, 4});
  EXPECT_TRUE(r.first_kind);
  ASSERT_FALSE(r.module_cases.empty());
  EXPECT_EQ(r.module_cases.front(), 'a');
  EXPECT_TRUE(r.target_koszul);
}

TEST(Morphism, PolynomialSurjectionHasFreeKernel) {
  Field f = Field::prime(3);
  QuadPresentation a = polynomial_algebra(f, {"x", "y"});
  QuadPresentation b = polynomial_algebra(f, {"x"});
  MorphismPresentation g = morphism_from_presentations(a, b, projection(f, 1, 2), 4);
  MorphismReport r = morphism_report(g, {4, 4});
  EXPECT_TRUE(r.freeness.kernel_free_left);
  EXPECT_EQ(r.freeness.generator_shift, 1);
  EXPECT_TRUE(r.freeness.consistent);
  EXPECT_NE(std::find(r.freeness_cases.begin(), r.freeness_cases.end(), 'b'), r.freeness_cases.end());
}

TEST(Morphism, RejectsIncompatibleMaps) {
  Field f = Field::prime(3);
  QuadPresentation a = polynomial_algebra(f, {"x", "y"});
  QuadPresentation b = exterior_algebra(f, {"x", "y"});
  EXPECT_THROW(morphism_from_presentations(a, b, Mat::identity(f, 2), 3), InputError);
  MorphismPresentation id = morphism_from_presentations(a, a, Mat::identity(f, 2), 3);
  id.maps[2].set(0, 0, 2);
  try {
    id.validate();
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("(1,1)"), std::string::npos) << e.what();
  }
}

TEST(Morphism, DegreeOneConstructionMatchesPresentation) {
  Field f = Field::prime(5);
  QuadPresentation a = polynomial_algebra(f, {"x", "y"});
  MorphismPresentation p = morphism_from_presentations(a, a, Mat::from_ints(f, 2, 2, {1, 2, 0, 1}), 3);
  MorphismPresentation t = morphism_from_degree_one(p.source, p.target, p.maps[1]);
  EXPECT_EQ(t.maps, p.maps);
}

TEST(Morphism, SecondKindWithKoszulSourceGivesKoszulTarget) {
  std::mt19937 rng(113);
  Field f = Field::prime(2);
  QuadPresentation a = polynomial_algebra(f, names(2));
  int second = 0;
  for (int t = 0; t < 10; ++t) {
    // Quotients of k[x,y] by one extra quadratic relation.
    QuadPresentation b = a;
    Subspace s = random_subspace(f, 4, 1, rng);
    b.r = sum(a.r, s);
    MorphismPresentation g = morphism_from_presentations(a, b, Mat::identity(f, 2), 4);
    MorphismReport r;
    ASSERT_NO_THROW(r = morphism_report(g, {4, 4}));
    if (r.second_kind) {
      ++second;
      EXPECT_TRUE(r.target_koszul);
      EXPECT_TRUE(certify(b, nullptr, 4).holds());
    }
  }
  EXPECT_GT(second, 0);
}

TEST(DualityCrossCheck, IdentityMorphism) {
  Field f = Field::prime(3);
  QuadPresentation p = exterior_algebra(f, {"x", "y"});
  DualityReport r = duality_crosscheck(morphism_from_presentations(p, p, Mat::identity(f, 2), 4), {4, 4});
  EXPECT_TRUE(r.agree);
  for (const auto& [ij, d] : r.tor.entries) EXPECT_EQ(d, ij == std::make_pair(0, 0) ? 1u : 0u);
}

TEST(DualityCrossCheck, ExteriorSurjection) {
  Field f = Field::prime(3);
  QuadPresentation a = exterior_algebra(f, {"x", "y"});
  QuadPresentation b = exterior_algebra(f, {"x"});
  DualityReport r = duality_crosscheck(morphism_from_presentations(a, b, projection(f, 1, 2), 4), {4, 4});
  EXPECT_TRUE(r.agree);
  EXPECT_EQ(r.free_right_iff_comodule_koszul, true);
  EXPECT_EQ(r.surjective_diagonal_vanishes, true);
}

TEST(DualityCrossCheck, UnitMap) {
  Field f = Field::prime(3);
  QuadPresentation k = tensor_presentation(f, {});
  QuadPresentation b = exterior_algebra(f, {"x"});
  DualityReport r = duality_crosscheck(morphism_from_presentations(k, b, Mat(f, 1, 0), 4), {4, 4});
  EXPECT_TRUE(r.agree);
  EXPECT_EQ(r.tor.at(0, 0), 1u);
  EXPECT_EQ(r.tor.at(0, 1), 1u);
  EXPECT_EQ(r.tor.at(0, 2), 0u);
}

TEST(DualityCrossCheck, RejectsNonKoszulEnds) {
  std::mt19937 rng(127);
  Field f = Field::prime(2);
  for (int t = 0; t < 40; ++t) {
    QuadPresentation p = random_presentation(f, 3, 2 + t % 5, rng);
    CertifyOptions opt;
    opt.methods = {Method::Homology};
    if (certify(p, nullptr, 4, opt).holds()) continue;
    MorphismPresentation id = morphism_from_presentations(p, p, Mat::identity(f, 3), 4);
    EXPECT_THROW(duality_crosscheck(id, {4, 4}), InputError);
    return;
  }
  FAIL() << "no non-Koszul presentation drawn";
}

TEST(DualityCrossCheck, RandomMorphismsAgree) {
  // Any linear map preserves the relations of exterior and of polynomial
  // algebras; over F_2 polynomial relations also sit inside exterior ones.
  std::mt19937 rng(131);
  int done = 0;
  for (int t = 0; t < 20; ++t) {
    Field f = Field::prime(t % 4 == 3 ? 2 : 3);
    std::size_t da = 1 + rng() % 3, db = 1 + rng() % 3;
    int kind = t % 4 == 3 ? 2 : t % 2;
    QuadPresentation a = kind == 0 ? exterior_algebra(f, names(da)) : polynomial_algebra(f, names(da));
    QuadPresentation b = kind == 1 ? polynomial_algebra(f, names(db)) : exterior_algebra(f, names(db));
    Mat f1(f, db, da);
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < da; ++j) f1.set(i, j, static_cast<std::int64_t>(rng() % f.characteristic()));
    DualityReport r = duality_crosscheck(morphism_from_presentations(a, b, f1, 4), {4, 4});
    EXPECT_TRUE(r.agree) << t;
    EXPECT_EQ(r.tor, r.cot) << t;
    EXPECT_EQ(r.tor, r.complex) << t;
    ++done;
  }
  EXPECT_EQ(done, 20);
}
