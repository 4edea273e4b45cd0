#include "koszul/lie.hpp"

#include "koszul/error.hpp"

#include <fmt/format.h>

#include <cstdint>
#include <limits>

namespace koszul {

const char* to_string(LieFlavor f) { return f == LieFlavor::Lie ? "lie" : "super-lie"; }

const char* to_string(CoalgebraSymmetry s) {
  switch (s) {
    case CoalgebraSymmetry::Cocommutative: return "cocommutative";
    case CoalgebraSymmetry::SkewCocommutative: return "skew-cocommutative";
    case CoalgebraSymmetry::Both: return "both";
    case CoalgebraSymmetry::Neither: return "neither";
  }
  return "?";
}

const char* to_string(TableSymmetry s) {
  switch (s) {
    case TableSymmetry::Commutative: return "commutative";
    case TableSymmetry::SkewCommutative: return "skew-commutative";
    case TableSymmetry::Both: return "both";
    case TableSymmetry::Neither: return "neither";
  }
  return "?";
}

Subspace admissible_relations(Field f, std::size_t d, LieFlavor flavor) {
  const bool super = flavor == LieFlavor::SuperLie;
  Mat m(f, d * (d + 1) / 2, d * d);
  std::size_t r = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      if (i == j) {
        if (super) m.set(r++, i * d + i, 1);
        continue;
      }
      m.set(r, i * d + j, 1);
      m.set(r, j * d + i, super ? 1 : -1);
      ++r;
    }
  return echelonize(m.row_block(0, r));
}

void LiePresentation::validate() const {
  if (relations.ambient_dim() != dim() * dim())
    throw InputError(fmt::format("relations live in a space of dim {}, expected {}", relations.ambient_dim(),
                                 dim() * dim()));
  if (!admissible_relations(field, dim(), flavor).contains(relations))
    throw InputError(fmt::format("relations leave the {} part of V⊗V",
                                 flavor == LieFlavor::Lie ? "antisymmetric" : "symmetric"));
}

LiePresentation free_lie(Field f, std::vector<std::string> labels, LieFlavor flavor) {
  const std::size_t d = labels.size();
  return LiePresentation{f, std::move(labels), flavor, Subspace(f, d * d)};
}

LiePresentation abelian_lie(Field f, std::vector<std::string> labels, LieFlavor flavor) {
  const std::size_t d = labels.size();
  return LiePresentation{f, std::move(labels), flavor, admissible_relations(f, d, flavor)};
}

QuadPresentation enveloping_presentation(const LiePresentation& l) {
  l.validate();
  QuadPresentation p;
  p.field = l.field;
  p.v_labels = l.labels;
  p.r = l.relations;
  p.validate();
  return p;
}

std::vector<std::size_t> pbw_dims(const std::vector<std::size_t>& lie_dims, LieFlavor flavor, int n) {
  std::vector<std::size_t> s(static_cast<std::size_t>(n) + 1, 0);
  s[0] = 1;
  for (int k = 1; k <= n && k <= static_cast<int>(lie_dims.size()); ++k) {
    const bool odd = flavor == LieFlavor::SuperLie && k % 2 == 1;
    for (std::size_t c = 0; c < lie_dims[k - 1]; ++c) {
      if (odd) {
        for (int m = n; m >= k; --m) s[m] += s[m - k];  // (1 + t^k)
      } else {
        for (int m = k; m <= n; ++m) s[m] += s[m - k];  // 1/(1 - t^k)
      }
    }
  }
  return s;
}

std::optional<bool> pbw_consistent(const LiePresentation& l, int window, std::size_t budget) {
  l.validate();
  std::vector<std::size_t> dims;
  if (l.relations.dim() == 0) {
    dims = free_lie_dims(l.dim(), l.flavor, window);
  } else if (l.relations == admissible_relations(l.field, l.dim(), l.flavor)) {
    dims.assign(static_cast<std::size_t>(window), 0);
    if (window >= 1) dims[0] = l.dim();
  } else {
    return std::nullopt;
  }
  auto u = table_from_presentation(enveloping_presentation(l), nullptr, window, budget).algebra.dims;
  return u == pbw_dims(dims, l.flavor, window);
}

namespace {

int mobius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

std::int64_t checked_power(std::size_t d, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (d && r > std::numeric_limits<std::int64_t>::max() / 4 / static_cast<std::int64_t>(d))
      throw BudgetError(fmt::format("{}^{} overflows the counting range", d, e));
    r *= static_cast<std::int64_t>(d);
  }
  return r;
}

}  // namespace

std::vector<std::size_t> free_lie_dims_mobius(std::size_t d, LieFlavor flavor, int n) {
  std::vector<std::size_t> out;
  for (int m = 1; m <= n; ++m) {
    std::int64_t sum = 0;
    for (int k = 1; k <= m; ++k) {
      if (m % k) continue;
      std::int64_t term = mobius(k) * checked_power(d, m / k);
      if (flavor == LieFlavor::SuperLie && (m + m / k) % 2) term = -term;
      sum += term;
    }
    if (sum < 0 || sum % m) throw InternalError(fmt::format("necklace count {} not divisible by {}", sum, m));
    out.push_back(static_cast<std::size_t>(sum / m));
  }
  return out;
}

std::vector<std::size_t> free_lie_dims_hall(std::size_t d, LieFlavor flavor, int n) {
  // Hall set: letters, then by degree [u,v] with u > v and, when u = [w,x],
  // x <= v. Order = creation index.
  struct Node {
    int degree;
    std::int64_t right;  // -1 for letters
  };
  std::vector<Node> hall;
  std::vector<std::vector<std::size_t>> by_degree(static_cast<std::size_t>(n) + 1);
  std::vector<std::size_t> out(static_cast<std::size_t>(n), 0);
  if (n < 1) return out;
  for (std::size_t k = 0; k < d; ++k) {
    by_degree[1].push_back(hall.size());
    hall.push_back({1, -1});
  }
  for (int m = 2; m <= n; ++m)
    for (int dv = 1; dv < m; ++dv) {
      const int du = m - dv;
      if (du < dv) continue;
      for (std::size_t u : by_degree[du])
        for (std::size_t v : by_degree[dv]) {
          if (u <= v) continue;
          if (hall[u].right >= 0 && static_cast<std::size_t>(hall[u].right) > v) continue;
          by_degree[m].push_back(hall.size());
          hall.push_back({m, static_cast<std::int64_t>(v)});
        }
    }
  for (int m = 1; m <= n; ++m) {
    out[m - 1] = by_degree[m].size();
    // Squares of odd Hall elements; they take no part in further brackets.
    if (flavor == LieFlavor::SuperLie && m % 2 == 0 && (m / 2) % 2 == 1) out[m - 1] += by_degree[m / 2].size();
  }
  return out;
}

std::vector<std::size_t> free_lie_dims(std::size_t d, LieFlavor flavor, int n) {
  auto a = free_lie_dims_mobius(d, flavor, n);
  auto b = free_lie_dims_hall(d, flavor, n);
  if (a != b) throw InternalError("necklace count and Hall basis disagree on free Lie dimensions");
  return a;
}

namespace {

// c -> c with the first i tensor factors moved behind the last j.
Mat block_swap(const Mat& rows, std::size_t d, int i, int j) {
  const std::int64_t di = checked_power(d, i), dj = checked_power(d, j);
  Mat out(rows.field(), rows.rows(), rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r)
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      if (rows.is_zero_at(r, c)) continue;
      const std::size_t hi = c / static_cast<std::size_t>(dj), lo = c % static_cast<std::size_t>(dj);
      out.set(r, lo * static_cast<std::size_t>(di) + hi, rows.at(r, c));
    }
  return out;
}

}  // namespace

SymmetryReport cocommutativity_check(const QuadPresentation& p, int window, std::size_t budget) {
  p.validate();
  SymmetryReport rep;
  rep.window = window;
  for (int n = 2; n <= window; ++n) {
    const Subspace cn = coalgebra_space(p, nullptr, n, budget);
    const Mat& b = cn.basis();
    if (b.rows() == 0) break;  // C_m = 0 from here on
    for (int i = 1; i < n; ++i) {
      const int j = n - i;
      Mat s = block_swap(b, p.dim(), i, j);
      if (!rep.flip_fails_at && s != b) rep.flip_fails_at = n;
      const Mat signed_b = (i * j) % 2 ? b.scaled(Scalar(p.field, -1)) : b;
      if (!rep.signed_flip_fails_at && s != signed_b) rep.signed_flip_fails_at = n;
    }
  }
  const bool c = !rep.flip_fails_at, s = !rep.signed_flip_fails_at;
  rep.verdict = c && s ? CoalgebraSymmetry::Both
                : c    ? CoalgebraSymmetry::Cocommutative
                : s    ? CoalgebraSymmetry::SkewCocommutative
                       : CoalgebraSymmetry::Neither;
  return rep;
}

TableSymmetry table_symmetry(const GradedAlgebraTable& a) {
  a.validate();
  bool comm = true, skew = true;
  const int n = a.max_degree();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; i + j <= n; ++j) {
      const std::size_t di = a.dim(i), dj = a.dim(j);
      const Mat& ij = a.mul(i, j);
      const Mat& ji = a.mul(j, i);
      for (std::size_t x = 0; x < di; ++x)
        for (std::size_t y = 0; y < dj; ++y)
          for (std::size_t r = 0; r < a.dim(i + j); ++r) {
            const Scalar u = ij.at(r, x * dj + y), v = ji.at(r, y * di + x);
            if (u != v) comm = false;
            if ((i * j) % 2 ? u != -v : u != v) skew = false;
          }
    }
  return comm && skew ? TableSymmetry::Both
         : comm       ? TableSymmetry::Commutative
         : skew       ? TableSymmetry::SkewCommutative
                      : TableSymmetry::Neither;
}

namespace {

TableSymmetry meet(TableSymmetry a, TableSymmetry b) {
  auto allows = [](TableSymmetry s, TableSymmetry k) { return s == k || s == TableSymmetry::Both; };
  const bool c = allows(a, TableSymmetry::Commutative) && allows(b, TableSymmetry::Commutative);
  const bool s = allows(a, TableSymmetry::SkewCommutative) && allows(b, TableSymmetry::SkewCommutative);
  return c && s ? TableSymmetry::Both
         : c    ? TableSymmetry::Commutative
         : s    ? TableSymmetry::SkewCommutative
                : TableSymmetry::Neither;
}

}  // namespace

LieFreenessReport freeness_report(const MorphismPresentation& f, int window, std::size_t budget) {
  f.validate();
  if (window < 1) throw InputError("freeness report needs a positive window");
  if (f.max_degree() < window) throw InputError(fmt::format("morphism must reach degree {}", window));
  MorphismPresentation g = f;
  g.source = f.source.truncated(window);
  g.target = f.target.truncated(window);
  g.maps.resize(static_cast<std::size_t>(window) + 1);
  const GradedAlgebraTable& a = g.source;
  const GradedAlgebraTable& b = g.target;

  LieFreenessReport rep;
  rep.window = window;
  rep.symmetry = meet(table_symmetry(a), table_symmetry(b));
  if (rep.symmetry == TableSymmetry::Neither)
    throw InputError("ends are not both commutative or both skew-commutative");
  CertifyOptions hom;
  hom.methods = {Method::Homology};
  hom.term_budget = budget;
  if (!certify(a, nullptr, window, hom).holds()) throw InputError("source is not Koszul in the window");
  if (!certify(b, nullptr, window, hom).holds()) throw InputError("target is not Koszul in the window");

  rep.tor = tor_bigraded(trivial_module_table(a, true), a, target_as_module(g, false), {window, window}, budget);
  for (const auto& [ij, d] : rep.tor.entries)
    if (d && ij.second - ij.first >= 2) {
      rep.band_failure = ij;
      break;
    }
  rep.band_vanishes = !rep.band_failure;
  rep.koszul_module = rep.tor.diagonal();

  rep.surjective = true;
  for (int n = 0; n <= window; ++n)
    rep.surjective = rep.surjective && (b.dim(n) == 0 || rank(g.maps[n]) == b.dim(n));

  const QuadPresentation pa = f.source_presentation ? *f.source_presentation : quadratic_part(a).algebra;
  const QuadPresentation pb = f.target_presentation ? *f.target_presentation : quadratic_part(b).algebra;
  bool all = true;
  for (int n = 0; n <= window; ++n) {
    bool onto = true;
    if (n >= 1) {
      Mat m = dual_map(pa, pb, g.maps[1], n);
      onto = m.rows() == 0 || rank(m) == m.rows();
    }
    rep.dual_surjective.push_back(onto);
    all = all && onto;
  }
  if (rep.surjective) rep.pairing_agrees = rep.koszul_module == all;
  return rep;
}

}  // namespace koszul
