#include "koszul/conilpotent.hpp"

#include "koszul/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>

namespace koszul {

namespace {

constexpr int kOutside = std::numeric_limits<int>::max() / 4;

std::size_t safe_rank(const Mat& m) { return m.empty() ? 0 : rank(m); }

bool injective(const Mat& m) { return m.cols() == 0 || safe_rank(m) == m.cols(); }

// A basis of k^n adapted to nested subspaces: the complements of each level
// in the next, then a complement of the top. Returns the basis vectors as
// columns together with the level of each.
std::pair<Mat, std::vector<int>> adapted_basis(Field f, std::size_t n, const std::vector<Subspace>& levels) {
  Echelon e(f, n);
  Mat cols(f, n, n);
  std::vector<int> lvl;
  auto take = [&](const SparseVec& v, int level) {
    if (e.insert(v) == Echelon::npos) return;
    for (std::size_t k = 0; k < v.size(); ++k) cols.add_to(v.idx[k], lvl.size(), v.value(f, k));
    lvl.push_back(level);
  };
  for (std::size_t l = 0; l < levels.size(); ++l)
    for (std::size_t r = 0; r < levels[l].dim(); ++r) take(levels[l].row(r), static_cast<int>(l));
  for (std::size_t k = 0; k < n && lvl.size() < n; ++k) {
    SparseVec v;
    v.push(static_cast<std::uint32_t>(k), Scalar(f, 1));
    take(v, kOutside);
  }
  return {cols, lvl};
}

std::vector<std::size_t> level_positions(const std::vector<int>& lvl, int level) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < lvl.size(); ++k)
    if (lvl[k] == level) out.push_back(k);
  return out;
}

// Trims trailing repeats so that levels[stabilization] is the first of the
// constant tail.
Filtration make_filtration(std::vector<Subspace> levels) {
  while (levels.size() >= 2 && levels[levels.size() - 2] == levels.back()) levels.pop_back();
  Filtration f;
  f.stabilization = static_cast<int>(levels.size()) - 1;
  f.levels = std::move(levels);
  return f;
}

GradedCoalgebraTable pad(const GradedCoalgebraTable& c, int n) {
  if (c.max_degree() >= n) return c;
  GradedCoalgebraTable o;
  o.field = c.field;
  o.labels = c.labels;
  for (int k = 0; k <= n; ++k) o.dims.push_back(c.dim(k));
  o.delta.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      o.delta[i].push_back(i + j <= c.max_degree() ? c.comul(i, j)
                                                   : Mat(c.field, o.dims[i] * o.dims[j], o.dims[i + j]));
  return o;
}

GradedComoduleTable pad(const GradedComoduleTable& p, const GradedCoalgebraTable& c, int n) {
  if (p.max_degree() >= n) return p;
  GradedComoduleTable o;
  o.field = p.field;
  o.right = p.right;
  o.labels = p.labels;
  for (int k = 0; k <= n; ++k) o.dims.push_back(p.dim(k));
  o.coact.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      o.coact[i].push_back(i + j <= p.max_degree() ? p.coaction(i, j)
                                                   : Mat(p.field, c.dim(i) * o.dims[j], o.dims[i + j]));
  return o;
}

GradedCoalgebraTable cut(const GradedCoalgebraTable& c, int n) {
  GradedCoalgebraTable o = pad(c, n);
  o.dims.resize(static_cast<std::size_t>(n) + 1);
  o.delta.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) o.delta[i].resize(static_cast<std::size_t>(n - i) + 1);
  return o;
}

CertifyOptions only(std::vector<Method> m) {
  CertifyOptions o;
  o.methods = std::move(m);
  return o;
}

// Quadratic presentation of q(gr C) read from Δ : C_2 -> C_1⊗C_1; its
// algebra reading is (gr C)^!.
QuadPresentation cogenerated_part(const GradedCoalgebraTable& c) {
  QuadPresentation p;
  p.field = c.field;
  const std::size_t d = c.dim(1);
  for (std::size_t k = 0; k < d; ++k) p.v_labels.push_back(fmt::format("c{}", k));
  p.r = c.max_degree() >= 2 && c.dim(2) ? echelonize(c.comul(1, 1).transpose()) : Subspace(c.field, d * d);
  return p;
}

QuadModulePresentation cogenerated_part(const GradedComoduleTable& m, const GradedCoalgebraTable& c) {
  QuadModulePresentation q;
  const std::size_t u = m.dim(0);
  for (std::size_t k = 0; k < u; ++k) q.u_labels.push_back(fmt::format("u{}", k));
  q.s = m.max_degree() >= 1 && m.dim(1) ? echelonize(m.coaction(1, 0).transpose())
                                        : Subspace(c.field, c.dim(1) * u);
  return q;
}

struct CohomologyMorphism {
  FDCohomology hs, ht;
  MorphismPresentation f;
};

// The algebra map H^*(S) -> H^*(T) of a coalgebra morphism, through degree n.
CohomologyMorphism cohomology_morphism(const CoalgebraMorphism& g, int n, std::size_t budget) {
  CohomologyMorphism out;
  out.hs = fd_cohomology(g.source, nullptr, nullptr, n, true, budget);
  out.ht = fd_cohomology(g.target, nullptr, nullptr, n, true, budget);
  out.f.source = cohomology_algebra(out.hs, g.source);
  out.f.target = cohomology_algebra(out.ht, g.target);
  out.f.maps.push_back(Mat::identity(g.source.field, 1));
  for (int i = 1; i <= n; ++i) out.f.maps.push_back(induced_cohomology_map(g, out.hs, out.ht, i));
  out.f.validate();
  return out;
}

}  // namespace

FiltrationResult filtration_and_gr(const FDCoalgebra& c, const FDComodule* p) {
  c.validate();
  if (p) p->validate(c);
  const Field f = c.field;
  ReducedCoalgebra rc = reduce(c);
  const std::size_t dp = rc.dim;

  // c ∈ N_n iff Δ̄(c̄) ∈ N̄_{n-1}⊗C_+, with N̄_0 = 0.
  std::vector<Subspace> bar{Subspace(f, dp)};
  for (;;) {
    Mat m = kron(quotient_map(bar.back()), Mat::identity(f, dp)) * rc.delta;
    Subspace next = dp ? kernel_subspace(m) : Subspace(f, 0);
    if (!next.contains(bar.back())) throw InternalError("coaugmentation filtration is not increasing");
    if (next == bar.back()) break;
    bar.push_back(std::move(next));
  }

  FiltrationResult out;
  const Subspace chi = echelonize(c.chi.transpose());
  std::vector<Subspace> levels;
  for (const auto& b : bar) levels.push_back(sum(chi, b.dim() ? map_subspace(rc.incl, b) : Subspace(f, c.dim)));
  out.coalgebra = make_filtration(levels);
  const int s = out.coalgebra.stabilization;

  // Adapted basis: χ, then complements inside ker ε, then the rest of ker ε.
  auto [bb, blvl] = adapted_basis(f, dp, std::vector<Subspace>(bar.begin() + 1, bar.end()));
  for (auto& l : blvl)
    if (l != kOutside) ++l;
  Mat t = hstack(c.chi, rc.incl * bb);
  std::vector<int> lvl{0};
  lvl.insert(lvl.end(), blvl.begin(), blvl.end());
  Mat ti = inverse(t);
  Mat d = kron(ti, ti) * c.delta * t;
  const std::size_t n = c.dim;
  for (std::size_t col = 0; col < n; ++col) {
    if (lvl[col] == kOutside) continue;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!d.is_zero_at(a * n + b, col) && lvl[a] + lvl[b] > lvl[col])
          throw InternalError("comultiplication does not respect the coaugmentation filtration");
  }

  GradedCoalgebraTable& gr = out.gr;
  gr.field = f;
  std::vector<std::vector<std::size_t>> pos;
  for (int k = 0; k <= s; ++k) {
    pos.push_back(level_positions(lvl, k));
    gr.dims.push_back(pos.back().size());
  }
  gr.delta.resize(static_cast<std::size_t>(s) + 1);
  for (int i = 0; i <= s; ++i)
    for (int j = 0; i + j <= s; ++j) {
      Mat m(f, gr.dims[i] * gr.dims[j], gr.dims[i + j]);
      for (std::size_t x = 0; x < pos[i].size(); ++x)
        for (std::size_t y = 0; y < pos[j].size(); ++y)
          for (std::size_t z = 0; z < pos[i + j].size(); ++z) {
            const std::size_t row = pos[i][x] * n + pos[j][y];
            if (!d.is_zero_at(row, pos[i + j][z])) m.set(x * gr.dims[j] + y, z, d.at(row, pos[i + j][z]));
          }
      gr.delta[i].push_back(std::move(m));
    }
  gr.validate();

  out.nilp = restrict_coalgebra(c, out.coalgebra.top());
  out.nilp_inclusion = out.coalgebra.top().basis().transpose();
  out.conilpotent = out.coalgebra.top().dim() == n;

  // One-cogeneration, read pairwise and through the iterated comultiplication.
  bool pairwise = true;
  for (int i = 1; i <= s; ++i)
    for (int j = 1; i + j <= s; ++j) pairwise = pairwise && injective(gr.comul(i, j));
  bool iterated = true, iterated_known = true;
  Mat it = Mat::identity(f, gr.dim(1));
  for (int k = 2; k <= s; ++k) {
    std::size_t width = 1;
    for (int e = 0; e < k && width <= 1000000; ++e) width *= std::max<std::size_t>(gr.dim(1), 1);
    if (width > 1000000) {
      iterated_known = false;
      break;
    }
    it = kron(Mat::identity(f, gr.dim(1)), it) * gr.comul(1, k - 1);
    iterated = iterated && injective(it);
  }
  if (iterated_known && iterated != pairwise)
    throw InternalError("the two one-cogeneration tests disagree on gr C");
  if (!pairwise) throw InternalError("gr C is not one-cogenerated");
  out.gr_one_cogenerated = pairwise;

  if (!p) return out;

  const std::size_t np = p->dim;
  auto comodule_level = [&](const Subspace& nc) {
    Mat q = quotient_map(nc);
    Mat m = p->right ? kron(Mat::identity(f, np), q) * p->coact : kron(q, Mat::identity(f, np)) * p->coact;
    return m.rows() ? kernel_subspace(m) : Subspace::full(f, np);
  };
  std::vector<Subspace> plevels;
  for (int k = 0; k <= s; ++k) plevels.push_back(comodule_level(out.coalgebra.levels[k]));
  out.comodule = make_filtration(plevels);
  const int sp = out.comodule->stabilization;

  auto [tp, plvl] = adapted_basis(f, np, out.comodule->levels);
  Mat tpi = inverse(tp);
  Mat dpm = p->right ? kron(tpi, ti) * p->coact * tp : kron(ti, tpi) * p->coact * tp;
  auto row_of = [&](std::size_t a, std::size_t q) { return p->right ? q * n + a : a * np + q; };
  for (std::size_t col = 0; col < np; ++col) {
    if (plvl[col] == kOutside) continue;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t q = 0; q < np; ++q)
        if (!dpm.is_zero_at(row_of(a, q), col) && lvl[a] + plvl[q] > plvl[col])
          throw InternalError("coaction does not respect the coaugmentation filtrations");
  }

  const int top = std::max(s, sp);
  out.gr = pad(out.gr, top);
  std::vector<std::vector<std::size_t>> ppos;
  GradedComoduleTable gp;
  gp.field = f;
  gp.right = p->right;
  for (int k = 0; k <= top; ++k) {
    ppos.push_back(level_positions(plvl, k));
    gp.dims.push_back(ppos.back().size());
    if (k > s) pos.emplace_back();
  }
  gp.coact.resize(static_cast<std::size_t>(top) + 1);
  for (int i = 0; i <= top; ++i)
    for (int j = 0; i + j <= top; ++j) {
      const std::size_t ci = out.gr.dim(i), pj = gp.dims[j];
      Mat m(f, ci * pj, gp.dims[i + j]);
      for (std::size_t x = 0; x < ci; ++x)
        for (std::size_t y = 0; y < pj; ++y)
          for (std::size_t z = 0; z < ppos[i + j].size(); ++z) {
            const std::size_t row = row_of(pos[i][x], ppos[j][y]);
            if (!dpm.is_zero_at(row, ppos[i + j][z]))
              m.set(p->right ? y * ci + x : x * pj + y, z, dpm.at(row, ppos[i + j][z]));
          }
      gp.coact[i].push_back(std::move(m));
    }
  gp.validate(out.gr);

  bool all_pairs = true, from_zero = true;
  for (int i = 1; i <= top; ++i) {
    from_zero = from_zero && injective(gp.coaction(i, 0));
    for (int j = 0; i + j <= top; ++j) all_pairs = all_pairs && injective(gp.coaction(i, j));
  }
  if (all_pairs != from_zero) throw InternalError("the two one-cogeneration tests disagree on gr P");
  if (!all_pairs) throw InternalError("gr P is not one-cogenerated");
  out.gr_comodule_one_cogenerated = all_pairs;
  out.gr_comodule = std::move(gp);
  return out;
}

FDCoalgebra incidence_coalgebra(Field f, std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& le,
                                std::size_t base) {
  if (base >= n) throw InputError("base point outside the poset");
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) r[x][x] = true;
  for (auto [x, y] : le) {
    if (x >= n || y >= n) throw InputError("order relation mentions a point outside the poset");
    r[x][y] = true;
  }
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (r[x][z] && r[z][y]) r[x][y] = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && r[x][y] && r[y][x]) throw InputError("order relation is not antisymmetric");

  std::vector<std::vector<std::size_t>> idx(n, std::vector<std::size_t>(n, 0));
  std::size_t count = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (r[x][y]) idx[x][y] = count++;
  FDCoalgebra c;
  c.field = f;
  c.dim = count;
  c.delta = Mat(f, count * count, count);
  c.eps = Mat(f, 1, count);
  c.chi = Mat(f, count, 1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!r[x][y]) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (r[x][z] && r[z][y]) c.delta.set(idx[x][z] * count + idx[z][y], idx[x][y], 1);
    }
  for (std::size_t x = 0; x < n; ++x) c.eps.set(0, idx[x][x], 1);
  c.chi.set(idx[base][base], 0, 1);
  c.validate();
  return c;
}

GradedModuleTable cohomology_module(const FDCohomology& ha, const FDCohomology& hp, const FDCoalgebra& c) {
  if (ha.reps.size() != ha.dims.size() || hp.reps.size() != hp.dims.size())
    throw InputError("cohomology module needs representatives");
  const int n = std::min(ha.max_degree(), hp.max_degree());
  GradedModuleTable m;
  m.field = c.field;
  m.dims.assign(hp.dims.begin(), hp.dims.begin() + n + 1);
  m.act.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      const Mat& ri = ha.reps[i];
      const Mat& rj = hp.reps[j];
      Mat prods(c.field, ri.rows() * rj.rows(), hp.term_dims[i + j]);
      for (std::size_t x = 0; x < ri.rows(); ++x)
        for (std::size_t y = 0; y < rj.rows(); ++y) {
          Mat row = kron(ri.row(x), rj.row(y));
          for (std::size_t k = 0; k < row.cols(); ++k)
            if (!row.is_zero_at(0, k)) prods.set(x * rj.rows() + y, k, row.at(0, k));
        }
      m.act[i].push_back(hp.coordinates(i + j, prods));
    }
  if (ha.dims[0] == 1 && ha.reps[0].rows() == 1 && !ha.reps[0].at(0, 0).is_one()) {
    const Scalar inv = ha.reps[0].at(0, 0).inverse();
    for (int j = 0; j <= n; ++j) m.act[0][j] = m.act[0][j].scaled(inv);
  }
  return m;
}

std::string CohomologyHypotheses::first_failure() const {
  if (!quadratic_part_koszul) return "quadratic part is not Koszul";
  if (!degree2_iso) return "qA -> A is not an isomorphism in degree 2";
  if (!degree3_mono) return "qA -> A is not a monomorphism in degree 3";
  return {};
}

CohomologyHypotheses cohomology_hypotheses(const GradedAlgebraTable& a, int window) {
  if (a.max_degree() < 3) throw InputError("cohomology hypotheses need the algebra through degree 3");
  CohomologyHypotheses h;
  QuadraticPart q = quadratic_part(a.truncated(3));
  h.degree2_iso = q.algebra_comparison[2].kind() == CompareKind::Iso;
  h.degree3_mono = q.algebra_comparison[3].injective;
  h.quadratic_part_koszul = certify(q.algebra, nullptr, window, only({Method::Homology, Method::KoszulComplex})).holds();
  return h;
}

ComparisonReport comparison_report(const FDCoalgebra& c, int window, std::size_t budget) {
  if (window < 2) throw InputError("comparison needs a window of at least 2");
  FiltrationResult fr = filtration_and_gr(c);
  CoalgebraMorphism g{fr.nilp, c, fr.nilp_inclusion};
  g.validate();
  ComparisonReport rep;
  rep.window = window;
  rep.nilp_dim = fr.nilp.dim;
  FDCohomology hn = fd_cohomology(fr.nilp, nullptr, nullptr, window, true, budget);
  FDCohomology hc = fd_cohomology(c, nullptr, nullptr, window, true, budget);
  rep.nilp_dims = hn.dims;
  rep.full_dims = hc.dims;
  rep.ranks.push_back(1);
  for (int i = 1; i <= window; ++i) rep.ranks.push_back(safe_rank(induced_cohomology_map(g, hn, hc, i)));
  rep.degree1_iso = rep.ranks[1] == hn.dims[1] && rep.ranks[1] == hc.dims[1];
  rep.degree2_mono = rep.ranks[2] == hn.dims[2];
  if (!rep.degree1_iso || !rep.degree2_mono)
    throw CrossValidationError(
        fmt::format("H^*(Nilp C) -> H^*(C) fails iso in degree 1 or mono in degree 2 (ranks {}, {})", rep.ranks[1],
                    rep.ranks[2]));

  if (window < 3) {
    rep.notes.push_back("hypotheses on H^*(C) need degree 3; not evaluated");
    return rep;
  }
  GradedAlgebraTable a = cohomology_algebra(hc, c);
  rep.hypotheses = cohomology_hypotheses(a, window);
  if (rep.hypotheses->holds()) {
    QuadraticPart q = quadratic_part(a);
    std::vector<std::size_t> qd = table_from_presentation(q.algebra, nullptr, window).algebra.dims;
    rep.matches_quadratic_part = true;
    for (int i = 0; i <= window; ++i) rep.matches_quadratic_part = *rep.matches_quadratic_part && qd[i] == hn.dims[i];
    if (!*rep.matches_quadratic_part)
      throw CrossValidationError("H^*(Nilp C) differs from the quadratic part of H^*(C)");
  }
  if (certify(a, nullptr, window, only({Method::Homology})).holds()) {
    bool iso = true;
    for (int i = 0; i <= window; ++i) iso = iso && rep.ranks[i] == hn.dims[i] && rep.ranks[i] == hc.dims[i];
    rep.koszul_iso = iso;
    if (!iso) throw CrossValidationError("H^*(C) is Koszul but H^*(Nilp C) -> H^*(C) is not an isomorphism");
  }
  return rep;
}

GroupComparison group_comparison(const GroupTable& g, std::uint32_t l, int window, std::size_t budget) {
  g.validate();
  const Field f = Field::prime(l);
  std::vector<std::uint32_t> proj;
  GroupTable q = maximal_l_quotient(g, l, &proj);
  GroupComparison out;
  out.quotient_order = q.order;
  FDCoalgebra kg = group_coalgebra(g, f);
  CoalgebraMorphism m{group_coalgebra(q, f), kg, Mat(f, g.order, q.order)};
  for (std::size_t h = 0; h < g.order; ++h) m.map.set(h, proj[h], 1);
  m.validate();
  out.coalgebra = comparison_report(kg, window, budget);
  CohomologyMorphism cm = cohomology_morphism(m, window, budget);
  out.ranks.push_back(1);
  for (int i = 1; i <= window; ++i) out.ranks.push_back(safe_rank(cm.f.maps[i]));
  if (out.ranks[1] != cm.hs.dims[1] || out.ranks[1] != cm.ht.dims[1] || out.ranks[2] != cm.hs.dims[2])
    throw CrossValidationError("H^*(G^(l)) -> H^*(G) fails iso in degree 1 or mono in degree 2");
  FiltrationResult fr = filtration_and_gr(kg);
  out.nilp_is_quotient_coalgebra = echelonize(m.map.transpose()) == fr.coalgebra.top();
  return out;
}

PipelineReport grading_pipeline(const FDCoalgebra& c, const FDComodule* p, int window, std::size_t budget) {
  if (window < 3) throw InputError("grading pipeline needs a window of at least 3");
  if (p && p->right) throw InputError("grading pipeline takes a left comodule");
  FiltrationResult fr = filtration_and_gr(c, p);
  if (!fr.conilpotent) throw InputError("coalgebra is not conilpotent: the coaugmentation filtration is not full");
  PipelineReport rep;
  rep.window = window;

  // Degree 2 first: it settles most l-groups for odd l (Bockstein classes)
  // before the much larger degree-3 cobar term is touched.
  FDCohomology h = fd_cohomology(c, nullptr, nullptr, 2, true, budget);
  rep.cohomology = cohomology_algebra(h, c);
  QuadraticPart q2 = quadratic_part(rep.cohomology);
  if (q2.algebra_comparison[2].kind() != CompareKind::Iso) {
    rep.hypotheses.quadratic_part_koszul =
        certify(q2.algebra, nullptr, window, only({Method::Homology, Method::KoszulComplex})).holds();
    rep.failure = rep.hypotheses.first_failure();
    rep.notes.push_back("H^*(C) computed through degree 2 only");
    return rep;
  }
  h = fd_cohomology(c, nullptr, nullptr, 3, true, budget);
  rep.cohomology = cohomology_algebra(h, c);
  rep.hypotheses = cohomology_hypotheses(rep.cohomology, window);
  if (!rep.hypotheses.holds()) {
    rep.failure = rep.hypotheses.first_failure();
    return rep;
  }
  if (window > 3) {
    h = fd_cohomology(c, nullptr, nullptr, window, true, budget);
    rep.cohomology = cohomology_algebra(h, c);
  }
  const GradedAlgebraTable& a = rep.cohomology;
  if (!quadratic_part(a).algebra_iso()) throw CrossValidationError("H^*(C) is not quadratic although the hypotheses hold");
  GradedCoalgebraTable grw = cut(fr.gr, window);
  if (!certify(dual_algebra(grw), nullptr, window, only({Method::Homology})).holds())
    throw CrossValidationError("gr_N C is not Koszul although the hypotheses hold");
  rep.gr_dual_dims = table_from_presentation(cogenerated_part(grw), nullptr, window).algebra.dims;
  for (int i = 0; i <= window; ++i)
    if (rep.gr_dual_dims[i] != a.dims[i])
      throw CrossValidationError(fmt::format("dim H^{}(C) = {} but dim (gr_N C)^!_{} = {}", i, a.dims[i], i,
                                             rep.gr_dual_dims[i]));
  rep.conclusions_checked = true;
  if (!p) return rep;

  FDCohomology hp = fd_cohomology(c, nullptr, p, window, true, budget);
  rep.module_cohomology = cohomology_module(h, hp, c);
  const GradedModuleTable& m = *rep.module_cohomology;
  QuadraticPart q = quadratic_part(a, &m);
  const bool cmp = q.module_comparison[1].kind() == CompareKind::Iso &&
                   (window < 2 || q.module_comparison[2].injective);
  const bool kz = certify(q.algebra, &*q.module, window, only({Method::Homology, Method::KoszulComplex})).holds();
  rep.module_hypotheses = cmp && kz;
  if (!kz) {
    rep.failure = "quadratic part of the module is not Koszul";
    return rep;
  }
  if (!cmp) {
    rep.failure = "q_A M -> M is not an isomorphism in degree 1 and a monomorphism in degree 2";
    return rep;
  }
  if (!q.module_iso()) throw CrossValidationError("H^*(C,P) is not quadratic although the hypotheses hold");
  GradedComoduleTable gpw = pad(*fr.gr_comodule, fr.gr, window);
  GradedModuleTable gm = dual_module(gpw).truncated(window);
  if (!certify(dual_algebra(grw), &gm, window, only({Method::Homology})).holds())
    throw CrossValidationError("gr_N P is not Koszul although the hypotheses hold");
  QuadPresentation cp = cogenerated_part(grw);
  QuadModulePresentation mp = cogenerated_part(gpw, grw);
  rep.gr_module_dual_dims = table_from_presentation(cp, &mp, window).module->dims;
  for (int i = 0; i <= window; ++i)
    if (rep.gr_module_dual_dims[i] != m.dims[i])
      throw CrossValidationError(fmt::format("dim H^{}(C,P) = {} but dim (gr_N P)^!_{} = {}", i, m.dims[i], i,
                                             rep.gr_module_dual_dims[i]));
  return rep;
}

CofreenessReport cofreeness_check(const CoalgebraMorphism& g, int window, std::size_t budget) {
  g.validate();
  if (window < 1) throw InputError("cofreeness check needs a positive window");
  CofreenessReport rep;
  rep.window = window;
  FDComodule cd = comodule_along(g, false);
  rep.cohomology = fd_cohomology(g.target, nullptr, &cd, window, false, budget).dims;
  rep.cofree_in_window = true;
  for (int i = 1; i <= window; ++i) rep.cofree_in_window = rep.cofree_in_window && rep.cohomology[i] == 0;

  CohomologyMorphism cm = cohomology_morphism(g, window, budget);
  const CertifyOptions hom = only({Method::Homology});
  rep.ends_koszul = certify(cm.f.source, nullptr, window, hom).holds() && certify(cm.f.target, nullptr, window, hom).holds();
  if (!rep.ends_koszul) return rep;
  const GradedAlgebraTable& a = cm.f.source;
  rep.tor = tor_bigraded(target_as_module(cm.f, true), a, trivial_module_table(a, false), {window, window}, budget);
  bool ok = true;
  for (int t = 1; t <= window; ++t) {
    bool zero = true;
    for (int i = 0; i + t <= window; ++i) zero = zero && rep.tor->at(i, i + t) == 0;
    if (!zero) continue;
    rep.vanishing_bands.push_back(t);
    for (int i = t; i <= window; ++i) ok = ok && rep.cohomology[i] == 0;
  }
  rep.implication_holds = ok;
  return rep;
}

const char* to_string(KernelVerdict v) {
  switch (v) {
    case KernelVerdict::Vacuous: return "vacuous";
    case KernelVerdict::Consistent: return "consistent";
    case KernelVerdict::Undetermined: return "undetermined";
  }
  return "?";
}

GroupCofreenessReport group_cofreeness(const GroupTable& gprime, const std::vector<std::uint32_t>& normal,
                                       std::uint32_t l, int window, std::size_t budget) {
  gprime.validate();
  if (!is_prime_power_of(gprime.order, l)) throw InputError(fmt::format("{} is not an {}-group", gprime.name, l));
  if (!is_normal(gprime, normal)) throw InputError("kernel is not a normal subgroup");
  const Field f = Field::prime(l);
  std::vector<std::uint32_t> proj;
  GroupTable q = quotient_group(gprime, normal, &proj);
  CoalgebraMorphism m{group_coalgebra(q, f), group_coalgebra(gprime, f), Mat(f, gprime.order, q.order)};
  for (std::size_t h = 0; h < gprime.order; ++h) m.map.set(h, proj[h], 1);
  m.validate();

  GroupCofreenessReport rep;
  rep.kernel_order = normal.size();
  rep.cofreeness = cofreeness_check(m, window, budget);
  // H^i(k(G'), k(G'')) vanishes exactly with H^i(N, F_l), and H^1(N, F_l) = Hom(N, F_l).
  if ((rep.cofreeness.cohomology[1] == 0) != (rep.kernel_order == 1))
    throw CrossValidationError("H^1(D, C) does not detect the kernel");
  CohomologyMorphism cm = cohomology_morphism(m, window, budget);
  const GradedAlgebraTable& a = cm.f.source;
  rep.tor = tor_bigraded(trivial_module_table(a, true), a, target_as_module(cm.f, false), {window, window}, budget);
  for (const auto& [ij, d] : rep.tor.entries)
    if (d && ij.second - ij.first >= 2) {
      rep.band_failure = ij;
      break;
    }
  rep.module_koszul = rep.tor.diagonal();
  if (rep.kernel_order == 1)
    rep.verdict = KernelVerdict::Vacuous;
  else
    rep.verdict = rep.band_failure ? KernelVerdict::Consistent : KernelVerdict::Undetermined;
  return rep;
}

KernelShapeReport kernel_shape_hypotheses(const MorphismPresentation& f, const GradedModuleTable& j_kernel, int window) {
  f.validate();
  if (window < 4) throw InputError("kernel shape check needs a window of at least 4");
  if (f.max_degree() < window || j_kernel.max_degree() < window)
    throw InputError(fmt::format("morphism and kernel must reach degree {}", window));
  KernelShapeReport rep;
  rep.window = window;
  const GradedAlgebraTable a = f.source.truncated(window);
  rep.iso_degree1 = f.maps[1].rows() == f.maps[1].cols() && safe_rank(f.maps[1]) == f.maps[1].cols();
  rep.epi_degree2 = safe_rank(f.maps[2]) == f.target.dim(2);
  rep.kernel_starts_in_degree2 = j_kernel.dim(0) == 0 && j_kernel.dim(1) == 0;
  auto fail = [&](const char* why) {
    if (rep.first_failure.empty()) rep.first_failure = why;
  };
  if (!rep.iso_degree1) fail("f is not an isomorphism in degree 1");
  if (!rep.epi_degree2) fail("f is not onto in degree 2");
  if (!rep.kernel_starts_in_degree2) fail("kernel is not a shift K(2): it has elements in degree 0 or 1");
  rep.algebra_koszul = certify(a, nullptr, window, only({Method::Homology})).holds();
  if (rep.kernel_starts_in_degree2) {
    GradedModuleTable k = shifted(j_kernel.truncated(window), -2, window - 2);
    QuadraticPart q = quadratic_part(a.truncated(window - 2), &k);
    rep.kernel_comparison =
        q.module_comparison[1].kind() == CompareKind::Iso && q.module_comparison[2].injective;
    if (!*rep.kernel_comparison) fail("q_A K -> K is not an isomorphism in degree 1 and a monomorphism in degree 2");
    if (!*rep.algebra_koszul) fail("A is not Koszul");
    rep.module_koszul =
        certify(q.algebra, &*q.module, window, only({Method::Homology, Method::KoszulComplex})).holds();
    if (!*rep.module_koszul) fail("q_A K is not Koszul");
  } else if (!*rep.algebra_koszul) {
    fail("A is not Koszul");
  }
  rep.holds = rep.first_failure.empty();
  return rep;
}

}  // namespace koszul
