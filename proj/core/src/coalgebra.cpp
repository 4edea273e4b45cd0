#include "koszul/coalgebra.hpp"

#include "koszul/echelon.hpp"
#include "koszul/error.hpp"

#include <fmt/format.h>

namespace koszul {

namespace {

void check_shape(const Mat& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols)
    throw InputError(fmt::format("{} is {}x{}, expected {}x{}", what, m.rows(), m.cols(), rows, cols));
}

}  // namespace

void FDCoalgebra::validate() const {
  const std::size_t n = dim;
  check_shape(delta, n * n, n, "comultiplication");
  check_shape(eps, 1, n, "counit");
  check_shape(chi, n, 1, "coaugmentation");
  SparseMat d = SparseMat::from_dense(delta);
  SparseMat id = sparse_identity(field, n);
  if (!same_entries(kron(d, id) * d, kron(id, d) * d)) throw InputError("comultiplication is not coassociative");
  SparseMat e = SparseMat::from_dense(eps);
  if (!same_entries(kron(e, id) * d, id) || !same_entries(kron(id, e) * d, id))
    throw InputError("counit axiom fails");
  if ((eps * chi) != Mat::identity(field, 1)) throw InputError("counit does not split the coaugmentation");
  if (delta * chi != kron(chi, chi)) throw InputError("coaugmentation is not a coalgebra map");
}

void FDComodule::validate(const FDCoalgebra& c) const {
  const std::size_t n = dim, m = c.dim;
  check_shape(coact, m * n, n, "coaction");
  SparseMat r = SparseMat::from_dense(coact);
  SparseMat d = SparseMat::from_dense(c.delta);
  SparseMat e = SparseMat::from_dense(c.eps);
  SparseMat ip = sparse_identity(field, n), ic = sparse_identity(field, m);
  if (!right) {
    if (!same_entries(kron(d, ip) * r, kron(ic, r) * r)) throw InputError("left coaction axiom fails");
    if (!same_entries(kron(e, ip) * r, ip)) throw InputError("left coaction counit axiom fails");
  } else {
    if (!same_entries(kron(ip, d) * r, kron(r, ic) * r)) throw InputError("right coaction axiom fails");
    if (!same_entries(kron(ip, e) * r, ip)) throw InputError("right coaction counit axiom fails");
  }
}

FDCoalgebra trivial_coalgebra(Field f) {
  FDCoalgebra c;
  c.field = f;
  c.dim = 1;
  c.delta = c.eps = c.chi = Mat::identity(f, 1);
  return c;
}

FDComodule trivial_comodule(const FDCoalgebra& c, bool right) {
  FDComodule p;
  p.field = c.field;
  p.dim = 1;
  p.coact = c.chi;
  p.right = right;
  return p;
}

FDComodule regular_comodule(const FDCoalgebra& c, bool right) {
  FDComodule p;
  p.field = c.field;
  p.dim = c.dim;
  p.coact = c.delta;
  p.right = right;
  return p;
}

FDCoalgebra group_coalgebra(const GroupTable& g, Field f) {
  g.validate();
  const std::size_t n = g.order;
  FDCoalgebra c;
  c.field = f;
  c.dim = n;
  c.delta = Mat(f, n * n, n);
  for (std::uint32_t h = 0; h < n; ++h)
    for (std::uint32_t k = 0; k < n; ++k) c.delta.set(h * n + k, g.op(h, k), 1);
  c.eps = Mat(f, 1, n);
  c.eps.set(0, g.identity, 1);
  c.chi = Mat(f, n, 1);
  for (std::size_t h = 0; h < n; ++h) c.chi.set(h, 0, 1);
  return c;
}

FDCoalgebra restrict_coalgebra(const FDCoalgebra& c, const Subspace& sub) {
  const std::size_t n = c.dim, r = sub.dim();
  Mat incl = sub.basis().transpose();
  const auto& piv = sub.pivots();
  Mat image = c.delta * incl;
  std::vector<std::size_t> rows;
  for (auto a : piv)
    for (auto b : piv) rows.push_back(static_cast<std::size_t>(a) * n + b);
  FDCoalgebra out;
  out.field = c.field;
  out.dim = r;
  out.delta = image.select_rows(rows);
  if (kron(incl, incl) * out.delta != image) throw InputError("subspace is not a subcoalgebra");
  out.eps = c.eps * incl;
  std::vector<std::size_t> prow(piv.begin(), piv.end());
  out.chi = c.chi.select_rows(prow);
  if (incl * out.chi != c.chi) throw InputError("subcoalgebra does not contain the coaugmentation");
  return out;
}

FDCoalgebra change_basis(const FDCoalgebra& c, const Mat& g) {
  Mat gi = inverse(g);
  FDCoalgebra out = c;
  out.delta = kron(g, g) * c.delta * gi;
  out.eps = c.eps * gi;
  out.chi = g * c.chi;
  return out;
}

void CoalgebraMorphism::validate() const {
  check_shape(map, target.dim, source.dim, "coalgebra morphism");
  if (kron(map, map) * source.delta != target.delta * map)
    throw InputError("morphism does not commute with comultiplication");
  if (target.eps * map != source.eps) throw InputError("morphism does not preserve the counit");
  if (map * source.chi != target.chi) throw InputError("morphism does not preserve the coaugmentation");
}

FDComodule comodule_along(const CoalgebraMorphism& g, bool right) {
  FDComodule p;
  p.field = g.source.field;
  p.dim = g.source.dim;
  p.right = right;
  Mat id = Mat::identity(p.field, p.dim);
  p.coact = right ? kron(id, g.map) * g.source.delta : kron(g.map, id) * g.source.delta;
  return p;
}

GradedAlgebraTable dual_algebra(const GradedCoalgebraTable& c) {
  GradedAlgebraTable a;
  a.field = c.field;
  a.dims = c.dims;
  a.labels = c.labels;
  a.mult.resize(c.delta.size());
  for (std::size_t i = 0; i < c.delta.size(); ++i)
    for (const auto& m : c.delta[i]) a.mult[i].push_back(m.transpose());
  return a;
}

GradedCoalgebraTable dual_coalgebra(const GradedAlgebraTable& a) {
  GradedCoalgebraTable c;
  c.field = a.field;
  c.dims = a.dims;
  c.labels = a.labels;
  c.delta.resize(a.mult.size());
  for (std::size_t i = 0; i < a.mult.size(); ++i)
    for (const auto& m : a.mult[i]) c.delta[i].push_back(m.transpose());
  return c;
}

GradedModuleTable dual_module(const GradedComoduleTable& p) {
  GradedModuleTable m;
  m.field = p.field;
  m.dims = p.dims;
  m.right = p.right;
  m.labels = p.labels;
  m.act.resize(p.coact.size());
  for (std::size_t i = 0; i < p.coact.size(); ++i)
    for (const auto& x : p.coact[i]) m.act[i].push_back(x.transpose());
  return m;
}

GradedComoduleTable dual_comodule(const GradedModuleTable& m) {
  GradedComoduleTable p;
  p.field = m.field;
  p.dims = m.dims;
  p.right = m.right;
  p.labels = m.labels;
  p.coact.resize(m.act.size());
  for (std::size_t i = 0; i < m.act.size(); ++i)
    for (const auto& x : m.act[i]) p.coact[i].push_back(x.transpose());
  return p;
}

void GradedCoalgebraTable::validate() const { dual_algebra(*this).validate(); }

void GradedComoduleTable::validate(const GradedCoalgebraTable& c) const {
  dual_module(*this).validate(dual_algebra(c));
}

GradedComoduleTable trivial_comodule_table(const GradedCoalgebraTable& c, bool right) {
  return dual_comodule(trivial_module_table(dual_algebra(c), right));
}

GradedComoduleTable regular_comodule_table(const GradedCoalgebraTable& c, bool right) {
  return dual_comodule(regular_module_table(dual_algebra(c), right));
}

GradedCoalgebraTable opposite(const GradedCoalgebraTable& c) {
  return dual_coalgebra(opposite(dual_algebra(c)));
}

GradedComoduleTable opposite(const GradedComoduleTable& p) { return dual_comodule(opposite(dual_module(p))); }

namespace {

// Coordinates of the rows of `big` (each lying in left⊗right) in the basis
// kron(left, right); both bases are RREF, so this reads pivot entries.
Mat split_coordinates(const Subspace& big, const Subspace& left, const Subspace& right) {
  const std::size_t rw = right.ambient_dim();
  Mat out(big.field(), left.dim() * right.dim(), big.dim());
  for (std::size_t t = 0; t < big.dim(); ++t) {
    SparseVec v = big.row(t);
    for (std::size_t a = 0; a < left.dim(); ++a)
      for (std::size_t b = 0; b < right.dim(); ++b) {
        std::size_t col = static_cast<std::size_t>(left.pivots()[a]) * rw + right.pivots()[b];
        for (std::size_t k = 0; k < v.size(); ++k)
          if (v.idx[k] == col) out.set(a * right.dim() + b, t, v.value(big.field(), k));
      }
  }
  return out;
}

}  // namespace

PresentedCoalgebra coalgebra_table_from_presentation(const QuadPresentation& p,
                                                     const QuadModulePresentation* mod, int n,
                                                     std::size_t budget) {
  p.validate();
  if (mod) mod->validate(p);
  PresentedCoalgebra out;
  for (int k = 0; k <= n; ++k) out.c_spaces.push_back(coalgebra_space(p, nullptr, k, budget));
  GradedCoalgebraTable& c = out.coalgebra;
  c.field = p.field;
  c.labels = p.v_labels;
  for (const auto& s : out.c_spaces) c.dims.push_back(s.dim());
  c.delta.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) c.delta[i].push_back(split_coordinates(out.c_spaces[i + j], out.c_spaces[i], out.c_spaces[j]));

  if (mod) {
    for (int k = 0; k <= n; ++k) out.p_spaces.push_back(coalgebra_space(p, mod, k, budget));
    GradedComoduleTable m;
    m.field = p.field;
    m.labels = mod->u_labels;
    for (const auto& s : out.p_spaces) m.dims.push_back(s.dim());
    m.coact.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j)
        m.coact[i].push_back(split_coordinates(out.p_spaces[i + j], out.c_spaces[i], out.p_spaces[j]));
    out.comodule = std::move(m);
  }
  return out;
}

FDCoalgebra total_coalgebra(const GradedCoalgebraTable& c) {
  std::vector<std::size_t> off{0};
  for (auto d : c.dims) off.push_back(off.back() + d);
  const std::size_t n = off.back();
  FDCoalgebra t;
  t.field = c.field;
  t.dim = n;
  t.delta = Mat(c.field, n * n, n);
  for (int i = 0; i <= c.max_degree(); ++i)
    for (int j = 0; i + j <= c.max_degree(); ++j) {
      const Mat& d = c.comul(i, j);
      for (std::size_t a = 0; a < c.dim(i); ++a)
        for (std::size_t b = 0; b < c.dim(j); ++b)
          for (std::size_t s = 0; s < c.dim(i + j); ++s)
            if (!d.is_zero_at(a * c.dim(j) + b, s))
              t.delta.set((off[i] + a) * n + off[j] + b, off[i + j] + s, d.at(a * c.dim(j) + b, s));
    }
  t.eps = Mat(c.field, 1, n);
  t.chi = Mat(c.field, n, 1);
  if (n) {
    t.eps.set(0, 0, 1);
    t.chi.set(0, 0, 1);
  }
  return t;
}

}  // namespace koszul
