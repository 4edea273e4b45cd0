#include "koszul/quadratic.hpp"

#include "koszul/error.hpp"

#include <fmt/format.h>

#include <set>

namespace koszul {

const char* to_string(Side s) { return s == Side::Algebra ? "algebra" : "coalgebra"; }

const char* to_string(CompareKind k) {
  switch (k) {
    case CompareKind::Iso:
      return "Iso";
    case CompareKind::Mono:
      return "Mono";
    case CompareKind::Fails:
      return "Fails";
  }
  return "?";
}

void QuadPresentation::validate() const {
  std::set<std::string> seen(v_labels.begin(), v_labels.end());
  if (seen.size() != v_labels.size()) throw InputError("duplicate generator labels");
  if (r.ambient_dim() != dim() * dim())
    throw InputError(fmt::format("relation ambient {} differs from dim(V)^2 = {}", r.ambient_dim(),
                                 dim() * dim()));
  if (dim() > 0 && r.field() != field) throw InputError("relations over a different field");
}

void QuadModulePresentation::validate(const QuadPresentation& over) const {
  std::set<std::string> seen(u_labels.begin(), u_labels.end());
  if (seen.size() != u_labels.size()) throw InputError("duplicate module generator labels");
  if (s.ambient_dim() != over.dim() * dim())
    throw InputError(fmt::format("module relation ambient {} differs from dim(V)*dim(U) = {}",
                                 s.ambient_dim(), over.dim() * dim()));
}

QuadPresentation make_presentation(Field f, std::vector<std::string> labels, const Mat& relations,
                                   Side side) {
  QuadPresentation p;
  p.field = f;
  p.v_labels = std::move(labels);
  std::size_t d = p.v_labels.size();
  p.r = relations.rows() ? echelonize(relations) : Subspace(f, d * d);
  p.side = side;
  p.validate();
  return p;
}

QuadPresentation tensor_presentation(Field f, std::vector<std::string> labels) {
  std::size_t d = labels.size();
  return make_presentation(f, std::move(labels), Mat(f, 0, d * d));
}

QuadPresentation square_zero_presentation(Field f, std::vector<std::string> labels) {
  std::size_t d = labels.size();
  return make_presentation(f, std::move(labels), Mat::identity(f, d * d));
}

QuadPresentation exterior_algebra(Field f, std::vector<std::string> labels) {
  std::size_t d = labels.size();
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      std::vector<std::int64_t> v(d * d, 0);
      v[i * d + j] += 1;
      if (i != j) v[j * d + i] += 1;
      rows.push_back(v);
    }
  Mat m(f, rows.size(), d * d);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < d * d; ++c)
      if (rows[r][c]) m.set(r, c, rows[r][c]);
  return make_presentation(f, std::move(labels), m);
}

QuadPresentation polynomial_algebra(Field f, std::vector<std::string> labels) {
  std::size_t d = labels.size();
  Mat m(f, d * (d - (d ? 1 : 0)) / 2, d * d);
  std::size_t r = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j, ++r) {
      m.set(r, i * d + j, 1);
      m.set(r, j * d + i, -1);
    }
  return make_presentation(f, std::move(labels), m);
}

QuadModulePresentation trivial_module(const QuadPresentation& p) {
  QuadModulePresentation m;
  m.u_labels = {"1"};
  m.s = Subspace::full(p.field, p.dim());
  m.side = p.side;
  return m;
}

QuadModulePresentation free_module(const QuadPresentation& p, std::vector<std::string> labels) {
  QuadModulePresentation m;
  m.u_labels = std::move(labels);
  m.s = Subspace(p.field, p.dim() * m.u_labels.size());
  m.side = p.side;
  return m;
}

std::size_t tensor_ambient(std::size_t d, int n, std::size_t u, std::size_t budget) {
  std::size_t a = u;
  for (int k = 0; k < n; ++k) {
    a *= d;
    if (a > budget)
      throw BudgetError(fmt::format("ambient dimension at degree {} exceeds budget {}", n, budget), n);
  }
  if (a > budget)
    throw BudgetError(fmt::format("ambient dimension at degree {} exceeds budget {}", n, budget), n);
  return a;
}

namespace {

std::size_t ipow(std::size_t d, int n) {
  std::size_t a = 1;
  for (int k = 0; k < n; ++k) a *= d;
  return a;
}

// Rows of k^left ⊗ s ⊗ k^right, streamed into `e`.
void insert_padded(Echelon& e, const Subspace& s, std::size_t left, std::size_t right) {
  const std::size_t m = s.ambient_dim();
  Field f = s.field();
  for (std::size_t r = 0; r < s.dim(); ++r) {
    SparseVec v = s.row(r);
    for (std::size_t i = 0; i < left; ++i)
      for (std::size_t j = 0; j < right; ++j) {
        SparseVec w;
        for (std::size_t t = 0; t < v.size(); ++t)
          w.push(static_cast<std::uint32_t>((i * m + v.idx[t]) * right + j), v.value(f, t));
        e.insert(w);
      }
  }
}

}  // namespace

Subspace relation_space(const QuadPresentation& p, const QuadModulePresentation* mod, int n,
                        std::size_t budget) {
  const std::size_t d = p.dim();
  const std::size_t u = mod ? mod->dim() : 1;
  const std::size_t amb = tensor_ambient(d, n, u, budget);
  Echelon e(p.field, amb);
  for (int k = 1; k <= n - 1; ++k) insert_padded(e, p.r, ipow(d, k - 1), ipow(d, n - k - 1) * u);
  if (mod && n >= 1) insert_padded(e, mod->s, ipow(d, n - 1), 1);
  return Subspace::from_echelon(e);
}

Subspace coalgebra_space(const QuadPresentation& p, const QuadModulePresentation* mod, int n,
                         std::size_t budget) {
  const std::size_t d = p.dim();
  const std::size_t u = mod ? mod->dim() : 1;
  const std::size_t amb = tensor_ambient(d, n, u, budget);
  Subspace acc = Subspace::full(p.field, amb);
  for (int k = 1; k <= n - 1; ++k)
    acc = intersect(acc, padded(p.r, ipow(d, k - 1), ipow(d, n - k - 1) * u));
  if (mod && n >= 1) acc = intersect(acc, padded(mod->s, ipow(d, n - 1), 1));
  return acc;
}

Component component(const QuadPresentation& p, Side side, const QuadModulePresentation* mod, int n,
                    std::size_t budget) {
  if (n < 0) throw InputError("negative degree");
  p.validate();
  if (mod) mod->validate(p);
  Component c;
  if (side == Side::Algebra) {
    Subspace rel = relation_space(p, mod, n, budget);
    c.realization = quotient_map(rel);
    c.dim = c.realization.rows();
  } else {
    Subspace sub = coalgebra_space(p, mod, n, budget);
    c.realization = sub.basis().transpose();
    c.dim = sub.dim();
  }
  return c;
}

QuadPresentation dual_presentation(const QuadPresentation& p) {
  QuadPresentation q = p;
  q.side = p.side == Side::Algebra ? Side::Coalgebra : Side::Algebra;
  return q;
}

QuadModulePresentation dual_presentation(const QuadModulePresentation& m) {
  QuadModulePresentation q = m;
  q.side = m.side == Side::Algebra ? Side::Coalgebra : Side::Algebra;
  return q;
}

void GradedAlgebraTable::validate() const {
  if (dims.empty() || dims[0] != 1) throw InputError("graded algebra must have d_0 = 1");
  const int n = max_degree();
  if (static_cast<int>(mult.size()) != n + 1) throw InputError("multiplication table has wrong shape");
  for (int i = 0; i <= n; ++i) {
    if (static_cast<int>(mult[i].size()) != n - i + 1)
      throw InputError("multiplication table has wrong shape");
    for (int j = 0; i + j <= n; ++j) {
      const Mat& m = mul(i, j);
      if (m.field() != field || m.rows() != dim(i + j) || m.cols() != dim(i) * dim(j))
        throw InputError(fmt::format("product A_{}⊗A_{} has wrong shape", i, j));
    }
  }
  for (int j = 0; j <= n; ++j) {
    if (mul(0, j) != Mat::identity(field, dim(j)) || mul(j, 0) != Mat::identity(field, dim(j)))
      throw InputError(fmt::format("unit does not act as identity in degree {}", j));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; i + j <= n; ++j)
      for (int k = 1; i + j + k <= n; ++k) {
        Mat lhs = mul(i + j, k) * kron(mul(i, j), Mat::identity(field, dim(k)));
        Mat rhs = mul(i, j + k) * kron(Mat::identity(field, dim(i)), mul(j, k));
        if (lhs != rhs) throw InputError(fmt::format("associativity fails for degrees ({},{},{})", i, j, k));
      }
}

GradedAlgebraTable GradedAlgebraTable::truncated(int n) const {
  if (n > max_degree()) throw InputError("cannot extend a table by truncation");
  GradedAlgebraTable t;
  t.field = field;
  t.labels = labels;
  t.dims.assign(dims.begin(), dims.begin() + n + 1);
  t.mult.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) t.mult[i].push_back(mul(i, j));
  return t;
}

void GradedModuleTable::validate(const GradedAlgebraTable& a) const {
  const int n = max_degree();
  if (n > a.max_degree()) throw InputError("module table exceeds the algebra table degree");
  if (static_cast<int>(act.size()) != n + 1) throw InputError("action table has wrong shape");
  for (int i = 0; i <= n; ++i) {
    if (static_cast<int>(act[i].size()) != n - i + 1) throw InputError("action table has wrong shape");
    for (int j = 0; i + j <= n; ++j) {
      const Mat& m = action(i, j);
      if (m.field() != field || m.rows() != dim(i + j) || m.cols() != a.dim(i) * dim(j))
        throw InputError(fmt::format("action A_{} on M_{} has wrong shape", i, j));
    }
  }
  for (int j = 0; j <= n; ++j)
    if (action(0, j) != Mat::identity(field, dim(j)))
      throw InputError(fmt::format("unit does not act as identity on M_{}", j));
  for (int i = 1; i <= n; ++i)
    for (int k = 1; i + k <= n; ++k)
      for (int j = 0; i + j + k <= n; ++j) {
        Mat lhs, rhs;
        if (!right) {
          // (a b) m = a (b m), a in A_i, b in A_k, m in M_j
          lhs = action(i + k, j) * kron(a.mul(i, k), Mat::identity(field, dim(j)));
          rhs = action(i, k + j) * kron(Mat::identity(field, a.dim(i)), action(k, j));
        } else {
          // (m a) b = m (a b), m in M_j, a in A_i, b in A_k
          lhs = action(k, i + j) * kron(action(i, j), Mat::identity(field, a.dim(k)));
          rhs = action(i + k, j) * kron(Mat::identity(field, dim(j)), a.mul(i, k));
        }
        if (lhs != rhs)
          throw InputError(fmt::format("module associativity fails for degrees ({},{},{})", i, k, j));
      }
}

GradedModuleTable GradedModuleTable::truncated(int n) const {
  if (n > max_degree()) throw InputError("cannot extend a table by truncation");
  GradedModuleTable t;
  t.field = field;
  t.right = right;
  t.labels = labels;
  t.dims.assign(dims.begin(), dims.begin() + n + 1);
  t.act.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) t.act[i].push_back(action(i, j));
  return t;
}

GradedModuleTable trivial_module_table(const GradedAlgebraTable& a, bool right) {
  GradedModuleTable m;
  m.field = a.field;
  m.right = right;
  const int n = a.max_degree();
  m.dims.assign(static_cast<std::size_t>(n) + 1, 0);
  m.dims[0] = 1;
  m.act.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      m.act[i].push_back(Mat(a.field, m.dim(i + j), a.dim(i) * m.dim(j)));
  m.act[0][0] = Mat::identity(a.field, 1);
  return m;
}

GradedModuleTable regular_module_table(const GradedAlgebraTable& a, bool right) {
  GradedModuleTable m;
  m.field = a.field;
  m.right = right;
  m.dims = a.dims;
  const int n = a.max_degree();
  m.act.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      if (!right) {
        m.act[i].push_back(a.mul(i, j));
      } else {
        // m*a with m in A_j, a in A_i: columns ordered (m, a) = mult(j, i).
        m.act[i].push_back(a.mul(j, i));
      }
    }
  return m;
}

namespace {
// Columns of x⊗y reordered to y⊗x: result column b*da + a takes column a*db + b.
Mat swap_columns(const Mat& m, std::size_t da, std::size_t db) {
  std::vector<std::size_t> idx(da * db);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b) idx[b * da + a] = a * db + b;
  return m.select_cols(idx);
}
}  // namespace

GradedAlgebraTable opposite(const GradedAlgebraTable& a) {
  GradedAlgebraTable o = a;
  for (int i = 0; i <= a.max_degree(); ++i)
    for (int j = 0; i + j <= a.max_degree(); ++j)
      o.mult[i][j] = swap_columns(a.mul(j, i), a.dim(j), a.dim(i));
  return o;
}

GradedModuleTable opposite(const GradedModuleTable& m) {
  // Both orientations store act[i][j] for A_i on M_j; only the column
  // order flips between a*m_j + m and m*d_i + a.
  GradedModuleTable o = m;
  o.right = !m.right;
  for (int i = 0; i <= m.max_degree(); ++i)
    for (int j = 0; i + j <= m.max_degree(); ++j) {
      const Mat& x = m.action(i, j);
      std::size_t dj = m.dim(j);
      std::size_t di = dj ? x.cols() / dj : 0;
      o.act[i][j] = m.right ? swap_columns(x, dj, di) : swap_columns(x, di, dj);
    }
  return o;
}

GradedModuleTable shifted(const GradedModuleTable& m, int s, int max_degree) {
  GradedModuleTable o;
  o.field = m.field;
  o.right = m.right;
  o.labels = m.labels;
  o.dims.assign(static_cast<std::size_t>(max_degree) + 1, 0);
  for (int n = 0; n <= max_degree; ++n) o.dims[n] = m.dim(n - s);
  o.act.resize(static_cast<std::size_t>(max_degree) + 1);
  for (int i = 0; i <= max_degree; ++i)
    for (int j = 0; i + j <= max_degree; ++j) {
      std::size_t ai = 0;
      if (j - s >= 0 && i + j - s <= m.max_degree()) {
        const Mat& x = m.action(i, j - s);
        o.act[i].push_back(x);
        continue;
      }
      // Outside the source range: a zero map of the right shape. The
      // algebra dimension is recovered from any known action in degree i.
      for (int jj = 0; i + jj <= m.max_degree(); ++jj)
        if (m.dim(jj)) {
          ai = m.action(i, jj).cols() / m.dim(jj);
          break;
        }
      o.act[i].push_back(Mat(m.field, o.dims[i + j], ai * o.dims[j]));
    }
  return o;
}

namespace {

// Column c of a quotient coordinate map, read from its structure.
struct QuotientData {
  Mat q;                             // dim x ambient
  std::vector<std::uint32_t> lifts;  // free columns in order
};

QuotientData quotient_data(const Subspace& rel) {
  QuotientData d;
  d.q = quotient_map(rel);
  std::vector<bool> is_pivot(rel.ambient_dim(), false);
  for (auto c : rel.pivots()) is_pivot[c] = true;
  for (std::size_t c = 0; c < rel.ambient_dim(); ++c)
    if (!is_pivot[c]) d.lifts.push_back(static_cast<std::uint32_t>(c));
  return d;
}

void copy_column(const Mat& src, std::size_t sc, Mat& dst, std::size_t dc) {
  for (std::size_t r = 0; r < src.rows(); ++r)
    if (!src.is_zero_at(r, sc)) dst.set(r, dc, src.at(r, sc));
}

}  // namespace

PresentedTables table_from_presentation(const QuadPresentation& p, const QuadModulePresentation* mod,
                                        int n, std::size_t budget) {
  p.validate();
  if (mod) mod->validate(p);
  const std::size_t d = p.dim();
  std::vector<QuotientData> qa;
  for (int k = 0; k <= n; ++k) qa.push_back(quotient_data(relation_space(p, nullptr, k, budget)));

  PresentedTables out;
  GradedAlgebraTable& a = out.algebra;
  a.field = p.field;
  a.labels = p.v_labels;
  for (int k = 0; k <= n; ++k) a.dims.push_back(qa[k].lifts.size());
  a.mult.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      Mat m(p.field, a.dims[i + j], a.dims[i] * a.dims[j]);
      const std::size_t dj = ipow(d, j);
      for (std::size_t x = 0; x < a.dims[i]; ++x)
        for (std::size_t y = 0; y < a.dims[j]; ++y)
          copy_column(qa[i + j].q, qa[i].lifts[x] * dj + qa[j].lifts[y], m, x * a.dims[j] + y);
      a.mult[i].push_back(std::move(m));
    }

  if (mod) {
    const std::size_t u = mod->dim();
    std::vector<QuotientData> qm;
    for (int k = 0; k <= n; ++k) qm.push_back(quotient_data(relation_space(p, mod, k, budget)));
    GradedModuleTable m;
    m.field = p.field;
    m.labels = mod->u_labels;
    for (int k = 0; k <= n; ++k) m.dims.push_back(qm[k].lifts.size());
    m.act.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        Mat x(p.field, m.dims[i + j], a.dims[i] * m.dims[j]);
        const std::size_t dj = ipow(d, j) * u;
        for (std::size_t s = 0; s < a.dims[i]; ++s)
          for (std::size_t t = 0; t < m.dims[j]; ++t)
            copy_column(qm[i + j].q, qa[i].lifts[s] * dj + qm[j].lifts[t], x, s * m.dims[j] + t);
        m.act[i].push_back(std::move(x));
      }
    out.module = std::move(m);
  }
  return out;
}

Mat iterated_product(const GradedAlgebraTable& a, int n) {
  const std::size_t d = a.dim(1);
  if (n == 0) return Mat::identity(a.field, 1);
  if (n == 1) return Mat::identity(a.field, d);
  return a.mul(1, n - 1) * kron(Mat::identity(a.field, d), iterated_product(a, n - 1));
}

Mat iterated_action(const GradedAlgebraTable& a, const GradedModuleTable& m, int n) {
  if (m.right) throw InputError("iterated action expects a left module");
  if (n == 0) return Mat::identity(a.field, m.dim(0));
  return m.action(1, n - 1) * kron(Mat::identity(a.field, a.dim(1)), iterated_action(a, m, n - 1));
}

bool QuadraticPart::algebra_iso() const {
  for (const auto& c : algebra_comparison)
    if (c.kind() != CompareKind::Iso) return false;
  return true;
}

bool QuadraticPart::module_iso() const {
  for (const auto& c : module_comparison)
    if (c.kind() != CompareKind::Iso) return false;
  return true;
}

QuadraticPart quadratic_part(const GradedAlgebraTable& a, const GradedModuleTable* m,
                             std::size_t budget) {
  QuadraticPart out;
  const std::size_t d = a.dim(1);
  std::vector<std::string> labels = a.labels;
  if (labels.size() != d) {
    labels.clear();
    for (std::size_t i = 0; i < d; ++i) labels.push_back(fmt::format("a{}", i));
  }
  QuadPresentation& q = out.algebra;
  q.field = a.field;
  q.v_labels = labels;
  q.side = Side::Algebra;
  q.r = a.max_degree() >= 2 ? kernel_subspace(a.mul(1, 1)) : Subspace(a.field, d * d);

  for (int n = 0; n <= a.max_degree(); ++n) {
    DegreeComparison c;
    c.degree = n;
    Mat prod = iterated_product(a, n);
    std::size_t rk = rank(prod);
    std::size_t rel = relation_space(q, nullptr, n, budget).dim();
    c.injective = prod.cols() - rk == rel;
    c.surjective = rk == a.dim(n);
    out.algebra_comparison.push_back(c);
  }

  if (m) {
    if (m->right) throw InputError("quadratic part expects a left module");
    const std::size_t u = m->dim(0);
    QuadModulePresentation qm;
    qm.side = Side::Algebra;
    qm.u_labels = m->labels;
    if (qm.u_labels.size() != u) {
      qm.u_labels.clear();
      for (std::size_t i = 0; i < u; ++i) qm.u_labels.push_back(fmt::format("u{}", i));
    }
    qm.s = m->max_degree() >= 1 ? kernel_subspace(m->action(1, 0)) : Subspace(a.field, d * u);
    for (int n = 0; n <= m->max_degree(); ++n) {
      DegreeComparison c;
      c.degree = n;
      Mat act = iterated_action(a, *m, n);
      std::size_t rk = rank(act);
      std::size_t rel = relation_space(q, &qm, n, budget).dim();
      c.injective = act.cols() - rk == rel;
      c.surjective = rk == m->dim(n);
      out.module_comparison.push_back(c);
    }
    out.module = std::move(qm);
  }
  return out;
}

}  // namespace koszul
