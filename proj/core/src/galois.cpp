#include "koszul/galois.hpp"

#include "koszul/error.hpp"

#include <fmt/format.h>

namespace koszul {

namespace {

// The prime p with q = p^k, or 0.
std::uint64_t prime_of_power(std::uint64_t q) {
  for (std::uint64_t p = 2; p <= q; ++p) {
    if (q % p) continue;
    while (q % p == 0) q /= p;
    return q == 1 ? p : 0;
  }
  return 0;
}

std::uint64_t power_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (b %= m; e; e >>= 1, b = b * b % m)
    if (e & 1) r = r * b % m;
  return r;
}

// A generator of F_p^*.
std::uint64_t primitive_root(std::uint64_t p) {
  std::vector<std::uint64_t> factors;
  std::uint64_t n = p - 1;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) {
      factors.push_back(f);
      while (n % f == 0) n /= f;
    }
  if (n > 1) factors.push_back(n);
  for (std::uint64_t g = 1; g < p; ++g) {
    bool ok = true;
    for (auto f : factors) ok = ok && power_mod(g, (p - 1) / f, p) != 1;
    if (ok) return g;
  }
  throw InternalError("no primitive root");
}

constexpr const char* kTwistNote = "cyclotomic twists mu_l^n identified with Z/l throughout";

}  // namespace

void FieldSpec::validate() const {
  if (!is_prime(l)) throw InputError(fmt::format("l = {} is not prime", l));
  if (q < 2 || !prime_of_power(q)) throw InputError(fmt::format("q = {} is not a prime power", q));
  if ((q - 1) % l) throw InputError(fmt::format("l = {} does not divide q - 1 = {}: no primitive l-th root of unity", l, q - 1));
  if (l == 2 && q % 4 != 1) throw InputError(fmt::format("l = 2 needs q = 1 mod 4 (a square root of -1); q = {}", q));
  if (kind == Kind::FiniteField && height != 0) throw InputError("a finite field has no Laurent variables");
  if (height < 0 || height > 3) throw InputError(fmt::format("tower height {} outside 0..3", height));
}

std::string FieldSpec::describe() const {
  std::string s = fmt::format("F_{}", q);
  for (int k = 1; k <= height; ++k) s += fmt::format("((t{}))", k);
  return s + fmt::format(", l = {}", l);
}

QuadPresentation exterior_presentation(const std::vector<std::string>& labels, std::uint32_t l) {
  if (!is_prime(l)) throw InputError(fmt::format("l = {} is not prime", l));
  const Field f = Field::prime(l);
  const std::size_t d = labels.size();
  Mat r(f, d * (d + 1) / 2, d * d);
  std::size_t row = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j, ++row) {
      r.add_to(row, i * d + j, Scalar(f, 1));
      r.add_to(row, j * d + i, Scalar(f, 1));
    }
  QuadPresentation p;
  p.field = f;
  p.v_labels = labels;
  // i = j rows hold 2 e_i⊗e_i; rescale so l = 2 keeps the square.
  for (std::size_t i = 0, k = 0; i < d; ++i) {
    r.set(k, i * d + i, 1);
    k += d - i;
  }
  p.r = echelonize(r);
  p.validate();
  return p;
}

SteinbergData milnor_tower(const FieldSpec& spec, int n_max) {
  spec.validate();
  if (n_max < 0) throw InputError("n_max must be non-negative");
  SteinbergData out;
  out.spec = spec;
  out.v_labels.push_back("u");
  for (int k = 1; k <= spec.height; ++k) out.v_labels.push_back(fmt::format("t{}", k));
  out.exterior = exterior_presentation(out.v_labels, spec.l);
  const std::size_t dv = out.v_labels.size();

  std::vector<std::size_t> dims(static_cast<std::size_t>(n_max) + 1, 0);
  dims[0] = 1;
  if (n_max >= 1) dims[1] = 1;
  for (int h = 0; h < spec.height; ++h)
    for (int n = n_max; n >= 1; --n) dims[n] += dims[n - 1];
  out.milnor_dims = dims;

  std::vector<std::size_t> ext(static_cast<std::size_t>(n_max) + 1, 0);
  for (int n = 0; n <= n_max; ++n) {
    std::size_t c = 1;
    for (int k = 0; k < n; ++k) c = c * (dv - static_cast<std::size_t>(k)) / static_cast<std::size_t>(k + 1);
    ext[n] = n > static_cast<int>(dv) ? 0 : c;
    if (ext[n] < dims[n]) throw InternalError("Milnor dims exceed the exterior algebra");
    out.j_dims.push_back(ext[n] - dims[n]);
  }
  if ((n_max >= 0 && out.j_dims[0]) || (n_max >= 1 && out.j_dims[1]))
    throw InternalError("J has components below degree 2");

  const Field f = Field::prime(spec.l);
  out.j_generators = Subspace(f, dv * (dv - 1) / 2);
  if (n_max >= 2 && out.j_dims[2])
    throw InternalError("the tame-symbol count leaves a kernel in degree 2, which the towers never have");

  if (is_prime(spec.q)) {
    // {a, 1-a} = log(a) log(1-a) {g, g} in F*/F*^l ⊗ F*/F*^l.
    const std::uint64_t p = spec.q, g = primitive_root(p);
    std::vector<std::uint64_t> log(p, 0);
    for (std::uint64_t e = 0, x = 1; e + 1 < p; ++e, x = x * g % p) log[x] = e;
    std::vector<std::int64_t> coeffs;
    for (std::uint64_t a = 2; a < p; ++a) coeffs.push_back(static_cast<std::int64_t>(log[a] * log[(p + 1 - a) % p] % spec.l));
    Mat m(f, coeffs.size(), dv * dv);
    for (std::size_t k = 0; k < coeffs.size(); ++k) m.set(k, 0, coeffs[k]);
    Subspace symbols = echelonize(m);
    out.residue_symbol_rank = symbols.dim();
    if (!out.exterior.r.contains(symbols))
      throw CrossValidationError("a Steinberg relation of the residue field survives in the exterior square");
  }
  out.notes.push_back(kTwistNote);
  out.notes.push_back(fmt::format("{}: V = F*/F*^{} of dim {}", spec.describe(), spec.l, dv));
  return out;
}

std::vector<Subspace> generated_ideal(const GradedAlgebraTable& a, const std::vector<Subspace>& gens) {
  const int n = a.max_degree();
  if (static_cast<int>(gens.size()) > n + 1) throw InputError("generators above the top degree of the table");
  std::vector<Subspace> j;
  for (int k = 0; k <= n; ++k) {
    j.push_back(Subspace(a.field, a.dim(k)));
    if (k < static_cast<int>(gens.size())) {
      if (gens[k].ambient_dim() != a.dim(k))
        throw InputError(fmt::format("generators of degree {} must live in A_{}", k, k));
      j[k] = gens[k];
    }
  }
  // A is generated in degree 1, so A_1 J_{k-1} + J_{k-1} A_1 suffices.
  const Mat id1 = Mat::identity(a.field, a.dim(1));
  for (int k = 1; k <= n; ++k) {
    const Mat& prev = j[k - 1].basis();
    if (prev.rows() == 0) continue;
    Mat left = a.mul(1, k - 1) * kron(id1, prev.transpose());
    Mat right = a.mul(k - 1, 1) * kron(prev.transpose(), id1);
    j[k] = sum(j[k], sum(map_subspace(left, Subspace::full(a.field, left.cols())),
                         map_subspace(right, Subspace::full(a.field, right.cols()))));
  }
  return j;
}

std::vector<Subspace> generated_ideal(const GradedAlgebraTable& a, const Subspace& degree2) {
  if (a.max_degree() < 2) throw InputError("table must reach degree 2");
  std::vector<Subspace> gens{Subspace(a.field, a.dim(0)), Subspace(a.field, a.dim(1)), degree2};
  return generated_ideal(a, gens);
}

MorphismPresentation quotient_by_ideal(const GradedAlgebraTable& a, const std::vector<Subspace>& j) {
  const int n = a.max_degree();
  if (static_cast<int>(j.size()) != n + 1) throw InputError("one ideal component per degree expected");
  // closure on both sides
  submodule_table(regular_module_table(a, false), a, j);
  submodule_table(regular_module_table(a, true), a, j);
  std::vector<Mat> q, lift;
  for (int k = 0; k <= n; ++k) {
    q.push_back(quotient_map(j[k]));
    lift.push_back(q.back().rows() ? right_inverse(q.back()) : Mat(a.field, a.dim(k), 0));
  }
  GradedAlgebraTable b;
  b.field = a.field;
  b.labels = a.labels;
  for (int k = 0; k <= n; ++k) b.dims.push_back(q[k].rows());
  b.mult.resize(static_cast<std::size_t>(n) + 1);
  for (int x = 0; x <= n; ++x)
    for (int y = 0; x + y <= n; ++y) b.mult[x].push_back(q[x + y] * a.mul(x, y) * kron(lift[x], lift[y]));
  b.validate();
  MorphismPresentation f{a, b, q, std::nullopt, std::nullopt};
  f.validate();
  return f;
}

SteinbergPipelineReport steinberg_pipeline(const QuadPresentation& lambda, const std::vector<Subspace>& j,
                                           int window) {
  if (window < 4) throw InputError("pipeline needs a window of at least 4");
  GradedAlgebraTable a = table_from_presentation(lambda, nullptr, window).algebra;
  std::vector<Subspace> jj = j;
  if (static_cast<int>(jj.size()) > window + 1) jj.resize(static_cast<std::size_t>(window) + 1);
  for (int k = static_cast<int>(jj.size()); k <= window; ++k) jj.push_back(Subspace(a.field, a.dim(k)));
  for (int k = 0; k <= window; ++k)
    if (jj[k].ambient_dim() != a.dim(k))
      throw InputError(fmt::format("J_{} lives in a space of dim {}, expected {}", k, jj[k].ambient_dim(), a.dim(k)));
  if (jj[0].dim() || jj[1].dim()) throw InputError("J has elements in degree 0 or 1; it cannot be a shift K(2)");

  SteinbergPipelineReport rep;
  rep.window = window;
  MorphismPresentation f = quotient_by_ideal(a, jj);
  GradedModuleTable jm = kernel_module(f);
  rep.j_dims = jm.dims;
  rep.km_dims = f.target.dims;
  rep.kernel_shape = kernel_shape_hypotheses(f, jm, window);

  CertifyOptions hom;
  hom.methods = {Method::Homology};
  GradedModuleTable k = shifted(jm, -2, window - 2);
  rep.kernel_module_koszul = certify(a.truncated(window - 2), &k, window - 2, hom).holds();
  rep.quotient_koszul = certify(f.target, nullptr, window, hom).holds();
  if (rep.kernel_module_koszul && !rep.quotient_koszul)
    throw CrossValidationError("J(-2) is a Koszul module but K^M = Lambda/J is not Koszul");

  rep.first_failure = rep.kernel_shape.first_failure;
  if (rep.first_failure.empty() && !rep.kernel_module_koszul) rep.first_failure = "J(-2) is not a Koszul module";
  rep.success = rep.first_failure.empty();
  if (rep.success) {
    rep.verdicts.push_back(fmt::format("kernel J = K(2) with K Koszul: verified through degree {}", window));
  } else {
    rep.verdicts.push_back("failed: " + rep.first_failure);
  }
  rep.verdicts.push_back(rep.quotient_koszul ? fmt::format("K^M = Lambda/J Koszul through degree {}", window)
                                             : "K^M = Lambda/J is not Koszul");
  rep.notes.push_back(kTwistNote);
  return rep;
}

SteinbergPipelineReport steinberg_pipeline(const SteinbergData& data, int window) {
  std::vector<Subspace> j;
  GradedAlgebraTable a = table_from_presentation(data.exterior, nullptr, window).algebra;
  for (int k = 0; k <= window; ++k) {
    const std::size_t jd = k < static_cast<int>(data.j_dims.size()) ? data.j_dims[k] : 0;
    if (jd) throw InputError("only towers with J = 0 carry their ideal explicitly");
    j.push_back(Subspace(a.field, a.dim(k)));
  }
  SteinbergPipelineReport rep = steinberg_pipeline(data.exterior, j, window);
  rep.notes.push_back(data.spec.describe());
  return rep;
}

}  // namespace koszul
