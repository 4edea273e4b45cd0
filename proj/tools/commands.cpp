#include "commands.hpp"

#include "koszul/conilpotent.hpp"
#include "koszul/error.hpp"
#include "koszul/galois.hpp"
#include "koszul/homology.hpp"
#include "koszul/koszulity.hpp"
#include "koszul/lie.hpp"

#include <fmt/format.h>

#include <chrono>
#include <functional>
#include <map>

namespace koszul::cli {

namespace {

enum class Status { Holds, Fails, Consistent, Inconclusive, Info };

const char* status_name(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Consistent: return "consistent";
    case Status::Inconclusive: return "inconclusive";
    case Status::Info: return "info";
  }
  return "?";
}

Status from_bool(bool b) { return b ? Status::Holds : Status::Fails; }

Status from_verdict(Verdict v) {
  switch (v) {
    case Verdict::Holds: return Status::Holds;
    case Verdict::FailsAt: return Status::Fails;
    case Verdict::Inconclusive: return Status::Inconclusive;
  }
  return Status::Inconclusive;
}

std::string slot(int i, int j) { return fmt::format("{},{}", i, j); }

Json dims_json(const std::vector<std::size_t>& dims) {
  Json out = Json::object();
  for (std::size_t n = 0; n < dims.size(); ++n) out[std::to_string(n)] = dims[n];
  return out;
}

Json table_json(const BigradedTable& t) {
  Json out = Json::object();
  for (const auto& [ij, d] : t.entries) out[slot(ij.first, ij.second)] = d;
  return out;
}

Json opt_slot(const std::optional<std::pair<int, int>>& at) {
  return at ? Json(slot(at->first, at->second)) : Json(nullptr);
}

Json opt_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

class Report {
 public:
  explicit Report(const Options& opt) : opt_(opt) {}

  void verdict(const std::string& subject, Status s, const std::string& detail = "") {
    Json v = Json::object();
    v["subject"] = subject;
    v["status"] = status_name(s);
    if (!detail.empty()) v["detail"] = detail;
    verdicts_.push_back(std::move(v));
    if (s == Status::Fails) failed_ = true;
    if (s == Status::Inconclusive) inconclusive_ = true;
  }
  void table(const std::string& name, Json t) { tables_[name] = std::move(t); }
  Json& witness(const std::string& name) { return witnesses_[name]; }

  // Runs `f`, recording its wall time when timings are on.
  template <class F>
  auto timed(const std::string& name, F&& f) -> decltype(f()) {
    const auto start = std::chrono::steady_clock::now();
    struct Stop {
      Report* r;
      std::string name;
      std::chrono::steady_clock::time_point start;
      ~Stop() {
        if (r->opt_.timings)
          r->timings_[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
    } stop{this, name, start};
    return f();
  }

  int exit_code() const { return inconclusive_ ? kBadInput : failed_ ? kVerdictFailed : kOk; }
  Json verdicts() const { return verdicts_; }
  Json tables() const { return tables_; }
  Json witnesses() const { return witnesses_; }
  Json timings() const { return timings_; }

 private:
  const Options& opt_;
  Json verdicts_ = Json::array();
  Json tables_ = Json::object();
  Json witnesses_ = Json::object();
  Json timings_ = Json::object();
  bool failed_ = false, inconclusive_ = false;
};

struct Ctx {
  const Options& opt;
  const io::Document& doc;
  Report& rep;
  Window w() const { return {opt.i_max, opt.j_max}; }
  int n() const { return std::max(opt.i_max, opt.j_max); }
  CertifyOptions certify_options() const {
    CertifyOptions c;
    c.methods = opt.methods;
    c.term_budget = opt.budget;
    return c;
  }
};

const QuadModulePresentation* module_for(const io::Document& doc, const std::string& pres) {
  for (const auto& m : doc.modules)
    if (m.over == pres) return &m.m;
  return nullptr;
}

std::uint32_t group_prime(const Ctx& c, const GroupTable& g) {
  if (g.prime) return g.prime;
  if (c.opt.field && !c.opt.field->is_rational()) return c.opt.field->characteristic();
  throw InputError(fmt::format("group {} needs a 'prime' line or --field", g.name));
}

void require_some(bool any, const char* what) {
  if (!any) throw InputError(fmt::format("input has no {}", what));
}

Json certificate_json(const Certificate& cert) {
  Json out = Json::object();
  out["status"] = to_string(cert.status);
  out["at"] = opt_slot(cert.at);
  out["witness_dim"] = cert.witness_dim;
  Json methods = Json::array();
  for (const auto& r : cert.results) {
    Json m = Json::object();
    m["method"] = to_string(r.method);
    m["status"] = to_string(r.status);
    m["at"] = opt_slot(r.at);
    m["reached"] = r.reached;
    if (!r.note.empty()) m["note"] = r.note;
    methods.push_back(std::move(m));
  }
  out["methods"] = std::move(methods);
  if (!cert.notes.empty()) out["notes"] = cert.notes;
  return out;
}

void cmd_certify(Ctx& c) {
  require_some(!c.doc.presentations.empty(), "presentation");
  for (const auto& p : c.doc.presentations) {
    const QuadModulePresentation* m = module_for(c.doc, p.name);
    std::string subject = p.name;
    for (const auto& nm : c.doc.modules)
      if (nm.over == p.name) {
        subject += " with " + nm.name;
        break;
      }
    const Certificate cert = c.rep.timed(subject, [&] { return certify(p.p, m, c.n(), c.certify_options()); });
    std::string detail = fmt::format("Koszul through degree {}", c.n());
    if (cert.at) detail = fmt::format("H_{{{},{}}} of dim {} off the diagonal", cert.at->first, cert.at->second, cert.witness_dim);
    if (cert.status == Verdict::Inconclusive) detail = "no method completed within budget";
    c.rep.verdict(subject, from_verdict(cert.status), detail);
    c.rep.witness(subject) = certificate_json(cert);
  }
}

void cmd_dual(Ctx& c) {
  require_some(!c.doc.presentations.empty(), "presentation");
  io::Document out;
  for (const auto& p : c.doc.presentations) {
    QuadPresentation d = dual_presentation(p.p);
    c.rep.verdict(p.name + " dual of dual", from_bool(dual_presentation(d) == p.p));
    std::vector<std::size_t> ad, cd;
    for (int k = 0; k <= c.n(); ++k) {
      ad.push_back(component(p.p, Side::Algebra, nullptr, k).dim);
      cd.push_back(component(d, Side::Coalgebra, nullptr, k).dim);
    }
    c.rep.table(p.name + ".algebra", dims_json(ad));
    c.rep.table(p.name + "_dual.coalgebra", dims_json(cd));
    out.presentations.push_back({p.name + "_dual", d});
    for (const auto& nm : c.doc.modules)
      if (nm.over == p.name) out.modules.push_back({nm.name + "_dual", p.name + "_dual", dual_presentation(nm.m)});
  }
  c.rep.witness("dual") = io::emit(out);
}

void cmd_component(Ctx& c) {
  require_some(!c.doc.presentations.empty(), "presentation");
  for (const auto& p : c.doc.presentations) {
    const QuadModulePresentation* m = module_for(c.doc, p.name);
    for (Side side : {Side::Algebra, Side::Coalgebra}) {
      std::vector<std::size_t> dims, mdims;
      for (int k = 0; k <= c.n(); ++k) {
        dims.push_back(component(p.p, side, nullptr, k).dim);
        if (m) mdims.push_back(component(p.p, side, m, k).dim);
      }
      c.rep.table(fmt::format("{}.{}", p.name, to_string(side)), dims_json(dims));
      if (m) c.rep.table(fmt::format("{}.{}.module", p.name, to_string(side)), dims_json(mdims));
    }
    c.rep.verdict(p.name, Status::Info, fmt::format("components through degree {}", c.n()));
  }
}

void cmd_homology(Ctx& c) {
  require_some(!c.doc.presentations.empty(), "presentation");
  for (const auto& p : c.doc.presentations) {
    const bool coalg = p.p.side == Side::Coalgebra;
    // the opposite side's components are the diagonal
    const Side other = coalg ? Side::Algebra : Side::Coalgebra;
    BigradedTable t;
    if (coalg) {
      const PresentedCoalgebra pc = coalgebra_table_from_presentation(p.p, nullptr, c.opt.j_max);
      t = c.rep.timed(p.name, [&] { return coalgebra_cohomology(pc.coalgebra, c.w(), c.opt.budget); });
    } else {
      const PresentedTables pt = table_from_presentation(p.p, nullptr, c.opt.j_max);
      t = c.rep.timed(p.name, [&] { return algebra_homology(pt.algebra, c.w(), c.opt.budget); });
    }
    c.rep.table(p.name + (coalg ? ".cot" : ".tor"), table_json(t));
    bool diag = true;
    std::string detail;
    for (int i = 0; i <= std::min(c.opt.i_max, c.opt.j_max); ++i) {
      const std::size_t want = component(p.p, other, nullptr, i).dim;
      if (t.at(i, i) != want && diag) {
        diag = false;
        detail = fmt::format("degree {}: {} vs {}", i, t.at(i, i), want);
      }
    }
    if (!diag) throw CrossValidationError(fmt::format("{}: diagonal differs from the dual components, {}", p.name, detail));
    c.rep.verdict(p.name + " diagonal equals dual components", Status::Holds);
    const auto off = t.first_off_diagonal();
    c.rep.verdict(p.name + " concentrated on the diagonal", from_bool(!off),
                  off ? fmt::format("first off-diagonal entry at ({},{})", off->first, off->second) : "");
    if (const auto* m = module_for(c.doc, p.name); m && !coalg) {
      const PresentedTables pt = table_from_presentation(p.p, m, c.opt.j_max);
      BigradedTable mt = module_homology(pt.algebra, *pt.module, c.w(), c.opt.budget);
      c.rep.table(p.name + ".module.tor", table_json(mt));
      const auto moff = mt.first_off_diagonal();
      c.rep.verdict(p.name + " module concentrated on the diagonal", from_bool(!moff),
                    moff ? fmt::format("first off-diagonal entry at ({},{})", moff->first, moff->second) : "");
    }
  }
}

void cmd_dist(Ctx& c) {
  require_some(!c.doc.presentations.empty(), "presentation");
  for (const auto& p : c.doc.presentations) {
    const QuadModulePresentation* m = module_for(c.doc, p.name);
    Json sizes = Json::object();
    for (int k = 3; k <= c.n(); ++k) {
      const auto xs = m ? module_lattice(p.p, *m, k) : algebra_lattice(p.p, k);
      const LatticeVerdict v = c.rep.timed(fmt::format("{}.{}", p.name, k), [&] { return distributivity_check(xs); });
      Status s = v.status == LatticeStatus::Distributive ? Status::Holds
                 : v.status == LatticeStatus::NotDistributive ? Status::Fails
                                                              : Status::Inconclusive;
      std::string detail;
      if (v.witness) {
        const auto& [x, y, z] = *v.witness;
        detail = fmt::format("(X+Y) cap Z differs from X cap Z + Y cap Z for subspaces of dims {}, {}, {}", x.dim(), y.dim(), z.dim());
      }
      c.rep.verdict(fmt::format("{} degree {}", p.name, k), s, detail);
      sizes[std::to_string(k)] = v.closure_size;
    }
    c.rep.table(p.name + ".lattice_size", std::move(sizes));
  }
}

MorphismPresentation build_morphism(const Ctx& c, const io::NamedMorphism& m, int n) {
  return morphism_from_presentations(c.doc.presentation(m.source), c.doc.presentation(m.target), m.f1, n);
}

void cmd_morphism(Ctx& c) {
  require_some(!c.doc.morphisms.empty(), "morphism");
  for (const auto& m : c.doc.morphisms) {
    const MorphismPresentation f = build_morphism(c, m, c.n());
    const MorphismReport r = c.rep.timed(m.name, [&] { return morphism_report(f, c.w(), c.opt.budget); });
    c.rep.table(m.name + ".tor", table_json(r.tor));
    c.rep.verdict(m.name + " freeness facts", r.freeness.consistent ? Status::Consistent : Status::Fails);
    Json& w = c.rep.witness(m.name);
    w["first_kind"] = r.first_kind;
    w["second_kind"] = r.second_kind;
    w["injective"] = r.injective;
    w["surjective"] = r.surjective;
    w["source_koszul"] = r.source_koszul;
    w["target_koszul"] = r.target_koszul;
    w["module_cases"] = std::string(r.module_cases.begin(), r.module_cases.end());
    w["freeness_cases"] = std::string(r.freeness_cases.begin(), r.freeness_cases.end());
    w["trivial_rows_criterion"] = opt_bool(r.trivial_rows_criterion);
    w["target_free_left"] = r.freeness.target_free_left;
    w["kernel_free_left"] = r.freeness.kernel_free_left;
    w["band_vanishes"] = r.freeness.band_vanishes;
    if (!r.notes.empty()) w["notes"] = r.notes;
  }
}

void cmd_duality(Ctx& c) {
  require_some(!c.doc.morphisms.empty(), "morphism");
  for (const auto& m : c.doc.morphisms) {
    const MorphismPresentation f = build_morphism(c, m, c.n());
    const DualityReport r = c.rep.timed(m.name, [&] { return duality_crosscheck(f, c.w(), c.opt.budget); });
    c.rep.table(m.name + ".tor", table_json(r.tor));
    c.rep.table(m.name + ".cot", table_json(r.cot));
    c.rep.table(m.name + ".complex", table_json(r.complex));
    c.rep.verdict(m.name + " bar, cobar and Koszul complex agree", Status::Holds);
    Json& w = c.rep.witness(m.name);
    w["free_right_iff_comodule_koszul"] = opt_bool(r.free_right_iff_comodule_koszul);
    w["surjective_diagonal_vanishes"] = opt_bool(r.surjective_diagonal_vanishes);
  }
}

std::vector<std::size_t> level_dims(const Filtration& f) {
  std::vector<std::size_t> out;
  for (const auto& l : f.levels) out.push_back(l.dim());
  return out;
}

void cmd_filtration(Ctx& c) {
  require_some(!c.doc.coalgebras.empty() || !c.doc.groups.empty(), "coalgebra or group");
  for (const auto& nc : c.doc.coalgebras) {
    const FDComodule* p = nullptr;
    std::string subject = nc.name;
    for (const auto& q : c.doc.comodules)
      if (q.over == nc.name && !q.p.right) {
        p = &q.p;
        subject += " with " + q.name;
        break;
      }
    const FiltrationResult r = c.rep.timed(subject, [&] { return filtration_and_gr(nc.c, p); });
    c.rep.table(nc.name + ".levels", dims_json(level_dims(r.coalgebra)));
    c.rep.table(nc.name + ".gr", dims_json(r.gr.dims));
    if (r.comodule) c.rep.table(nc.name + ".comodule_levels", dims_json(level_dims(*r.comodule)));
    c.rep.verdict(nc.name + " conilpotency", Status::Info,
                  fmt::format("{}: dim Nilp = {} of {}", r.conilpotent ? "conilpotent" : "not conilpotent", r.nilp.dim,
                              nc.c.dim));
    Json& w = c.rep.witness(subject);
    w["stabilization"] = r.coalgebra.stabilization;
    w["gr_one_cogenerated"] = r.gr_one_cogenerated;
    w["gr_comodule_one_cogenerated"] = opt_bool(r.gr_comodule_one_cogenerated);
  }
  for (const auto& ng : c.doc.groups) {
    const GroupTable& g = ng.g;
    const std::uint32_t l = group_prime(c, g);
    const FiltrationResult r = c.rep.timed(g.name, [&] { return filtration_and_gr(group_coalgebra(g, Field::prime(l)), nullptr); });
    const std::size_t quotient = maximal_l_quotient(g, l).order;
    c.rep.table(g.name + ".levels", dims_json(level_dims(r.coalgebra)));
    if (r.nilp.dim != quotient)
      throw CrossValidationError(fmt::format("{}: dim Nilp = {} but |G^({})| = {}", g.name, r.nilp.dim, l, quotient));
    c.rep.verdict(fmt::format("{} dim Nilp = |G^({})|", g.name, l), Status::Holds, fmt::format("{}", quotient));
    if (r.conilpotent != is_prime_power_of(g.order, l))
      throw CrossValidationError(fmt::format("{}: conilpotency disagrees with being an {}-group", g.name, l));
    c.rep.verdict(fmt::format("{} conilpotent iff an {}-group", g.name, l), Status::Holds,
                  r.conilpotent ? "both" : "neither");
  }
}

void comparison_into(Ctx& c, const std::string& name, const ComparisonReport& r) {
  c.rep.table(name + ".nilp", dims_json(r.nilp_dims));
  c.rep.table(name + ".full", dims_json(r.full_dims));
  c.rep.table(name + ".ranks", dims_json(r.ranks));
  c.rep.verdict(name + " iso in degree 1", from_bool(r.degree1_iso));
  c.rep.verdict(name + " mono in degree 2", from_bool(r.degree2_mono));
  Json& w = c.rep.witness(name);
  w["nilp_dim"] = r.nilp_dim;
  w["matches_quadratic_part"] = opt_bool(r.matches_quadratic_part);
  w["koszul_iso"] = opt_bool(r.koszul_iso);
  if (r.hypotheses) w["hypotheses"] = r.hypotheses->holds() ? "hold" : r.hypotheses->first_failure();
  if (!r.notes.empty()) w["notes"] = r.notes;
}

void cmd_nilp(Ctx& c) {
  require_some(!c.doc.coalgebras.empty() || !c.doc.groups.empty(), "coalgebra or group");
  for (const auto& nc : c.doc.coalgebras)
    comparison_into(c, nc.name, c.rep.timed(nc.name, [&] { return comparison_report(nc.c, c.opt.j_max, c.opt.budget); }));
  for (const auto& ng : c.doc.groups) {
    const std::uint32_t l = group_prime(c, ng.g);
    const GroupComparison r = c.rep.timed(ng.g.name, [&] { return group_comparison(ng.g, l, c.opt.j_max, c.opt.budget); });
    comparison_into(c, ng.g.name, r.coalgebra);
    c.rep.table(ng.g.name + ".group_ranks", dims_json(r.ranks));
    c.rep.witness(ng.g.name)["quotient_order"] = r.quotient_order;
    c.rep.verdict(ng.g.name + " Nilp is the coalgebra of the l-quotient", from_bool(r.nilp_is_quotient_coalgebra));
  }
}

void pipeline_into(Ctx& c, const std::string& name, const PipelineReport& r) {
  c.rep.table(name + ".cohomology", dims_json(r.cohomology.dims));
  if (r.module_cohomology) c.rep.table(name + ".module_cohomology", dims_json(r.module_cohomology->dims));
  if (!r.gr_dual_dims.empty()) c.rep.table(name + ".gr_dual", dims_json(r.gr_dual_dims));
  if (!r.gr_module_dual_dims.empty()) c.rep.table(name + ".gr_module_dual", dims_json(r.gr_module_dual_dims));
  if (r.failure.empty())
    c.rep.verdict(name, Status::Holds, fmt::format("dim H^i(C) = dim (gr C)^!_i through degree {}", r.window));
  else
    c.rep.verdict(name, Status::Fails, r.failure);
  if (!r.notes.empty()) c.rep.witness(name)["notes"] = r.notes;
}

void cmd_pipeline(Ctx& c) {
  require_some(!c.doc.coalgebras.empty() || !c.doc.groups.empty(), "coalgebra or group");
  for (const auto& nc : c.doc.coalgebras) {
    const FDComodule* p = nullptr;
    for (const auto& q : c.doc.comodules)
      if (q.over == nc.name && !q.p.right) p = &q.p;
    pipeline_into(c, nc.name, c.rep.timed(nc.name, [&] { return grading_pipeline(nc.c, p, c.opt.j_max, c.opt.budget); }));
  }
  for (const auto& ng : c.doc.groups) {
    const std::uint32_t l = group_prime(c, ng.g);
    const FDCoalgebra kg = group_coalgebra(ng.g, Field::prime(l));
    pipeline_into(c, ng.g.name, c.rep.timed(ng.g.name, [&] { return grading_pipeline(kg, nullptr, c.opt.j_max, c.opt.budget); }));
  }
}

void cmd_cofreeness(Ctx& c) {
  bool any = false;
  for (const auto& m : c.doc.comaps) {
    any = true;
    CoalgebraMorphism g{c.doc.coalgebra(m.source), c.doc.coalgebra(m.target), m.map};
    const CofreenessReport r = c.rep.timed(m.name, [&] { return cofreeness_check(g, c.opt.j_max, c.opt.budget); });
    c.rep.table(m.name + ".cohomology", dims_json(r.cohomology));
    if (r.tor) c.rep.table(m.name + ".tor", table_json(*r.tor));
    c.rep.verdict(m.name + " cofree in the window", from_bool(r.cofree_in_window));
    if (r.implication_holds)
      c.rep.verdict(m.name + " vanishing bands force cofreeness", from_bool(*r.implication_holds));
    Json& w = c.rep.witness(m.name);
    w["ends_koszul"] = r.ends_koszul;
    w["vanishing_bands"] = r.vanishing_bands;
  }
  for (const auto& ng : c.doc.groups) {
    any = true;
    const std::uint32_t l = group_prime(c, ng.g);
    const std::vector<std::uint32_t> normal = normal_closure(ng.g, ng.normal);
    const GroupCofreenessReport r =
        c.rep.timed(ng.g.name, [&] { return group_cofreeness(ng.g, normal, l, c.opt.j_max, c.opt.budget); });
    const std::string name = fmt::format("{} over the quotient by a normal subgroup of order {}", ng.g.name, r.kernel_order);
    c.rep.table(ng.g.name + ".tor", table_json(r.tor));
    c.rep.table(ng.g.name + ".cohomology", dims_json(r.cofreeness.cohomology));
    c.rep.verdict(name + ": band j-i <= 1", from_bool(!r.band_failure),
                  r.band_failure ? fmt::format("nonzero at ({},{})", r.band_failure->first, r.band_failure->second) : "");
    c.rep.verdict(name + ": kernel", r.verdict == KernelVerdict::Undetermined ? Status::Info : Status::Consistent,
                  to_string(r.verdict));
    c.rep.witness(ng.g.name)["module_koszul"] = r.module_koszul;
  }
  require_some(any, "comap or group");
}

void cmd_kernel_shape(Ctx& c) {
  require_some(!c.doc.morphisms.empty(), "morphism");
  for (const auto& m : c.doc.morphisms) {
    const MorphismPresentation f = build_morphism(c, m, c.n());
    const GradedModuleTable j = kernel_module(f);
    const KernelShapeReport r = c.rep.timed(m.name, [&] { return kernel_shape_hypotheses(f, j, c.n()); });
    c.rep.table(m.name + ".kernel", dims_json(j.dims));
    c.rep.verdict(m.name, from_bool(r.holds),
                  r.holds ? fmt::format("kernel-shape hypotheses hold through degree {}", c.n()) : r.first_failure);
    Json& w = c.rep.witness(m.name);
    w["iso_degree1"] = r.iso_degree1;
    w["epi_degree2"] = r.epi_degree2;
    w["kernel_starts_in_degree2"] = r.kernel_starts_in_degree2;
    w["kernel_comparison"] = opt_bool(r.kernel_comparison);
    w["algebra_koszul"] = opt_bool(r.algebra_koszul);
    w["module_koszul"] = opt_bool(r.module_koszul);
  }
}

void cmd_lie(Ctx& c) {
  bool any = false;
  for (const auto& nl : c.doc.lies) {
    any = true;
    const LiePresentation& l = nl.l;
    const auto free = free_lie_dims(l.dim(), l.flavor, c.n());
    c.rep.table(nl.name + ".free_lie", dims_json(free));
    c.rep.verdict(nl.name + " Mobius and Hall counts agree", Status::Holds);
    const QuadPresentation u = enveloping_presentation(l);
    const GradedAlgebraTable t = table_from_presentation(u, nullptr, c.n()).algebra;
    c.rep.table(nl.name + ".enveloping", dims_json(t.dims));
    if (auto pbw = pbw_consistent(l, c.n())) c.rep.verdict(nl.name + " PBW dimensions", from_bool(*pbw));
    const SymmetryReport s = cocommutativity_check(u, c.n());
    c.rep.verdict(nl.name + " enveloping coalgebra symmetry", Status::Info, to_string(s.verdict));
    Json& w = c.rep.witness(nl.name);
    w["flavor"] = to_string(l.flavor);
    w["flip_fails_at"] = s.flip_fails_at ? Json(*s.flip_fails_at) : Json(nullptr);
    w["signed_flip_fails_at"] = s.signed_flip_fails_at ? Json(*s.signed_flip_fails_at) : Json(nullptr);
  }
  for (const auto& m : c.doc.morphisms) {
    any = true;
    const MorphismPresentation f = build_morphism(c, m, c.n());
    const LieFreenessReport r = c.rep.timed(m.name, [&] { return freeness_report(f, c.n(), c.opt.budget); });
    c.rep.table(m.name + ".tor", table_json(r.tor));
    c.rep.verdict(m.name + " band j-i in {0,1}", from_bool(r.band_vanishes),
                  r.band_failure ? fmt::format("nonzero at ({},{})", r.band_failure->first, r.band_failure->second) : "");
    if (r.pairing_agrees)
      c.rep.verdict(m.name + " Koszul module iff dual map onto", from_bool(*r.pairing_agrees));
    Json& w = c.rep.witness(m.name);
    w["symmetry"] = to_string(r.symmetry);
    w["koszul_module"] = r.koszul_module;
    w["surjective"] = r.surjective;
    w["dual_surjective"] = r.dual_surjective;
  }
  require_some(any, "lie stanza or morphism");
}

void cmd_tower(Ctx& c) {
  require_some(!c.doc.fieldspecs.empty(), "fieldspec");
  for (const auto& nf : c.doc.fieldspecs) {
    const SteinbergData d = milnor_tower(nf.spec, c.n());
    c.rep.table(nf.name + ".milnor", dims_json(d.milnor_dims));
    c.rep.table(nf.name + ".j", dims_json(d.j_dims));
    bool zero = true;
    for (auto x : d.j_dims) zero = zero && x == 0;
    c.rep.verdict(nf.name + " J = 0", from_bool(zero), nf.spec.describe());
    Json& w = c.rep.witness(nf.name);
    w["v_labels"] = d.v_labels;
    w["residue_symbol_rank"] = d.residue_symbol_rank ? Json(*d.residue_symbol_rank) : Json(nullptr);
    w["notes"] = d.notes;
  }
}

void steinberg_into(Ctx& c, const std::string& name, const SteinbergPipelineReport& r) {
  c.rep.table(name + ".j", dims_json(r.j_dims));
  c.rep.table(name + ".km", dims_json(r.km_dims));
  c.rep.verdict(name + " kernel J = K(2) with K Koszul", from_bool(r.success),
                r.success ? fmt::format("verified through degree {}", r.window) : r.first_failure);
  c.rep.verdict(name + " K^M Koszul", from_bool(r.quotient_koszul));
  Json& w = c.rep.witness(name);
  w["kernel_shape"] = r.kernel_shape.holds ? "holds" : r.kernel_shape.first_failure;
  w["kernel_comparison"] = opt_bool(r.kernel_shape.kernel_comparison);
  w["kernel_module_koszul"] = r.kernel_module_koszul;
  w["notes"] = r.notes;
}

void cmd_steinberg(Ctx& c) {
  require_some(!c.doc.fieldspecs.empty() || !c.doc.ideals.empty(), "fieldspec or ideal");
  for (const auto& nf : c.doc.fieldspecs) {
    const SteinbergData d = milnor_tower(nf.spec, c.n());
    steinberg_into(c, nf.name, c.rep.timed(nf.name, [&] { return steinberg_pipeline(d, c.n()); }));
  }
  for (const auto& ni : c.doc.ideals) {
    const QuadPresentation& p = c.doc.presentation(ni.over);
    const GradedAlgebraTable a = table_from_presentation(p, nullptr, c.n()).algebra;
    std::vector<Subspace> gens;
    for (int k = 0; k < static_cast<int>(ni.gens.size()) && k <= c.n(); ++k)
      gens.push_back(map_subspace(iterated_product(a, k), ni.gens[k]));
    const std::vector<Subspace> j = generated_ideal(a, gens);
    steinberg_into(c, ni.name, c.rep.timed(ni.name, [&] { return steinberg_pipeline(p, j, c.n()); }));
  }
}

using Handler = std::function<void(Ctx&)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h{
      {"certify", cmd_certify},
      {"dual", cmd_dual},
      {"component", cmd_component},
      {"homology", cmd_homology},
      {"dist-check", cmd_dist},
      {"morphism", cmd_morphism},
      {"theorem7", cmd_duality},
      {"filtration", cmd_filtration},
      {"nilp-compare", cmd_nilp},
      {"grading-pipeline", cmd_pipeline},
      {"cofreeness", cmd_cofreeness},
      {"theorem9", cmd_kernel_shape},
      {"lie", cmd_lie},
      {"galois-tower", cmd_tower},
      {"theorem2", cmd_steinberg},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, h] : handlers()) out.push_back(n);
    return out;
  }();
  return names;
}

Outcome run_command(const Options& opt, std::string_view input) {
  Outcome out;
  Report rep(opt);
  Json& j = out.report;
  j["command"] = opt.command;
  j["input_digest"] = fmt::format("{:016x}", io::fnv1a64(input));
  j["window"] = Json::array({opt.i_max, opt.j_max});
  if (opt.seed) j["seed"] = *opt.seed;
  std::optional<std::string> error;
  try {
    const Handler* h = nullptr;
    for (const auto& [n, f] : handlers())
      if (n == opt.command) h = &f;
    if (!h) throw InputError(fmt::format("unknown command '{}'", opt.command));
    if (opt.i_max < 1 || opt.j_max < 1) throw InputError("window entries must be positive");
    if (opt.budget == 0) throw InputError("budget must be positive");
    const io::Document doc = rep.timed("parse", [&] { return io::parse_input(input, opt.field); });
    Ctx c{opt, doc, rep};
    (*h)(c);
    out.exit_code = rep.exit_code();
  } catch (const CrossValidationError& e) {
    error = std::string("cross-validation: ") + e.what();
    out.exit_code = kDisagreement;
  } catch (const InternalError& e) {
    error = std::string("internal: ") + e.what();
    out.exit_code = kDisagreement;
  } catch (const BudgetError& e) {
    error = std::string("budget: ") + e.what();
    out.exit_code = kBadInput;
  } catch (const InputError& e) {
    error = std::string("input: ") + e.what();
    out.exit_code = kBadInput;
  }
  j["verdicts"] = rep.verdicts();
  j["tables"] = rep.tables();
  j["witnesses"] = rep.witnesses();
  j["timings"] = rep.timings();
  if (error) j["error"] = *error;
  j["exit_code"] = out.exit_code;
  return out;
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace koszul::cli
