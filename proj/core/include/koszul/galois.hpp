#pragma once

#include "koszul/conilpotent.hpp"
#include "koszul/koszulity.hpp"
#include "koszul/quadratic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

/// F_q, or the Laurent tower F_q((t_1))...((t_h)), with the prime l.
struct FieldSpec {
  enum class Kind { FiniteField, LaurentTower };
  Kind kind = Kind::FiniteField;
  std::uint64_t q = 2;
  int height = 0;  // number of Laurent variables; 0 for FiniteField
  std::uint32_t l = 2;

  /// q a prime power, l prime dividing q - 1, q = 1 mod 4 when l = 2,
  /// height in 0..3; throws InputError.
  void validate() const;
  std::string describe() const;
};

/// Λ*(labels) over F_l: R spanned by every e_i⊗e_i and e_i⊗e_j + e_j⊗e_i
/// (squares kept for l = 2 as well).
QuadPresentation exterior_presentation(const std::vector<std::string>& labels, std::uint32_t l);

struct SteinbergData {
  FieldSpec spec;
  std::vector<std::string> v_labels;  // u, t1, ..., th
  QuadPresentation exterior;
  std::vector<std::size_t> milnor_dims, j_dims;  // degrees 0..n_max
  Subspace j_generators;  // J_2 inside Λ², in the table basis of degree 2
  /// Steinberg relations {a, 1-a} of the residue field, as multiples of
  /// u⊗u; filled when q is prime.
  std::optional<std::size_t> residue_symbol_rank;
  std::vector<std::string> notes;
};

/// dim k_n(F) for k_* = K^M_*(F)/l: (1,1,0,...) for F_q and
/// dims_n(F((t))) = dims_n(F) + dims_{n-1}(F) up the tower. J is the kernel
/// of Λ*(F*/F*^l) -> k_*(F), sized by the dimension count; for prime q the
/// Steinberg relations of F_q are enumerated and checked to die in Λ².
SteinbergData milnor_tower(const FieldSpec& spec, int n_max);

/// The two-sided ideal of the table generated by subspaces gens[k] of A_k.
std::vector<Subspace> generated_ideal(const GradedAlgebraTable& a, const std::vector<Subspace>& gens);
std::vector<Subspace> generated_ideal(const GradedAlgebraTable& a, const Subspace& degree2);

/// A/J for an ideal given degreewise, with the projection A -> A/J.
MorphismPresentation quotient_by_ideal(const GradedAlgebraTable& a, const std::vector<Subspace>& j);

struct SteinbergPipelineReport {
  int window = 0;
  std::vector<std::size_t> j_dims, km_dims;
  KernelShapeReport kernel_shape;
  bool kernel_module_koszul = false;  // J(-2) a Koszul Λ-module
  bool quotient_koszul = false;       // K^M = Λ/J Koszul
  bool success = false;               // kernel shape and J(-2) Koszul
  std::string first_failure;
  std::vector<std::string> verdicts;
  std::vector<std::string> notes;
};

/// Λ -> K^M = Λ/J with kernel J (J_0 = J_1 = 0, else InputError): the
/// kernel-shape hypotheses, Koszulity of J shifted down by 2 and of K^M.
/// A Koszul J(-2) with a non-Koszul K^M is a CrossValidationError.
SteinbergPipelineReport steinberg_pipeline(const QuadPresentation& lambda, const std::vector<Subspace>& j,
                                           int window);
SteinbergPipelineReport steinberg_pipeline(const SteinbergData& data, int window);

}  // namespace koszul
