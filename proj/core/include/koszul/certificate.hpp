#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace koszul {

enum class Verdict { Holds, FailsAt, Inconclusive };
enum class Method { Homology, Distributivity, KoszulComplex };

const char* to_string(Verdict v);
const char* to_string(Method m);

/// Outcome of one certification method. For Homology the location is the
/// bigrading (i,j) of a nonzero off-diagonal group; for KoszulComplex it is
/// the term (p,q) where exactness fails; for Distributivity it is (n,n)
/// with n the first non-distributive tensor degree.
struct MethodResult {
  Method method = Method::Homology;
  Verdict status = Verdict::Inconclusive;
  std::optional<std::pair<int, int>> at;
  std::size_t witness_dim = 0;
  int reached = 0;  // last degree fully checked
  std::string note;
};

/// Quadraticity in degrees <= n read two ways: the comparison map between
/// the object and its quadratic part, and vanishing of the low rows of the
/// (co)homology table.
struct QuadraticityVerdict {
  std::string subject;  // "algebra" or "module"
  int degree = 0;
  bool comparison_iso = true;
  bool homology_vanishes = true;
};

struct Certificate {
  std::string subject;
  int window = 0;
  Verdict status = Verdict::Inconclusive;
  std::optional<std::pair<int, int>> at;
  std::size_t witness_dim = 0;
  std::vector<Method> methods_used;
  bool agreement = true;
  std::vector<MethodResult> results;
  std::vector<std::string> notes;
  std::vector<QuadraticityVerdict> quadraticity;

  bool holds() const { return status == Verdict::Holds; }
};

}  // namespace koszul
