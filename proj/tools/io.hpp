#pragma once

#include "koszul/coalgebra.hpp"
#include "koszul/error.hpp"
#include "koszul/galois.hpp"
#include "koszul/groups.hpp"
#include "koszul/lie.hpp"
#include "koszul/quadratic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace koszul::io {

// An InputError whose message starts with "line N: ".
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct NamedPresentation {
  std::string name;
  QuadPresentation p;
};

struct NamedModule {
  std::string name, over;
  QuadModulePresentation m;
};

// f_1 on generators: target.dim() x source.dim().
struct NamedMorphism {
  std::string name, source, target;
  Mat f1;
};

struct NamedGroup {
  GroupTable g;
  std::vector<std::uint32_t> normal;  // generators of a normal subgroup, may be empty
};

struct NamedCoalgebra {
  std::string name;
  FDCoalgebra c;
};

struct NamedComodule {
  std::string name, over;
  FDComodule p;
};

struct NamedComap {
  std::string name, source, target;
  Mat map;
};

struct NamedLie {
  std::string name;
  LiePresentation l;
};

// Homogeneous generators of a two-sided ideal, as subspaces of V^{⊗n}
// (gens[n]; gens[0] and gens[1] must stay empty).
struct NamedIdeal {
  std::string name, over;
  std::vector<Subspace> gens;
};

struct NamedFieldSpec {
  std::string name;
  FieldSpec spec;
};

struct Document {
  std::vector<NamedPresentation> presentations;
  std::vector<NamedModule> modules;
  std::vector<NamedMorphism> morphisms;
  std::vector<NamedGroup> groups;
  std::vector<NamedCoalgebra> coalgebras;
  std::vector<NamedComodule> comodules;
  std::vector<NamedComap> comaps;
  std::vector<NamedLie> lies;
  std::vector<NamedIdeal> ideals;
  std::vector<NamedFieldSpec> fieldspecs;

  const QuadPresentation& presentation(const std::string& name) const;
  const FDCoalgebra& coalgebra(const std::string& name) const;
  const NamedGroup& group(const std::string& name) const;

  friend bool operator==(const Document& a, const Document& b);
};

// The line-based format of docs/FORMAT.md. `default_field` is used by
// stanzas that precede any `field` directive (F_2 when absent). Every
// object is validated; errors carry the line number.
Document parse_input(std::string_view text, std::optional<Field> default_field = std::nullopt);

// Canonical text that parses back to an equal Document. Groups and group
// coalgebras are written out as full tables.
std::string emit(const Document& doc);

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace koszul::io
