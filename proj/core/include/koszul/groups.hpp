#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace koszul {

/// A finite group by its multiplication table: mul[a * order + b] = a·b.
struct GroupTable {
  std::string name;
  std::size_t order = 1;
  std::vector<std::uint32_t> mul{0};
  std::uint32_t identity = 0;
  std::uint32_t prime = 0;  // the prime l attached to the table, 0 if none

  std::uint32_t op(std::uint32_t a, std::uint32_t b) const { return mul[a * order + b]; }
  std::uint32_t inverse(std::uint32_t a) const;
  std::size_t element_order(std::uint32_t a) const;
  /// Closure, identity, inverses and associativity; throws InputError.
  void validate() const;
};

/// Coset enumeration of <gens | relators> over the trivial subgroup.
/// Relators are words like "a^4 b^-2 abAB" (uppercase = inverse letter).
GroupTable group_from_presentation(const std::string& name, const std::string& gens,
                                   const std::vector<std::string>& relators,
                                   std::size_t max_cosets = 200000);

GroupTable cyclic_group(std::size_t n);
GroupTable direct_product(const GroupTable& a, const GroupTable& b);

/// All groups of order <= 16 and of order 27, one per isomorphism class.
const std::vector<GroupTable>& group_catalog();
const GroupTable& catalog_group(const std::string& name);

/// Subgroup generated by `gens`, as a sorted element list.
std::vector<std::uint32_t> generated_subgroup(const GroupTable& g, const std::vector<std::uint32_t>& gens);
std::vector<std::uint32_t> normal_closure(const GroupTable& g, const std::vector<std::uint32_t>& gens);
/// `sub` is a subgroup (with the identity) stable under conjugation.
bool is_normal(const GroupTable& g, const std::vector<std::uint32_t>& sub);
/// G/N with cosets ordered by their least element; `projection` maps G onto it.
GroupTable quotient_group(const GroupTable& g, const std::vector<std::uint32_t>& normal,
                          std::vector<std::uint32_t>* projection = nullptr);

bool is_prime_power_of(std::size_t n, std::uint32_t l);
/// G^(l) = G/O^l(G), where O^l(G) is generated by the elements of order prime to l.
GroupTable maximal_l_quotient(const GroupTable& g, std::uint32_t l,
                              std::vector<std::uint32_t>* projection = nullptr);

/// Invariants used to tell catalog entries apart.
struct GroupSignature {
  std::vector<std::size_t> order_counts;
  std::size_t center = 0, derived = 0, squares = 0;
  friend bool operator==(const GroupSignature&, const GroupSignature&) = default;
};
GroupSignature signature(const GroupTable& g);

}  // namespace koszul
