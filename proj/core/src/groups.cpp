#include "koszul/groups.hpp"

#include "koszul/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

namespace koszul {

std::uint32_t GroupTable::inverse(std::uint32_t a) const {
  for (std::uint32_t b = 0; b < order; ++b)
    if (op(a, b) == identity) return b;
  throw InputError(fmt::format("element {} of {} has no inverse", a, name));
}

std::size_t GroupTable::element_order(std::uint32_t a) const {
  std::size_t k = 1;
  for (std::uint32_t x = a; x != identity; x = op(x, a)) {
    ++k;
    if (k > order) throw InputError(fmt::format("element {} of {} has no finite order", a, name));
  }
  return k;
}

void GroupTable::validate() const {
  if (order == 0) throw InputError("group of order 0");
  if (mul.size() != order * order)
    throw InputError(fmt::format("group {}: table has {} entries, expected {}", name, mul.size(), order * order));
  if (identity >= order) throw InputError(fmt::format("group {}: identity out of range", name));
  for (auto x : mul)
    if (x >= order) throw InputError(fmt::format("group {}: entry {} out of range", name, x));
  for (std::uint32_t a = 0; a < order; ++a) {
    if (op(identity, a) != a || op(a, identity) != a)
      throw InputError(fmt::format("group {}: identity fails at {}", name, a));
    std::vector<bool> row(order, false), col(order, false);
    for (std::uint32_t b = 0; b < order; ++b) {
      row[op(a, b)] = true;
      col[op(b, a)] = true;
    }
    if (std::find(row.begin(), row.end(), false) != row.end() ||
        std::find(col.begin(), col.end(), false) != col.end())
      throw InputError(fmt::format("group {}: element {} is not invertible", name, a));
  }
  for (std::uint32_t a = 0; a < order; ++a)
    for (std::uint32_t b = 0; b < order; ++b) {
      std::uint32_t ab = op(a, b);
      for (std::uint32_t c = 0; c < order; ++c)
        if (op(ab, c) != op(a, op(b, c)))
          throw InputError(fmt::format("group {}: associativity fails at ({},{},{})", name, a, b, c));
    }
}

namespace {

// Letters 2g (generator g) and 2g+1 (its inverse).
std::vector<int> parse_word(const std::string& gens, const std::string& text) {
  std::vector<int> w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '^') {
      if (w.empty()) throw InputError(fmt::format("relator '{}': exponent without a letter", text));
      std::size_t j = i + 1;
      bool neg = j < text.size() && text[j] == '-';
      if (neg) ++j;
      std::size_t start = j;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == start) throw InputError(fmt::format("relator '{}': bad exponent", text));
      int n = std::stoi(text.substr(start, j - start));
      int letter = w.back();
      w.pop_back();
      if (neg) letter ^= 1;
      for (int k = 0; k < n; ++k) w.push_back(letter);
      i = j - 1;
      continue;
    }
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    auto pos = gens.find(lower);
    if (pos == std::string::npos)
      throw InputError(fmt::format("relator '{}': unknown generator '{}'", text, ch));
    w.push_back(static_cast<int>(2 * pos) + (std::isupper(static_cast<unsigned char>(ch)) ? 1 : 0));
  }
  return w;
}

class CosetTable {
 public:
  CosetTable(std::size_t cols, std::size_t cap) : cols_(cols), cap_(cap) { new_coset(); }

  std::size_t cols() const { return cols_; }
  std::size_t size() const { return parent_.size(); }
  bool live(std::size_t a) const { return parent_[a] == a; }
  long long& at(std::size_t a, std::size_t x) { return table_[a * cols_ + x]; }

  void define(std::size_t a, std::size_t x) {
    std::size_t b = new_coset();
    at(a, x) = static_cast<long long>(b);
    at(b, x ^ 1) = static_cast<long long>(a);
  }

  void scan_and_fill(std::size_t a, const std::vector<int>& w) {
    if (w.empty()) return;
    std::size_t f = a, b = a;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (true) {
      while (i <= j && at(f, w[i]) >= 0) f = static_cast<std::size_t>(at(f, w[i++]));
      if (i > j) {
        if (f != a) coincidence(f, a);
        return;
      }
      while (j >= i && at(b, w[j] ^ 1) >= 0) b = static_cast<std::size_t>(at(b, w[j--] ^ 1));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, w[i]) = static_cast<long long>(b);
        at(b, w[i] ^ 1) = static_cast<long long>(f);
        return;
      }
      define(f, w[i]);
    }
  }

 private:
  std::size_t new_coset() {
    if (parent_.size() >= cap_)
      throw BudgetError(fmt::format("coset enumeration exceeded {} cosets", cap_));
    parent_.push_back(parent_.size());
    table_.resize(table_.size() + cols_, -1);
    return parent_.size() - 1;
  }

  std::size_t rep(std::size_t k) {
    std::size_t r = k;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[k] != r) {
      std::size_t next = parent_[k];
      parent_[k] = r;
      k = next;
    }
    return r;
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    std::size_t a = rep(k), b = rep(l);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      std::size_t g = queue[q];
      for (std::size_t x = 0; x < cols_; ++x) {
        long long d = at(g, x);
        if (d < 0) continue;
        at(static_cast<std::size_t>(d), x ^ 1) = -1;
        std::size_t m = rep(g), n = rep(static_cast<std::size_t>(d));
        if (at(m, x) >= 0)
          merge(n, static_cast<std::size_t>(at(m, x)), queue);
        else if (at(n, x ^ 1) >= 0)
          merge(m, static_cast<std::size_t>(at(n, x ^ 1)), queue);
        else {
          at(m, x) = static_cast<long long>(n);
          at(n, x ^ 1) = static_cast<long long>(m);
        }
      }
    }
  }

  std::size_t cols_, cap_;
  std::vector<long long> table_;
  std::vector<std::size_t> parent_;
};

}  // namespace

GroupTable group_from_presentation(const std::string& name, const std::string& gens,
                                   const std::vector<std::string>& relators, std::size_t max_cosets) {
  std::vector<std::vector<int>> rels;
  for (const auto& r : relators) rels.push_back(parse_word(gens, r));
  const std::size_t cols = 2 * gens.size();
  CosetTable t(cols, max_cosets);
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (const auto& w : rels) {
      if (!t.live(a)) break;
      t.scan_and_fill(a, w);
    }
    if (!t.live(a)) continue;
    for (std::size_t x = 0; x < cols; ++x)
      if (t.at(a, x) < 0) t.define(a, x);
  }

  // Renumber live cosets in breadth-first order from the identity coset.
  std::vector<long long> number(t.size(), -1);
  std::vector<std::size_t> order_list{0};
  number[0] = 0;
  for (std::size_t k = 0; k < order_list.size(); ++k)
    for (std::size_t x = 0; x < cols; ++x) {
      auto b = static_cast<std::size_t>(t.at(order_list[k], x));
      if (number[b] < 0) {
        number[b] = static_cast<long long>(order_list.size());
        order_list.push_back(b);
      }
    }
  const std::size_t n = order_list.size();
  // Right multiplication by each generator, as a permutation of elements.
  std::vector<std::vector<std::uint32_t>> gen_perm(gens.size(), std::vector<std::uint32_t>(n));
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t k = 0; k < n; ++k)
      gen_perm[g][k] = static_cast<std::uint32_t>(number[static_cast<std::size_t>(t.at(order_list[k], 2 * g))]);

  // Each element as a right-multiplication permutation, built along a BFS tree.
  std::vector<std::vector<std::uint32_t>> right(n);
  right[0].resize(n);
  std::iota(right[0].begin(), right[0].end(), 0u);
  std::deque<std::uint32_t> queue{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  while (!queue.empty()) {
    std::uint32_t e = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      std::uint32_t f = gen_perm[g][e];
      if (seen[f]) continue;
      seen[f] = true;
      right[f].resize(n);
      for (std::size_t k = 0; k < n; ++k) right[f][k] = gen_perm[g][right[e][k]];
      queue.push_back(f);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw InternalError("coset enumeration left unreachable cosets");

  GroupTable out;
  out.name = name;
  out.order = n;
  out.identity = 0;
  out.mul.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out.mul[a * n + b] = right[b][a];
  return out;
}

GroupTable cyclic_group(std::size_t n) {
  GroupTable g;
  g.name = fmt::format("Z{}", n);
  g.order = n;
  g.identity = 0;
  g.mul.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.mul[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
  return g;
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  GroupTable g;
  g.name = a.name + "x" + b.name;
  g.order = a.order * b.order;
  g.identity = static_cast<std::uint32_t>(a.identity * b.order + b.identity);
  g.mul.resize(g.order * g.order);
  for (std::uint32_t x = 0; x < g.order; ++x)
    for (std::uint32_t y = 0; y < g.order; ++y)
      g.mul[x * g.order + y] = static_cast<std::uint32_t>(
          a.op(static_cast<std::uint32_t>(x / b.order), static_cast<std::uint32_t>(y / b.order)) * b.order +
          b.op(static_cast<std::uint32_t>(x % b.order), static_cast<std::uint32_t>(y % b.order)));
  return g;
}

namespace {

std::vector<GroupTable> build_catalog() {
  struct Entry {
    const char* name;
    const char* gens;
    std::vector<std::string> rels;
    std::size_t order;
  };
  const std::vector<Entry> entries = {
      {"1", "", {}, 1},
      {"Z2", "a", {"a^2"}, 2},
      {"Z3", "a", {"a^3"}, 3},
      {"Z4", "a", {"a^4"}, 4},
      {"Z2xZ2", "ab", {"a^2", "b^2", "abAB"}, 4},
      {"Z5", "a", {"a^5"}, 5},
      {"Z6", "a", {"a^6"}, 6},
      {"S3", "ab", {"a^3", "b^2", "abab"}, 6},
      {"Z7", "a", {"a^7"}, 7},
      {"Z8", "a", {"a^8"}, 8},
      {"Z4xZ2", "ab", {"a^4", "b^2", "abAB"}, 8},
      {"Z2^3", "abc", {"a^2", "b^2", "c^2", "abAB", "acAC", "bcBC"}, 8},
      {"D8", "ab", {"a^4", "b^2", "abab"}, 8},
      {"Q8", "ab", {"a^4", "a^2 b^-2", "Baba"}, 8},
      {"Z9", "a", {"a^9"}, 9},
      {"Z3xZ3", "ab", {"a^3", "b^3", "abAB"}, 9},
      {"Z10", "a", {"a^10"}, 10},
      {"D10", "ab", {"a^5", "b^2", "abab"}, 10},
      {"Z11", "a", {"a^11"}, 11},
      {"Z12", "a", {"a^12"}, 12},
      {"Z6xZ2", "ab", {"a^6", "b^2", "abAB"}, 12},
      {"A4", "ab", {"a^2", "b^3", "(ab)^3"}, 12},
      {"D12", "ab", {"a^6", "b^2", "abab"}, 12},
      {"Dic12", "ab", {"a^6", "a^3 b^-2", "Baba"}, 12},
      {"Z13", "a", {"a^13"}, 13},
      {"Z14", "a", {"a^14"}, 14},
      {"D14", "ab", {"a^7", "b^2", "abab"}, 14},
      {"Z15", "a", {"a^15"}, 15},
      {"Z16", "a", {"a^16"}, 16},
      {"Z8xZ2", "ab", {"a^8", "b^2", "abAB"}, 16},
      {"Z4xZ4", "ab", {"a^4", "b^4", "abAB"}, 16},
      {"Z4xZ2xZ2", "abc", {"a^4", "b^2", "c^2", "abAB", "acAC", "bcBC"}, 16},
      {"Z2^4", "abcd", {"a^2", "b^2", "c^2", "d^2", "abAB", "acAC", "adAD", "bcBC", "bdBD", "cdCD"}, 16},
      {"D16", "ab", {"a^8", "b^2", "abab"}, 16},
      {"Q16", "ab", {"a^8", "a^4 b^-2", "Baba"}, 16},
      {"SD16", "ab", {"a^8", "b^2", "baB a^-3"}, 16},
      {"M16", "ab", {"a^8", "b^2", "baB a^-5"}, 16},
      {"Z4:Z4", "ab", {"a^4", "b^4", "baBa"}, 16},
      {"D8xZ2", "abc", {"a^4", "b^2", "abab", "c^2", "acAC", "bcBC"}, 16},
      {"Q8xZ2", "abc", {"a^4", "a^2 b^-2", "Baba", "c^2", "acAC", "bcBC"}, 16},
      {"Pauli", "abc", {"a^4", "b^2", "abab", "c^2 a^-2", "acAC", "bcBC"}, 16},
      {"(Z4xZ2):Z2", "abc", {"a^4", "b^2", "c^2", "abAB", "bcBC", "caC b^-1 a^-1"}, 16},
      {"Z27", "a", {"a^27"}, 27},
      {"Z9xZ3", "ab", {"a^9", "b^3", "abAB"}, 27},
      {"Z3^3", "abc", {"a^3", "b^3", "c^3", "abAB", "acAC", "bcBC"}, 27},
      {"Heis27", "abc", {"a^3", "b^3", "c^3", "abAB C", "acAC", "bcBC"}, 27},
      {"Z9:Z3", "ab", {"a^9", "b^3", "baB a^-4"}, 27},
  };
  std::vector<GroupTable> out;
  for (const auto& e : entries) {
    std::vector<std::string> rels;
    for (const auto& r : e.rels) {
      // "(ab)^3" shorthand: repeat the bracketed word.
      if (r.front() == '(') {
        auto close = r.find(')');
        std::string inner = r.substr(1, close - 1);
        int n = std::stoi(r.substr(close + 2));
        std::string w;
        for (int k = 0; k < n; ++k) w += inner;
        rels.push_back(w);
      } else {
        rels.push_back(r);
      }
    }
    GroupTable g = group_from_presentation(e.name, e.gens, rels);
    if (g.order != e.order)
      throw InternalError(fmt::format("catalog group {} has order {}, expected {}", e.name, g.order, e.order));
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

const std::vector<GroupTable>& group_catalog() {
  static const std::vector<GroupTable> catalog = build_catalog();
  return catalog;
}

const GroupTable& catalog_group(const std::string& name) {
  for (const auto& g : group_catalog())
    if (g.name == name) return g;
  throw InputError(fmt::format("unknown catalog group '{}'", name));
}

std::vector<std::uint32_t> generated_subgroup(const GroupTable& g, const std::vector<std::uint32_t>& gens) {
  std::vector<bool> in(g.order, false);
  std::vector<std::uint32_t> elems{g.identity};
  in[g.identity] = true;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (auto s : gens) {
      std::uint32_t x = g.op(elems[k], s);
      if (!in[x]) {
        in[x] = true;
        elems.push_back(x);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::uint32_t> normal_closure(const GroupTable& g, const std::vector<std::uint32_t>& gens) {
  std::set<std::uint32_t> conj;
  for (auto s : gens)
    for (std::uint32_t x = 0; x < g.order; ++x) conj.insert(g.op(g.op(x, s), g.inverse(x)));
  return generated_subgroup(g, {conj.begin(), conj.end()});
}

bool is_normal(const GroupTable& g, const std::vector<std::uint32_t>& sub) {
  std::vector<bool> in(g.order, false);
  for (auto s : sub) {
    if (s >= g.order) return false;
    in[s] = true;
  }
  if (!in[g.identity]) return false;  // also rejects the empty list
  for (auto s : sub) {
    for (auto t : sub)
      if (!in[g.op(s, t)]) return false;
    for (std::uint32_t x = 0; x < g.order; ++x)
      if (!in[g.op(g.op(x, s), g.inverse(x))]) return false;
  }
  return true;
}

GroupTable quotient_group(const GroupTable& g, const std::vector<std::uint32_t>& normal,
                          std::vector<std::uint32_t>* projection) {
  if (!is_normal(g, normal)) throw InputError("quotient by a subgroup that is not normal");
  std::vector<long long> coset(g.order, -1);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < g.order; ++x) {
    if (coset[x] >= 0) continue;
    for (auto n : normal) coset[g.op(x, n)] = static_cast<long long>(reps.size());
    reps.push_back(x);
  }
  GroupTable q;
  q.name = g.name + "/N";
  q.order = reps.size();
  q.identity = static_cast<std::uint32_t>(coset[g.identity]);
  q.prime = g.prime;
  q.mul.resize(q.order * q.order);
  for (std::size_t a = 0; a < q.order; ++a)
    for (std::size_t b = 0; b < q.order; ++b)
      q.mul[a * q.order + b] = static_cast<std::uint32_t>(coset[g.op(reps[a], reps[b])]);
  if (projection) {
    projection->resize(g.order);
    for (std::uint32_t x = 0; x < g.order; ++x) (*projection)[x] = static_cast<std::uint32_t>(coset[x]);
  }
  return q;
}

bool is_prime_power_of(std::size_t n, std::uint32_t l) {
  if (n == 0 || l < 2) return false;
  while (n % l == 0) n /= l;
  return n == 1;
}

GroupTable maximal_l_quotient(const GroupTable& g, std::uint32_t l, std::vector<std::uint32_t>* projection) {
  GroupTable cur = g;
  std::vector<std::uint32_t> proj(g.order);
  std::iota(proj.begin(), proj.end(), 0u);
  while (!is_prime_power_of(cur.order, l)) {
    std::vector<std::uint32_t> coprime;
    for (std::uint32_t x = 0; x < cur.order; ++x)
      if (cur.element_order(x) % l != 0) coprime.push_back(x);
    std::vector<std::uint32_t> step;
    cur = quotient_group(cur, normal_closure(cur, coprime), &step);
    for (auto& p : proj) p = step[p];
  }
  cur.name = g.name + "^(" + std::to_string(l) + ")";
  cur.prime = l;
  if (projection) *projection = proj;
  return cur;
}

GroupSignature signature(const GroupTable& g) {
  GroupSignature s;
  s.order_counts.assign(g.order + 1, 0);
  std::set<std::uint32_t> squares;
  std::vector<std::uint32_t> commutators;
  for (std::uint32_t x = 0; x < g.order; ++x) {
    ++s.order_counts[g.element_order(x)];
    squares.insert(g.op(x, x));
    bool central = true;
    for (std::uint32_t y = 0; y < g.order; ++y) {
      if (g.op(x, y) != g.op(y, x)) central = false;
      commutators.push_back(g.op(g.op(x, y), g.op(g.inverse(x), g.inverse(y))));
    }
    if (central) ++s.center;
  }
  std::sort(commutators.begin(), commutators.end());
  commutators.erase(std::unique(commutators.begin(), commutators.end()), commutators.end());
  s.derived = generated_subgroup(g, commutators).size();
  s.squares = squares.size();
  return s;
}

}  // namespace koszul
