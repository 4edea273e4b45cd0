#include "io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace koszul::io {

ParseError::ParseError(int line, const std::string& what)
    : InputError(fmt::format("line {}: {}", line, what)), line_(line) {}

namespace {

struct Term {
  Scalar coef;
  std::vector<std::string> factors;
};

struct Line {
  int number = 0;
  std::string key, rest;
  std::vector<std::string> words;  // whitespace split of the whole line
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

bool is_index(const std::string& t) {
  return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_label(const std::string& t) {
  if (t.empty() || !(std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_')) return false;
  return std::all_of(t.begin(), t.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

std::size_t parse_count(int line, const std::string& t, const char* what) {
  if (!is_index(t) || t.size() > 9) throw ParseError(line, fmt::format("{} must be a non-negative integer, got '{}'", what, t));
  return std::stoul(t);
}

Field parse_field(int line, const std::string& t) {
  if (t == "Q" || t == "0") return Field::rationals();
  std::size_t p = parse_count(line, t, "field characteristic");
  if (!is_prime(p) || p > 0xffffffffu) throw ParseError(line, fmt::format("field characteristic {} is not prime", p));
  return Field::prime(static_cast<std::uint32_t>(p));
}

// expr := term { (+|-) term }, term := [coef [*]] word, word := f1.f2...
std::vector<Term> parse_expr(int line, const std::string& s, Field f) {
  std::vector<Term> out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  auto skip = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto token = [&] {
    const std::size_t a = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '+' && s[i] != '-' && s[i] != '*') ++i;
    return s.substr(a, i - a);
  };
  bool first = true;
  for (;;) {
    skip();
    if (i == n) break;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
      skip();
    } else if (!first) {
      throw ParseError(line, fmt::format("expected '+' or '-' at column {}", i + 1));
    }
    std::string a = token(), word;
    std::string coef = "1";
    skip();
    if (i < n && s[i] == '*') {
      ++i;
      skip();
      coef = a;
      word = token();
    } else if (i < n && s[i] != '+' && s[i] != '-') {
      coef = a;
      word = token();
    } else {
      word = a;
    }
    if (word.empty()) throw ParseError(line, "missing term");
    Term t;
    try {
      t.coef = parse_scalar(f, coef);
    } catch (const InputError& e) {
      throw ParseError(line, e.what());
    }
    if (negative) t.coef = -t.coef;
    t.factors = split(word, '.');
    for (const auto& x : t.factors)
      if (x.empty()) throw ParseError(line, fmt::format("malformed word '{}'", word));
    out.push_back(std::move(t));
    first = false;
  }
  return out;
}

std::size_t resolve(int line, const std::string& tok, const std::vector<std::string>& labels, std::size_t size,
                    const char* what) {
  if (is_index(tok)) {
    const std::size_t k = tok.size() > 9 ? size : std::stoul(tok);
    if (k >= size) throw ParseError(line, fmt::format("{} index {} out of range (size {})", what, tok, size));
    return k;
  }
  auto it = std::find(labels.begin(), labels.end(), tok);
  if (it == labels.end()) throw ParseError(line, fmt::format("unknown {} '{}'", what, tok));
  return static_cast<std::size_t>(it - labels.begin());
}

// Adds the expression into `row` of m, factor k resolved against bases[k];
// the column is the row-major tensor index.
void add_expr(int line, const std::vector<Term>& terms, Mat& m, std::size_t row,
              const std::vector<std::pair<const std::vector<std::string>*, std::size_t>>& bases, const char* what) {
  for (const auto& t : terms) {
    if (t.factors.size() != bases.size())
      throw ParseError(line, fmt::format("expected words of length {}, got {}", bases.size(), t.factors.size()));
    std::size_t col = 0;
    for (std::size_t k = 0; k < bases.size(); ++k)
      col = col * bases[k].second + resolve(line, t.factors[k], *bases[k].first, bases[k].second, what);
    m.add_to(row, col, t.coef);
  }
}

std::vector<std::string> check_labels(const Line& l) {
  std::vector<std::string> out(l.words.begin() + 1, l.words.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!is_label(out[i])) throw ParseError(l.number, fmt::format("'{}' is not a valid label", out[i]));
    if (std::find(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(i), out[i]) != out.begin() + static_cast<std::ptrdiff_t>(i))
      throw ParseError(l.number, fmt::format("duplicate label '{}'", out[i]));
  }
  return out;
}

// Splits "lhs = rhs".
std::pair<std::string, std::string> split_eq(const Line& l) {
  const std::string whole = l.key + " " + l.rest;
  const auto pos = whole.find('=');
  if (pos == std::string::npos) throw ParseError(l.number, "expected 'name = expression'");
  return {trim(whole.substr(0, pos)), trim(whole.substr(pos + 1))};
}

Mat scalar_row(const Line& l, Field f, std::size_t n) {
  if (l.words.size() != n + 1) throw ParseError(l.number, fmt::format("expected {} entries", n));
  Mat m(f, 1, n);
  for (std::size_t k = 0; k < n; ++k) {
    try {
      m.set(0, k, parse_scalar(f, l.words[k + 1]));
    } catch (const InputError& e) {
      throw ParseError(l.number, e.what());
    }
  }
  return m;
}

template <class F>
auto at_line(int line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(line, e.what());
  }
}

template <class T>
const T& find_named(const std::vector<T>& xs, const std::string& name, const char* what, int line) {
  for (const auto& x : xs)
    if (x.name == name) return x;
  throw ParseError(line, fmt::format("unknown {} '{}'", what, name));
}

class Parser {
 public:
  Parser(std::string_view text, Field f) : field_(f) {
    int number = 0;
    std::string raw;
    std::istringstream in{std::string(text)};
    while (std::getline(in, raw)) {
      ++number;
      const auto hash = raw.find('#');
      std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (s.empty()) continue;
      Line l;
      l.number = number;
      l.words = split_ws(s);
      l.key = l.words[0];
      l.rest = trim(s.substr(l.key.size()));
      lines_.push_back(std::move(l));
    }
  }

  Document run() {
    while (pos_ < lines_.size()) {
      const Line& h = lines_[pos_++];
      if (h.key == "field") {
        if (h.words.size() != 2) throw ParseError(h.number, "expected 'field <p|Q>'");
        field_ = parse_field(h.number, h.words[1]);
      } else if (h.key == "presentation") {
        presentation(h);
      } else if (h.key == "module") {
        module(h);
      } else if (h.key == "morphism") {
        morphism(h);
      } else if (h.key == "group") {
        group(h);
      } else if (h.key == "coalgebra") {
        coalgebra(h);
      } else if (h.key == "comodule") {
        comodule(h);
      } else if (h.key == "comap") {
        comap(h);
      } else if (h.key == "lie") {
        lie(h);
      } else if (h.key == "ideal") {
        ideal(h);
      } else if (h.key == "fieldspec") {
        fieldspec(h);
      } else {
        throw ParseError(h.number, fmt::format("unknown stanza '{}'", h.key));
      }
    }
    return std::move(doc_);
  }

 private:
  std::vector<Line> body(const Line& h) {
    std::vector<Line> out;
    while (pos_ < lines_.size()) {
      const Line& l = lines_[pos_++];
      if (l.key == "end") return out;
      out.push_back(l);
    }
    throw ParseError(h.number, fmt::format("stanza '{}' has no 'end'", h.key));
  }

  std::string name_of(const Line& h) const {
    if (h.words.size() < 2) throw ParseError(h.number, fmt::format("'{}' needs a name", h.key));
    const std::string& n = h.words[1];
    if (n.find('=') != std::string::npos) throw ParseError(h.number, "names may not contain '='");
    return n;
  }

  void unique(const Line& h, const std::string& name) {
    if (std::find(names_.begin(), names_.end(), name) != names_.end())
      throw ParseError(h.number, fmt::format("name '{}' already used", name));
    names_.push_back(name);
  }

  // presentation NAME [coalgebra]
  void presentation(const Line& h) {
    const std::string name = name_of(h);
    Side side = Side::Algebra;
    if (h.words.size() == 3 && h.words[2] == "coalgebra") side = Side::Coalgebra;
    else if (h.words.size() == 3 && h.words[2] != "algebra") throw ParseError(h.number, "expected 'algebra' or 'coalgebra'");
    else if (h.words.size() > 3) throw ParseError(h.number, "too many words in header");
    unique(h, name);
    std::optional<std::vector<std::string>> labels;
    std::vector<std::pair<int, std::vector<Term>>> rels;
    for (const Line& l : body(h)) {
      if (l.key == "gens") {
        if (labels) throw ParseError(l.number, "'gens' given twice");
        labels = check_labels(l);
      } else if (l.key == "rel") {
        rels.emplace_back(l.number, parse_expr(l.number, l.rest, field_));
        if (rels.back().second.empty()) throw ParseError(l.number, "empty relation");
      } else {
        throw ParseError(l.number, fmt::format("unexpected '{}' in presentation", l.key));
      }
    }
    if (!labels) throw ParseError(h.number, "presentation without 'gens'");
    const std::size_t d = labels->size();
    Mat r(field_, rels.size(), d * d);
    for (std::size_t k = 0; k < rels.size(); ++k)
      add_expr(rels[k].first, rels[k].second, r, k, {{&*labels, d}, {&*labels, d}}, "generator");
    doc_.presentations.push_back({name, at_line(h.number, [&] { return make_presentation(field_, *labels, r, side); })});
  }

  // module NAME over P
  void module(const Line& h) {
    const std::string name = name_of(h);
    if (h.words.size() != 4 || h.words[2] != "over") throw ParseError(h.number, "expected 'module NAME over PRESENTATION'");
    unique(h, name);
    const QuadPresentation& p = find_named(doc_.presentations, h.words[3], "presentation", h.number).p;
    std::optional<std::vector<std::string>> labels;
    std::vector<std::pair<int, std::vector<Term>>> rels;
    for (const Line& l : body(h)) {
      if (l.key == "gens") {
        if (labels) throw ParseError(l.number, "'gens' given twice");
        labels = check_labels(l);
      } else if (l.key == "rel") {
        rels.emplace_back(l.number, parse_expr(l.number, l.rest, p.field));
        if (rels.back().second.empty()) throw ParseError(l.number, "empty relation");
      } else {
        throw ParseError(l.number, fmt::format("unexpected '{}' in module", l.key));
      }
    }
    if (!labels) throw ParseError(h.number, "module without 'gens'");
    const std::size_t u = labels->size();
    Mat s(p.field, rels.size(), p.dim() * u);
    for (std::size_t k = 0; k < rels.size(); ++k)
      add_expr(rels[k].first, rels[k].second, s, k, {{&p.v_labels, p.dim()}, {&*labels, u}}, "generator");
    QuadModulePresentation m;
    m.u_labels = *labels;
    m.s = echelonize(s);
    m.side = p.side;
    at_line(h.number, [&] { m.validate(p); return 0; });
    doc_.modules.push_back({name, h.words[3], std::move(m)});
  }

  // morphism NAME A -> B
  void morphism(const Line& h) {
    const std::string name = name_of(h);
    if (h.words.size() != 5 || h.words[3] != "->") throw ParseError(h.number, "expected 'morphism NAME A -> B'");
    unique(h, name);
    const QuadPresentation& a = find_named(doc_.presentations, h.words[2], "presentation", h.number).p;
    const QuadPresentation& b = find_named(doc_.presentations, h.words[4], "presentation", h.number).p;
    if (a.field != b.field) throw ParseError(h.number, "source and target live over different fields");
    Mat f1(a.field, b.dim(), a.dim());
    std::vector<bool> seen(a.dim(), false);
    for (const Line& l : body(h)) {
      auto [lhs, rhs] = split_eq(l);
      const std::size_t src = resolve(l.number, lhs, a.v_labels, a.dim(), "source generator");
      if (seen[src]) throw ParseError(l.number, fmt::format("image of '{}' given twice", lhs));
      seen[src] = true;
      Mat col(a.field, 1, b.dim());
      add_expr(l.number, parse_expr(l.number, rhs, a.field), col, 0, {{&b.v_labels, b.dim()}}, "target generator");
      for (std::size_t k = 0; k < b.dim(); ++k) f1.set(k, src, col.at(0, k));
    }
    at_line(h.number, [&] { return morphism_from_presentations(a, b, f1, 2); });
    doc_.morphisms.push_back({name, h.words[2], h.words[4], std::move(f1)});
  }

  // group NAME; catalog X | gens S + relator W... | order/identity/row...; prime; normal
  void group(const Line& h) {
    const std::string name = name_of(h);
    if (h.words.size() != 2) throw ParseError(h.number, "expected 'group NAME'");
    unique(h, name);
    std::optional<std::string> catalog, gens;
    std::vector<std::string> relators;
    std::optional<std::size_t> order, identity;
    std::uint32_t prime = 0;
    std::vector<std::vector<std::size_t>> rows;
    std::vector<std::pair<int, std::size_t>> normal;
    int rows_line = h.number;
    for (const Line& l : body(h)) {
      if (l.key == "catalog" && l.words.size() == 2) {
        catalog = l.words[1];
      } else if (l.key == "gens" && l.words.size() == 2) {
        gens = l.words[1];
      } else if (l.key == "relator") {
        if (l.rest.empty()) throw ParseError(l.number, "empty relator");
        relators.push_back(l.rest);
      } else if (l.key == "order" && l.words.size() == 2) {
        order = parse_count(l.number, l.words[1], "order");
      } else if (l.key == "identity" && l.words.size() == 2) {
        identity = parse_count(l.number, l.words[1], "identity");
      } else if (l.key == "prime" && l.words.size() == 2) {
        const std::size_t p = parse_count(l.number, l.words[1], "prime");
        if (!is_prime(p)) throw ParseError(l.number, fmt::format("{} is not prime", p));
        prime = static_cast<std::uint32_t>(p);
      } else if (l.key == "row") {
        std::vector<std::size_t> r;
        for (std::size_t k = 1; k < l.words.size(); ++k) r.push_back(parse_count(l.number, l.words[k], "table entry"));
        rows.push_back(std::move(r));
        rows_line = l.number;
      } else if (l.key == "normal") {
        for (std::size_t k = 1; k < l.words.size(); ++k) normal.emplace_back(l.number, parse_count(l.number, l.words[k], "element"));
      } else {
        throw ParseError(l.number, fmt::format("unexpected '{}' in group", l.key));
      }
    }
    const int kinds = (catalog ? 1 : 0) + (gens ? 1 : 0) + (order ? 1 : 0);
    if (kinds != 1) throw ParseError(h.number, "give exactly one of 'catalog', 'gens' or 'order'");
    GroupTable g;
    if (catalog) {
      g = at_line(h.number, [&] { return catalog_group(*catalog); });
    } else if (gens) {
      g = at_line(h.number, [&] { return group_from_presentation(name, *gens, relators); });
    } else {
      if (!relators.empty()) throw ParseError(h.number, "'relator' needs 'gens'");
      if (rows.size() != *order) throw ParseError(rows_line, fmt::format("expected {} rows, got {}", *order, rows.size()));
      g.order = *order;
      g.identity = identity ? static_cast<std::uint32_t>(*identity) : 0;
      g.mul.clear();
      for (const auto& r : rows) {
        if (r.size() != *order) throw ParseError(rows_line, fmt::format("row of length {}, expected {}", r.size(), *order));
        for (auto x : r) g.mul.push_back(static_cast<std::uint32_t>(x));
      }
    }
    if (catalog || gens) {
      if (identity || !rows.empty()) throw ParseError(h.number, "table rows only go with 'order'");
    }
    g.name = name;
    g.prime = prime;
    at_line(h.number, [&] { g.validate(); return 0; });
    NamedGroup ng{g, {}};
    for (auto [line, x] : normal) {
      if (x >= g.order) throw ParseError(line, fmt::format("element {} out of range (order {})", x, g.order));
      ng.normal.push_back(static_cast<std::uint32_t>(x));
    }
    doc_.groups.push_back(std::move(ng));
  }

  // coalgebra NAME; group G | dim n, [basis ...], delta i = ..., counit ..., coaug ...
  void coalgebra(const Line& h) {
    const std::string name = name_of(h);
    if (h.words.size() != 2) throw ParseError(h.number, "expected 'coalgebra NAME'");
    unique(h, name);
    std::optional<std::size_t> dim;
    std::optional<std::string> group;
    std::vector<std::string> basis;
    std::vector<Line> deltas;
    std::optional<Line> counit, coaug;
    for (const Line& l : body(h)) {
      if (l.key == "group" && l.words.size() == 2) group = l.words[1];
      else if (l.key == "dim" && l.words.size() == 2) dim = parse_count(l.number, l.words[1], "dim");
      else if (l.key == "basis") basis = check_labels(l);
      else if (l.key == "delta") deltas.push_back(l);
      else if (l.key == "counit") counit = l;
      else if (l.key == "coaug") coaug = l;
      else throw ParseError(l.number, fmt::format("unexpected '{}' in coalgebra", l.key));
    }
    FDCoalgebra c;
    if (group) {
      if (dim || !deltas.empty() || counit || coaug) throw ParseError(h.number, "'group' replaces the structure maps");
      const GroupTable* g = nullptr;
      for (const auto& ng : doc_.groups)
        if (ng.g.name == *group) g = &ng.g;
      const GroupTable& gg = g ? *g : at_line(h.number, [&]() -> const GroupTable& { return catalog_group(*group); });
      c = group_coalgebra(gg, field_);
    } else {
      if (!dim) throw ParseError(h.number, "coalgebra without 'dim' or 'group'");
      if (!basis.empty() && basis.size() != *dim) throw ParseError(h.number, "basis labels do not match dim");
      const std::size_t n = *dim;
      if (!counit || !coaug) throw ParseError(h.number, "coalgebra needs 'counit' and 'coaug'");
      c.field = field_;
      c.dim = n;
      c.delta = Mat(field_, n * n, n);
      std::vector<bool> seen(n, false);
      for (const Line& l : deltas) {
        auto [lhs, rhs] = split_eq(l);
        const std::string idx = trim(lhs.substr(std::string("delta").size()));
        const std::size_t i = resolve(l.number, idx, basis, n, "basis element");
        if (seen[i]) throw ParseError(l.number, "delta given twice");
        seen[i] = true;
        Mat row(field_, 1, n * n);
        add_expr(l.number, parse_expr(l.number, rhs, field_), row, 0, {{&basis, n}, {&basis, n}}, "basis element");
        for (std::size_t k = 0; k < n * n; ++k) c.delta.set(k, i, row.at(0, k));
      }
      c.eps = scalar_row(*counit, field_, n);
      c.chi = scalar_row(*coaug, field_, n).transpose();
    }
    at_line(h.number, [&] { c.validate(); return 0; });
    doc_.coalgebras.push_back({name, std::move(c)});
  }

  // comodule NAME over C [left|right]; regular | trivial | dim n + coact i = ...
  void comodule(const Line& h) {
    const std::string name = name_of(h);
    if (h.words.size() < 4 || h.words.size() > 5 || h.words[2] != "over")
      throw ParseError(h.number, "expected 'comodule NAME over COALGEBRA [left|right]'");
    bool right = false;
    if (h.words.size() == 5) {
      if (h.words[4] != "left" && h.words[4] != "right") throw ParseError(h.number, "side must be 'left' or 'right'");
      right = h.words[4] == "right";
    }
    unique(h, name);
    const FDCoalgebra& c = find_named(doc_.coalgebras, h.words[3], "coalgebra", h.number).c;
    std::optional<std::size_t> dim;
    std::optional<std::string> preset;
    std::vector<Line> coacts;
    for (const Line& l : body(h)) {
      if ((l.key == "regular" || l.key == "trivial") && l.words.size() == 1) preset = l.key;
      else if (l.key == "dim" && l.words.size() == 2) dim = parse_count(l.number, l.words[1], "dim");
      else if (l.key == "coact") coacts.push_back(l);
      else throw ParseError(l.number, fmt::format("unexpected '{}' in comodule", l.key));
    }
    FDComodule p;
    if (preset) {
      if (dim || !coacts.empty()) throw ParseError(h.number, fmt::format("'{}' replaces the coaction", *preset));
      p = *preset == "regular" ? regular_comodule(c, right) : trivial_comodule(c, right);
    } else {
      if (!dim) throw ParseError(h.number, "comodule without 'dim'");
      const std::size_t n = *dim;
      p.field = c.field;
      p.dim = n;
      p.right = right;
      p.coact = Mat(c.field, c.dim * n, n);
      const std::vector<std::string> none;
      std::vector<bool> seen(n, false);
      for (const Line& l : coacts) {
        auto [lhs, rhs] = split_eq(l);
        const std::size_t i = resolve(l.number, trim(lhs.substr(std::string("coact").size())), none, n, "comodule basis");
        if (seen[i]) throw ParseError(l.number, "coact given twice");
        seen[i] = true;
        Mat row(c.field, 1, c.dim * n);
        const auto terms = parse_expr(l.number, rhs, c.field);
        if (right) add_expr(l.number, terms, row, 0, {{&none, n}, {&none, c.dim}}, "basis");
        else add_expr(l.number, terms, row, 0, {{&none, c.dim}, {&none, n}}, "basis");
        for (std::size_t k = 0; k < c.dim * n; ++k) p.coact.set(k, i, row.at(0, k));
      }
    }
    at_line(h.number, [&] { p.validate(c); return 0; });
    doc_.comodules.push_back({name, h.words[3], std::move(p)});
  }

  // comap NAME C -> D
  void comap(const Line& h) {
    const std::string name = name_of(h);
    if (h.words.size() != 5 || h.words[3] != "->") throw ParseError(h.number, "expected 'comap NAME C -> D'");
    unique(h, name);
    CoalgebraMorphism g;
    g.source = find_named(doc_.coalgebras, h.words[2], "coalgebra", h.number).c;
    g.target = find_named(doc_.coalgebras, h.words[4], "coalgebra", h.number).c;
    if (g.source.field != g.target.field) throw ParseError(h.number, "source and target live over different fields");
    g.map = Mat(g.source.field, g.target.dim, g.source.dim);
    const std::vector<std::string> none;
    std::vector<bool> seen(g.source.dim, false);
    for (const Line& l : body(h)) {
      auto [lhs, rhs] = split_eq(l);
      const std::size_t i = resolve(l.number, lhs, none, g.source.dim, "source basis");
      if (seen[i]) throw ParseError(l.number, "image given twice");
      seen[i] = true;
      Mat row(g.source.field, 1, g.target.dim);
      add_expr(l.number, parse_expr(l.number, rhs, g.source.field), row, 0, {{&none, g.target.dim}}, "target basis");
      for (std::size_t k = 0; k < g.target.dim; ++k) g.map.set(k, i, row.at(0, k));
    }
    at_line(h.number, [&] { g.validate(); return 0; });
    doc_.comaps.push_back({name, h.words[2], h.words[4], std::move(g.map)});
  }

  // lie NAME [super]
  void lie(const Line& h) {
    const std::string name = name_of(h);
    LieFlavor flavor = LieFlavor::Lie;
    if (h.words.size() == 3 && h.words[2] == "super") flavor = LieFlavor::SuperLie;
    else if (h.words.size() != 2) throw ParseError(h.number, "expected 'lie NAME [super]'");
    unique(h, name);
    std::optional<std::vector<std::string>> labels;
    std::vector<std::pair<int, std::vector<Term>>> rels;
    for (const Line& l : body(h)) {
      if (l.key == "gens") {
        if (labels) throw ParseError(l.number, "'gens' given twice");
        labels = check_labels(l);
      } else if (l.key == "rel") {
        rels.emplace_back(l.number, parse_expr(l.number, l.rest, field_));
        if (rels.back().second.empty()) throw ParseError(l.number, "empty relation");
      } else {
        throw ParseError(l.number, fmt::format("unexpected '{}' in lie", l.key));
      }
    }
    if (!labels) throw ParseError(h.number, "lie without 'gens'");
    const std::size_t d = labels->size();
    Mat r(field_, rels.size(), d * d);
    for (std::size_t k = 0; k < rels.size(); ++k)
      add_expr(rels[k].first, rels[k].second, r, k, {{&*labels, d}, {&*labels, d}}, "generator");
    LiePresentation lp;
    lp.field = field_;
    lp.labels = *labels;
    lp.flavor = flavor;
    lp.relations = echelonize(r);
    at_line(h.number, [&] { lp.validate(); return 0; });
    doc_.lies.push_back({name, std::move(lp)});
  }

  // ideal NAME in P; gen EXPR (homogeneous, degree >= 2)
  void ideal(const Line& h) {
    const std::string name = name_of(h);
    if (h.words.size() != 4 || h.words[2] != "in") throw ParseError(h.number, "expected 'ideal NAME in PRESENTATION'");
    unique(h, name);
    const QuadPresentation& p = find_named(doc_.presentations, h.words[3], "presentation", h.number).p;
    const std::size_t d = p.dim();
    std::vector<Mat> rows;
    for (const Line& l : body(h)) {
      if (l.key != "gen") throw ParseError(l.number, fmt::format("unexpected '{}' in ideal", l.key));
      const auto terms = parse_expr(l.number, l.rest, p.field);
      if (terms.empty()) throw ParseError(l.number, "empty generator");
      const std::size_t deg = terms[0].factors.size();
      if (deg < 2) throw ParseError(l.number, "ideal generators must have degree at least 2");
      const std::size_t amb = at_line(l.number, [&] { return tensor_ambient(d, static_cast<int>(deg), 1, kDefaultAmbientBudget); });
      while (rows.size() <= deg) rows.push_back(Mat(p.field, 0, tensor_ambient(d, static_cast<int>(rows.size()), 1, kDefaultAmbientBudget)));
      Mat row(p.field, 1, amb);
      std::vector<std::pair<const std::vector<std::string>*, std::size_t>> bases(deg, {&p.v_labels, d});
      add_expr(l.number, terms, row, 0, bases, "generator");
      rows[deg] = vstack(rows[deg], row);
    }
    NamedIdeal out{name, h.words[3], {}};
    for (const auto& m : rows) out.gens.push_back(echelonize(m));
    doc_.ideals.push_back(std::move(out));
  }

  // fieldspec NAME; q, l, height
  void fieldspec(const Line& h) {
    const std::string name = name_of(h);
    if (h.words.size() != 2) throw ParseError(h.number, "expected 'fieldspec NAME'");
    unique(h, name);
    FieldSpec s;
    bool has_q = false, has_l = false;
    for (const Line& l : body(h)) {
      if (l.words.size() != 2) throw ParseError(l.number, fmt::format("expected '{} <value>'", l.key));
      const std::size_t v = parse_count(l.number, l.words[1], l.key.c_str());
      if (l.key == "q") s.q = v, has_q = true;
      else if (l.key == "l") s.l = static_cast<std::uint32_t>(v), has_l = true;
      else if (l.key == "height") s.height = static_cast<int>(v);
      else throw ParseError(l.number, fmt::format("unexpected '{}' in fieldspec", l.key));
    }
    if (!has_q || !has_l) throw ParseError(h.number, "fieldspec needs 'q' and 'l'");
    s.kind = s.height ? FieldSpec::Kind::LaurentTower : FieldSpec::Kind::FiniteField;
    at_line(h.number, [&] { s.validate(); return 0; });
    doc_.fieldspecs.push_back({name, s});
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  Field field_;
  Document doc_;
  std::vector<std::string> names_;
};

// Nonzero entries of one row as "c*w1.w2 + ...", words from `word(col)`.
std::string format_row(const Mat& m, std::size_t r, const std::function<std::string(std::size_t)>& word) {
  std::string out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (m.is_zero_at(r, c)) continue;
    std::string s = m.at(r, c).to_string();
    const bool negative = s[0] == '-';
    if (negative) s.erase(0, 1);
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    if (s != "1") out += s + "*";
    out += word(c);
  }
  return out;
}

std::string tensor_word(std::size_t col, const std::vector<std::size_t>& sizes,
                        const std::vector<const std::vector<std::string>*>& labels) {
  std::vector<std::string> parts(sizes.size());
  for (std::size_t k = sizes.size(); k-- > 0;) {
    const std::size_t i = col % sizes[k];
    col /= sizes[k];
    parts[k] = labels[k] && !labels[k]->empty() ? (*labels[k])[i] : std::to_string(i);
  }
  std::string w;
  for (std::size_t k = 0; k < parts.size(); ++k) w += (k ? "." : "") + parts[k];
  return w;
}

std::string field_token(Field f) { return f.is_rational() ? "Q" : std::to_string(f.characteristic()); }

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += " " + x;
  return out;
}

bool same_coalgebra(const FDCoalgebra& a, const FDCoalgebra& b) {
  return a.field == b.field && a.dim == b.dim && a.delta == b.delta && a.eps == b.eps && a.chi == b.chi;
}

}  // namespace

const QuadPresentation& Document::presentation(const std::string& name) const {
  for (const auto& x : presentations)
    if (x.name == name) return x.p;
  throw InputError(fmt::format("unknown presentation '{}'", name));
}

const FDCoalgebra& Document::coalgebra(const std::string& name) const {
  for (const auto& x : coalgebras)
    if (x.name == name) return x.c;
  throw InputError(fmt::format("unknown coalgebra '{}'", name));
}

const NamedGroup& Document::group(const std::string& name) const {
  for (const auto& x : groups)
    if (x.g.name == name) return x;
  throw InputError(fmt::format("unknown group '{}'", name));
}

bool operator==(const Document& a, const Document& b) {
  auto eq = [](const auto& xs, const auto& ys, auto same) {
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (!same(xs[i], ys[i])) return false;
    return true;
  };
  return eq(a.presentations, b.presentations, [](auto& x, auto& y) { return x.name == y.name && x.p == y.p; }) &&
         eq(a.modules, b.modules, [](auto& x, auto& y) { return x.name == y.name && x.over == y.over && x.m == y.m; }) &&
         eq(a.morphisms, b.morphisms,
            [](auto& x, auto& y) { return x.name == y.name && x.source == y.source && x.target == y.target && x.f1 == y.f1; }) &&
         eq(a.groups, b.groups,
            [](auto& x, auto& y) {
              return x.g.name == y.g.name && x.g.order == y.g.order && x.g.mul == y.g.mul &&
                     x.g.identity == y.g.identity && x.g.prime == y.g.prime && x.normal == y.normal;
            }) &&
         eq(a.coalgebras, b.coalgebras, [](auto& x, auto& y) { return x.name == y.name && same_coalgebra(x.c, y.c); }) &&
         eq(a.comodules, b.comodules,
            [](auto& x, auto& y) {
              return x.name == y.name && x.over == y.over && x.p.field == y.p.field && x.p.dim == y.p.dim &&
                     x.p.right == y.p.right && x.p.coact == y.p.coact;
            }) &&
         eq(a.comaps, b.comaps,
            [](auto& x, auto& y) { return x.name == y.name && x.source == y.source && x.target == y.target && x.map == y.map; }) &&
         eq(a.lies, b.lies,
            [](auto& x, auto& y) {
              return x.name == y.name && x.l.field == y.l.field && x.l.labels == y.l.labels && x.l.flavor == y.l.flavor &&
                     x.l.relations == y.l.relations;
            }) &&
         eq(a.ideals, b.ideals,
            [](auto& x, auto& y) {
              // trailing zero degrees carry no information
              const std::size_t n = std::max(x.gens.size(), y.gens.size());
              for (std::size_t k = 0; k < n; ++k) {
                const bool hx = k < x.gens.size() && x.gens[k].dim() > 0, hy = k < y.gens.size() && y.gens[k].dim() > 0;
                if (hx != hy || (hx && x.gens[k] != y.gens[k])) return false;
              }
              return x.name == y.name && x.over == y.over;
            }) &&
         eq(a.fieldspecs, b.fieldspecs, [](auto& x, auto& y) {
           return x.name == y.name && x.spec.kind == y.spec.kind && x.spec.q == y.spec.q && x.spec.l == y.spec.l &&
                  x.spec.height == y.spec.height;
         });
}

Document parse_input(std::string_view text, std::optional<Field> default_field) {
  return Parser(text, default_field.value_or(Field::prime(2))).run();
}

std::string emit(const Document& doc) {
  std::string out;
  std::optional<Field> current;
  auto field = [&](Field f) {
    if (!current || *current != f) out += "field " + field_token(f) + "\n";
    current = f;
  };
  for (const auto& x : doc.presentations) {
    field(x.p.field);
    out += "presentation " + x.name + (x.p.side == Side::Coalgebra ? " coalgebra" : "") + "\n";
    out += "  gens" + join(x.p.v_labels) + "\n";
    const std::size_t d = x.p.dim();
    for (std::size_t r = 0; r < x.p.r.dim(); ++r)
      out += "  rel " + format_row(x.p.r.basis(), r, [&](std::size_t c) { return tensor_word(c, {d, d}, {&x.p.v_labels, &x.p.v_labels}); }) + "\n";
    out += "end\n";
  }
  for (const auto& x : doc.modules) {
    const QuadPresentation& p = doc.presentation(x.over);
    out += "module " + x.name + " over " + x.over + "\n";
    out += "  gens" + join(x.m.u_labels) + "\n";
    for (std::size_t r = 0; r < x.m.s.dim(); ++r)
      out += "  rel " + format_row(x.m.s.basis(), r, [&](std::size_t c) {
               return tensor_word(c, {p.dim(), x.m.dim()}, {&p.v_labels, &x.m.u_labels});
             }) + "\n";
    out += "end\n";
  }
  for (const auto& x : doc.morphisms) {
    const QuadPresentation& a = doc.presentation(x.source);
    const QuadPresentation& b = doc.presentation(x.target);
    out += "morphism " + x.name + " " + x.source + " -> " + x.target + "\n";
    const Mat t = x.f1.transpose();
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const std::string rhs = format_row(t, i, [&](std::size_t c) { return b.v_labels[c]; });
      if (!rhs.empty()) out += "  " + a.v_labels[i] + " = " + rhs + "\n";
    }
    out += "end\n";
  }
  for (const auto& x : doc.ideals) {
    const QuadPresentation& p = doc.presentation(x.over);
    out += "ideal " + x.name + " in " + x.over + "\n";
    for (std::size_t n = 0; n < x.gens.size(); ++n) {
      std::vector<std::size_t> sizes(n, p.dim());
      std::vector<const std::vector<std::string>*> labels(n, &p.v_labels);
      for (std::size_t r = 0; r < x.gens[n].dim(); ++r)
        out += "  gen " + format_row(x.gens[n].basis(), r, [&](std::size_t c) { return tensor_word(c, sizes, labels); }) + "\n";
    }
    out += "end\n";
  }
  for (const auto& x : doc.lies) {
    field(x.l.field);
    out += "lie " + x.name + (x.l.flavor == LieFlavor::SuperLie ? " super" : "") + "\n";
    out += "  gens" + join(x.l.labels) + "\n";
    const std::size_t d = x.l.dim();
    for (std::size_t r = 0; r < x.l.relations.dim(); ++r)
      out += "  rel " + format_row(x.l.relations.basis(), r, [&](std::size_t c) { return tensor_word(c, {d, d}, {&x.l.labels, &x.l.labels}); }) + "\n";
    out += "end\n";
  }
  for (const auto& x : doc.groups) {
    out += "group " + x.g.name + "\n";
    out += fmt::format("  order {}\n  identity {}\n", x.g.order, x.g.identity);
    if (x.g.prime) out += fmt::format("  prime {}\n", x.g.prime);
    for (std::size_t a = 0; a < x.g.order; ++a) {
      out += "  row";
      for (std::size_t b = 0; b < x.g.order; ++b) out += " " + std::to_string(x.g.mul[a * x.g.order + b]);
      out += "\n";
    }
    if (!x.normal.empty()) {
      out += "  normal";
      for (auto e : x.normal) out += " " + std::to_string(e);
      out += "\n";
    }
    out += "end\n";
  }
  for (const auto& x : doc.coalgebras) {
    field(x.c.field);
    const std::size_t n = x.c.dim;
    out += "coalgebra " + x.name + fmt::format("\n  dim {}\n", n);
    const Mat t = x.c.delta.transpose();
    for (std::size_t i = 0; i < n; ++i)
      out += fmt::format("  delta {} = ", i) + format_row(t, i, [&](std::size_t c) { return tensor_word(c, {n, n}, {nullptr, nullptr}); }) + "\n";
    out += "  counit";
    for (std::size_t i = 0; i < n; ++i) out += " " + x.c.eps.at(0, i).to_string();
    out += "\n  coaug";
    for (std::size_t i = 0; i < n; ++i) out += " " + x.c.chi.at(i, 0).to_string();
    out += "\nend\n";
  }
  for (const auto& x : doc.comodules) {
    const FDCoalgebra& c = doc.coalgebra(x.over);
    out += "comodule " + x.name + " over " + x.over + (x.p.right ? " right" : " left") + fmt::format("\n  dim {}\n", x.p.dim);
    const Mat t = x.p.coact.transpose();
    const std::vector<std::size_t> sizes = x.p.right ? std::vector<std::size_t>{x.p.dim, c.dim} : std::vector<std::size_t>{c.dim, x.p.dim};
    for (std::size_t i = 0; i < x.p.dim; ++i)
      out += fmt::format("  coact {} = ", i) + format_row(t, i, [&](std::size_t col) { return tensor_word(col, sizes, {nullptr, nullptr}); }) + "\n";
    out += "end\n";
  }
  for (const auto& x : doc.comaps) {
    out += "comap " + x.name + " " + x.source + " -> " + x.target + "\n";
    const Mat t = x.map.transpose();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const std::string rhs = format_row(t, i, [](std::size_t c) { return std::to_string(c); });
      if (!rhs.empty()) out += fmt::format("  {} = {}\n", i, rhs);
    }
    out += "end\n";
  }
  for (const auto& x : doc.fieldspecs)
    out += fmt::format("fieldspec {}\n  q {}\n  l {}\n  height {}\nend\n", x.name, x.spec.q, x.spec.l, x.spec.height);
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace koszul::io
