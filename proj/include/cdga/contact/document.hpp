#ifndef CDGA_CONTACT_DOCUMENT_HPP
#define CDGA_CONTACT_DOCUMENT_HPP

// Line-oriented input format: algebras given by generators or Reeb orbits, differentials as
// polynomial expressions, named augmentations and maps. Parsing resolves names only after the
// whole text is read, so declarations may appear in any order.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdga/error.hpp"
#include "cdga/graded.hpp"
#include "cdga/rational.hpp"

namespace cdga::contact {

enum class TokenKind { Name, Integer, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePos pos;
};

/// One statement: the tokens of a line (or of a `;`-separated piece of one).
using Statement = std::vector<Token>;

inline std::vector<Statement> tokenize(std::string_view text) {
  std::vector<Statement> out;
  Statement current;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto flush = [&](SourcePos pos) {
    if (!current.empty()) {
      current.push_back(Token{TokenKind::End, "", pos});
      out.push_back(std::move(current));
      current.clear();
    }
  };
  while (i < text.size()) {
    char c = text[i];
    SourcePos pos{line, col};
    if (c == '\n') {
      flush(pos);
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
        ++col;
      }
      continue;
    }
    if (c == ';') {
      flush(pos);
      ++i;
      ++col;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\'')) ++i;
      current.push_back(Token{TokenKind::Name, std::string(text.substr(start, i - start)), pos});
      col += i - start;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      current.push_back(Token{TokenKind::Integer, std::string(text.substr(start, i - start)), pos});
      col += i - start;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      current.push_back(Token{TokenKind::Symbol, "->", pos});
      i += 2;
      col += 2;
      continue;
    }
    if (std::string_view("+-*^/()=:,").find(c) != std::string_view::npos) {
      current.push_back(Token{TokenKind::Symbol, std::string(1, c), pos});
      ++i;
      ++col;
      continue;
    }
    throw Error(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", pos);
  }
  flush(SourcePos{line, col});
  return out;
}

struct GenSpec {
  std::string name;
  /// Degree as written: cohomological for `gen`, SFT for `orbit` (after the cz conversion).
  int degree = 0;
  std::optional<Rational> action;
  bool orbit = false;
  std::optional<int> cz;
  H1Label h1;
  bool bad = false;
  SourcePos pos;
};

struct DiffSpec {
  std::string gen;
  std::vector<Token> expr;
  SourcePos pos;
};

struct AlgebraSpec {
  std::string name;
  SourcePos pos;
  std::vector<GenSpec> gens;
  std::vector<DiffSpec> diffs;
  /// Declaration-order signature (internal degrees: SFT degrees negated for orbits).
  SignaturePtr sig;
  /// Differential per generator in declaration order; zero where no `diff` line was given.
  std::vector<Element> diff;
  std::vector<SourcePos> diff_pos;

  bool contact() const {
    for (const auto& g : gens)
      if (g.orbit) return true;
    return false;
  }

  std::optional<std::size_t> find(std::string_view n) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == n) return i;
    return std::nullopt;
  }
};

struct AugSpec {
  std::string name;
  std::string algebra;
  std::vector<std::pair<std::string, Rational>> values;
  std::vector<SourcePos> value_pos;
  SourcePos pos;
};

struct ImageSpec {
  std::string gen;
  std::vector<Token> expr;
  SourcePos pos;
  Element value;
};

struct MapSpec {
  std::string name;
  std::string source;
  std::string target;
  std::vector<ImageSpec> images;
  SourcePos pos;
};

struct Document {
  GradingSpec grading = GradingSpec::integer();
  bool grading_declared = false;
  std::optional<int> dim;
  std::vector<std::string> h1;
  std::vector<AlgebraSpec> algebras;
  std::vector<AugSpec> augs;
  std::vector<MapSpec> maps;

  const AlgebraSpec* find_algebra(std::string_view name) const {
    for (const auto& a : algebras)
      if (a.name == name) return &a;
    return nullptr;
  }
  const AlgebraSpec& algebra(std::string_view name) const {
    if (const auto* a = find_algebra(name)) return *a;
    throw Error(ErrorCode::UnknownName, "no algebra named '" + std::string(name) + "'");
  }
  const AugSpec* find_aug(std::string_view name) const {
    for (const auto& a : augs)
      if (a.name == name) return &a;
    return nullptr;
  }
  const MapSpec* find_map(std::string_view name) const {
    for (const auto& m : maps)
      if (m.name == name) return &m;
    return nullptr;
  }
};

namespace detail {

class Cursor {
 public:
  explicit Cursor(const std::vector<Token>& toks) : toks_(toks) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == TokenKind::End; }
  std::size_t position() const { return pos_; }

  bool accept(std::string_view sym) {
    if (peek().kind == TokenKind::Symbol && peek().text == sym) {
      next();
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view word) {
    if (peek().kind == TokenKind::Name && peek().text == word) {
      next();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End ? "end of line" : "'" + t.text + "'";
    throw Error(ErrorCode::SyntaxError, "expected " + what + ", found " + found, t.pos);
  }

  void expect(std::string_view sym) {
    if (!accept(sym)) fail("'" + std::string(sym) + "'");
  }

  const Token& name(const std::string& what) {
    if (peek().kind != TokenKind::Name) fail(what);
    return next();
  }

  long long integer(const std::string& what) {
    bool neg = false;
    if (accept("-")) neg = true;
    else accept("+");
    if (peek().kind != TokenKind::Integer) fail(what);
    const Token& t = next();
    if (t.text.size() > 12) throw Error(ErrorCode::SyntaxError, "integer too large", t.pos);
    long long v = std::stoll(t.text);
    return neg ? -v : v;
  }

  Rational rational(const std::string& what) {
    bool neg = false;
    if (accept("-")) neg = true;
    else accept("+");
    if (peek().kind != TokenKind::Integer) fail(what);
    const Token& num = next();
    std::string text = num.text;
    if (accept("/")) {
      if (peek().kind != TokenKind::Integer) fail("denominator");
      const Token& den = next();
      if (den.text.find_first_not_of('0') == std::string::npos) {
        throw Error(ErrorCode::SyntaxError, "zero denominator", den.pos);
      }
      text += "/" + den.text;
    }
    Rational q;
    if (!parse_rational(text, q)) throw Error(ErrorCode::SyntaxError, "malformed rational '" + text + "'", num.pos);
    return neg ? Rational(-q) : q;
  }

  /// Tokens up to (not including) a top-level comma or the end of the statement.
  std::vector<Token> expression_tokens() {
    std::vector<Token> out;
    int depth = 0;
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind == TokenKind::Symbol) {
        if (t.text == "(") ++depth;
        if (t.text == ")") --depth;
        if (t.text == "," && depth == 0) break;
      }
      out.push_back(next());
    }
    out.push_back(Token{TokenKind::End, "", peek().pos});
    return out;
  }

  void end() {
    if (!at_end()) fail("end of statement");
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

/// Recursive-descent evaluation of an expression into an element of `sig`. Factor order as
/// written determines Koszul signs.
class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, SignaturePtr sig, const std::set<std::string>* excluded = nullptr)
      : cur_(toks), sig_(std::move(sig)), excluded_(excluded) {}

  Element parse() {
    if (cur_.at_end()) cur_.fail("expression");
    Element e = sum();
    cur_.end();
    return e;
  }

 private:
  Element sum() {
    Element out(sig_);
    bool neg = false;
    if (cur_.accept("-")) neg = true;
    else cur_.accept("+");
    Element t = product();
    out = neg ? -t : t;
    for (;;) {
      if (cur_.accept("+")) {
        out += product();
      } else if (cur_.accept("-")) {
        out -= product();
      } else {
        return out;
      }
    }
  }

  Element product() {
    Element out = power();
    while (cur_.accept("*")) out = out * power();
    return out;
  }

  Element power() {
    Element base = atom();
    if (cur_.accept("^")) {
      const Token& t = cur_.peek();
      long long e = cur_.integer("exponent");
      if (e < 0) throw Error(ErrorCode::SyntaxError, "negative exponent", t.pos);
      if (e > 64) throw Error(ErrorCode::SyntaxError, "exponent too large", t.pos);
      Element out = Element::constant(sig_, Rational(1));
      for (long long k = 0; k < e; ++k) out = out * base;
      return out;
    }
    return base;
  }

  Element atom() {
    const Token& t = cur_.peek();
    if (cur_.accept("(")) {
      Element e = sum();
      cur_.expect(")");
      return e;
    }
    if (t.kind == TokenKind::Integer) return Element::constant(sig_, cur_.rational("number"));
    if (t.kind == TokenKind::Name) {
      cur_.next();
      auto idx = sig_->find(t.text);
      if (!idx || (excluded_ && excluded_->count(t.text))) {
        throw Error(ErrorCode::UndeclaredGenerator, "undeclared generator '" + t.text + "'", t.pos);
      }
      return Element::generator(sig_, *idx);
    }
    cur_.fail("number, generator or '('");
  }

  Cursor cur_;
  SignaturePtr sig_;
  const std::set<std::string>* excluded_;
};

inline H1Label parse_h1_word(Cursor& cur, const std::vector<std::string>& classes) {
  H1Label label;
  if (cur.peek().kind == TokenKind::Integer && cur.peek().text == "0") {
    cur.next();
    return label;
  }
  bool first = true;
  for (;;) {
    long long sign = 1;
    if (cur.accept("-")) {
      sign = -1;
    } else if (!cur.accept("+") && !first) {
      break;
    }
    first = false;
    long long k = 1;
    if (cur.peek().kind == TokenKind::Integer) {
      k = cur.integer("coefficient");
      cur.expect("*");
    }
    const Token& n = cur.name("first-homology class");
    if (std::find(classes.begin(), classes.end(), n.text) == classes.end()) {
      throw Error(ErrorCode::UnknownName, "undeclared first-homology class '" + n.text + "'", n.pos);
    }
    label = add_labels(label, H1Label{{n.text, 1}}, sign * k);
    if (!(cur.peek().kind == TokenKind::Symbol && (cur.peek().text == "+" || cur.peek().text == "-"))) break;
  }
  return label;
}

}  // namespace detail

/// cz -> SFT degree n - 3 + cz for a (2n-1)-dimensional contact manifold.
inline int sft_degree_from_cz(int dim, int cz) { return (dim + 1) / 2 - 3 + cz; }

inline Document parse_document(std::string_view text) {
  Document doc;
  auto statements = tokenize(text);
  struct PendingOrbitCz {
    std::size_t algebra;
    std::size_t gen;
  };
  std::vector<PendingOrbitCz> cz_orbits;
  std::vector<std::vector<std::pair<std::string, Token>>> h1_pending;
  std::optional<std::size_t> current;
  auto current_algebra = [&](SourcePos pos) -> AlgebraSpec& {
    if (!current) {
      if (doc.find_algebra("main")) throw Error(ErrorCode::DuplicateName, "algebra 'main' declared twice", pos);
      doc.algebras.push_back(AlgebraSpec{"main", pos, {}, {}, nullptr, {}, {}});
      current = doc.algebras.size() - 1;
    }
    return doc.algebras[*current];
  };
  std::set<std::string> names_seen;
  std::set<std::string> aug_names;
  std::set<std::string> map_names;

  for (const auto& st : statements) {
    detail::Cursor cur(st);
    const Token& head = cur.name("directive");
    const std::string& kw = head.text;
    if (kw == "grading") {
      if (doc.grading_declared) throw Error(ErrorCode::DuplicateName, "grading declared twice", head.pos);
      const Token& g = cur.name("'Z' or 'Z/<modulus>'");
      if (g.text != "Z") throw Error(ErrorCode::SyntaxError, "grading must be Z or Z/<modulus>", g.pos);
      if (cur.accept("/")) {
        const Token& mt = cur.peek();
        long long m = cur.integer("modulus");
        try {
          doc.grading = GradingSpec::cyclic(static_cast<int>(m));
        } catch (const Error& e) {
          throw Error(ErrorCode::InvalidGrading, e.detail(), mt.pos);
        }
      }
      doc.grading_declared = true;
      cur.end();
    } else if (kw == "dim") {
      if (doc.dim) throw Error(ErrorCode::DuplicateName, "dim declared twice", head.pos);
      const Token& t = cur.peek();
      long long d = cur.integer("dimension");
      if (d < 1 || d % 2 == 0) throw Error(ErrorCode::InvalidInput, "contact dimension must be odd and positive", t.pos);
      doc.dim = static_cast<int>(d);
      cur.end();
    } else if (kw == "h1") {
      do {
        const Token& n = cur.name("class name");
        if (std::find(doc.h1.begin(), doc.h1.end(), n.text) != doc.h1.end() || n.text == "bad") {
          throw Error(ErrorCode::DuplicateName, "first-homology class '" + n.text + "' declared twice", n.pos);
        }
        doc.h1.push_back(n.text);
      } while (!cur.at_end());
    } else if (kw == "algebra") {
      const Token& n = cur.name("algebra name");
      if (doc.find_algebra(n.text)) throw Error(ErrorCode::DuplicateName, "algebra '" + n.text + "' declared twice", n.pos);
      doc.algebras.push_back(AlgebraSpec{n.text, n.pos, {}, {}, nullptr, {}, {}});
      current = doc.algebras.size() - 1;
      cur.end();
    } else if (kw == "gen" || kw == "orbit") {
      AlgebraSpec& alg = current_algebra(head.pos);
      const Token& n = cur.name("generator name");
      if (alg.find(n.text)) throw Error(ErrorCode::DuplicateName, "generator '" + n.text + "' declared twice", n.pos);
      GenSpec g;
      g.name = n.text;
      g.pos = n.pos;
      if (kw == "gen") {
        g.degree = static_cast<int>(cur.integer("degree"));
        if (cur.accept_word("action")) g.action = cur.rational("action");
      } else {
        g.orbit = true;
        if (cur.accept_word("cz")) {
          g.cz = static_cast<int>(cur.integer("Conley-Zehnder index"));
          cz_orbits.push_back(PendingOrbitCz{*current, alg.gens.size()});
        } else if (cur.accept_word("deg")) {
          g.degree = static_cast<int>(cur.integer("degree"));
        } else {
          cur.fail("'cz' or 'deg'");
        }
        if (!cur.accept_word("action")) cur.fail("'action'");
        const Token& at = cur.peek();
        g.action = cur.rational("action");
        if (*g.action <= 0) throw Error(ErrorCode::InvalidInput, "orbit actions must be positive", at.pos);
        if (cur.accept_word("h1")) {
          std::vector<Token> word;
          while (!cur.at_end() && !(cur.peek().kind == TokenKind::Name && cur.peek().text == "bad")) word.push_back(cur.next());
          word.push_back(Token{TokenKind::End, "", cur.peek().pos});
          detail::Cursor wc(word);
          g.h1 = detail::parse_h1_word(wc, doc.h1);
          wc.end();
        }
        if (cur.accept_word("bad")) g.bad = true;
      }
      cur.end();
      alg.gens.push_back(std::move(g));
    } else if (kw == "diff") {
      AlgebraSpec& alg = current_algebra(head.pos);
      const Token& n = cur.name("generator name");
      cur.expect("=");
      DiffSpec d{n.text, cur.expression_tokens(), n.pos};
      cur.end();
      for (const auto& other : alg.diffs)
        if (other.gen == n.text) throw Error(ErrorCode::DuplicateName, "differential of '" + n.text + "' given twice", n.pos);
      alg.diffs.push_back(std::move(d));
    } else if (kw == "aug") {
      const Token& n = cur.name("augmentation name");
      if (!aug_names.insert(n.text).second || n.text == "trivial") {
        throw Error(ErrorCode::DuplicateName, "augmentation '" + n.text + "' declared twice", n.pos);
      }
      AugSpec a{n.text, "main", {}, {}, n.pos};
      if (cur.peek().kind == TokenKind::Name) a.algebra = cur.next().text;
      if (cur.accept(":")) {
        do {
          const Token& g = cur.name("generator name");
          cur.expect("=");
          a.values.emplace_back(g.text, cur.rational("value"));
          a.value_pos.push_back(g.pos);
        } while (cur.accept(","));
      }
      cur.end();
      doc.augs.push_back(std::move(a));
    } else if (kw == "map") {
      const Token& n = cur.name("map name");
      if (!map_names.insert(n.text).second) throw Error(ErrorCode::DuplicateName, "map '" + n.text + "' declared twice", n.pos);
      MapSpec m;
      m.name = n.text;
      m.pos = n.pos;
      m.source = cur.name("source algebra").text;
      cur.expect("->");
      m.target = cur.name("target algebra").text;
      if (cur.accept(":")) {
        do {
          const Token& g = cur.name("generator name");
          cur.expect("=");
          m.images.push_back(ImageSpec{g.text, cur.expression_tokens(), g.pos, Element(nullptr)});
        } while (cur.accept(","));
      }
      cur.end();
      doc.maps.push_back(std::move(m));
    } else {
      throw Error(ErrorCode::SyntaxError, "unknown directive '" + kw + "'", head.pos);
    }
  }

  // Resolution.
  for (const auto& [a, g] : cz_orbits) {
    GenSpec& gen = doc.algebras[a].gens[g];
    if (!doc.dim) throw Error(ErrorCode::InvalidInput, "orbit given by cz needs a 'dim' declaration", gen.pos);
    gen.degree = sft_degree_from_cz(*doc.dim, *gen.cz);
  }
  for (auto& alg : doc.algebras) {
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < alg.gens.size(); ++i) {
      const GenSpec& g = alg.gens[i];
      int internal = g.orbit ? -g.degree : g.degree;
      gens.push_back(Generator{g.name, doc.grading.reduce(internal), i, g.action, g.h1});
    }
    alg.sig = Signature::make(doc.grading, std::move(gens));
    alg.diff.assign(alg.gens.size(), Element(alg.sig));
    alg.diff_pos.assign(alg.gens.size(), SourcePos{});
    std::set<std::string> excluded;
    for (const auto& g : alg.gens)
      if (g.bad) excluded.insert(g.name);
    for (const auto& d : alg.diffs) {
      auto idx = alg.find(d.gen);
      if (!idx) throw Error(ErrorCode::UndeclaredGenerator, "undeclared generator '" + d.gen + "'", d.pos);
      alg.diff[*idx] = detail::ExprParser(d.expr, alg.sig, alg.gens[*idx].bad ? nullptr : &excluded).parse();
      alg.diff_pos[*idx] = d.pos;
    }
  }
  for (const auto& a : doc.augs) {
    const AlgebraSpec* alg = doc.find_algebra(a.algebra);
    if (!alg) throw Error(ErrorCode::UnknownName, "augmentation '" + a.name + "' refers to unknown algebra '" + a.algebra + "'", a.pos);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      const auto& gname = a.values[i].first;
      if (!alg->find(gname)) throw Error(ErrorCode::UndeclaredGenerator, "undeclared generator '" + gname + "'", a.value_pos[i]);
      if (!seen.insert(gname).second) throw Error(ErrorCode::DuplicateName, "value of '" + gname + "' given twice", a.value_pos[i]);
    }
  }
  for (auto& m : doc.maps) {
    const AlgebraSpec* src = doc.find_algebra(m.source);
    const AlgebraSpec* tgt = doc.find_algebra(m.target);
    if (!src) throw Error(ErrorCode::UnknownName, "map '" + m.name + "' has unknown source '" + m.source + "'", m.pos);
    if (!tgt) throw Error(ErrorCode::UnknownName, "map '" + m.name + "' has unknown target '" + m.target + "'", m.pos);
    std::set<std::string> seen;
    for (auto& im : m.images) {
      if (!src->find(im.gen)) throw Error(ErrorCode::UndeclaredGenerator, "undeclared generator '" + im.gen + "'", im.pos);
      if (!seen.insert(im.gen).second) throw Error(ErrorCode::DuplicateName, "image of '" + im.gen + "' given twice", im.pos);
      im.value = detail::ExprParser(im.expr, tgt->sig).parse();
    }
  }
  return doc;
}

namespace detail {

inline std::string element_text(const Element& e) { return e.to_string(); }

}  // namespace detail

/// Canonical text: global declarations, then algebras (orbits sorted by action), then
/// augmentations and maps sorted by name.
inline std::string emit(const Document& doc) {
  std::ostringstream out;
  out << "grading " << doc.grading.to_string() << "\n";
  if (doc.dim) out << "dim " << *doc.dim << "\n";
  for (const auto& h : doc.h1) out << "h1 " << h << "\n";
  for (const auto& alg : doc.algebras) {
    out << "\nalgebra " << alg.name << "\n";
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < alg.gens.size(); ++i) order.push_back(i);
    if (alg.contact()) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = alg.gens[a].action;
        const auto& y = alg.gens[b].action;
        if (!x || !y) return false;
        return *x < *y;
      });
    }
    for (std::size_t i : order) {
      const GenSpec& g = alg.gens[i];
      if (g.orbit) {
        out << "orbit " << g.name;
        if (g.cz) out << " cz " << *g.cz;
        else out << " deg " << g.degree;
        out << " action " << g.action->str();
        if (!g.h1.empty()) out << " h1 " << label_to_string(g.h1);
        if (g.bad) out << " bad";
      } else {
        out << "gen " << g.name << " " << g.degree;
        if (g.action) out << " action " << g.action->str();
      }
      out << "\n";
    }
    for (std::size_t i : order)
      if (!alg.diff[i].is_zero()) out << "diff " << alg.gens[i].name << " = " << detail::element_text(alg.diff[i]) << "\n";
  }
  std::vector<const AugSpec*> augs;
  for (const auto& a : doc.augs) augs.push_back(&a);
  std::sort(augs.begin(), augs.end(), [](const AugSpec* a, const AugSpec* b) { return a->name < b->name; });
  if (!augs.empty()) out << "\n";
  for (const auto* a : augs) {
    out << "aug " << a->name << " " << a->algebra;
    const AlgebraSpec& alg = doc.algebra(a->algebra);
    bool first = true;
    for (const auto& g : alg.gens) {
      for (const auto& [n, v] : a->values) {
        if (n != g.name || v.is_zero()) continue;
        out << (first ? " : " : ", ") << n << " = " << v.str();
        first = false;
      }
    }
    out << "\n";
  }
  std::vector<const MapSpec*> maps;
  for (const auto& m : doc.maps) maps.push_back(&m);
  std::sort(maps.begin(), maps.end(), [](const MapSpec* a, const MapSpec* b) { return a->name < b->name; });
  if (!maps.empty()) out << "\n";
  for (const auto* m : maps) {
    out << "map " << m->name << " " << m->source << " -> " << m->target;
    const AlgebraSpec& src = doc.algebra(m->source);
    bool first = true;
    for (const auto& g : src.gens) {
      for (const auto& im : m->images) {
        if (im.gen != g.name || im.value.is_zero()) continue;
        out << (first ? " : " : ", ") << im.gen << " = " << detail::element_text(im.value);
        first = false;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace cdga::contact

#endif  // CDGA_CONTACT_DOCUMENT_HPP
