#include "ontoplot/owl_parser.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <tuple>

#include "ontoplot/error.hpp"

namespace ontoplot {

std::string_view to_string(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::ClassDecl: return "ClassDecl";
    case AxiomKind::ObjectPropertyDecl: return "ObjectPropertyDecl";
    case AxiomKind::SubClassNamed: return "SubClassNamed";
    case AxiomKind::SubClassRestriction: return "SubClassRestriction";
    case AxiomKind::EquivalentIntersection: return "EquivalentIntersection";
    case AxiomKind::LabelAnnotation: return "LabelAnnotation";
    case AxiomKind::Skipped: return "Skipped";
  }
  return "?";
}

std::size_t ParseReport::skipped_total() const {
  std::size_t total = 0;
  for (const auto& [name, count] : skipped_counts) total += count;
  return total;
}

namespace {

constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";

//------------------------------------------------------------------------------
// Lexer

enum class TokenKind { LParen, RParen, Iri, Name, Literal, Equals, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    if (pos_ >= text_.size()) return {TokenKind::End, {}, line_};
    const char c = text_[pos_];
    const std::size_t line = line_;
    switch (c) {
      case '(': ++pos_; return {TokenKind::LParen, "(", line};
      case ')': ++pos_; return {TokenKind::RParen, ")", line};
      case '=': ++pos_; return {TokenKind::Equals, "=", line};
      case '<': return {TokenKind::Iri, read_iri(), line};
      case '"': return {TokenKind::Literal, read_literal(), line};
      default: break;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    if (pos_ == start)
      throw SyntaxError(line_, std::string("unexpected character '") + c + "'");
    return {TokenKind::Name, std::string(text_.substr(start, pos_ - start)), line};
  }

 private:
  static bool is_delimiter(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '(' || c == ')' ||
           c == '<' || c == '>' || c == '"' || c == '=';
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string read_iri() {
    std::size_t start = ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '>') {
      char c = text_[pos_];
      if (c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '<' || c == '"')
        throw SyntaxError(line_, "malformed IRI");
      ++pos_;
    }
    if (pos_ >= text_.size()) throw SyntaxError(line_, "unterminated IRI");
    std::string iri(text_.substr(start, pos_ - start));
    ++pos_;
    if (iri.empty()) throw SyntaxError(line_, "empty IRI");
    return iri;
  }

  // Returns the lexical form; a trailing @lang or ^^datatype is consumed.
  std::string read_literal() {
    const std::size_t open_line = line_;
    ++pos_;
    std::string value;
    while (true) {
      if (pos_ >= text_.size()) throw SyntaxError(open_line, "unterminated string literal");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\n') ++line_;
      if (c == '\\' && pos_ < text_.size()) {
        value += text_[pos_++];
        continue;
      }
      value += c;
    }
    if (pos_ < text_.size() && text_[pos_] == '@') {
      while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    } else if (text_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (pos_ < text_.size() && text_[pos_] == '<')
        read_iri();
      else
        while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    }
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

//------------------------------------------------------------------------------
// S-expression tree

struct Expr {
  // Atom: token holds the atom. List: head is the constructor name.
  bool is_list = false;
  Token token;
  std::vector<Expr> items;

  const std::string& head() const { return token.text; }
  std::size_t line() const { return token.line; }
};

class TreeReader {
 public:
  explicit TreeReader(std::string_view text) : lexer_(text) { advance(); }

  bool at_end() const { return current_.kind == TokenKind::End; }

  Expr read() {
    Token tok = current_;
    switch (tok.kind) {
      case TokenKind::RParen: throw SyntaxError(tok.line, "unbalanced ')'");
      case TokenKind::LParen: throw SyntaxError(tok.line, "'(' without a constructor name");
      case TokenKind::End: throw SyntaxError(tok.line, "unexpected end of input");
      default: break;
    }
    advance();
    if (tok.kind != TokenKind::Name || current_.kind != TokenKind::LParen)
      return Expr{false, std::move(tok), {}};

    Expr list{true, std::move(tok), {}};
    advance();
    while (current_.kind != TokenKind::RParen) {
      if (current_.kind == TokenKind::End)
        throw SyntaxError(list.line(), "unbalanced '(' in " + list.head());
      list.items.push_back(read());
    }
    advance();
    return list;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  Lexer lexer_;
  Token current_;
};

//------------------------------------------------------------------------------
// Interpretation

class Interpreter {
 public:
  ParseReport run(std::string_view text) {
    report_.prefixes = {
        {"owl", "http://www.w3.org/2002/07/owl#"},
        {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
        {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
        {"xsd", "http://www.w3.org/2001/XMLSchema#"},
        {"xml", "http://www.w3.org/XML/1998/namespace"},
    };
    TreeReader reader(text);
    while (!reader.at_end()) {
      Expr top = reader.read();
      if (!top.is_list) throw SyntaxError(top.line(), "unexpected token '" + top.token.text + "'");
      if (top.head() == "Prefix") {
        ++report_.construct_count;
        ++report_.prefix_count;
        read_prefix(top);
      } else if (top.head() == "Ontology") {
        read_ontology(top);
      } else {
        ++report_.construct_count;
        skip(top.head(), top.line());
      }
    }
    return std::move(report_);
  }

 private:
  // Prefix(name:=<iri>) tokenises as Name("name:") Equals Iri.
  void read_prefix(const Expr& e) {
    const auto& items = e.items;
    std::size_t i = 0;
    std::string name;
    if (i < items.size() && !items[i].is_list && items[i].token.kind == TokenKind::Name) {
      name = items[i].token.text;
      ++i;
    }
    if (name.empty() || name.back() != ':' || i + 1 >= items.size() ||
        items[i].token.kind != TokenKind::Equals || items[i + 1].token.kind != TokenKind::Iri)
      throw SyntaxError(e.line(), "malformed Prefix declaration");
    name.pop_back();
    report_.prefixes[name] = items[i + 1].token.text;
  }

  void read_ontology(const Expr& e) {
    std::size_t i = 0;
    if (i < e.items.size() && !e.items[i].is_list) {
      report_.ontology_iri = iri_of(e.items[i]);
      ++i;
    }
    if (i < e.items.size() && !e.items[i].is_list) ++i;  // version IRI
    for (; i < e.items.size(); ++i) {
      const Expr& axiom = e.items[i];
      if (!axiom.is_list)
        throw SyntaxError(axiom.line(), "unexpected token '" + axiom.token.text + "' in Ontology");
      ++report_.construct_count;
      read_axiom(axiom);
    }
  }

  void read_axiom(const Expr& e) {
    // Axiom annotations precede the operands.
    std::vector<const Expr*> args;
    for (const auto& item : e.items)
      if (!(item.is_list && item.head() == "Annotation")) args.push_back(&item);

    const auto& head = e.head();
    if (head == "Declaration") {
      if (args.size() == 1 && args[0]->is_list && args[0]->items.size() == 1) {
        const auto& what = *args[0];
        if (what.head() == "Class") {
          recognize({AxiomKind::ClassDecl, iri_of(what.items[0]), {}, {}, {}, {}, e.line()});
          return;
        }
        if (what.head() == "ObjectProperty") {
          recognize(
              {AxiomKind::ObjectPropertyDecl, iri_of(what.items[0]), {}, {}, {}, {}, e.line()});
          return;
        }
        skip("Declaration(" + what.head() + ")", e.line());
        return;
      }
      skip("Declaration", e.line());
      return;
    }
    if (head == "SubClassOf" && args.size() == 2 && is_named(*args[0])) {
      std::string sub = iri_of(*args[0]);
      const Expr& super = *args[1];
      if (is_named(super)) {
        recognize({AxiomKind::SubClassNamed, sub, {}, iri_of(super), {}, {}, e.line()});
        return;
      }
      if (auto r = restriction_of(super)) {
        recognize({AxiomKind::SubClassRestriction, sub, r->first, r->second, {}, {}, e.line()});
        return;
      }
      if (super.is_list && super.head() == "ObjectIntersectionOf") {
        ++report_.recognized_count;
        lift_intersection(sub, super);
        return;
      }
    }
    if (head == "EquivalentClasses" && args.size() == 2) {
      const Expr* named = nullptr;
      const Expr* conj = nullptr;
      for (const Expr* a : args) {
        if (is_named(*a))
          named = a;
        else if (a->is_list && a->head() == "ObjectIntersectionOf")
          conj = a;
      }
      if (named && conj) {
        std::string cls = iri_of(*named);
        ++report_.recognized_count;
        report_.axioms.push_back(
            {AxiomKind::EquivalentIntersection, cls, {}, {}, {}, {}, e.line()});
        lift_intersection(cls, *conj);
        return;
      }
    }
    if (head == "AnnotationAssertion" && args.size() == 3 && !args[0]->is_list &&
        !args[1]->is_list && args[2]->token.kind == TokenKind::Literal &&
        !args[2]->is_list) {
      if (iri_of(*args[0]) == kRdfsLabel && is_named(*args[1])) {
        recognize({AxiomKind::LabelAnnotation, iri_of(*args[1]), {}, {}, args[2]->token.text,
                   {}, e.line()});
        return;
      }
    }
    skip(head, e.line());
  }

  // Lifts named conjuncts and ObjectSomeValuesFrom(p D) conjuncts; anything
  // nested deeper is dropped with a warning.
  void lift_intersection(const std::string& cls, const Expr& conj) {
    for (const auto& c : conj.items) {
      if (is_named(c)) {
        report_.axioms.push_back({AxiomKind::SubClassNamed, cls, {}, iri_of(c), {}, {}, c.line()});
      } else if (auto r = restriction_of(c)) {
        report_.axioms.push_back(
            {AxiomKind::SubClassRestriction, cls, r->first, r->second, {}, {}, c.line()});
      } else {
        report_.warnings.push_back("line " + std::to_string(c.line()) +
                                   ": nested conjunct skipped: " +
                                   (c.is_list ? c.head() : c.token.text));
      }
    }
  }

  std::optional<std::pair<std::string, std::string>> restriction_of(const Expr& e) {
    if (!e.is_list || e.head() != "ObjectSomeValuesFrom" || e.items.size() != 2) return std::nullopt;
    if (!is_named(e.items[0]) || !is_named(e.items[1])) return std::nullopt;
    return std::make_pair(iri_of(e.items[0]), iri_of(e.items[1]));
  }

  static bool is_named(const Expr& e) {
    return !e.is_list && (e.token.kind == TokenKind::Iri ||
                          (e.token.kind == TokenKind::Name && e.token.text.rfind("_:", 0) != 0));
  }

  std::string iri_of(const Expr& e) const {
    if (e.is_list) throw SyntaxError(e.line(), "expected an IRI, found " + e.head() + "(...)");
    if (e.token.kind == TokenKind::Iri) return e.token.text;
    if (e.token.kind != TokenKind::Name)
      throw SyntaxError(e.line(), "expected an IRI, found '" + e.token.text + "'");
    const auto& name = e.token.text;
    auto colon = name.find(':');
    if (colon == std::string::npos) throw SyntaxError(e.line(), "malformed IRI '" + name + "'");
    auto it = report_.prefixes.find(name.substr(0, colon));
    if (it == report_.prefixes.end())
      throw SyntaxError(e.line(), "undeclared prefix in '" + name + "'");
    return it->second + name.substr(colon + 1);
  }

  void recognize(RawAxiom axiom) {
    ++report_.recognized_count;
    report_.axioms.push_back(std::move(axiom));
  }

  void skip(const std::string& construct, std::size_t line) {
    ++report_.skipped_counts[construct];
    report_.axioms.push_back({AxiomKind::Skipped, {}, {}, {}, {}, construct, line});
  }

  ParseReport report_;
};

constexpr std::string_view kOwlThing = "http://www.w3.org/2002/07/owl#Thing";
constexpr std::string_view kOwlNothing = "http://www.w3.org/2002/07/owl#Nothing";

bool is_builtin_class(std::string_view iri) { return iri == kOwlThing || iri == kOwlNothing; }

}  // namespace

ParseReport parse_functional_syntax(std::string_view text) { return Interpreter{}.run(text); }

std::vector<Association> extract_associations(const ParseReport& report) {
  std::vector<Association> out;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& a : report.axioms) {
    if (a.kind != AxiomKind::SubClassRestriction) continue;
    if (seen.emplace(a.subject, a.property, a.object).second)
      out.push_back({a.subject, a.property, a.object});
  }
  return out;
}

LabelResolution resolve_labels(const ParseReport& report) {
  LabelResolution out;
  std::map<std::string, std::set<std::string>> found;
  std::set<std::string> ids;
  for (const auto& a : report.axioms) {
    switch (a.kind) {
      case AxiomKind::ClassDecl:
      case AxiomKind::ObjectPropertyDecl:
      case AxiomKind::EquivalentIntersection:
        ids.insert(a.subject);
        break;
      case AxiomKind::SubClassNamed:
        ids.insert(a.subject);
        ids.insert(a.object);
        break;
      case AxiomKind::SubClassRestriction:
        ids.insert(a.subject);
        ids.insert(a.property);
        ids.insert(a.object);
        break;
      case AxiomKind::LabelAnnotation:
        found[a.subject].insert(a.text);
        break;
      case AxiomKind::Skipped:
        break;
    }
  }
  for (const auto& id : ids) out.labels[id] = local_name(id);
  for (const auto& [id, labels] : found) {
    if (!ids.count(id)) continue;
    if (labels.size() > 1)
      out.warnings.push_back("multiple labels for " + id + "; using '" + *labels.begin() + "'");
    out.labels[id] = *labels.begin();
  }
  return out;
}

OntologySnapshot snapshot_from_report(const ParseReport& report, std::string source) {
  SnapshotInput input;
  input.source = std::move(source);
  input.warnings = report.warnings;

  std::map<std::string, std::set<std::string>> labels;
  for (const auto& a : report.axioms)
    if (a.kind == AxiomKind::LabelAnnotation) labels[a.subject].insert(a.text);
  auto label_of = [&](const std::string& id) -> std::optional<std::string> {
    auto it = labels.find(id);
    if (it == labels.end()) return std::nullopt;
    if (it->second.size() > 1)
      input.warnings.push_back("multiple labels for " + id + "; using '" + *it->second.begin() +
                               "'");
    return *it->second.begin();
  };

  std::set<std::string> declared_classes, declared_properties;
  auto add_class = [&](const std::string& id) {
    if (!is_builtin_class(id) && declared_classes.insert(id).second)
      input.classes.push_back({id, label_of(id)});
  };
  auto add_property = [&](const std::string& id) {
    if (declared_properties.insert(id).second) input.properties.push_back({id, label_of(id)});
  };

  for (const auto& a : report.axioms) {
    switch (a.kind) {
      case AxiomKind::ClassDecl:
        add_class(a.subject);
        break;
      case AxiomKind::ObjectPropertyDecl:
        add_property(a.subject);
        break;
      case AxiomKind::SubClassNamed:
        add_class(a.subject);
        add_class(a.object);
        // owl:Thing is the implicit top; asserting it adds no structure.
        if (!is_builtin_class(a.object) && !is_builtin_class(a.subject))
          input.edges.push_back({a.subject, a.object});
        break;
      case AxiomKind::SubClassRestriction:
        add_class(a.subject);
        add_property(a.property);
        add_class(a.object);
        break;
      default:
        break;
    }
  }
  for (auto& assoc : extract_associations(report))
    if (!is_builtin_class(assoc.source) && !is_builtin_class(assoc.target))
      input.associations.push_back(std::move(assoc));
  return build_snapshot(std::move(input));
}

OntologySnapshot load_owl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  const std::string text = buffer.str();

  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  bool native = ext == ".json";
  if (ext != ".json" && ext != ".ofn") {
    auto first = text.find_first_not_of(" \t\r\n");
    native = first != std::string::npos && text[first] == '{';
  }
  if (native) return read_native_document(text, path.string());
  return snapshot_from_report(parse_functional_syntax(text), path.string());
}

}  // namespace ontoplot
