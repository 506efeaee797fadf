#include "cobi/term_text.hpp"

#include <cctype>

#include "cobi/errors.hpp"

namespace cobi {

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos == text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError("expected " + expected, pos);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("'") + c + "'");
    ++pos;
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c));
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Name ident() {
    if (!ident_start(peek())) fail("an identifier");
    const std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return Name(text.substr(start, pos - start));
  }

  NamedPtr expr() {
    if (peek() == '\\') return lambda();
    return application();
  }

  NamedPtr lambda() {
    expect('\\');
    Name binder = ident();
    expect('.');
    return nlam(std::move(binder), expr());
  }

  NamedPtr application() {
    NamedPtr t = atom();
    for (char c = peek(); c == '(' || ident_start(c); c = peek())
      t = napp(std::move(t), atom());
    return t;
  }

  NamedPtr atom() {
    const char c = peek();
    if (c == '(') {
      ++pos;
      NamedPtr t = expr();
      expect(')');
      return t;
    }
    if (ident_start(c)) return nvar(ident());
    fail("an identifier, '(' or '\\'");
  }
};

// Application children are parenthesized unless they are leaves; lambda
// bodies and top level terms are not.
void named_rec(const NamedPtr& t, bool child, std::string& out) {
  if (const auto* v = std::get_if<NamedTerm::Var>(&t->node)) {
    out += v->name;
    return;
  }
  if (const auto* a = std::get_if<NamedTerm::App>(&t->node)) {
    if (child) out += '(';
    named_rec(a->fun, true, out);
    out += ' ';
    named_rec(a->arg, true, out);
    if (child) out += ')';
    return;
  }
  const auto& l = std::get<NamedTerm::Lam>(t->node);
  if (child) out += '(';
  out += '\\';
  out += l.binder;
  out += ". ";
  named_rec(l.body, false, out);
  if (child) out += ')';
}

void debruijn_rec(const DBPtr& t, bool child, std::string& out) {
  if (const auto* v = std::get_if<DBTerm::Var>(&t->node)) {
    out += std::to_string(v->index);
    return;
  }
  if (const auto* a = std::get_if<DBTerm::App>(&t->node)) {
    if (child) out += '(';
    debruijn_rec(a->fun, true, out);
    out += ' ';
    debruijn_rec(a->arg, true, out);
    if (child) out += ')';
    return;
  }
  if (child) out += '(';
  out += "\\ ";
  debruijn_rec(std::get<DBTerm::Lam>(t->node).body, false, out);
  if (child) out += ')';
}

void codebruijn_rec(const CBPtr& t, std::string& out) {
  if (std::holds_alternative<CBTerm::Var>(t->node())) {
    out += "(var)";
    return;
  }
  if (const auto* a = std::get_if<CBTerm::App>(&t->node())) {
    out += "(app ";
    out += render(a->left_th);
    out += ' ';
    codebruijn_rec(a->left, out);
    out += ' ';
    out += render(a->right_th);
    out += ' ';
    codebruijn_rec(a->right, out);
    out += ')';
    return;
  }
  const auto& l = std::get<CBTerm::Lam>(t->node());
  out += l.binder_used ? "(lam+ " : "(lam- ";
  codebruijn_rec(l.body, out);
  out += ')';
}

}  // namespace

NamedPtr parse_named(std::string_view text) {
  Parser p{text};
  NamedPtr t = p.expr();
  if (!p.at_end()) throw ParseError("trailing characters", p.pos);
  return t;
}

std::string print_named(const NamedPtr& t) {
  std::string out;
  named_rec(t, false, out);
  return out;
}

std::string print_debruijn(const DBPtr& t) {
  std::string out;
  debruijn_rec(t, false, out);
  return out;
}

std::string print_codebruijn(const CBPtr& t) {
  std::string out;
  codebruijn_rec(t, out);
  return out;
}

std::string print_open(const OpenTerm& t) {
  return render(t.thinning) + " " + print_codebruijn(t.term);
}

}  // namespace cobi
