#pragma once

#include <string>
#include <string_view>

#include "cobi/term.hpp"

namespace cobi {

/// Surface grammar: `\x. t` for abstraction, juxtaposition for application
/// (left-associative), parentheses, identifiers [A-Za-z][A-Za-z0-9_]*.
/// A lambda in application position must be parenthesized.
NamedPtr parse_named(std::string_view text);

std::string print_named(const NamedPtr& t);

/// De Bruijn rendering, e.g. the S combinator prints as
/// "\ \ \ (2 0) (1 0)".
std::string print_debruijn(const DBPtr& t);

/// Stable serialized co-de Bruijn form: "(var)", "(app <th> <l> <th> <r>)"
/// with thinnings in bracketed-bit notation, "(lam+ <body>)" / "(lam- <body>)"
/// for used/unused binders. cse_scan keys subterms by this rendering.
std::string print_codebruijn(const CBPtr& t);

/// Outer thinning in bracketed-bit notation, a space, then the term.
std::string print_open(const OpenTerm& t);

}  // namespace cobi
