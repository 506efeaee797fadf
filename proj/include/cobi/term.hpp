#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "cobi/thin.hpp"

namespace cobi {

// ---------------------------------------------------------------------------
// Named terms

struct NamedTerm;
using NamedPtr = std::shared_ptr<const NamedTerm>;

struct NamedTerm {
  struct Var {
    Name name;
  };
  struct App {
    NamedPtr fun, arg;
  };
  struct Lam {
    Name binder;
    NamedPtr body;
  };
  std::variant<Var, App, Lam> node;
};

NamedPtr nvar(Name name);
NamedPtr napp(NamedPtr fun, NamedPtr arg);
NamedPtr nlam(Name binder, NamedPtr body);

// ---------------------------------------------------------------------------
// De Bruijn terms

struct DBTerm;
using DBPtr = std::shared_ptr<const DBTerm>;

struct DBTerm {
  struct Var {
    std::size_t index;
  };
  struct App {
    DBPtr fun, arg;
  };
  struct Lam {
    DBPtr body;
  };
  std::variant<Var, App, Lam> node;
};

DBPtr dvar(std::size_t index);
DBPtr dapp(DBPtr fun, DBPtr arg);
DBPtr dlam(DBPtr body);

bool db_equal(const DBPtr& a, const DBPtr& b);

/// Maps the free variables of a term in scope kept(th) through th. Traverses
/// the whole term; this is the representation the co-de Bruijn encoding is up
/// against.
DBPtr rename_db(const DBPtr& t, const Thinning& th);

// ---------------------------------------------------------------------------
// Co-de Bruijn terms

class CBTerm;
using CBPtr = std::shared_ptr<const CBTerm>;

/// A term indexed by its own support: its scope is exactly the variables it
/// mentions. A variable node therefore needs no payload, an application node
/// carries one thinning per child selecting that child's support out of the
/// node's, and a lambda records whether its binder occurs in the body.
class CBTerm {
 public:
  struct Var {};
  struct App {
    Thinning left_th;
    CBPtr left;
    Thinning right_th;
    CBPtr right;
  };
  struct Lam {
    bool binder_used;
    CBPtr body;
  };

  const std::variant<Var, App, Lam>& node() const noexcept { return node_; }
  std::size_t support_size() const noexcept { return support_; }

  friend CBPtr cb_var();
  friend CBPtr cb_app(Thinning left_th, CBPtr left, Thinning right_th,
                      CBPtr right);
  friend CBPtr cb_lam(bool binder_used, CBPtr body);

 private:
  CBTerm(std::variant<Var, App, Lam> node, std::size_t support)
      : node_(std::move(node)), support_(support) {}

  std::variant<Var, App, Lam> node_;
  std::size_t support_;
};

CBPtr cb_var();

/// Requires: both thinnings share this node's support size as big end, each
/// keeps exactly its child's support, and they join to the identity (every
/// variable of the node's support is used by some child).
CBPtr cb_app(Thinning left_th, CBPtr left, Thinning right_th, CBPtr right);

CBPtr cb_lam(bool binder_used, CBPtr body);

bool cb_equal(const CBPtr& a, const CBPtr& b);

/// Number of nodes in the term.
std::size_t cb_node_count(const CBPtr& t);

/// Recursively checks the relevance and support-size invariants.
bool cb_validate(const CBPtr& t);

/// A co-de Bruijn term together with the thinning embedding its support into
/// an ambient scope of thinning.big_end() variables.
struct OpenTerm {
  Thinning thinning;
  CBPtr term;
};

/// Checks kept(thinning) == term->support_size() plus cb_validate.
bool validate(const OpenTerm& t);

// ---------------------------------------------------------------------------
// Substitutions

/// One action per ambient variable, local-first: either rename it to a target
/// index or replace it with a term over the target scope.
struct SubstEntry {
  struct Rename {
    std::size_t to;
  };
  struct Replace {
    OpenTerm with;
  };
  std::variant<Rename, Replace> action;

  static SubstEntry rename(std::size_t to) { return {Rename{to}}; }
  static SubstEntry replace(OpenTerm with) { return {Replace{std::move(with)}}; }
  bool is_rename() const noexcept {
    return std::holds_alternative<Rename>(action);
  }
};

struct Subst {
  std::size_t target_size;
  std::vector<SubstEntry> entries;
};

// ---------------------------------------------------------------------------
// Conversions

/// Resolves names to binder distances (innermost binder wins, then the scope
/// from its local end). Throws UnboundVariableError.
DBPtr from_named(const Scope& scope, const NamedPtr& t);

/// Inverts from_named up to alpha; binders get deterministic fresh names.
NamedPtr to_named(const Scope& scope, const DBPtr& t);

/// Computes supports bottom-up. Throws ScopeMismatchError on an index that
/// escapes the ambient scope.
OpenTerm from_debruijn(std::size_t n, const DBPtr& t);

DBPtr to_debruijn(const OpenTerm& t);

// ---------------------------------------------------------------------------
// Operations

/// Builds an application node out of two children sharing an ambient scope:
/// the outer thinning is the join of the children's, and each child is
/// re-thinned to the join via thicken (which cannot fail here).
OpenTerm relevant_pair(const OpenTerm& l, const OpenTerm& r);

/// Embeds t into a wider scope. The term is reused untouched: only the
/// thinnings compose. Requires kept(th) == t.thinning.big_end().
OpenTerm thin_open_term(const OpenTerm& t, const Thinning& th);

/// Structural equality of thinning and term; with this representation that is
/// exactly alpha-equivalence. Requires equal ambient widths.
bool alpha_eq(const OpenTerm& a, const OpenTerm& b);

/// Capture-avoiding substitution. Subterms whose restricted substitution is a
/// pure, order-preserving renaming are returned without being visited.
/// Requires s.entries.size() == t.thinning.big_end().
OpenTerm substitute(const OpenTerm& t, const Subst& s);

/// Contracts the leftmost-outermost redex, if any.
std::optional<OpenTerm> beta_step(const OpenTerm& t);

struct NormalizeResult {
  OpenTerm term;
  std::size_t steps;
  bool normalized;
};

/// Iterates beta_step at most fuel times.
NormalizeResult normalize(const OpenTerm& t, std::size_t fuel);

// ---------------------------------------------------------------------------
// Common subexpression scan

struct CseGroup {
  std::string key;        // serialized co-de Bruijn form
  std::size_t count;      // number of occurrences
  std::size_t node_size;  // nodes per occurrence
};

struct CseReport {
  std::vector<CseGroup> groups;  // size desc, then count desc, then key
};

/// Groups subterms by their co-de Bruijn structure alone (outer thinnings
/// excluded), i.e. by alpha-equivalence over their own supports. Reports
/// groups occurring at least twice with at least min_size nodes.
CseReport cse_scan(const OpenTerm& t, std::size_t min_size);

// ---------------------------------------------------------------------------
// Instrumentation

/// Term nodes visited by substitute on this thread since the last reset.
/// Thinning-only operations must leave this untouched.
std::uint64_t term_visit_count() noexcept;
void reset_term_visit_count() noexcept;

}  // namespace cobi
