#include "cobi/term.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "cobi/errors.hpp"
#include "cobi/term_text.hpp"

namespace cobi {

namespace {

thread_local std::uint64_t g_term_visits = 0;

}  // namespace

std::uint64_t term_visit_count() noexcept { return g_term_visits; }
void reset_term_visit_count() noexcept { g_term_visits = 0; }

// ---------------------------------------------------------------------------
// Named terms

NamedPtr nvar(Name name) {
  return std::make_shared<const NamedTerm>(NamedTerm{NamedTerm::Var{std::move(name)}});
}

NamedPtr napp(NamedPtr fun, NamedPtr arg) {
  return std::make_shared<const NamedTerm>(
      NamedTerm{NamedTerm::App{std::move(fun), std::move(arg)}});
}

NamedPtr nlam(Name binder, NamedPtr body) {
  return std::make_shared<const NamedTerm>(
      NamedTerm{NamedTerm::Lam{std::move(binder), std::move(body)}});
}

// ---------------------------------------------------------------------------
// De Bruijn terms

DBPtr dvar(std::size_t index) {
  return std::make_shared<const DBTerm>(DBTerm{DBTerm::Var{index}});
}

DBPtr dapp(DBPtr fun, DBPtr arg) {
  return std::make_shared<const DBTerm>(
      DBTerm{DBTerm::App{std::move(fun), std::move(arg)}});
}

DBPtr dlam(DBPtr body) {
  return std::make_shared<const DBTerm>(DBTerm{DBTerm::Lam{std::move(body)}});
}

bool db_equal(const DBPtr& a, const DBPtr& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* va = std::get_if<DBTerm::Var>(&a->node))
    return va->index == std::get<DBTerm::Var>(b->node).index;
  if (const auto* pa = std::get_if<DBTerm::App>(&a->node)) {
    const auto& pb = std::get<DBTerm::App>(b->node);
    return db_equal(pa->fun, pb.fun) && db_equal(pa->arg, pb.arg);
  }
  return db_equal(std::get<DBTerm::Lam>(a->node).body,
                  std::get<DBTerm::Lam>(b->node).body);
}

namespace {

DBPtr rename_db_rec(const DBPtr& t, const std::vector<std::size_t>& positions,
                    std::size_t depth) {
  if (const auto* v = std::get_if<DBTerm::Var>(&t->node)) {
    if (v->index < depth) return t;
    return dvar(depth + positions.at(v->index - depth));
  }
  if (const auto* a = std::get_if<DBTerm::App>(&t->node))
    return dapp(rename_db_rec(a->fun, positions, depth),
                rename_db_rec(a->arg, positions, depth));
  return dlam(rename_db_rec(std::get<DBTerm::Lam>(t->node).body, positions,
                            depth + 1));
}

}  // namespace

DBPtr rename_db(const DBPtr& t, const Thinning& th) {
  // Free variable v maps to the position of the v-th set bit (local first).
  std::vector<std::size_t> positions;
  positions.reserve(kept(th));
  for (std::size_t i = th.encoding().scan1(0); i < th.big_end();
       i = th.encoding().scan1(i + 1))
    positions.push_back(i);
  return rename_db_rec(t, positions, 0);
}

// ---------------------------------------------------------------------------
// Co-de Bruijn terms

CBPtr cb_var() {
  static const CBPtr instance(new CBTerm(CBTerm::Var{}, 1));
  return instance;
}

CBPtr cb_app(Thinning left_th, CBPtr left, Thinning right_th, CBPtr right) {
  assert(left_th.big_end() == right_th.big_end());
  assert(kept(left_th) == left->support_size());
  assert(kept(right_th) == right->support_size());
  assert(is_ones(join(left_th, right_th)) && "application is not relevant");
  const std::size_t support = left_th.big_end();
  return CBPtr(new CBTerm(CBTerm::App{std::move(left_th), std::move(left),
                                      std::move(right_th), std::move(right)},
                          support));
}

CBPtr cb_lam(bool binder_used, CBPtr body) {
  assert(!binder_used || body->support_size() >= 1);
  const std::size_t support = body->support_size() - (binder_used ? 1 : 0);
  return CBPtr(new CBTerm(CBTerm::Lam{binder_used, std::move(body)}, support));
}

bool cb_equal(const CBPtr& a, const CBPtr& b) {
  if (a == b) return true;
  if (a->support_size() != b->support_size()) return false;
  if (a->node().index() != b->node().index()) return false;
  if (std::holds_alternative<CBTerm::Var>(a->node())) return true;
  if (const auto* pa = std::get_if<CBTerm::App>(&a->node())) {
    const auto& pb = std::get<CBTerm::App>(b->node());
    return pa->left_th == pb.left_th && pa->right_th == pb.right_th &&
           cb_equal(pa->left, pb.left) && cb_equal(pa->right, pb.right);
  }
  const auto& la = std::get<CBTerm::Lam>(a->node());
  const auto& lb = std::get<CBTerm::Lam>(b->node());
  return la.binder_used == lb.binder_used && cb_equal(la.body, lb.body);
}

std::size_t cb_node_count(const CBPtr& t) {
  if (std::holds_alternative<CBTerm::Var>(t->node())) return 1;
  if (const auto* a = std::get_if<CBTerm::App>(&t->node()))
    return 1 + cb_node_count(a->left) + cb_node_count(a->right);
  return 1 + cb_node_count(std::get<CBTerm::Lam>(t->node()).body);
}

bool cb_validate(const CBPtr& t) {
  if (std::holds_alternative<CBTerm::Var>(t->node()))
    return t->support_size() == 1;
  if (const auto* a = std::get_if<CBTerm::App>(&t->node())) {
    return a->left_th.big_end() == t->support_size() &&
           a->right_th.big_end() == t->support_size() &&
           kept(a->left_th) == a->left->support_size() &&
           kept(a->right_th) == a->right->support_size() &&
           is_ones(join(a->left_th, a->right_th)) && cb_validate(a->left) &&
           cb_validate(a->right);
  }
  const auto& l = std::get<CBTerm::Lam>(t->node());
  const std::size_t expected =
      l.body->support_size() - (l.binder_used ? 1 : 0);
  if (l.binder_used && l.body->support_size() == 0) return false;
  return t->support_size() == expected && cb_validate(l.body);
}

bool validate(const OpenTerm& t) {
  return kept(t.thinning) == t.term->support_size() && cb_validate(t.term);
}

// ---------------------------------------------------------------------------
// Conversions

namespace {

DBPtr from_named_rec(const Scope& scope, std::vector<Name>& binders,
                     const NamedPtr& t) {
  if (const auto* v = std::get_if<NamedTerm::Var>(&t->node)) {
    for (std::size_t i = binders.size(); i-- > 0;)
      if (binders[i] == v->name) return dvar(binders.size() - 1 - i);
    for (std::size_t i = scope.size(); i-- > 0;)
      if (scope[i] == v->name)
        return dvar(binders.size() + (scope.size() - 1 - i));
    throw UnboundVariableError(v->name);
  }
  if (const auto* a = std::get_if<NamedTerm::App>(&t->node)) {
    DBPtr fun = from_named_rec(scope, binders, a->fun);
    return dapp(std::move(fun), from_named_rec(scope, binders, a->arg));
  }
  const auto& l = std::get<NamedTerm::Lam>(t->node);
  binders.push_back(l.binder);
  DBPtr body = from_named_rec(scope, binders, l.body);
  binders.pop_back();
  return dlam(std::move(body));
}

struct FreshNames {
  const Scope& avoid;
  std::size_t counter = 0;

  Name next() {
    for (;;) {
      Name candidate = "x" + std::to_string(counter++);
      if (std::find(avoid.begin(), avoid.end(), candidate) == avoid.end())
        return candidate;
    }
  }
};

NamedPtr to_named_rec(const Scope& scope, std::vector<Name>& binders,
                      FreshNames& fresh, const DBPtr& t) {
  if (const auto* v = std::get_if<DBTerm::Var>(&t->node)) {
    if (v->index < binders.size())
      return nvar(binders[binders.size() - 1 - v->index]);
    const std::size_t from_scope = v->index - binders.size();
    if (from_scope >= scope.size())
      throw ScopeMismatchError("de Bruijn index " + std::to_string(v->index) +
                               " escapes the scope");
    return nvar(scope[scope.size() - 1 - from_scope]);
  }
  if (const auto* a = std::get_if<DBTerm::App>(&t->node)) {
    NamedPtr fun = to_named_rec(scope, binders, fresh, a->fun);
    return napp(std::move(fun), to_named_rec(scope, binders, fresh, a->arg));
  }
  Name binder = fresh.next();
  binders.push_back(binder);
  NamedPtr body =
      to_named_rec(scope, binders, fresh, std::get<DBTerm::Lam>(t->node).body);
  binders.pop_back();
  return nlam(std::move(binder), std::move(body));
}

OpenTerm from_debruijn_rec(std::size_t m, const DBPtr& t) {
  if (const auto* v = std::get_if<DBTerm::Var>(&t->node)) {
    if (v->index >= m)
      throw ScopeMismatchError("de Bruijn index " + std::to_string(v->index) +
                               " escapes a scope of size " + std::to_string(m));
    return {Thinning(m, BitPat::bit(v->index)), cb_var()};
  }
  if (const auto* a = std::get_if<DBTerm::App>(&t->node)) {
    OpenTerm fun = from_debruijn_rec(m, a->fun);
    return relevant_pair(fun, from_debruijn_rec(m, a->arg));
  }
  OpenTerm body = from_debruijn_rec(m + 1, std::get<DBTerm::Lam>(t->node).body);
  const ThinView v = view(body.thinning);
  return {v.tail, cb_lam(v.tag == ThinView::Keep, body.term)};
}

DBPtr to_debruijn_rec(const Thinning& th, const CBPtr& term) {
  if (std::holds_alternative<CBTerm::Var>(term->node())) {
    assert(kept(th) == 1);
    return dvar(th.encoding().scan1(0));
  }
  if (const auto* a = std::get_if<CBTerm::App>(&term->node())) {
    DBPtr fun = to_debruijn_rec(compose(a->left_th, th), a->left);
    return dapp(std::move(fun),
                to_debruijn_rec(compose(a->right_th, th), a->right));
  }
  const auto& l = std::get<CBTerm::Lam>(term->node());
  return dlam(to_debruijn_rec(l.binder_used ? keep(th) : drop(th), l.body));
}

}  // namespace

DBPtr from_named(const Scope& scope, const NamedPtr& t) {
  std::vector<Name> binders;
  return from_named_rec(scope, binders, t);
}

NamedPtr to_named(const Scope& scope, const DBPtr& t) {
  std::vector<Name> binders;
  FreshNames fresh{scope};
  return to_named_rec(scope, binders, fresh, t);
}

OpenTerm from_debruijn(std::size_t n, const DBPtr& t) {
  return from_debruijn_rec(n, t);
}

DBPtr to_debruijn(const OpenTerm& t) {
  return to_debruijn_rec(t.thinning, t.term);
}

// ---------------------------------------------------------------------------
// Operations

OpenTerm relevant_pair(const OpenTerm& l, const OpenTerm& r) {
  if (l.thinning.big_end() != r.thinning.big_end())
    throw ScopeMismatchError("relevant_pair: ambient widths differ (" +
                             std::to_string(l.thinning.big_end()) + " vs " +
                             std::to_string(r.thinning.big_end()) + ")");
  Thinning outer = join(l.thinning, r.thinning);
  // Both children's supports are contained in the join by construction.
  Thinning left_th = *thicken(outer, l.thinning);
  Thinning right_th = *thicken(outer, r.thinning);
  CBPtr node = cb_app(std::move(left_th), l.term, std::move(right_th), r.term);
  return {std::move(outer), std::move(node)};
}

OpenTerm thin_open_term(const OpenTerm& t, const Thinning& th) {
  return {compose(t.thinning, th), t.term};
}

bool alpha_eq(const OpenTerm& a, const OpenTerm& b) {
  if (a.thinning.big_end() != b.thinning.big_end())
    throw ScopeMismatchError("alpha_eq: ambient widths differ (" +
                             std::to_string(a.thinning.big_end()) + " vs " +
                             std::to_string(b.thinning.big_end()) + ")");
  return a.thinning == b.thinning && cb_equal(a.term, b.term);
}

namespace {

// The restriction of a substitution to a subterm's support, if it is a pure
// order-preserving renaming, is itself a thinning into the target scope: the
// subterm can then be kept as-is under that thinning, unvisited.
std::optional<Thinning> renaming_as_thinning(
    const std::vector<SubstEntry>& entries, std::size_t target) {
  BitPat enc;
  bool first = true;
  std::size_t prev = 0;
  for (const SubstEntry& e : entries) {
    const auto* r = std::get_if<SubstEntry::Rename>(&e.action);
    if (r == nullptr) return std::nullopt;
    if (!first && r->to <= prev) return std::nullopt;
    enc = bit_or(enc, BitPat::bit(r->to));
    prev = r->to;
    first = false;
  }
  return Thinning(target, std::move(enc));
}

// Picks the entries at the set positions of th, local first.
std::vector<SubstEntry> restrict_entries(const std::vector<SubstEntry>& entries,
                                         const Thinning& th) {
  std::vector<SubstEntry> out;
  out.reserve(kept(th));
  for (std::size_t i = th.encoding().scan1(0); i < th.big_end();
       i = th.encoding().scan1(i + 1))
    out.push_back(entries[i]);
  return out;
}

OpenTerm subst_go(const CBPtr& term, const std::vector<SubstEntry>& entries,
                  std::size_t target) {
  assert(entries.size() == term->support_size());
  if (auto th = renaming_as_thinning(entries, target))
    return {std::move(*th), term};

  ++g_term_visits;
  if (std::holds_alternative<CBTerm::Var>(term->node())) {
    // A lone rename was handled above, so this entry replaces.
    return std::get<SubstEntry::Replace>(entries.front().action).with;
  }
  if (const auto* a = std::get_if<CBTerm::App>(&term->node())) {
    OpenTerm left = subst_go(a->left, restrict_entries(entries, a->left_th), target);
    OpenTerm right =
        subst_go(a->right, restrict_entries(entries, a->right_th), target);
    return relevant_pair(left, right);
  }
  const auto& l = std::get<CBTerm::Lam>(term->node());
  if (!l.binder_used) {
    // The binder is not in the body's scope: substitute straight through.
    OpenTerm body = subst_go(l.body, entries, target);
    return {body.thinning, cb_lam(false, body.term)};
  }
  // Going under the binder: it becomes the most local target variable, and
  // every entry is weakened one step into the extended target.
  const Thinning weaken(target + 1, shift_left(full(target), 1));
  std::vector<SubstEntry> extended;
  extended.reserve(entries.size() + 1);
  extended.push_back(SubstEntry::rename(0));
  for (const SubstEntry& e : entries) {
    if (const auto* r = std::get_if<SubstEntry::Rename>(&e.action))
      extended.push_back(SubstEntry::rename(r->to + 1));
    else
      extended.push_back(SubstEntry::replace(thin_open_term(
          std::get<SubstEntry::Replace>(e.action).with, weaken)));
  }
  OpenTerm body = subst_go(l.body, extended, target + 1);
  const ThinView v = view(body.thinning);
  return {v.tail, cb_lam(v.tag == ThinView::Keep, body.term)};
}

void validate_subst(const OpenTerm& t, const Subst& s) {
  if (s.entries.size() != t.thinning.big_end())
    throw ScopeMismatchError(
        "substitute: " + std::to_string(s.entries.size()) +
        " entries for an ambient scope of " + std::to_string(t.thinning.big_end()));
  for (const SubstEntry& e : s.entries) {
    if (const auto* r = std::get_if<SubstEntry::Rename>(&e.action)) {
      if (r->to >= s.target_size)
        throw ScopeMismatchError("substitute: rename target " +
                                 std::to_string(r->to) + " escapes scope of " +
                                 std::to_string(s.target_size));
    } else {
      const auto& w = std::get<SubstEntry::Replace>(e.action).with;
      if (w.thinning.big_end() != s.target_size)
        throw ScopeMismatchError("substitute: replacement lives in scope " +
                                 std::to_string(w.thinning.big_end()) +
                                 ", expected " + std::to_string(s.target_size));
    }
  }
}

}  // namespace

OpenTerm substitute(const OpenTerm& t, const Subst& s) {
  validate_subst(t, s);
  return subst_go(t.term, restrict_entries(s.entries, t.thinning),
                  s.target_size);
}

namespace {

// Opens an App child over the node's ambient scope.
OpenTerm open_child(const Thinning& child_th, const CBPtr& child,
                    const Thinning& outer) {
  return {compose(child_th, outer), child};
}

OpenTerm open_lam_body(const CBTerm::Lam& l, const Thinning& outer) {
  return {l.binder_used ? keep(outer) : drop(outer), l.body};
}

OpenTerm close_lam(const OpenTerm& body) {
  const ThinView v = view(body.thinning);
  return {v.tail, cb_lam(v.tag == ThinView::Keep, body.term)};
}

}  // namespace

std::optional<OpenTerm> beta_step(const OpenTerm& t) {
  const std::size_t n = t.thinning.big_end();
  if (const auto* a = std::get_if<CBTerm::App>(&t.term->node())) {
    OpenTerm fun = open_child(a->left_th, a->left, t.thinning);
    OpenTerm arg = open_child(a->right_th, a->right, t.thinning);
    if (const auto* l = std::get_if<CBTerm::Lam>(&fun.term->node())) {
      OpenTerm body = open_lam_body(*l, fun.thinning);
      Subst s{n, {}};
      s.entries.reserve(n + 1);
      s.entries.push_back(SubstEntry::replace(arg));
      for (std::size_t i = 0; i < n; ++i)
        s.entries.push_back(SubstEntry::rename(i));
      return substitute(body, s);
    }
    if (auto fun2 = beta_step(fun)) return relevant_pair(*fun2, arg);
    if (auto arg2 = beta_step(arg)) return relevant_pair(fun, *arg2);
    return std::nullopt;
  }
  if (const auto* l = std::get_if<CBTerm::Lam>(&t.term->node())) {
    if (auto body2 = beta_step(open_lam_body(*l, t.thinning)))
      return close_lam(*body2);
    return std::nullopt;
  }
  return std::nullopt;
}

NormalizeResult normalize(const OpenTerm& t, std::size_t fuel) {
  OpenTerm cur = t;
  std::size_t steps = 0;
  while (steps < fuel) {
    auto next = beta_step(cur);
    if (!next) return {std::move(cur), steps, true};
    cur = std::move(*next);
    ++steps;
  }
  const bool normal = !beta_step(cur).has_value();
  return {std::move(cur), steps, normal};
}

// ---------------------------------------------------------------------------
// Common subexpression scan

namespace {

void cse_walk(const CBPtr& term,
              std::map<std::string, CseGroup>& groups) {
  auto [it, inserted] = groups.try_emplace(print_codebruijn(term));
  if (inserted) {
    it->second.key = it->first;
    it->second.count = 1;
    it->second.node_size = cb_node_count(term);
  } else {
    ++it->second.count;
  }
  if (const auto* a = std::get_if<CBTerm::App>(&term->node())) {
    cse_walk(a->left, groups);
    cse_walk(a->right, groups);
  } else if (const auto* l = std::get_if<CBTerm::Lam>(&term->node())) {
    cse_walk(l->body, groups);
  }
}

}  // namespace

CseReport cse_scan(const OpenTerm& t, std::size_t min_size) {
  std::map<std::string, CseGroup> groups;
  cse_walk(t.term, groups);
  CseReport report;
  for (auto& [key, group] : groups)
    if (group.count >= 2 && group.node_size >= min_size)
      report.groups.push_back(std::move(group));
  std::sort(report.groups.begin(), report.groups.end(),
            [](const CseGroup& a, const CseGroup& b) {
              if (a.node_size != b.node_size) return a.node_size > b.node_size;
              if (a.count != b.count) return a.count > b.count;
              return a.key < b.key;
            });
  return report;
}

}  // namespace cobi
