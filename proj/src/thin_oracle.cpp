#include "cobi/thin_oracle.hpp"

#include <span>

#include "cobi/errors.hpp"

namespace cobi::oracle {

namespace {

using Steps = std::vector<bool>;

void join_rec(const Steps& a, const Steps& b, std::size_t i, Steps& out) {
  if (i == a.size()) return;
  out.push_back(a[i] || b[i]);
  join_rec(a, b, i + 1, out);
}

void meet_rec(const Steps& a, const Steps& b, std::size_t i, Steps& out) {
  if (i == a.size()) return;
  out.push_back(a[i] && b[i]);
  meet_rec(a, b, i + 1, out);
}

// Walks outer from the local end; every kept position consumes one inner step.
void compose_rec(const Steps& inner, std::size_t i, const Steps& outer,
                 std::size_t o, Steps& out) {
  if (o == outer.size()) {
    if (i != inner.size())
      throw ScopeMismatchError("compose: inner steps left over");
    return;
  }
  if (outer[o]) {
    if (i == inner.size())
      throw ScopeMismatchError("compose: inner ran out of steps");
    out.push_back(inner[i]);
    compose_rec(inner, i + 1, outer, o + 1, out);
  } else {
    out.push_back(false);
    compose_rec(inner, i, outer, o + 1, out);
  }
}

bool thicken_rec(const Steps& ph, const Steps& th, std::size_t i, Steps& out) {
  if (i == ph.size()) return true;
  if (ph[i]) {
    out.push_back(th[i]);
    return thicken_rec(ph, th, i + 1, out);
  }
  if (th[i]) return false;  // th keeps a variable ph discards
  return thicken_rec(ph, th, i + 1, out);
}

bool check_invariant_rec(const Steps& steps, std::size_t i,
                         std::span<const Name> src, std::span<const Name> tgt) {
  if (steps.size() - i != tgt.size()) return false;
  if (tgt.empty()) return src.empty();
  // steps[i] is the most local remaining step, i.e. the back of the scopes.
  if (steps[i]) {
    return !src.empty() && src.back() == tgt.back() &&
           check_invariant_rec(steps, i + 1, src.first(src.size() - 1),
                               tgt.first(tgt.size() - 1));
  }
  return check_invariant_rec(steps, i + 1, src, tgt.first(tgt.size() - 1));
}

}  // namespace

Thinning to_packed(const OracleThin& o) {
  Thinning th = done();
  for (std::size_t i = o.steps.size(); i-- > 0;)
    th = o.steps[i] ? cobi::keep(th) : cobi::drop(th);
  return th;
}

OracleThin from_packed(const Thinning& th) {
  OracleThin o;
  o.steps.reserve(th.big_end());
  Thinning cur = th;
  for (ThinView v = cobi::view(cur); v.tag != ThinView::Done;
       cur = v.tail, v = cobi::view(cur))
    o.steps.push_back(v.tag == ThinView::Keep);
  return o;
}

OracleView view(const OracleThin& o) {
  if (o.steps.empty()) return {OracleView::Done, {}};
  OracleThin tail;
  tail.steps.assign(o.steps.begin() + 1, o.steps.end());
  return {o.steps.front() ? OracleView::Keep : OracleView::Drop,
          std::move(tail)};
}

OracleThin none(std::size_t n) { return {std::vector<bool>(n, false)}; }

OracleThin ones(std::size_t n) { return {std::vector<bool>(n, true)}; }

std::size_t kept(const OracleThin& o) {
  std::size_t count = 0;
  for (bool step : o.steps)
    if (step) ++count;
  return count;
}

std::pair<Scope, OracleThin> which(const std::function<bool(const Name&)>& pred,
                                   const Scope& scope) {
  Scope sub;
  OracleThin th;
  for (const Name& name : scope) {
    const bool hold = pred(name);
    if (hold) sub.push_back(name);
    // New most local step goes in front of the ones built so far.
    th.steps.insert(th.steps.begin(), hold);
  }
  return {std::move(sub), std::move(th)};
}

OracleThin join(const OracleThin& a, const OracleThin& b) {
  if (a.steps.size() != b.steps.size())
    throw ScopeMismatchError("join: step counts differ");
  OracleThin out;
  out.steps.reserve(a.steps.size());
  join_rec(a.steps, b.steps, 0, out.steps);
  return out;
}

OracleThin meet(const OracleThin& a, const OracleThin& b) {
  if (a.steps.size() != b.steps.size())
    throw ScopeMismatchError("meet: step counts differ");
  OracleThin out;
  out.steps.reserve(a.steps.size());
  meet_rec(a.steps, b.steps, 0, out.steps);
  return out;
}

OracleThin compose(const OracleThin& inner, const OracleThin& outer) {
  OracleThin out;
  out.steps.reserve(outer.steps.size());
  compose_rec(inner.steps, 0, outer.steps, 0, out.steps);
  return out;
}

std::optional<OracleThin> thicken(const OracleThin& ph, const OracleThin& th) {
  if (ph.steps.size() != th.steps.size())
    throw ScopeMismatchError("thicken: step counts differ");
  OracleThin out;
  if (!thicken_rec(ph.steps, th.steps, 0, out.steps)) return std::nullopt;
  return out;
}

bool check_invariant(const OracleThin& o, const Scope& src, const Scope& tgt) {
  return check_invariant_rec(o.steps, 0, std::span(src), std::span(tgt));
}

}  // namespace cobi::oracle
