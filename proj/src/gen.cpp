#include "cobi/gen.hpp"

#include <cassert>

namespace cobi {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) noexcept {
  assert(bound > 0);
  // Rejection sampling keeps the distribution exactly uniform and the
  // sequence of draws reproducible.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return v % bound;
}

Thinning gen_thinning(const GenSpec& spec) {
  SplitMix64 rng(spec.seed);
  BitPat enc;
  for (std::size_t i = 0; i < spec.width; ++i)
    if (rng.next_double() < spec.density) enc = bit_or(enc, BitPat::bit(i));
  return {spec.width, std::move(enc)};
}

namespace {

// depth = number of enclosing binders; budget counts nodes still allowed.
DBPtr gen_rec(SplitMix64& rng, std::size_t scope, std::size_t depth,
              std::size_t budget) {
  const std::size_t in_scope = scope + depth;
  if (budget <= 1) {
    if (in_scope > 0) return dvar(rng.next_below(in_scope));
    return dlam(dvar(0));  // no closed leaf exists
  }
  // var 40%, lam 30%, app 30%; a var also needs something to point at.
  const std::uint64_t roll = rng.next_below(10);
  if (roll < 4 && in_scope > 0) return dvar(rng.next_below(in_scope));
  if (roll < 7 || budget < 3 || in_scope == 0)
    return dlam(gen_rec(rng, scope, depth + 1, budget - 1));
  const std::size_t fun_budget = 1 + rng.next_below(budget - 2);
  DBPtr fun = gen_rec(rng, scope, depth, fun_budget);
  return dapp(std::move(fun),
              gen_rec(rng, scope, depth, budget - 1 - fun_budget));
}

}  // namespace

DBPtr gen_db_term(const GenSpec& spec) {
  SplitMix64 rng(spec.seed);
  return gen_rec(rng, spec.width, 0, spec.term_size);
}

OpenTerm gen_term(const GenSpec& spec) {
  return from_debruijn(spec.width, gen_db_term(spec));
}

}  // namespace cobi
