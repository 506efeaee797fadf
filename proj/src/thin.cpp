#include "cobi/thin.hpp"

#include <span>

#include "cobi/errors.hpp"

namespace cobi {

namespace {

void require_same_big_end(const Thinning& a, const Thinning& b,
                          const char* op) {
  if (a.big_end() != b.big_end())
    throw ScopeMismatchError(std::string(op) + ": big ends differ (" +
                             std::to_string(a.big_end()) + " vs " +
                             std::to_string(b.big_end()) + ")");
}

bool check_invariant_rec(const Thinning& th, std::span<const Name> src,
                         std::span<const Name> tgt) {
  if (th.big_end() != tgt.size()) return false;
  if (tgt.empty()) return src.empty() && th.encoding().is_zero();
  const ThinView v = view(th);
  if (v.tag == ThinView::Keep) {
    return !src.empty() && src.back() == tgt.back() &&
           check_invariant_rec(v.tail, src.first(src.size() - 1),
                               tgt.first(tgt.size() - 1));
  }
  return check_invariant_rec(v.tail, src, tgt.first(tgt.size() - 1));
}

}  // namespace

Thinning keep(const Thinning& th) {
  return {th.big_end() + 1, cons(true, th.encoding())};
}

Thinning drop(const Thinning& th) {
  return {th.big_end() + 1, cons(false, th.encoding())};
}

ThinView view(const Thinning& th) {
  if (th.big_end() == 0) return {ThinView::Done, {}};
  auto [head, tail] = uncons(th.encoding());
  return {head ? ThinView::Keep : ThinView::Drop,
          Thinning(th.big_end() - 1, std::move(tail))};
}

Thinning none(std::size_t n) { return {n, BitPat()}; }

Thinning ones(std::size_t n) { return {n, full(n)}; }

std::size_t kept(const Thinning& th) { return th.encoding().popcount(); }

std::pair<Scope, Thinning> which(const std::function<bool(const Name&)>& pred,
                                 const Scope& scope) {
  Scope sub;
  Thinning th = done();
  for (const Name& name : scope) {
    if (pred(name)) {
      sub.push_back(name);
      th = keep(th);
    } else {
      th = drop(th);
    }
  }
  return {std::move(sub), std::move(th)};
}

Thinning join(const Thinning& a, const Thinning& b) {
  require_same_big_end(a, b, "join");
  return {a.big_end(), bit_or(a.encoding(), b.encoding())};
}

Thinning meet(const Thinning& a, const Thinning& b) {
  require_same_big_end(a, b, "meet");
  return {a.big_end(), bit_and(a.encoding(), b.encoding())};
}

Thinning compose(const Thinning& inner, const Thinning& outer) {
  if (kept(outer) != inner.big_end())
    throw ScopeMismatchError(
        "compose: outer keeps " + std::to_string(kept(outer)) +
        " variables but inner has big end " + std::to_string(inner.big_end()));
  return {outer.big_end(), deposit_bits(inner.encoding(), outer.encoding())};
}

std::optional<Thinning> thicken(const Thinning& ph, const Thinning& th) {
  require_same_big_end(ph, th, "thicken");
  if (!(bit_and(th.encoding(), ph.encoding()) == th.encoding()))
    return std::nullopt;
  return Thinning(kept(ph), extract_bits(th.encoding(), ph.encoding()));
}

bool is_ones(const Thinning& th) { return th.encoding() == full(th.big_end()); }

std::string render(const Thinning& th) {
  std::string out;
  out.reserve(th.big_end() + 2);
  out.push_back('[');
  for (std::size_t i = th.big_end(); i-- > 0;)
    out.push_back(th.encoding().test_bit(i) ? '1' : '0');
  out.push_back(']');
  return out;
}

Thinning parse_thinning(std::string_view text) {
  if (text.empty() || text.front() != '[')
    throw ParseError("expected '['", 0);
  BitPat enc;
  std::size_t width = 0;
  std::size_t i = 1;
  for (; i < text.size() && text[i] != ']'; ++i) {
    if (text[i] == '1')
      enc = cons(true, enc);
    else if (text[i] == '0')
      enc = cons(false, enc);
    else
      throw ParseError("expected '0', '1' or ']'", i);
    ++width;
  }
  if (i == text.size()) throw ParseError("missing ']'", i);
  if (i + 1 != text.size()) throw ParseError("trailing characters", i + 1);
  return {width, std::move(enc)};
}

bool check_invariant(const Thinning& th, const Scope& src, const Scope& tgt) {
  return check_invariant_rec(th, std::span(src), std::span(tgt));
}

}  // namespace cobi
