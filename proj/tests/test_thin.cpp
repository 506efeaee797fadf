#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobi/errors.hpp"
#include "cobi/thin.hpp"
#include "test_util.hpp"

using namespace cobi;
using testutil::rand_thinning;
using testutil::rand_thinning_upto;

namespace {

Thinning th(std::size_t big_end, unsigned long encoding) {
  return {big_end, BitPat(encoding)};
}

bool is_vowel(const Name& n) {
  return n == "a" || n == "e" || n == "i" || n == "o" || n == "u";
}

}  // namespace

TEST_CASE("done") {
  CHECK(done() == th(0, 0));
  CHECK(view(done()).tag == ThinView::Done);
  CHECK(render(done()) == "[]");
}

TEST_CASE("keep and drop") {
  CHECK(keep(th(4, 6)) == th(5, 13));
  CHECK(drop(th(4, 6)) == th(5, 12));
  CHECK(keep(done()) == th(1, 1));
  CHECK(drop(done()) == th(1, 0));
}

TEST_CASE("view") {
  const ThinView v = view(th(5, 13));
  CHECK(v.tag == ThinView::Keep);
  CHECK(v.tail == th(4, 6));
  CHECK(view(th(0, 0)).tag == ThinView::Done);
  const ThinView d = view(th(5, 6));
  CHECK(d.tag == ThinView::Drop);
  CHECK(d.tail == th(4, 3));
}

TEST_CASE("view inspects a single bit") {
  SplitMix64 rng(0x11);
  for (int i = 0; i < 100; ++i) {
    const Thinning t = rand_thinning_upto(rng, 200);
    reset_bit_probe_count();
    const ThinView v = view(t);
    CHECK(bit_probe_count() == (v.tag == ThinView::Done ? 0 : 1));
  }
}

TEST_CASE("none, ones, kept") {
  CHECK(none(3) == th(3, 0));
  CHECK(ones(3) == th(3, 7));
  CHECK(ones(0) == done());
  CHECK(none(0) == done());
  CHECK(kept(th(5, 13)) == 3);
  for (std::size_t n : {0u, 1u, 7u, 64u, 130u}) {
    CHECK(kept(ones(n)) == n);
    CHECK(kept(none(n)) == 0);
  }
}

TEST_CASE("which") {
  const Scope scope{"b", "a", "c"};
  auto [vowels, tv] = which(is_vowel, scope);
  CHECK(vowels == Scope{"a"});
  CHECK(tv == th(3, 2));
  auto [all, ta] = which([](const Name&) { return true; }, scope);
  CHECK(all == scope);
  CHECK(ta == ones(3));
  auto [nothing, tn] = which([](const Name&) { return false; }, scope);
  CHECK(nothing.empty());
  CHECK(tn == none(3));
  CHECK(check_invariant(tv, vowels, scope));
}

TEST_CASE("join and meet") {
  CHECK(join(parse_thinning("[00110]"), parse_thinning("[10011]")) ==
        parse_thinning("[10111]"));
  CHECK(meet(parse_thinning("[00110]"), parse_thinning("[10011]")) ==
        parse_thinning("[00010]"));
  CHECK_THROWS_AS(join(ones(3), ones(4)), ScopeMismatchError);
  CHECK_THROWS_AS(meet(ones(3), ones(4)), ScopeMismatchError);

  SplitMix64 rng(0x22);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = rng.next_below(120);
    const Thinning a = rand_thinning(rng, n);
    const Thinning b = rand_thinning(rng, n);
    const Thinning c = rand_thinning(rng, n);
    CHECK(join(a, none(n)) == a);
    CHECK(meet(a, ones(n)) == a);
    CHECK(join(a, b) == join(b, a));
    CHECK(meet(a, b) == meet(b, a));
    CHECK(join(a, join(b, c)) == join(join(a, b), c));
    CHECK(meet(a, meet(b, c)) == meet(meet(a, b), c));
    CHECK(join(a, a) == a);
    CHECK(meet(a, a) == a);
    CHECK(join(a, meet(a, b)) == a);
    CHECK(meet(a, join(a, b)) == a);
    CHECK(join(a, ones(n)) == ones(n));
    CHECK(meet(a, none(n)) == none(n));
  }
}

TEST_CASE("compose") {
  CHECK(compose(parse_thinning("[10]"), parse_thinning("[0110]")) ==
        parse_thinning("[0100]"));
  CHECK_THROWS_AS(compose(ones(3), ones(4)), ScopeMismatchError);

  SplitMix64 rng(0x33);
  for (int i = 0; i < 200; ++i) {
    const Thinning t = rand_thinning_upto(rng, 130);
    CHECK(compose(ones(kept(t)), t) == t);
    CHECK(compose(t, ones(t.big_end())) == t);
    CHECK(compose(none(kept(t)), t) == none(t.big_end()));
    // associativity through a random tower
    const Thinning mid = rand_thinning(rng, kept(t));
    const Thinning low = rand_thinning(rng, kept(mid));
    CHECK(compose(compose(low, mid), t) == compose(low, compose(mid, t)));
  }
}

TEST_CASE("thicken") {
  CHECK(thicken(parse_thinning("[0110]"), parse_thinning("[0100]")) ==
        parse_thinning("[10]"));
  CHECK_FALSE(
      thicken(parse_thinning("[0110]"), parse_thinning("[0101]")).has_value());
  CHECK_THROWS_AS(thicken(ones(3), ones(4)), ScopeMismatchError);

  SplitMix64 rng(0x44);
  for (int i = 0; i < 200; ++i) {
    const Thinning ph = rand_thinning_upto(rng, 130);
    CHECK(thicken(ph, ph) == ones(kept(ph)));
    // soundness: a found factor really factors
    const Thinning within = meet(ph, rand_thinning(rng, ph.big_end()));
    const auto ps = thicken(ph, within);
    REQUIRE(ps.has_value());
    CHECK(compose(*ps, ph) == within);
  }
}

TEST_CASE("thicken completeness by exhaustive search at small widths") {
  SplitMix64 rng(0x55);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = rng.next_below(9);
    const Thinning ph = rand_thinning(rng, n);
    const Thinning t = rand_thinning(rng, n);
    const auto ps = thicken(ph, t);
    bool found = false;
    const std::size_t k = kept(ph);
    for (unsigned long enc = 0; enc < (1ul << k); ++enc)
      if (compose(Thinning(k, BitPat(enc)), ph) == t) {
        found = true;
        CHECK(ps == Thinning(k, BitPat(enc)));
      }
    CHECK(found == ps.has_value());
  }
}

TEST_CASE("is_none, is_ones, equality") {
  CHECK(is_none(none(7)));
  CHECK_FALSE(is_ones(none(7)));
  CHECK(is_ones(ones(7)));
  CHECK(is_ones(done()));
  CHECK(is_none(done()));
  CHECK(th(5, 13) == keep(th(4, 6)));
  CHECK_FALSE(th(3, 0) == th(4, 0));  // widths differ, never equal
}

TEST_CASE("render and parse") {
  CHECK(render(th(5, 13)) == "[01101]");
  CHECK(parse_thinning("[]") == done());
  CHECK(parse_thinning("[10111]") == th(5, 23));

  CHECK_THROWS_WITH_AS(parse_thinning("01101]"), "expected '['", ParseError);
  CHECK_THROWS_AS(parse_thinning("[01x01]"), ParseError);
  CHECK_THROWS_AS(parse_thinning("[0110"), ParseError);
  CHECK_THROWS_AS(parse_thinning("[0110] "), ParseError);
  try {
    parse_thinning("[01x01]");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }

  SplitMix64 rng(0x66);
  for (int i = 0; i < 300; ++i) {
    const Thinning t = rand_thinning_upto(rng, 130);
    CHECK(parse_thinning(render(t)) == t);
  }
}

TEST_CASE("view and smart constructors round trip") {
  SplitMix64 rng(0x77);
  for (int i = 0; i < 300; ++i) {
    const Thinning t = rand_thinning_upto(rng, 130);
    const ThinView v = view(t);
    switch (v.tag) {
      case ThinView::Done:
        CHECK(t == done());
        break;
      case ThinView::Keep:
        CHECK(keep(v.tail) == t);
        break;
      case ThinView::Drop:
        CHECK(drop(v.tail) == t);
        break;
    }
    CHECK(view(keep(t)).tag == ThinView::Keep);
    CHECK(view(keep(t)).tail == t);
    CHECK(view(drop(t)).tag == ThinView::Drop);
    CHECK(view(drop(t)).tail == t);
  }
}

TEST_CASE("constructor closure: encodings stay within the big end") {
  SplitMix64 rng(0x88);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = rng.next_below(100);
    const Thinning a = rand_thinning(rng, n);
    const Thinning b = rand_thinning(rng, n);
    for (const Thinning& t :
         {keep(a), drop(a), join(a, b), meet(a, b), ones(n), none(n),
          compose(rand_thinning(rng, kept(a)), a)})
      CHECK(t.encoding().bit_length() <= t.big_end());
  }
}

TEST_CASE("check_invariant") {
  CHECK(check_invariant(done(), {}, {}));
  CHECK(check_invariant(th(3, 0), {}, {"x", "y", "z"}));
  CHECK_FALSE(check_invariant(th(2, 3), {"x"}, {"x", "y"}));
  CHECK(check_invariant(th(2, 3), {"x", "y"}, {"x", "y"}));
  CHECK(check_invariant(th(2, 2), {"x"}, {"x", "y"}));
  CHECK_FALSE(check_invariant(th(2, 2), {"y"}, {"x", "y"}));
  CHECK_FALSE(check_invariant(th(3, 0), {}, {"x"}));
}
