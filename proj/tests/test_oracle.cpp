#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobi/errors.hpp"
#include "cobi/thin_oracle.hpp"
#include "test_util.hpp"

using namespace cobi;
using oracle::OracleThin;
using oracle::from_packed;
using oracle::to_packed;
using testutil::rand_scope;
using testutil::rand_thinning;
using testutil::rand_thinning_upto;

TEST_CASE("packing round trips") {
  CHECK(to_packed({{true, false, true, true, false}}) ==
        Thinning(5, BitPat(13)));
  CHECK(to_packed({}) == done());
  CHECK(from_packed(ones(3)) == OracleThin{{true, true, true}});

  SplitMix64 rng(0x101);
  for (int i = 0; i < 500; ++i) {
    const Thinning t = rand_thinning_upto(rng, 256);
    CHECK(to_packed(from_packed(t)) == t);
    const OracleThin o = from_packed(rand_thinning_upto(rng, 64));
    CHECK(from_packed(to_packed(o)) == o);
  }
}

TEST_CASE("worked join and compose cases agree across modules") {
  const OracleThin a = from_packed(parse_thinning("[00110]"));
  const OracleThin b = from_packed(parse_thinning("[10011]"));
  CHECK(oracle::join(a, b) == from_packed(parse_thinning("[10111]")));
  CHECK(oracle::kept(from_packed(ones(9))) == 9);
  CHECK(oracle::compose(from_packed(parse_thinning("[10]")),
                        from_packed(parse_thinning("[0110]"))) ==
        from_packed(parse_thinning("[0100]")));
}

TEST_CASE("view agrees") {
  SplitMix64 rng(0x102);
  for (int i = 0; i < 1000; ++i) {
    const Thinning t = rand_thinning_upto(rng, 256);
    const ThinView v = view(t);
    const oracle::OracleView ov = oracle::view(from_packed(t));
    CHECK(static_cast<int>(v.tag) == static_cast<int>(ov.tag));
    if (v.tag != ThinView::Done) CHECK(from_packed(v.tail) == ov.tail);
  }
}

TEST_CASE("none, ones, kept agree") {
  SplitMix64 rng(0x103);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = rng.next_below(257);
    CHECK(from_packed(none(n)) == oracle::none(n));
    CHECK(from_packed(ones(n)) == oracle::ones(n));
    const Thinning t = rand_thinning(rng, n);
    CHECK(kept(t) == oracle::kept(from_packed(t)));
  }
}

TEST_CASE("which agrees") {
  SplitMix64 rng(0x104);
  for (int i = 0; i < 1000; ++i) {
    const Scope scope = rand_scope(rng, rng.next_below(40));
    const auto pred = [](const Name& n) { return n.back() == '1'; };
    const auto [sub, t] = which(pred, scope);
    const auto [osub, ot] = oracle::which(pred, scope);
    CHECK(sub == osub);
    CHECK(from_packed(t) == ot);
    CHECK(kept(t) == sub.size());
  }
}

TEST_CASE("join and meet agree") {
  SplitMix64 rng(0x105);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = rng.next_below(257);
    const Thinning a = rand_thinning(rng, n);
    const Thinning b = rand_thinning(rng, n);
    CHECK(from_packed(join(a, b)) ==
          oracle::join(from_packed(a), from_packed(b)));
    CHECK(from_packed(meet(a, b)) ==
          oracle::meet(from_packed(a), from_packed(b)));
  }
}

TEST_CASE("compose agrees") {
  SplitMix64 rng(0x106);
  for (int i = 0; i < 1000; ++i) {
    const Thinning outer = rand_thinning_upto(rng, 256);
    const Thinning inner = rand_thinning(rng, kept(outer));
    CHECK(from_packed(compose(inner, outer)) ==
          oracle::compose(from_packed(inner), from_packed(outer)));
  }
}

TEST_CASE("thicken agrees") {
  SplitMix64 rng(0x107);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = rng.next_below(257);
    const Thinning ph = rand_thinning(rng, n);
    // Half the time force th inside ph's support so the success path runs.
    Thinning t = rand_thinning(rng, n);
    if (rng.next() & 1) t = meet(ph, t);
    const auto packed = thicken(ph, t);
    const auto naive = oracle::thicken(from_packed(ph), from_packed(t));
    CHECK(packed.has_value() == naive.has_value());
    if (packed) CHECK(from_packed(*packed) == *naive);
  }
}

TEST_CASE("check_invariant agrees") {
  SplitMix64 rng(0x108);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = rng.next_below(24);
    const Thinning t = rand_thinning(rng, n);
    const Scope tgt = rand_scope(rng, n);
    // Mix three source shapes: the honest one, a perturbed one, random junk.
    Scope src;
    const std::uint64_t mode = rng.next_below(3);
    if (mode == 0) {
      for (std::size_t j = 0; j < n; ++j)
        if (t.encoding().test_bit(n - 1 - j)) src.push_back(tgt[j]);
    } else if (mode == 1) {
      for (std::size_t j = 0; j < n; ++j)
        if (t.encoding().test_bit(n - 1 - j)) src.push_back(tgt[j]);
      if (!src.empty()) src[rng.next_below(src.size())] += "'";
    } else {
      src = rand_scope(rng, rng.next_below(n + 2));
    }
    CHECK(check_invariant(t, src, tgt) ==
          oracle::check_invariant(from_packed(t), src, tgt));
    if (mode == 0) CHECK(check_invariant(t, src, tgt));
  }
}

TEST_CASE("scope mismatch errors agree") {
  CHECK_THROWS_AS(oracle::join(oracle::ones(3), oracle::ones(4)),
                  ScopeMismatchError);
  CHECK_THROWS_AS(oracle::compose(oracle::ones(3), oracle::ones(4)),
                  ScopeMismatchError);
  CHECK_THROWS_AS(oracle::thicken(oracle::ones(3), oracle::ones(4)),
                  ScopeMismatchError);
}
