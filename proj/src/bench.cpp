#include "cobi/bench.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>

#include "cobi/errors.hpp"
#include "cobi/thin_oracle.hpp"

namespace cobi {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kInputs = 32;
constexpr std::size_t kBatches = 3;

struct ThinningPair {
  Thinning a, b;
  oracle::OracleThin oa, ob;
};

struct TermInput {
  OpenTerm term;
  DBPtr db;
  Thinning th;
};

// Keeps the optimizer honest without polluting the timings.
inline void sink(std::size_t v) { asm volatile("" : : "r"(v) : "memory"); }

struct Timings {
  double mean, min, max;
};

template <typename F>
Timings run_batches(std::size_t iters, F&& body) {
  Timings t{0, 0, 0};
  for (std::size_t batch = 0; batch < kBatches; ++batch) {
    const auto start = Clock::now();
    for (std::size_t i = 0; i < iters; ++i) body(i);
    const double ns =
        std::chrono::duration<double, std::nano>(Clock::now() - start).count() /
        static_cast<double>(iters);
    t.mean += ns / kBatches;
    t.min = batch == 0 ? ns : std::min(t.min, ns);
    t.max = std::max(t.max, ns);
  }
  return t;
}

std::vector<ThinningPair> make_pairs(const GenSpec& spec, bool subset_second) {
  SplitMix64 rng(spec.seed);
  std::vector<ThinningPair> pairs;
  pairs.reserve(kInputs);
  for (std::size_t i = 0; i < kInputs; ++i) {
    GenSpec sa{rng.next(), spec.width, spec.density, 1};
    GenSpec sb{rng.next(), spec.width, spec.density, 1};
    Thinning a = gen_thinning(sa);
    Thinning b = gen_thinning(sb);
    if (subset_second) b = meet(a, b);
    pairs.push_back({a, b, oracle::from_packed(a), oracle::from_packed(b)});
  }
  return pairs;
}

void check(bool ok, const char* what) {
  if (!ok)
    throw std::logic_error(std::string("bench warmup disagreement: ") + what);
}

BenchResult finish(BenchResult r, Timings packed, Timings oracle) {
  r.packed_ns = packed.mean;
  r.packed_min_ns = packed.min;
  r.packed_max_ns = packed.max;
  r.oracle_ns = oracle.mean;
  r.oracle_min_ns = oracle.min;
  r.oracle_max_ns = oracle.max;
  r.ratio = packed.mean > 0 ? oracle.mean / packed.mean : 0;
  return r;
}

BenchResult bench_binary(
    std::string_view op, const GenSpec& spec, std::size_t iters,
    const std::function<Thinning(const Thinning&, const Thinning&)>& packed,
    const std::function<oracle::OracleThin(const oracle::OracleThin&,
                                           const oracle::OracleThin&)>& naive) {
  auto pairs = make_pairs(spec, false);
  for (const auto& p : pairs)
    check(packed(p.a, p.b) == oracle::to_packed(naive(p.oa, p.ob)), op.data());
  auto tp = run_batches(iters, [&](std::size_t i) {
    const auto& p = pairs[i % kInputs];
    sink(kept(packed(p.a, p.b)));
  });
  auto to = run_batches(iters, [&](std::size_t i) {
    const auto& p = pairs[i % kInputs];
    sink(naive(p.oa, p.ob).steps.size());
  });
  return finish({std::string(op), spec.width, iters}, tp, to);
}

BenchResult bench_compose(const GenSpec& spec, std::size_t iters) {
  SplitMix64 rng(spec.seed);
  struct Input {
    Thinning inner, outer;
    oracle::OracleThin oi, oo;
  };
  std::vector<Input> inputs;
  for (std::size_t i = 0; i < kInputs; ++i) {
    GenSpec so{rng.next(), spec.width, spec.density, 1};
    Thinning outer = gen_thinning(so);
    GenSpec si{rng.next(), kept(outer), spec.density, 1};
    Thinning inner = gen_thinning(si);
    inputs.push_back(
        {inner, outer, oracle::from_packed(inner), oracle::from_packed(outer)});
  }
  for (const auto& p : inputs)
    check(compose(p.inner, p.outer) ==
              oracle::to_packed(oracle::compose(p.oi, p.oo)),
          "compose");
  auto tp = run_batches(iters, [&](std::size_t i) {
    const auto& p = inputs[i % kInputs];
    sink(kept(compose(p.inner, p.outer)));
  });
  auto to = run_batches(iters, [&](std::size_t i) {
    const auto& p = inputs[i % kInputs];
    sink(oracle::compose(p.oi, p.oo).steps.size());
  });
  return finish({"compose", spec.width, iters}, tp, to);
}

BenchResult bench_thicken(const GenSpec& spec, std::size_t iters) {
  auto pairs = make_pairs(spec, /*subset_second=*/true);
  for (const auto& p : pairs) {
    auto packed = thicken(p.a, p.b);
    auto naive = oracle::thicken(p.oa, p.ob);
    check(packed.has_value() == naive.has_value(), "thicken presence");
    if (packed)
      check(*packed == oracle::to_packed(*naive), "thicken value");
  }
  auto tp = run_batches(iters, [&](std::size_t i) {
    const auto& p = pairs[i % kInputs];
    sink(thicken(p.a, p.b) ? 1 : 0);
  });
  auto to = run_batches(iters, [&](std::size_t i) {
    const auto& p = pairs[i % kInputs];
    sink(oracle::thicken(p.oa, p.ob) ? 1 : 0);
  });
  return finish({"thicken", spec.width, iters}, tp, to);
}

BenchResult bench_kept(const GenSpec& spec, std::size_t iters) {
  auto pairs = make_pairs(spec, false);
  for (const auto& p : pairs)
    check(kept(p.a) == oracle::kept(p.oa), "kept");
  auto tp = run_batches(iters, [&](std::size_t i) {
    sink(kept(pairs[i % kInputs].a));
  });
  auto to = run_batches(iters, [&](std::size_t i) {
    sink(oracle::kept(pairs[i % kInputs].oa));
  });
  return finish({"kept", spec.width, iters}, tp, to);
}

std::size_t drain_packed(const Thinning& th) {
  std::size_t kept_steps = 0;
  Thinning cur = th;
  for (ThinView v = view(cur); v.tag != ThinView::Done;
       cur = v.tail, v = view(cur))
    if (v.tag == ThinView::Keep) ++kept_steps;
  return kept_steps;
}

std::size_t drain_oracle(const oracle::OracleThin& o) {
  std::size_t kept_steps = 0;
  oracle::OracleThin cur = o;
  for (oracle::OracleView v = oracle::view(cur);
       v.tag != oracle::OracleView::Done;
       cur = std::move(v.tail), v = oracle::view(cur))
    if (v.tag == oracle::OracleView::Keep) ++kept_steps;
  return kept_steps;
}

BenchResult bench_view_drain(const GenSpec& spec, std::size_t iters) {
  auto pairs = make_pairs(spec, false);
  for (const auto& p : pairs)
    check(drain_packed(p.a) == drain_oracle(p.oa), "view-drain");
  auto tp = run_batches(iters, [&](std::size_t i) {
    sink(drain_packed(pairs[i % kInputs].a));
  });
  auto to = run_batches(iters, [&](std::size_t i) {
    sink(drain_oracle(pairs[i % kInputs].oa));
  });
  return finish({"view-drain", spec.width, iters}, tp, to);
}

BenchResult bench_thin_term(const GenSpec& spec, std::size_t iters) {
  SplitMix64 rng(spec.seed);
  std::vector<TermInput> inputs;
  for (std::size_t i = 0; i < kInputs; ++i) {
    GenSpec st{rng.next(), spec.width, spec.density, 1};
    Thinning th = gen_thinning(st);
    GenSpec sterm{rng.next(), kept(th), spec.density,
                  std::max<std::size_t>(spec.term_size, 64)};
    OpenTerm t = gen_term(sterm);
    inputs.push_back({t, to_debruijn(t), th});
  }
  for (const auto& p : inputs)
    check(db_equal(to_debruijn(thin_open_term(p.term, p.th)),
                   rename_db(p.db, p.th)),
          "thin-term");
  auto tp = run_batches(iters, [&](std::size_t i) {
    const auto& p = inputs[i % kInputs];
    sink(thin_open_term(p.term, p.th).thinning.big_end());
  });
  auto to = run_batches(iters, [&](std::size_t i) {
    const auto& p = inputs[i % kInputs];
    sink(rename_db(p.db, p.th) != nullptr);
  });
  return finish({"thin-term", spec.width, iters}, tp, to);
}

}  // namespace

const std::vector<std::string>& bench_op_names() {
  static const std::vector<std::string> names{
      "join", "meet", "compose", "view-drain", "kept", "thicken", "thin-term"};
  return names;
}

BenchResult time_op(std::string_view op, const GenSpec& spec,
                    std::size_t iters) {
  if (op == "join")
    return bench_binary(
        op, spec, iters,
        [](const Thinning& a, const Thinning& b) { return join(a, b); },
        [](const oracle::OracleThin& a, const oracle::OracleThin& b) {
          return oracle::join(a, b);
        });
  if (op == "meet")
    return bench_binary(
        op, spec, iters,
        [](const Thinning& a, const Thinning& b) { return meet(a, b); },
        [](const oracle::OracleThin& a, const oracle::OracleThin& b) {
          return oracle::meet(a, b);
        });
  if (op == "compose") return bench_compose(spec, iters);
  if (op == "view-drain") return bench_view_drain(spec, iters);
  if (op == "kept") return bench_kept(spec, iters);
  if (op == "thicken") return bench_thicken(spec, iters);
  if (op == "thin-term") return bench_thin_term(spec, iters);
  throw std::invalid_argument("unknown bench op: " + std::string(op));
}

}  // namespace cobi
