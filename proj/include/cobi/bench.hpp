#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cobi/gen.hpp"

namespace cobi {

/// One timed comparison of the packed representation against the naive
/// step-sequence one. Times are means over batches; min/max are per batch.
struct BenchResult {
  std::string op;
  std::size_t width = 0;
  std::size_t iters = 0;
  double packed_ns = 0, packed_min_ns = 0, packed_max_ns = 0;
  double oracle_ns = 0, oracle_min_ns = 0, oracle_max_ns = 0;
  double ratio = 0;  // oracle_ns / packed_ns
};

/// The operations time_op understands.
const std::vector<std::string>& bench_op_names();

/// Pre-generates inputs from spec, checks during warmup that both
/// representations agree on every input, then times both over the same
/// inputs. Batches: 3 timed rounds, reporting mean of means plus the extreme
/// batch means. Throws std::invalid_argument for an unknown op name.
BenchResult time_op(std::string_view op, const GenSpec& spec,
                    std::size_t iters);

}  // namespace cobi
