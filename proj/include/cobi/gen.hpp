#pragma once

#include <cstdint>

#include "cobi/term.hpp"
#include "cobi/thin.hpp"

namespace cobi {

/// SplitMix64: the standard 64-bit shift-xor-multiply generator. Chosen
/// because it is tiny, fast, splittable and bit-for-bit reproducible across
/// platforms, which makes every generated corpus a stable artifact of its
/// seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  /// An independent child generator seeded from this stream.
  SplitMix64 split() noexcept { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

/// Everything a generated value depends on. Two equal specs produce identical
/// values on every platform and run.
struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t width = 0;      // big end for thinnings, ambient scope for terms
  double density = 0.5;       // probability an encoding bit is set
  std::size_t term_size = 1;  // node budget for generated terms
};

/// A thinning of the given width with each bit set with probability density.
Thinning gen_thinning(const GenSpec& spec);

/// A well-scoped de Bruijn term over an ambient scope of spec.width with at
/// most spec.term_size nodes. Exception: a closed leaf does not exist, so
/// when the budget runs out with no variable in scope the minimal 2-node
/// lambda-wrapped leaf is produced.
DBPtr gen_db_term(const GenSpec& spec);

/// gen_db_term converted to an open co-de Bruijn term.
OpenTerm gen_term(const GenSpec& spec);

}  // namespace cobi
