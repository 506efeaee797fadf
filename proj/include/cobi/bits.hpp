#pragma once

#include <gmp.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cobi {

/// An arbitrary-precision non-negative bit pattern. Bit i is the coefficient
/// of 2^i; every bit at or above bit_length() reads as zero. This is the
/// carrier for thinning encodings: only shifting, masking and bit tests are
/// offered, no general arithmetic.
class BitPat {
 public:
  BitPat() noexcept { mpz_init(z_); }
  explicit BitPat(unsigned long v) { mpz_init_set_ui(z_, v); }

  BitPat(const BitPat& other) { mpz_init_set(z_, other.z_); }
  BitPat(BitPat&& other) noexcept {
    mpz_init(z_);
    mpz_swap(z_, other.z_);
  }
  BitPat& operator=(const BitPat& other) {
    if (this != &other) mpz_set(z_, other.z_);
    return *this;
  }
  BitPat& operator=(BitPat&& other) noexcept {
    mpz_swap(z_, other.z_);
    return *this;
  }
  ~BitPat() { mpz_clear(z_); }

  /// 2^i.
  static BitPat bit(std::size_t i);

  /// Parses a non-negative decimal integer; throws ParseError otherwise.
  static BitPat from_decimal(std::string_view digits);

  bool test_bit(std::size_t i) const noexcept;
  bool is_zero() const noexcept { return mpz_sgn(z_) == 0; }

  /// Index of the highest set bit plus one; 0 for the zero pattern.
  std::size_t bit_length() const noexcept {
    return is_zero() ? 0 : mpz_sizeinbase(z_, 2);
  }

  /// Number of set bits.
  std::size_t popcount() const noexcept { return mpz_popcount(z_); }

  /// Index of the lowest set bit at or above `from`; bit_length() if none.
  std::size_t scan1(std::size_t from) const noexcept;

  std::string to_decimal() const;

  /// Little-endian 64-bit words (no trailing zero words; empty for zero).
  std::vector<std::uint64_t> to_words() const;
  static BitPat from_words(std::span<const std::uint64_t> words);

  friend bool operator==(const BitPat& a, const BitPat& b) noexcept {
    return mpz_cmp(a.z_, b.z_) == 0;
  }

  friend BitPat cons(bool b, const BitPat& bs);
  friend std::pair<bool, BitPat> uncons(const BitPat& bs);
  friend BitPat shift_right(const BitPat& bs, std::size_t k);
  friend BitPat shift_left(const BitPat& bs, std::size_t k);
  friend BitPat full(std::size_t k);
  friend BitPat bit_and(const BitPat& a, const BitPat& b);
  friend BitPat bit_or(const BitPat& a, const BitPat& b);
  friend BitPat bit_xor(const BitPat& a, const BitPat& b);

 private:
  mpz_t z_;
};

/// bs·2 + b: makes b the new bit 0 and shifts everything else up.
BitPat cons(bool b, const BitPat& bs);

/// Inverse of cons: (bit 0, the rest shifted down).
std::pair<bool, BitPat> uncons(const BitPat& bs);

/// Drops the k least significant bits.
BitPat shift_right(const BitPat& bs, std::size_t k);

/// Inserts k zero bits below the existing ones.
BitPat shift_left(const BitPat& bs, std::size_t k);

/// 2^k - 1: the k least significant bits set.
BitPat full(std::size_t k);

BitPat bit_and(const BitPat& a, const BitPat& b);
BitPat bit_or(const BitPat& a, const BitPat& b);
BitPat bit_xor(const BitPat& a, const BitPat& b);

/// Flips bits 0..width-1 of a. Throws InvariantError if a has bits at or
/// above width.
BitPat complement_within(std::size_t width, const BitPat& a);

/// Scatters the low popcount(mask) bits of src to the set positions of mask
/// (a PDEP over the whole pattern).
BitPat deposit_bits(const BitPat& src, const BitPat& mask);

/// Gathers the bits of src at the set positions of mask into a contiguous
/// low-order run (a PEXT over the whole pattern).
BitPat extract_bits(const BitPat& src, const BitPat& mask);

/// Number of test_bit probes made on this thread since the last reset. A test
/// affordance: lets tests assert how many bit inspections an operation needs.
std::uint64_t bit_probe_count() noexcept;
void reset_bit_probe_count() noexcept;

}  // namespace cobi
