#include "cobi/bits.hpp"

#include <bit>
#include <cassert>

#include "cobi/errors.hpp"

namespace cobi {

namespace {

thread_local std::uint64_t g_bit_probes = 0;

// Portable PDEP on one word: places the low popcount(mask) bits of src at the
// set positions of mask.
std::uint64_t pdep64(std::uint64_t src, std::uint64_t mask) {
  std::uint64_t out = 0;
  while (mask != 0) {
    const std::uint64_t low = mask & (~mask + 1);
    if (src & 1u) out |= low;
    src >>= 1;
    mask &= mask - 1;
  }
  return out;
}

// Portable PEXT on one word: gathers the bits of src at mask's set positions.
std::uint64_t pext64(std::uint64_t src, std::uint64_t mask) {
  std::uint64_t out = 0;
  unsigned k = 0;
  while (mask != 0) {
    const std::uint64_t low = mask & (~mask + 1);
    if (src & low) out |= std::uint64_t{1} << k;
    ++k;
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

std::uint64_t bit_probe_count() noexcept { return g_bit_probes; }
void reset_bit_probe_count() noexcept { g_bit_probes = 0; }

BitPat BitPat::bit(std::size_t i) {
  BitPat r;
  mpz_setbit(r.z_, i);
  return r;
}

BitPat BitPat::from_decimal(std::string_view digits) {
  if (digits.empty()) throw ParseError("empty decimal literal", 0);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '9')
      throw ParseError("invalid decimal digit", i);
  }
  BitPat r;
  mpz_set_str(r.z_, std::string(digits).c_str(), 10);
  return r;
}

bool BitPat::test_bit(std::size_t i) const noexcept {
  ++g_bit_probes;
  return mpz_tstbit(z_, i) != 0;
}

std::size_t BitPat::scan1(std::size_t from) const noexcept {
  const mp_bitcnt_t pos = mpz_scan1(z_, from);
  return pos == ~mp_bitcnt_t{0} ? bit_length() : pos;
}

std::string BitPat::to_decimal() const {
  std::string buf(mpz_sizeinbase(z_, 10) + 2, '\0');
  mpz_get_str(buf.data(), 10, z_);
  buf.resize(buf.find('\0'));
  return buf;
}

std::vector<std::uint64_t> BitPat::to_words() const {
  if (is_zero()) return {};
  std::vector<std::uint64_t> words((bit_length() + 63) / 64);
  std::size_t count = 0;
  mpz_export(words.data(), &count, -1, sizeof(std::uint64_t), 0, 0, z_);
  words.resize(count);
  return words;
}

BitPat BitPat::from_words(std::span<const std::uint64_t> words) {
  BitPat r;
  if (!words.empty())
    mpz_import(r.z_, words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
  return r;
}

BitPat cons(bool b, const BitPat& bs) {
  BitPat r;
  mpz_mul_2exp(r.z_, bs.z_, 1);
  if (b) mpz_setbit(r.z_, 0);
  return r;
}

std::pair<bool, BitPat> uncons(const BitPat& bs) {
  bool head = bs.test_bit(0);
  BitPat tail;
  mpz_fdiv_q_2exp(tail.z_, bs.z_, 1);
  return {head, std::move(tail)};
}

BitPat shift_right(const BitPat& bs, std::size_t k) {
  BitPat r;
  mpz_fdiv_q_2exp(r.z_, bs.z_, k);
  return r;
}

BitPat shift_left(const BitPat& bs, std::size_t k) {
  BitPat r;
  mpz_mul_2exp(r.z_, bs.z_, k);
  return r;
}

BitPat full(std::size_t k) {
  BitPat r;
  mpz_setbit(r.z_, k);
  mpz_sub_ui(r.z_, r.z_, 1);
  return r;
}

BitPat bit_and(const BitPat& a, const BitPat& b) {
  BitPat r;
  mpz_and(r.z_, a.z_, b.z_);
  return r;
}

BitPat bit_or(const BitPat& a, const BitPat& b) {
  BitPat r;
  mpz_ior(r.z_, a.z_, b.z_);
  return r;
}

BitPat bit_xor(const BitPat& a, const BitPat& b) {
  BitPat r;
  mpz_xor(r.z_, a.z_, b.z_);
  return r;
}

BitPat complement_within(std::size_t width, const BitPat& a) {
  if (a.bit_length() > width)
    throw InvariantError("complement_within: pattern has bits at or above width");
  return bit_xor(full(width), a);
}

BitPat deposit_bits(const BitPat& src, const BitPat& mask) {
  const auto mask_words = mask.to_words();
  const auto src_words = src.to_words();
  std::vector<std::uint64_t> out(mask_words.size());

  // Bit cursor into src: how many source bits earlier mask words consumed.
  std::size_t cursor = 0;
  for (std::size_t w = 0; w < mask_words.size(); ++w) {
    const std::uint64_t m = mask_words[w];
    const unsigned need = static_cast<unsigned>(std::popcount(m));
    if (need == 0) continue;
    const std::size_t idx = cursor / 64;
    const unsigned off = static_cast<unsigned>(cursor % 64);
    std::uint64_t chunk = idx < src_words.size() ? src_words[idx] >> off : 0;
    if (off != 0 && idx + 1 < src_words.size())
      chunk |= src_words[idx + 1] << (64 - off);
    if (need < 64) chunk &= (std::uint64_t{1} << need) - 1;
    out[w] = pdep64(chunk, m);
    cursor += need;
  }
  return BitPat::from_words(out);
}

BitPat extract_bits(const BitPat& src, const BitPat& mask) {
  const auto mask_words = mask.to_words();
  const auto src_words = src.to_words();
  std::vector<std::uint64_t> out(mask_words.size() + 1);

  std::size_t cursor = 0;
  for (std::size_t w = 0; w < mask_words.size(); ++w) {
    const std::uint64_t m = mask_words[w];
    const unsigned got = static_cast<unsigned>(std::popcount(m));
    if (got == 0) continue;
    const std::uint64_t chunk =
        pext64(w < src_words.size() ? src_words[w] : 0, m);
    const std::size_t idx = cursor / 64;
    const unsigned off = static_cast<unsigned>(cursor % 64);
    out[idx] |= chunk << off;
    if (off != 0 && off + got > 64) out[idx + 1] |= chunk >> (64 - off);
    cursor += got;
  }
  return BitPat::from_words(out);
}

}  // namespace cobi
