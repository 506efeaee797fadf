#pragma once

#include <cassert>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cobi/bits.hpp"

namespace cobi {

/// An ordered context of variable names, outermost first: back() is the most
/// local name and corresponds to bit 0 of a thinning encoding.
using Name = std::string;
using Scope = std::vector<Name>;

/// An order-preserving embedding of a small scope into a big one, packed as
/// the size of the big end plus a bit pattern whose bit i says whether the
/// i-th most local variable of the big scope is kept. Only the big_end least
/// significant bits of the encoding may be set.
class Thinning {
 public:
  Thinning() noexcept : big_end_(0) {}
  Thinning(std::size_t big_end, BitPat encoding)
      : big_end_(big_end), encoding_(std::move(encoding)) {
    assert(encoding_.bit_length() <= big_end_ &&
           "thinning encoding has bits beyond its big end");
  }

  std::size_t big_end() const noexcept { return big_end_; }
  const BitPat& encoding() const noexcept { return encoding_; }

  friend bool operator==(const Thinning& a, const Thinning& b) noexcept {
    return a.big_end_ == b.big_end_ && a.encoding_ == b.encoding_;
  }

 private:
  std::size_t big_end_;
  BitPat encoding_;
};

/// The three ways a thinning can arise: as the empty thinning, or by keeping
/// or dropping the most local variable of some tail thinning.
struct ThinView {
  enum Tag : unsigned char { Done, Keep, Drop };
  Tag tag;
  Thinning tail;  // meaningful for Keep/Drop only
};

/// The empty thinning: a pair of zeros.
inline Thinning done() { return {}; }

/// Extends a thinning with a kept most-local variable.
Thinning keep(const Thinning& th);

/// Extends a thinning with a dropped most-local variable.
Thinning drop(const Thinning& th);

/// Total case analysis on the top step. Inspects only whether the big end is
/// zero and bit 0 of the encoding.
ThinView view(const Thinning& th);

/// Embedding of the empty scope: everything dropped.
Thinning none(std::size_t n);

/// The identity thinning: everything kept.
Thinning ones(std::size_t n);

/// Size of the source scope: the number of kept variables.
std::size_t kept(const Thinning& th);

/// Splits a scope by a predicate: the sub-scope of matching names plus the
/// thinning embedding it back into the input.
std::pair<Scope, Thinning> which(const std::function<bool(const Name&)>& pred,
                                 const Scope& scope);

/// Pointwise union of two thinnings into the same big scope.
Thinning join(const Thinning& a, const Thinning& b);

/// Pointwise intersection of two thinnings into the same big scope.
Thinning meet(const Thinning& a, const Thinning& b);

/// Composes two embeddings: the result selects, among outer's target, the
/// positions outer keeps that inner also keeps. Requires
/// kept(outer) == inner.big_end().
Thinning compose(const Thinning& inner, const Thinning& outer);

/// Factors th through ph: returns ps with compose(ps, ph) == th, or nothing
/// when th selects a variable outside ph's support. Requires equal big ends.
std::optional<Thinning> thicken(const Thinning& ph, const Thinning& th);

inline bool is_none(const Thinning& th) { return th.encoding().is_zero(); }
bool is_ones(const Thinning& th);

/// "[b_{n-1}...b_1b_0]": one character per big-end position, most significant
/// (outermost) first. done() renders as "[]".
std::string render(const Thinning& th);

/// Inverse of render; throws ParseError with the offending position.
Thinning parse_thinning(std::string_view text);

/// The executable ghost of the representation invariant: true iff th encodes
/// an order-preserving embedding of src into tgt, matching names stepwise.
bool check_invariant(const Thinning& th, const Scope& src, const Scope& tgt);

}  // namespace cobi
