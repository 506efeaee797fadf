#pragma once

#include <optional>
#include <vector>

#include "cobi/thin.hpp"

namespace cobi::oracle {

/// The thinning as an explicit sequence of keep/drop steps, element 0 being
/// the most local one (so index i lines up with bit i of the packed form).
/// Every operation below is the obvious structural recursion with no bit
/// arithmetic; this module exists to be trusted by inspection and disagreed
/// with at one's peril.
struct OracleThin {
  std::vector<bool> steps;

  friend bool operator==(const OracleThin&, const OracleThin&) = default;
};

struct OracleView {
  enum Tag : unsigned char { Done, Keep, Drop };
  Tag tag;
  OracleThin tail;
};

Thinning to_packed(const OracleThin& o);
OracleThin from_packed(const Thinning& th);

OracleView view(const OracleThin& o);
OracleThin none(std::size_t n);
OracleThin ones(std::size_t n);
std::size_t kept(const OracleThin& o);
std::pair<Scope, OracleThin> which(const std::function<bool(const Name&)>& pred,
                                   const Scope& scope);
OracleThin join(const OracleThin& a, const OracleThin& b);
OracleThin meet(const OracleThin& a, const OracleThin& b);
OracleThin compose(const OracleThin& inner, const OracleThin& outer);
std::optional<OracleThin> thicken(const OracleThin& ph, const OracleThin& th);
bool check_invariant(const OracleThin& o, const Scope& src, const Scope& tgt);

}  // namespace cobi::oracle
