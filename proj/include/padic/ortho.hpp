#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "padic/projection.hpp"

namespace padic {

using VectorSystem = std::vector<ResidueVector>;

constexpr std::uint64_t kInfiniteThreshold = std::numeric_limits<std::uint64_t>::max();

struct OrthoConfig {
  // Cap on total pivot visits; 0 selects the default 50 * #J,
  // kInfiniteThreshold disables the cap (termination is still guaranteed
  // for integer q by well-foundedness of the rescaled norm).
  std::uint64_t t_io = 0;
};

// True iff 0 is a minimiser of c -> ||v - c*x||, decided from trie weights.
bool is_orthogonal(const ResidueVector& v, const ResidueVector& x, const Params& P);

// One pass over the system in ascending index order, subtracting each
// nonzero component. The norm of v never increases.
ResidueVector orthogonalize(ResidueVector v, const VectorSystem& xs, const Params& P);

struct PivotVisit {
  std::uint64_t step;   // 1-based visit counter
  std::size_t pivot;
  bool updated;
};
using VisitObserver = std::function<void(const PivotVisit&, const VectorSystem&)>;

struct OrthoStats {
  std::uint64_t pivot_visits = 0;
  bool hit_threshold = false;
};

// Repeated pivot passes reducing every other entry against the pivot, until
// #J consecutive visits make no update (the system is then orthogonal) or
// the visit cap is reached. Mutates the system in place.
OrthoStats iterated_orthogonalization(VectorSystem& xs, const OrthoConfig& cfg, const Params& P,
                                      const VisitObserver* observer = nullptr);

}  // namespace padic
