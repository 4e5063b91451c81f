#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latdsp/lattice.hpp"
#include "latdsp/signal.hpp"

namespace latdsp {

// Capacity vector of a multiset lattice: elements are count vectors a with
// 0 <= a_i <= m[i], ordered componentwise. |L| = prod(m_i + 1).
struct MultisetSpec {
  std::vector<int> m;

  std::size_t coords() const { return m.size(); }
};

using MultisetElement = std::vector<int>;

// prod(m_i + 1), overflow-checked; throws TooLarge above `cap`.
std::int64_t multiset_size(const MultisetSpec& spec, std::int64_t cap = std::int64_t(1) << 62);

// Builds the chain-product lattice. The topological order is graded by total
// count with lexicographic ties (first coordinate most significant); element
// names join the counts with dots ("2.0.1"); covers raise one coordinate by
// one. Up to `max_dense` elements the order bit-rows and cover list are
// materialized; larger lattices stay in digit form, where leq/meet/join and
// the grid fast transform still work but dense-row queries throw TooLarge.
// Hard size cap 2^20 regardless of `max_dense`.
Lattice build_multiset_lattice(const MultisetSpec& spec, int max_dense = 1 << 14);

// Componentwise min/max; agrees with meet/join on the built lattice.
MultisetElement mmeet(const MultisetElement& a, const MultisetElement& b,
                      const MultisetSpec& spec);
MultisetElement mjoin(const MultisetElement& a, const MultisetElement& b,
                      const MultisetSpec& spec);

// Bijection between count vectors and topological indices of the built
// lattice. Works without building it, so sizes beyond the lattice cap are
// fine as long as the element count fits a signed 64-bit counter.
std::int64_t rank(const MultisetElement& a, const MultisetSpec& spec);
MultisetElement unrank(std::int64_t i, const MultisetSpec& spec);

enum class BidderType { Small, HighFreq, Secondary, Primary };

BidderType bidder_type_from_string(const std::string& s);
std::string to_string(BidderType t);

// Synthetic valuation fixture: plants positive coefficients on the lowest
// frequencies of the chosen variant (ties resolved like frequency_order, by
// ascending topological index) and returns the inverse transform. Planted
// counts per type are 20/48/60/60 for join and 36/90/111/111 for meet,
// clamped to |L|. The result is nonnegative and monotone along the order,
// increasing for meet and decreasing for join, and is deterministic in
// (seed, type, variant).
RealSignal synth_bidder(const MultisetSpec& spec, BidderType type, std::uint32_t seed,
                        Variant variant = Variant::Join);

}  // namespace latdsp
