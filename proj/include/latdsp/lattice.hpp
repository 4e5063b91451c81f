#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "latdsp/bitrows.hpp"
#include "latdsp/errors.hpp"

namespace latdsp {

enum class Variant { Meet, Join };

inline Variant opposite(Variant v) { return v == Variant::Meet ? Variant::Join : Variant::Meet; }

// Chain-product structure backing multiset lattices. Element i of the lattice
// corresponds to the digit vector digits[i*f .. i*f+f); the element order is
// graded by digit sum with mixed-radix ties (first digit most significant).
struct GridSpec {
  std::vector<int> caps;                 // per-coordinate maxima m_i >= 1
  std::vector<std::int64_t> level_base;  // level_base[s] = #elements with digit sum < s
  // suffix_count[j][s] = #ways digits j..f-1 can sum to s
  std::vector<std::vector<std::int64_t>> suffix_count;

  std::size_t coords() const { return caps.size(); }
};

struct PairVerdict {
  bool ok = true;
  int x = -1, y = -1;  // witness pair when !ok
};

// Finite poset/semilattice over named elements, indexed in a fixed topological
// order (lower elements first). Immutable after construction; the lazy caches
// (transpose, semilattice verdicts) are mutex-guarded so queries stay pure.
class Lattice {
public:
  Lattice(const Lattice& o);
  Lattice(Lattice&& o) noexcept;
  Lattice& operator=(const Lattice& o);
  Lattice& operator=(Lattice&& o) noexcept;

  int n() const { return int(names_.size()); }
  const std::string& name(int i) const { return names_[std::size_t(i)]; }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;             // -1 if unknown
  int index_checked(const std::string& name) const;     // throws UnknownElement

  // Cover pairs (upper, lower) as topo indices, sorted by (upper, lower).
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

  bool leq(int x, int y) const;  // x <= y
  bool has_dense_order() const { return down_.has_value(); }
  bool has_grid() const { return grid_ != nullptr; }
  const GridSpec& grid() const { return *grid_; }

  // Dense order rows: down row y = {x : x <= y}; up row x = {y : x <= y}.
  const BitRows& down_rows() const;
  const BitRows& up_rows() const;

  std::optional<int> minimum() const { return minimum_; }
  std::optional<int> maximum() const { return maximum_; }

  // Pairwise existence checks; results cached. meet/join run a check on demand
  // and throw StructureNotVerified when neither side verifies.
  const PairVerdict& check_meet_semilattice() const;
  const PairVerdict& check_join_semilattice() const;
  bool is_lattice() const {
    return check_meet_semilattice().ok && check_join_semilattice().ok;
  }
  std::string kind_string() const;

  int meet(int x, int y) const;
  int join(int x, int y) const;

  // Cover-degree irreducibles, valid on any poset. Meet-irreducibles exclude a
  // unique maximum; join-irreducibles a unique minimum. Ascending topo order.
  const std::vector<int>& irreducibles(Variant side) const;

  Lattice dual() const;

  // Digits of a grid element (grid lattices only).
  std::vector<int> grid_digits(int i) const;

  // -------- factories --------
  static Lattice from_covers(const std::vector<std::string>& elements,
                             const std::vector<std::pair<std::string, std::string>>& covers,
                             bool reduce = false);
  // Order given as down-rows over `elements` (row y bit x set iff x <= y, any
  // consistent index order); covers are derived by transitive reduction.
  static Lattice from_order(const std::vector<std::string>& elements, const BitRows& leq);

  friend Lattice add_top(const Lattice& L, const std::string& top_name);
  friend class MultisetBuilder;

private:
  Lattice() = default;
  void finish_dense();  // derive min/max, irreducibles from covers_/down_

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> by_name_;
  std::vector<std::pair<int, int>> covers_;
  std::optional<BitRows> down_;
  std::shared_ptr<const GridSpec> grid_;
  std::vector<int> digits_;  // n * f, grid lattices only

  std::optional<int> minimum_, maximum_;
  std::vector<int> meet_irr_, join_irr_;

  mutable std::mutex cache_mu_;
  mutable std::optional<BitRows> up_;
  mutable std::optional<PairVerdict> meet_check_, join_check_;
};

// Adds an artificial maximum when none exists (no-op copy otherwise). If the
// input is a verified meet-semilattice the result is a lattice.
Lattice add_top(const Lattice& L, const std::string& top_name = "_top");

// Subset embedding over the join-irreducibles of L (top added internally when
// L has no maximum). phi row i = generator set of element i; generators are
// topo-ordered indices into `generator_names`.
struct SubsetEmbedding {
  std::vector<std::string> generator_names;
  std::vector<int> generator_index;  // index into L for generators present in L
  BitRows phi;                       // n x k
  bool top_added = false;
};
SubsetEmbedding embed_subsets(const Lattice& L);

// Graded mixed-radix rank of a digit vector in a chain-product lattice; the
// bijection agrees with element topo indices.
std::int64_t grid_rank(const GridSpec& g, const std::vector<int>& digits);
std::vector<int> grid_unrank(const GridSpec& g, std::int64_t r);

}  // namespace latdsp
