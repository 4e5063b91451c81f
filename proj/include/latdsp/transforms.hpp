#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "latdsp/lattice.hpp"
#include "latdsp/signal.hpp"

namespace latdsp {

// Order sweeps over the comparability relation, O(#comparable pairs) each.
// They are plain order sums and need no structural verification; the variant
// transforms below are built from them:
//   meet DLT  = moebius_down   meet inverse = zeta_down
//   join DLT  = moebius_up     join inverse = zeta_up
// zeta_up also computes a filter's frequency response in the meet variant.
// All four require dense order rows (throws TooLarge on grid-only lattices).
RealSignal zeta_down(const Lattice& L, const RealSignal& s);
RealSignal zeta_up(const Lattice& L, const RealSignal& s);
RealSignal moebius_down(const Lattice& L, const RealSignal& s);
RealSignal moebius_up(const Lattice& L, const RealSignal& s);
ComplexSignal zeta_down(const Lattice& L, const ComplexSignal& s);
ComplexSignal zeta_up(const Lattice& L, const ComplexSignal& s);
ComplexSignal moebius_down(const Lattice& L, const ComplexSignal& s);
ComplexSignal moebius_up(const Lattice& L, const ComplexSignal& s);

// Moebius function of the variant order. Meet: mu(x,y) over pairs x <= y.
// Join: values on the reversed order, i.e. the coefficient of s_x in the
// join DLT at y, over pairs x >= y. Entries are exact 64-bit integers;
// construction throws Overflow if a value cannot be represented.
class MoebiusTable {
public:
  Variant variant() const { return variant_; }
  // Coefficient of s_x in the variant DLT at y; 0 for incomparable pairs.
  std::int64_t at(int x, int y) const;
  // All comparable pairs with second index y, ascending in x. Zero values on
  // comparable pairs are kept (e.g. two-step chain pairs).
  const std::vector<std::pair<int, std::int64_t>>& coeffs(int y) const {
    return rows_[std::size_t(y)];
  }

private:
  friend MoebiusTable moebius(const Lattice&, Variant);
  MoebiusTable() = default;
  Variant variant_ = Variant::Meet;
  std::vector<std::vector<std::pair<int, std::int64_t>>> rows_;
};

MoebiusTable moebius(const Lattice& L, Variant variant);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Explicit transform matrices in topological order; row y, column x. The
// DLT matrix is triangular with unit diagonal (lower for meet, upper for
// join); idlt_matrix columns are the Fourier basis vectors. Guarded by
// max_n since both materialize n^2 entries.
IntMatrix dlt_matrix(const Lattice& L, Variant variant, std::size_t max_n = 4096);
IntMatrix idlt_matrix(const Lattice& L, Variant variant, std::size_t max_n = 4096);

// Spectrum of s, and its inverse. Requires the variant's semilattice check to
// pass (StructureNotVerified otherwise). On grid lattices without dense rows
// the call routes through the fast plan below; the result is identical.
RealSignal dlt(const Lattice& L, const RealSignal& s, Variant variant);
ComplexSignal dlt(const Lattice& L, const ComplexSignal& s, Variant variant);
RealSignal idlt(const Lattice& L, const RealSignal& s, Variant variant);
ComplexSignal idlt(const Lattice& L, const ComplexSignal& s, Variant variant);

// Precomputed fast transform. Three plan shapes:
//   Grid: per-coordinate prefix/suffix scans on the chain-product layout;
//     generator chains of one coordinate fuse into a single scan.
//   GeneratorPasses: one pass per irreducible generator g in topological
//     order; pass g adds t[source(x)] into t[x] for the elements above g.
//     Chosen when every pass update provably matches an order interval
//     (always the case on distributive lattices).
//   Recursive: balanced pivot split emitting an explicit update list; the
//     fallback when generator passes do not validate (e.g. diamond M3).
// step_count() reports the cost of one application: elements visited per
// pass times the number of passes (Grid: n per coordinate; GeneratorPasses:
// n per generator), or the plain update count for Recursive plans.
class FastPlan {
public:
  enum class Mode { Grid, GeneratorPasses, Recursive };

  Mode mode() const { return mode_; }
  Variant variant() const { return variant_; }
  int n() const { return n_; }
  std::size_t step_count() const { return steps_; }

  // In-place application; T = double or std::complex<double> (explicitly
  // instantiated). apply_zeta is the variant inverse transform, apply_moebius
  // the forward DLT.
  template <class T>
  void apply_zeta(std::vector<T>& t) const;
  template <class T>
  void apply_moebius(std::vector<T>& t) const;

private:
  friend FastPlan make_fast_plan(const Lattice&, Variant);

  FastPlan() = default;
  Mode mode_ = Mode::Recursive;
  Variant variant_ = Variant::Meet;
  int n_ = 0;
  std::size_t steps_ = 0;
  std::vector<std::pair<int, int>> ops_;  // (target, source), zeta order
  // Grid shape: graded-to-lexicographic permutation and coordinate strides.
  std::vector<int> lex_of_;
  std::vector<std::int64_t> stride_;
  std::vector<int> caps_;
};

FastPlan make_fast_plan(const Lattice& L, Variant variant);

RealSignal dlt_fast(const FastPlan& plan, const RealSignal& s);
ComplexSignal dlt_fast(const FastPlan& plan, const ComplexSignal& s);
RealSignal idlt_fast(const FastPlan& plan, const RealSignal& s);
ComplexSignal idlt_fast(const FastPlan& plan, const ComplexSignal& s);

RealSignal dlt_fast(const Lattice& L, const RealSignal& s, Variant variant);
ComplexSignal dlt_fast(const Lattice& L, const ComplexSignal& s, Variant variant);
RealSignal idlt_fast(const Lattice& L, const RealSignal& s, Variant variant);
ComplexSignal idlt_fast(const Lattice& L, const ComplexSignal& s, Variant variant);

}  // namespace latdsp
