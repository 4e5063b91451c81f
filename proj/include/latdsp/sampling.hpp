#pragma once

#include <vector>

#include "latdsp/bitrows.hpp"
#include "latdsp/lattice.hpp"
#include "latdsp/signal.hpp"

namespace latdsp {

// Elements whose spectral magnitude exceeds max(tol * max magnitude, 1e-12),
// ascending by topological index.
std::vector<int> fourier_support(const Lattice& L, const RealSignal& s, Variant variant,
                                 double tol);

// Sparse-sampling plan for a fixed support: the support in plan order and the
// solved unit-triangular system that interpolates a signal from its samples.
// Self-contained once built; it does not keep a reference to the lattice.
class SamplingPlan {
 public:
  Variant variant() const { return variant_; }
  int n() const { return n_; }
  int k() const { return int(support_.size()); }

  // Plan order: ascending topological index, descending for the join side,
  // which makes the system matrix unit lower triangular.
  const std::vector<int>& support() const { return support_; }

  // Dense n x k interpolation operator; column j reconstructs unit sample j.
  std::vector<RealSignal> interpolation() const;

 private:
  friend SamplingPlan make_plan(const Lattice& L, const std::vector<int>& support,
                                Variant variant);
  friend std::vector<double> sample(const SamplingPlan& plan, const RealSignal& s);
  friend RealSignal reconstruct(const SamplingPlan& plan,
                                const std::vector<double>& samples);
  Variant variant_ = Variant::Meet;
  int n_ = 0;
  std::vector<int> support_;
  std::vector<std::vector<int>> solve_;  // earlier comparable plan positions per row
  std::vector<BitVec> expand_;           // per plan position, the elements it feeds
};

SamplingPlan make_plan(const Lattice& L, const std::vector<int>& support,
                       Variant variant);

// Values of s at the support in plan order.
std::vector<double> sample(const SamplingPlan& plan, const RealSignal& s);

// Exact recovery of any signal whose spectral support lies inside the plan's.
RealSignal reconstruct(const SamplingPlan& plan, const std::vector<double>& samples);

// Union of per-signal supports, for reuse on fresh instances over the lattice.
std::vector<int> transfer_support(const Lattice& L, const std::vector<RealSignal>& refs,
                                  Variant variant, double tol);

}  // namespace latdsp
