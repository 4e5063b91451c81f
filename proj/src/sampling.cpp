#include "latdsp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "latdsp/errors.hpp"
#include "latdsp/transforms.hpp"

namespace latdsp {

std::vector<int> fourier_support(const Lattice& L, const RealSignal& s, Variant variant,
                                 double tol) {
  RealSignal spec = dlt(L, s, variant);
  double peak = 0.0;
  for (double v : spec) peak = std::max(peak, std::fabs(v));
  const double thr = std::max(tol * peak, 1e-12);
  std::vector<int> out;
  for (int i = 0; i < L.n(); ++i)
    if (std::fabs(spec[std::size_t(i)]) > thr) out.push_back(i);
  return out;
}

SamplingPlan make_plan(const Lattice& L, const std::vector<int>& support,
                       Variant variant) {
  const bool ok = variant == Variant::Meet ? L.check_meet_semilattice().ok
                                           : L.check_join_semilattice().ok;
  if (!ok) fail(Errc::StructureNotVerified, "sampling requires a verified semilattice");
  SamplingPlan p;
  p.variant_ = variant;
  p.n_ = L.n();
  p.support_ = support;
  for (int b : p.support_)
    if (b < 0 || b >= L.n()) fail(Errc::OutOfBounds, "support element out of range");
  std::sort(p.support_.begin(), p.support_.end());
  p.support_.erase(std::unique(p.support_.begin(), p.support_.end()), p.support_.end());
  if (p.support_.empty()) fail(Errc::EmptySupport, "sampling support is empty");
  if (variant == Variant::Join) std::reverse(p.support_.begin(), p.support_.end());

  const std::size_t k = p.support_.size();
  p.solve_.resize(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const bool cmp = variant == Variant::Meet
                           ? L.leq(p.support_[j], p.support_[i])
                           : L.leq(p.support_[i], p.support_[j]);
      if (cmp) p.solve_[i].push_back(int(j));
    }

  // row i feeds every x with support_[i] <= x (join: x <= support_[i])
  const BitRows& reach = variant == Variant::Meet ? L.up_rows() : L.down_rows();
  p.expand_.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    BitVec m(std::size_t(L.n()));
    std::memcpy(m.words(), reach.row(std::size_t(p.support_[i])),
                reach.words_per_row() * sizeof(std::uint64_t));
    p.expand_.push_back(std::move(m));
  }
  return p;
}

std::vector<double> sample(const SamplingPlan& plan, const RealSignal& s) {
  if (s.size() != std::size_t(plan.n_))
    fail(Errc::LatticeMismatch, "signal length does not match the plan's lattice");
  std::vector<double> out;
  out.reserve(plan.support_.size());
  for (int b : plan.support_) out.push_back(s[std::size_t(b)]);
  return out;
}

RealSignal reconstruct(const SamplingPlan& plan, const std::vector<double>& samples) {
  if (samples.size() != plan.support_.size())
    fail(Errc::DimensionMismatch, "sample count does not match the plan's support");
  std::vector<double> w = samples;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (int j : plan.solve_[i]) w[i] -= w[std::size_t(j)];
  RealSignal out(std::size_t(plan.n_), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    plan.expand_[i].for_each([&](std::size_t x) { out[x] += w[i]; });
  return out;
}

std::vector<RealSignal> SamplingPlan::interpolation() const {
  const std::size_t k = support_.size();
  std::vector<RealSignal> rows(std::size_t(n_), RealSignal(k, 0.0));
  std::vector<double> unit(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    unit[j] = 1.0;
    RealSignal col = reconstruct(*this, unit);
    unit[j] = 0.0;
    for (int x = 0; x < n_; ++x) rows[std::size_t(x)][j] = col[std::size_t(x)];
  }
  return rows;
}

std::vector<int> transfer_support(const Lattice& L, const std::vector<RealSignal>& refs,
                                  Variant variant, double tol) {
  BitVec acc(std::size_t(L.n()));
  for (const RealSignal& s : refs)
    for (int b : fourier_support(L, s, variant, tol)) acc.set(std::size_t(b));
  std::vector<int> out;
  acc.for_each([&](std::size_t b) { out.push_back(int(b)); });
  return out;
}

}  // namespace latdsp
