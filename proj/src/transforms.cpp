#include "latdsp/transforms.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <numeric>
#include <random>
#include <string>

namespace latdsp {

namespace {

// Sum of t over the row's set bits, excluding y itself.
template <class T>
T row_sum_excl(const BitRows& rows, int y, const std::vector<T>& t) {
  const std::uint64_t* row = rows.row(std::size_t(y));
  T acc{};
  for (std::size_t w = 0; w < rows.words_per_row(); ++w) {
    std::uint64_t word = row[w];
    while (word) {
      std::size_t x = (w << 6) + std::size_t(std::countr_zero(word));
      word &= word - 1;
      if (int(x) != y) acc += t[x];
    }
  }
  return acc;
}

// In-place sweeps over a topo-ordered array. Down sums read strictly smaller
// indices, up sums strictly larger; the iteration direction keeps zeta
// sources untouched and moebius sources final.
template <class T>
void sweep_zeta_down(const Lattice& L, std::vector<T>& t) {
  const BitRows& dn = L.down_rows();
  for (int y = L.n() - 1; y >= 0; --y) t[std::size_t(y)] += row_sum_excl(dn, y, t);
}

template <class T>
void sweep_moebius_down(const Lattice& L, std::vector<T>& t) {
  const BitRows& dn = L.down_rows();
  for (int y = 0; y < L.n(); ++y) t[std::size_t(y)] -= row_sum_excl(dn, y, t);
}

template <class T>
void sweep_zeta_up(const Lattice& L, std::vector<T>& t) {
  const BitRows& up = L.up_rows();
  for (int y = 0; y < L.n(); ++y) t[std::size_t(y)] += row_sum_excl(up, y, t);
}

template <class T>
void sweep_moebius_up(const Lattice& L, std::vector<T>& t) {
  const BitRows& up = L.up_rows();
  for (int y = L.n() - 1; y >= 0; --y) t[std::size_t(y)] -= row_sum_excl(up, y, t);
}

template <class T>
std::vector<T> run_sweep(const Lattice& L, const std::vector<T>& s,
                         void (*sweep)(const Lattice&, std::vector<T>&)) {
  require_length(L, s.size());
  std::vector<T> t = s;
  sweep(L, t);
  return t;
}

// Exact integer moebius sweeps for the table and matrix builders.
void i64_sub(std::int64_t& dst, std::int64_t v) {
  if (__builtin_sub_overflow(dst, v, &dst))
    fail(Errc::Overflow, "Moebius value exceeds the 64-bit integer range");
}

void i64_moebius(const Lattice& L, Variant variant, std::vector<std::int64_t>& t) {
  const int n = L.n();
  if (variant == Variant::Meet) {
    const BitRows& dn = L.down_rows();
    for (int y = 0; y < n; ++y) {
      const std::uint64_t* row = dn.row(std::size_t(y));
      for (std::size_t w = 0; w < dn.words_per_row(); ++w) {
        std::uint64_t word = row[w];
        while (word) {
          std::size_t x = (w << 6) + std::size_t(std::countr_zero(word));
          word &= word - 1;
          if (int(x) != y) i64_sub(t[std::size_t(y)], t[x]);
        }
      }
    }
  } else {
    const BitRows& up = L.up_rows();
    for (int y = n - 1; y >= 0; --y) {
      const std::uint64_t* row = up.row(std::size_t(y));
      for (std::size_t w = 0; w < up.words_per_row(); ++w) {
        std::uint64_t word = row[w];
        while (word) {
          std::size_t x = (w << 6) + std::size_t(std::countr_zero(word));
          word &= word - 1;
          if (int(x) != y) i64_sub(t[std::size_t(y)], t[x]);
        }
      }
    }
  }
}

void require_variant(const Lattice& L, Variant v) {
  const PairVerdict& pv =
      v == Variant::Meet ? L.check_meet_semilattice() : L.check_join_semilattice();
  if (!pv.ok)
    fail(Errc::StructureNotVerified,
         v == Variant::Meet ? "meet transform requires a verified meet-semilattice"
                            : "join transform requires a verified join-semilattice");
}

// Direction-neutral order access: below/above flip between the variants so
// the plan builders read "down" in the variant's own orientation.
struct OrderView {
  const Lattice* L;
  const BitRows* below_rows;
  const BitRows* above_rows;
  bool meet_side;

  const std::uint64_t* below(int x) const { return below_rows->row(std::size_t(x)); }
  const std::uint64_t* above(int x) const { return above_rows->row(std::size_t(x)); }
  bool le(int a, int b) const { return meet_side ? L->leq(a, b) : L->leq(b, a); }
  // Least upper bound in the variant order; defined whenever a and b share an
  // upper bound, which every builder call site guarantees.
  int lub(int a, int b) const { return meet_side ? L->join(a, b) : L->meet(a, b); }
  int bottom() const { return meet_side ? *L->minimum() : *L->maximum(); }
  // Greatest element of a word mask, in the variant order.
  long top_of(const std::vector<std::uint64_t>& mask) const {
    if (meet_side) {
      for (std::size_t w = mask.size(); w-- > 0;)
        if (mask[w]) return long((w << 6) + 63 - std::size_t(std::countl_zero(mask[w])));
    } else {
      for (std::size_t w = 0; w < mask.size(); ++w)
        if (mask[w]) return long((w << 6) + std::size_t(std::countr_zero(mask[w])));
    }
    return -1;
  }
};

OrderView make_view(const Lattice& L, Variant v) {
  if (v == Variant::Meet) return {&L, &L.down_rows(), &L.up_rows(), true};
  return {&L, &L.up_rows(), &L.down_rows(), false};
}

void build_grid(const Lattice& L, std::vector<int>& caps, std::vector<std::int64_t>& stride,
                std::vector<int>& lex_of, std::size_t& steps) {
  const GridSpec& g = L.grid();
  const std::size_t f = g.coords();
  const int n = L.n();
  caps = g.caps;
  stride.assign(f, 1);
  for (std::size_t c = f; c-- > 1;) stride[c - 1] = stride[c] * (g.caps[c] + 1);
  lex_of.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) {
    std::vector<int> d = L.grid_digits(i);
    std::int64_t lex = 0;
    for (std::size_t c = 0; c < f; ++c) lex += std::int64_t(d[c]) * stride[c];
    lex_of[std::size_t(i)] = int(lex);
  }
  steps = f * std::size_t(n);
}

// One pass per generator, ascending in the variant's topological order.
// Pass g adds t[y] into t[x] for each x above g, where the interval
// [closure(y), y] must equal {z : suffix(x) <= z <= x, g not<= z}; the
// builder verifies that set identity pairwise and reports failure so the
// caller can fall back. Sources never sit above g, so a pass is
// order-independent and inverts exactly by subtraction.
bool build_passes(const Lattice& L, Variant v, std::vector<std::pair<int, int>>& ops,
                  std::size_t& steps) {
  const int n = L.n();
  std::vector<int> gens = L.irreducibles(v == Variant::Meet ? Variant::Join : Variant::Meet);
  if (v == Variant::Join) std::reverse(gens.begin(), gens.end());
  const std::size_t k = gens.size();
  if (k * std::size_t(n) > (std::size_t(1) << 22)) return false;
  if (!(v == Variant::Meet ? L.minimum() : L.maximum()).has_value()) return false;
  OrderView V = make_view(L, v);
  const std::size_t W = L.down_rows().words_per_row();

  // suf[j*n+x]: least upper bound of the generators after pass j that lie
  // below x. suf[0] recovers x itself, suf[k] the variant bottom.
  std::vector<int> suf((k + 1) * std::size_t(n));
  for (int x = 0; x < n; ++x) suf[k * std::size_t(n) + std::size_t(x)] = V.bottom();
  for (std::size_t j = k; j-- > 0;) {
    const int g = gens[j];
    for (int x = 0; x < n; ++x) {
      int u = suf[(j + 1) * std::size_t(n) + std::size_t(x)];
      if (V.le(g, x)) u = V.lub(u, g);
      suf[j * std::size_t(n) + std::size_t(x)] = u;
    }
  }

  std::vector<int> pre(std::size_t(n), V.bottom());
  std::vector<std::uint64_t> cset(W), nset(W);
  for (std::size_t j = 1; j <= k; ++j) {
    const int g = gens[j - 1];
    const std::uint64_t* ag = V.above(g);
    for (int x = 0; x < n; ++x) {
      if (!V.le(g, x)) continue;
      const std::uint64_t* bx = V.below(x);
      const std::uint64_t* au = V.above(suf[j * std::size_t(n) + std::size_t(x)]);
      bool empty = true;
      for (std::size_t w = 0; w < W; ++w) {
        cset[w] = bx[w] & au[w] & ~ag[w];
        if (cset[w]) empty = false;
      }
      if (empty) continue;
      const int y = V.lub(pre[std::size_t(x)], suf[j * std::size_t(n) + std::size_t(x)]);
      const std::uint64_t* by = V.below(y);
      const std::uint64_t* ay = V.above(suf[j * std::size_t(n) + std::size_t(y)]);
      for (std::size_t w = 0; w < W; ++w)
        if ((by[w] & ay[w]) != cset[w]) return false;
      ops.emplace_back(x, y);
    }
    for (int x = 0; x < n; ++x)
      if (V.le(g, x)) pre[std::size_t(x)] = V.lub(pre[std::size_t(x)], g);
  }
  steps = k * std::size_t(n);
  return true;
}

// Balanced pivot split. ZETA(S) = ZETA(A) + ZETA(B) + one update per element
// of B whose below-set meets A; the order keeps every update's source final
// for its half. Any two members of S with a common upper bound in S have
// their least upper bound in S (the property holds for a verified
// semilattice and is inherited by both halves), which makes A's portion
// below x an interval with a greatest element.
void build_recursive(const Lattice& L, Variant v, std::vector<std::pair<int, int>>& ops,
                     std::size_t& steps) {
  const int n = L.n();
  OrderView V = make_view(L, v);
  const std::size_t W = L.down_rows().words_per_row();
  std::vector<int> elems(static_cast<std::size_t>(n));
  std::iota(elems.begin(), elems.end(), 0);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ std::uint64_t(n));

  struct Frame {
    int b, e, m, phase;
  };
  std::vector<Frame> stack;
  stack.push_back({0, n, 0, 0});
  std::vector<std::uint64_t> amask(W), meetw(W);
  while (!stack.empty()) {
    Frame fr = stack.back();
    const int len = fr.e - fr.b;
    if (len <= 1) {
      stack.pop_back();
      continue;
    }
    if (fr.phase == 0) {
      int best = -1, best_cnt = 0;
      long best_score = LONG_MAX;
      std::uniform_int_distribution<int> pick(fr.b, fr.e - 1);
      for (int t = 0; t < 16 && t < len; ++t) {
        const int g = elems[std::size_t(pick(rng))];
        int cnt = 0;
        for (int i = fr.b; i < fr.e; ++i) cnt += V.le(elems[std::size_t(i)], g);
        if (cnt == len) continue;  // g bounds the whole range
        const long score = std::labs(2L * cnt - len);
        if (score < best_score) {
          best = g;
          best_cnt = cnt;
          best_score = score;
        }
      }
      if (best < 0) {
        // sampling only ever misses when it kept drawing the range's greatest
        for (int i = fr.b; i < fr.e && best < 0; ++i) {
          const int g = elems[std::size_t(i)];
          int cnt = 0;
          for (int q = fr.b; q < fr.e; ++q) cnt += V.le(elems[std::size_t(q)], g);
          if (cnt < len) {
            best = g;
            best_cnt = cnt;
          }
        }
      }
      std::stable_partition(elems.begin() + fr.b, elems.begin() + fr.e,
                            [&](int z) { return V.le(z, best); });
      const int m = fr.b + best_cnt;
      stack.back().m = m;
      stack.back().phase = 1;
      stack.push_back({fr.b, m, 0, 0});
      stack.push_back({m, fr.e, 0, 0});
      continue;
    }
    std::fill(amask.begin(), amask.end(), 0);
    for (int i = fr.b; i < fr.m; ++i) {
      const std::size_t z = std::size_t(elems[std::size_t(i)]);
      amask[z >> 6] |= std::uint64_t(1) << (z & 63);
    }
    for (int i = fr.m; i < fr.e; ++i) {
      const int x = elems[std::size_t(i)];
      const std::uint64_t* bx = V.below(x);
      for (std::size_t w = 0; w < W; ++w) meetw[w] = amask[w] & bx[w];
      const long src = V.top_of(meetw);
      if (src >= 0) ops.emplace_back(x, int(src));
    }
    stack.pop_back();
  }
  steps = ops.size();
}

}  // namespace

RealSignal zeta_down(const Lattice& L, const RealSignal& s) {
  return run_sweep<double>(L, s, &sweep_zeta_down<double>);
}
RealSignal zeta_up(const Lattice& L, const RealSignal& s) {
  return run_sweep<double>(L, s, &sweep_zeta_up<double>);
}
RealSignal moebius_down(const Lattice& L, const RealSignal& s) {
  return run_sweep<double>(L, s, &sweep_moebius_down<double>);
}
RealSignal moebius_up(const Lattice& L, const RealSignal& s) {
  return run_sweep<double>(L, s, &sweep_moebius_up<double>);
}
ComplexSignal zeta_down(const Lattice& L, const ComplexSignal& s) {
  return run_sweep<std::complex<double>>(L, s, &sweep_zeta_down<std::complex<double>>);
}
ComplexSignal zeta_up(const Lattice& L, const ComplexSignal& s) {
  return run_sweep<std::complex<double>>(L, s, &sweep_zeta_up<std::complex<double>>);
}
ComplexSignal moebius_down(const Lattice& L, const ComplexSignal& s) {
  return run_sweep<std::complex<double>>(L, s, &sweep_moebius_down<std::complex<double>>);
}
ComplexSignal moebius_up(const Lattice& L, const ComplexSignal& s) {
  return run_sweep<std::complex<double>>(L, s, &sweep_moebius_up<std::complex<double>>);
}

std::int64_t MoebiusTable::at(int x, int y) const {
  const auto& r = rows_[std::size_t(y)];
  auto it = std::lower_bound(r.begin(), r.end(), x,
                             [](const std::pair<int, std::int64_t>& p, int v) { return p.first < v; });
  return (it != r.end() && it->first == x) ? it->second : 0;
}

MoebiusTable moebius(const Lattice& L, Variant variant) {
  const int n = L.n();
  MoebiusTable tab;
  tab.variant_ = variant;
  tab.rows_.assign(std::size_t(n), {});
  // Column x of the variant DLT is the moebius sweep of the unit impulse at
  // x; collecting it per comparable pair keeps zero values.
  const BitRows& reach = variant == Variant::Meet ? L.up_rows() : L.down_rows();
  std::vector<std::int64_t> t(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    std::fill(t.begin(), t.end(), 0);
    t[std::size_t(x)] = 1;
    i64_moebius(L, variant, t);
    const std::uint64_t* row = reach.row(std::size_t(x));
    for (std::size_t w = 0; w < reach.words_per_row(); ++w) {
      std::uint64_t word = row[w];
      while (word) {
        std::size_t y = (w << 6) + std::size_t(std::countr_zero(word));
        word &= word - 1;
        tab.rows_[y].emplace_back(x, t[y]);
      }
    }
  }
  return tab;
}

IntMatrix dlt_matrix(const Lattice& L, Variant variant, std::size_t max_n) {
  const int n = L.n();
  if (std::size_t(n) > max_n)
    fail(Errc::TooLarge, "refusing to materialize a " + std::to_string(n) + "x" +
                             std::to_string(n) + " matrix (cap " + std::to_string(max_n) + ")");
  IntMatrix A(std::size_t(n), std::vector<std::int64_t>(std::size_t(n), 0));
  std::vector<std::int64_t> t(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    std::fill(t.begin(), t.end(), 0);
    t[std::size_t(x)] = 1;
    i64_moebius(L, variant, t);
    for (int y = 0; y < n; ++y) A[std::size_t(y)][std::size_t(x)] = t[std::size_t(y)];
  }
  return A;
}

IntMatrix idlt_matrix(const Lattice& L, Variant variant, std::size_t max_n) {
  const int n = L.n();
  if (std::size_t(n) > max_n)
    fail(Errc::TooLarge, "refusing to materialize a " + std::to_string(n) + "x" +
                             std::to_string(n) + " matrix (cap " + std::to_string(max_n) + ")");
  IntMatrix B(std::size_t(n), std::vector<std::int64_t>(std::size_t(n), 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const bool in = variant == Variant::Meet ? L.leq(y, x) : L.leq(x, y);
      if (in) B[std::size_t(x)][std::size_t(y)] = 1;
    }
  return B;
}

namespace {

template <class T>
std::vector<T> dlt_impl(const Lattice& L, const std::vector<T>& s, Variant v) {
  require_variant(L, v);
  require_length(L, s.size());
  if (!L.has_dense_order()) {
    FastPlan p = make_fast_plan(L, v);
    std::vector<T> t = s;
    p.apply_moebius(t);
    return t;
  }
  std::vector<T> t = s;
  if (v == Variant::Meet)
    sweep_moebius_down(L, t);
  else
    sweep_moebius_up(L, t);
  return t;
}

template <class T>
std::vector<T> idlt_impl(const Lattice& L, const std::vector<T>& s, Variant v) {
  require_variant(L, v);
  require_length(L, s.size());
  if (!L.has_dense_order()) {
    FastPlan p = make_fast_plan(L, v);
    std::vector<T> t = s;
    p.apply_zeta(t);
    return t;
  }
  std::vector<T> t = s;
  if (v == Variant::Meet)
    sweep_zeta_down(L, t);
  else
    sweep_zeta_up(L, t);
  return t;
}

}  // namespace

RealSignal dlt(const Lattice& L, const RealSignal& s, Variant variant) {
  return dlt_impl(L, s, variant);
}
ComplexSignal dlt(const Lattice& L, const ComplexSignal& s, Variant variant) {
  return dlt_impl(L, s, variant);
}
RealSignal idlt(const Lattice& L, const RealSignal& s, Variant variant) {
  return idlt_impl(L, s, variant);
}
ComplexSignal idlt(const Lattice& L, const ComplexSignal& s, Variant variant) {
  return idlt_impl(L, s, variant);
}

FastPlan make_fast_plan(const Lattice& L, Variant variant) {
  require_variant(L, variant);
  FastPlan p;
  p.variant_ = variant;
  p.n_ = L.n();
  if (L.has_grid()) {
    p.mode_ = FastPlan::Mode::Grid;
    build_grid(L, p.caps_, p.stride_, p.lex_of_, p.steps_);
    return p;
  }
  if (build_passes(L, variant, p.ops_, p.steps_)) {
    p.mode_ = FastPlan::Mode::GeneratorPasses;
    return p;
  }
  p.ops_.clear();
  build_recursive(L, variant, p.ops_, p.steps_);
  p.mode_ = FastPlan::Mode::Recursive;
  return p;
}

template <class T>
void FastPlan::apply_zeta(std::vector<T>& t) const {
  if (int(t.size()) != n_) fail(Errc::LatticeMismatch, "signal length does not match the plan");
  if (mode_ == Mode::Grid) {
    std::vector<T> lex(t.size());
    for (int i = 0; i < n_; ++i) lex[std::size_t(lex_of_[std::size_t(i)])] = t[std::size_t(i)];
    const std::int64_t nn = n_;
    for (std::size_t c = 0; c < caps_.size(); ++c) {
      const std::int64_t st = stride_[c];
      const std::int64_t blk = st * (caps_[c] + 1);
      if (variant_ == Variant::Meet) {
        // ascending within a chain: chained adds give the prefix sums
        for (std::int64_t b = 0; b < nn; b += blk)
          for (std::int64_t q = b + st; q < b + blk; ++q)
            lex[std::size_t(q)] += lex[std::size_t(q - st)];
      } else {
        for (std::int64_t b = 0; b < nn; b += blk)
          for (std::int64_t q = b + blk - st - 1; q >= b; --q)
            lex[std::size_t(q)] += lex[std::size_t(q + st)];
      }
    }
    for (int i = 0; i < n_; ++i) t[std::size_t(i)] = lex[std::size_t(lex_of_[std::size_t(i)])];
    return;
  }
  for (const auto& [tgt, src] : ops_) t[std::size_t(tgt)] += t[std::size_t(src)];
}

template <class T>
void FastPlan::apply_moebius(std::vector<T>& t) const {
  if (int(t.size()) != n_) fail(Errc::LatticeMismatch, "signal length does not match the plan");
  if (mode_ == Mode::Grid) {
    std::vector<T> lex(t.size());
    for (int i = 0; i < n_; ++i) lex[std::size_t(lex_of_[std::size_t(i)])] = t[std::size_t(i)];
    const std::int64_t nn = n_;
    for (std::size_t c = caps_.size(); c-- > 0;) {
      const std::int64_t st = stride_[c];
      const std::int64_t blk = st * (caps_[c] + 1);
      if (variant_ == Variant::Meet) {
        // descending adjacent differences invert the prefix pass exactly
        for (std::int64_t b = 0; b < nn; b += blk)
          for (std::int64_t q = b + blk - 1; q >= b + st; --q)
            lex[std::size_t(q)] -= lex[std::size_t(q - st)];
      } else {
        for (std::int64_t b = 0; b < nn; b += blk)
          for (std::int64_t q = b; q < b + blk - st; ++q)
            lex[std::size_t(q)] -= lex[std::size_t(q + st)];
      }
    }
    for (int i = 0; i < n_; ++i) t[std::size_t(i)] = lex[std::size_t(lex_of_[std::size_t(i)])];
    return;
  }
  for (std::size_t i = ops_.size(); i-- > 0;)
    t[std::size_t(ops_[i].first)] -= t[std::size_t(ops_[i].second)];
}

template void FastPlan::apply_zeta<double>(std::vector<double>&) const;
template void FastPlan::apply_zeta<std::complex<double>>(std::vector<std::complex<double>>&) const;
template void FastPlan::apply_moebius<double>(std::vector<double>&) const;
template void FastPlan::apply_moebius<std::complex<double>>(std::vector<std::complex<double>>&) const;

RealSignal dlt_fast(const FastPlan& plan, const RealSignal& s) {
  RealSignal t = s;
  plan.apply_moebius(t);
  return t;
}
ComplexSignal dlt_fast(const FastPlan& plan, const ComplexSignal& s) {
  ComplexSignal t = s;
  plan.apply_moebius(t);
  return t;
}
RealSignal idlt_fast(const FastPlan& plan, const RealSignal& s) {
  RealSignal t = s;
  plan.apply_zeta(t);
  return t;
}
ComplexSignal idlt_fast(const FastPlan& plan, const ComplexSignal& s) {
  ComplexSignal t = s;
  plan.apply_zeta(t);
  return t;
}

RealSignal dlt_fast(const Lattice& L, const RealSignal& s, Variant variant) {
  return dlt_fast(make_fast_plan(L, variant), s);
}
ComplexSignal dlt_fast(const Lattice& L, const ComplexSignal& s, Variant variant) {
  return dlt_fast(make_fast_plan(L, variant), s);
}
RealSignal idlt_fast(const Lattice& L, const RealSignal& s, Variant variant) {
  return idlt_fast(make_fast_plan(L, variant), s);
}
ComplexSignal idlt_fast(const Lattice& L, const ComplexSignal& s, Variant variant) {
  return idlt_fast(make_fast_plan(L, variant), s);
}

}  // namespace latdsp
