#include "latdsp/multiset.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <utility>

namespace latdsp {

namespace {

constexpr std::int64_t kLatticeCap = std::int64_t(1) << 20;

void require_spec(const MultisetSpec& spec) {
  if (spec.m.empty()) fail(Errc::BadInput, "capacity vector is empty");
  for (int c : spec.m)
    if (c < 0) fail(Errc::BadInput, "negative capacity " + std::to_string(c));
}

void require_element(const MultisetElement& a, const MultisetSpec& spec) {
  if (a.size() != spec.m.size())
    fail(Errc::OutOfBounds, "element has " + std::to_string(a.size()) +
                                " coordinates, spec has " + std::to_string(spec.m.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < 0 || a[i] > spec.m[i])
      fail(Errc::OutOfBounds, "coordinate " + std::to_string(i + 1) + " value " +
                                  std::to_string(a[i]) + " outside [0, " +
                                  std::to_string(spec.m[i]) + "]");
}

// Shared by rank/unrank and the builder. Counting tables stay within int64
// because the total is capped first.
GridSpec make_grid_spec(const MultisetSpec& spec, std::int64_t cap) {
  require_spec(spec);
  (void)multiset_size(spec, cap);
  const std::size_t f = spec.m.size();
  GridSpec g;
  g.caps = spec.m;
  g.suffix_count.assign(f + 1, {});
  g.suffix_count[f] = {1};
  for (std::size_t j = f; j-- > 0;) {
    const auto& nxt = g.suffix_count[j + 1];
    const std::size_t m = std::size_t(spec.m[j]);
    std::vector<std::int64_t> cur(nxt.size() + m);
    std::int64_t window = 0;  // sliding sum of nxt over the last m+1 slots
    for (std::size_t s = 0; s < cur.size(); ++s) {
      if (s < nxt.size()) window += nxt[s];
      if (s >= m + 1) window -= nxt[s - m - 1];
      cur[s] = window;
    }
    g.suffix_count[j] = std::move(cur);
  }
  g.level_base.assign(g.suffix_count[0].size(), 0);
  for (std::size_t s = 1; s < g.level_base.size(); ++s)
    g.level_base[s] = g.level_base[s - 1] + g.suffix_count[0][s - 1];
  return g;
}

// Emits every digit vector in the lattice's topological order: graded by
// total count, ties lexicographic with the first coordinate most
// significant. Amortized O(f) per element, so chain-heavy grids stay linear.
template <class F>
void for_each_graded(const std::vector<int>& m, F&& emit) {
  const std::size_t f = m.size();
  int S = 0;
  for (int c : m) S += c;
  std::vector<int> d(f);
  for (int t = 0; t <= S; ++t) {
    // lex-least vector of total t: surplus pushed onto the rightmost slots
    int rem = t;
    for (std::size_t k = f; k-- > 0;) {
      d[k] = std::min(rem, m[k]);
      rem -= d[k];
    }
    for (;;) {
      emit(static_cast<const std::vector<int>&>(d));
      // in-level successor: raise the rightmost position with weight after
      // it, then re-minimize the tail
      std::size_t j = f;
      int after = 0;
      for (std::size_t k = f; k-- > 1;) {
        after += d[k];
        if (after > 0 && d[k - 1] < m[k - 1]) {
          j = k - 1;
          break;
        }
      }
      if (j == f) break;
      ++d[j];
      int rem2 = after - 1;
      for (std::size_t k = f; k-- > j + 1;) {
        d[k] = std::min(rem2, m[k]);
        rem2 -= d[k];
      }
    }
  }
}

std::string digit_name(const std::vector<int>& d) {
  std::string nm;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (k) nm += '.';
    nm += std::to_string(d[k]);
  }
  return nm;
}

}  // namespace

std::int64_t multiset_size(const MultisetSpec& spec, std::int64_t cap) {
  require_spec(spec);
  std::int64_t n = 1;
  for (int c : spec.m) {
    const std::int64_t cp1 = std::int64_t(c) + 1;
    if (n > cap / cp1)
      fail(Errc::TooLarge, "multiset lattice would exceed " + std::to_string(cap) + " elements");
    n *= cp1;
  }
  return n;
}

class MultisetBuilder {
public:
  static Lattice build(const MultisetSpec& spec, int max_dense) {
    const std::int64_t n64 = multiset_size(spec, kLatticeCap);
    const int n = int(n64);
    const std::size_t f = spec.m.size();
    auto grid = std::make_shared<const GridSpec>(make_grid_spec(spec, kLatticeCap));

    Lattice L;
    L.grid_ = grid;
    L.digits_.resize(std::size_t(n) * f);
    L.names_.resize(std::size_t(n));
    int i = 0;
    for_each_graded(spec.m, [&](const std::vector<int>& d) {
      std::copy(d.begin(), d.end(), L.digits_.begin() + std::size_t(i) * f);
      L.names_[std::size_t(i)] = digit_name(d);
      ++i;
    });

    if (n64 <= std::int64_t(std::max(max_dense, 0))) {
      std::size_t ncov = 0;
      for (std::size_t k = 0; k < f; ++k)
        ncov += std::size_t(n64 / (spec.m[k] + 1)) * std::size_t(spec.m[k]);
      std::vector<std::pair<int, int>> covers;
      covers.reserve(ncov);
      std::vector<int> d(f);
      for (int x = 0; x < n; ++x) {
        std::copy_n(L.digits_.begin() + std::size_t(x) * f, f, d.begin());
        for (std::size_t k = 0; k < f; ++k) {
          if (d[k] >= spec.m[k]) continue;
          ++d[k];
          covers.emplace_back(int(grid_rank(*grid, d)), x);
          --d[k];
        }
      }
      std::sort(covers.begin(), covers.end());
      BitRows down(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x) down.set(std::size_t(x), std::size_t(x));
      // ascending upper index: each lower row is final before it is merged
      for (auto [u, l] : covers) down.or_row(std::size_t(u), std::size_t(l));
      L.covers_ = std::move(covers);
      L.down_ = std::move(down);
    }
    L.finish_dense();
    {
      // a product of chains is a lattice by construction
      std::lock_guard<std::mutex> lk(L.cache_mu_);
      L.meet_check_ = PairVerdict{};
      L.join_check_ = PairVerdict{};
    }
    return L;
  }
};

Lattice build_multiset_lattice(const MultisetSpec& spec, int max_dense) {
  return MultisetBuilder::build(spec, max_dense);
}

MultisetElement mmeet(const MultisetElement& a, const MultisetElement& b,
                      const MultisetSpec& spec) {
  require_spec(spec);
  require_element(a, spec);
  require_element(b, spec);
  MultisetElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

MultisetElement mjoin(const MultisetElement& a, const MultisetElement& b,
                      const MultisetSpec& spec) {
  require_spec(spec);
  require_element(a, spec);
  require_element(b, spec);
  MultisetElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

std::int64_t rank(const MultisetElement& a, const MultisetSpec& spec) {
  require_spec(spec);
  require_element(a, spec);
  return grid_rank(make_grid_spec(spec, std::int64_t(1) << 62), a);
}

MultisetElement unrank(std::int64_t i, const MultisetSpec& spec) {
  const std::int64_t n = multiset_size(spec);
  if (i < 0 || i >= n)
    fail(Errc::OutOfBounds,
         "index " + std::to_string(i) + " outside [0, " + std::to_string(n) + ")");
  return grid_unrank(make_grid_spec(spec, std::int64_t(1) << 62), i);
}

BidderType bidder_type_from_string(const std::string& s) {
  if (s == "small") return BidderType::Small;
  if (s == "highfreq") return BidderType::HighFreq;
  if (s == "secondary") return BidderType::Secondary;
  if (s == "primary") return BidderType::Primary;
  fail(Errc::BadInput, "unknown bidder type '" + s + "'");
}

std::string to_string(BidderType t) {
  switch (t) {
    case BidderType::Small: return "small";
    case BidderType::HighFreq: return "highfreq";
    case BidderType::Secondary: return "secondary";
    case BidderType::Primary: return "primary";
  }
  fail(Errc::BadInput, "unknown bidder type");
}

RealSignal synth_bidder(const MultisetSpec& spec, BidderType type, std::uint32_t seed,
                        Variant variant) {
  const std::int64_t n64 = multiset_size(spec, kLatticeCap);
  const int n = int(n64);
  const std::size_t f = spec.m.size();
  const GridSpec g = make_grid_spec(spec, kLatticeCap);
  const int ti = int(type);

  static constexpr std::array<int, 4> kJoinCounts{20, 48, 60, 60};
  static constexpr std::array<int, 4> kMeetCounts{36, 90, 111, 111};
  static constexpr std::array<double, 4> kTypeScale{1.0, 4.0, 8.0, 16.0};
  int k = (variant == Variant::Join ? kJoinCounts : kMeetCounts)[std::size_t(ti)];
  if (std::int64_t(k) > n64) k = n;

  // Ascending-stv frequency positions. In a grid stv is the level for meet
  // and total-minus-level for join, with in-level ties falling back to the
  // topological index, so the meet support is the first k positions and the
  // join support fills levels from the top, each left to right.
  std::vector<std::int64_t> planted;
  planted.reserve(std::size_t(k));
  if (variant == Variant::Meet) {
    for (int i = 0; i < k; ++i) planted.push_back(i);
  } else {
    for (std::size_t t = g.level_base.size(); t-- > 0 && int(planted.size()) < k;) {
      const std::int64_t base = g.level_base[t];
      const std::int64_t cnt = g.suffix_count[0][t];
      for (std::int64_t j = 0; j < cnt && int(planted.size()) < k; ++j)
        planted.push_back(base + j);
    }
  }

  std::seed_seq sq{seed, std::uint32_t(ti), variant == Variant::Join ? 1u : 0u};
  std::mt19937_64 rng(sq);
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  std::vector<double> coeff(planted.size());
  for (auto& c : coeff) c = kTypeScale[std::size_t(ti)] * amp(rng);

  std::vector<int> digits(std::size_t(n) * f);
  {
    int i = 0;
    for_each_graded(spec.m, [&](const std::vector<int>& d) {
      std::copy(d.begin(), d.end(), digits.begin() + std::size_t(i) * f);
      ++i;
    });
  }

  // inverse transform of the planted spectrum, evaluated directly: a planted
  // coefficient at b reaches every x <= b (join) or x >= b (meet)
  RealSignal s(std::size_t(n), 0.0);
  for (std::size_t p = 0; p < planted.size(); ++p) {
    const int* db = digits.data() + std::size_t(planted[p]) * f;
    for (int x = 0; x < n; ++x) {
      const int* dx = digits.data() + std::size_t(x) * f;
      bool reach = true;
      for (std::size_t c = 0; c < f; ++c) {
        const bool ok = variant == Variant::Join ? dx[c] <= db[c] : dx[c] >= db[c];
        if (!ok) {
          reach = false;
          break;
        }
      }
      if (reach) s[std::size_t(x)] += coeff[p];
    }
  }
  return s;
}

}  // namespace latdsp
