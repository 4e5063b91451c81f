#include "latdsp/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace latdsp {

namespace {

// Transitive reduction of a closed order given as down-rows: for each y keep
// the maximal elements of down(y) \ {y}. Scanning candidates in descending
// topo order, anything reachable from an already-chosen cover is dominated.
std::vector<std::pair<int, int>> derive_covers(const BitRows& down) {
  const int n = int(down.rows());
  std::vector<std::pair<int, int>> covers;
  BitVec acc(static_cast<std::size_t>(n));
  for (int y = 0; y < n; ++y) {
    acc.reset();
    for (int z = y - 1; z >= 0; --z) {
      if (!down.get(std::size_t(y), std::size_t(z))) continue;
      if (acc.get(std::size_t(z))) continue;
      covers.emplace_back(y, z);
      const auto* src = down.row(std::size_t(z));
      auto* dst = acc.words();
      for (std::size_t w = 0; w < down.words_per_row(); ++w) dst[w] |= src[w];
    }
  }
  std::sort(covers.begin(), covers.end());
  return covers;
}

}  // namespace

Lattice::Lattice(const Lattice& o)
    : names_(o.names_),
      by_name_(o.by_name_),
      covers_(o.covers_),
      down_(o.down_),
      grid_(o.grid_),
      digits_(o.digits_),
      minimum_(o.minimum_),
      maximum_(o.maximum_),
      meet_irr_(o.meet_irr_),
      join_irr_(o.join_irr_) {
  std::lock_guard<std::mutex> lk(o.cache_mu_);
  up_ = o.up_;
  meet_check_ = o.meet_check_;
  join_check_ = o.join_check_;
}

Lattice::Lattice(Lattice&& o) noexcept
    : names_(std::move(o.names_)),
      by_name_(std::move(o.by_name_)),
      covers_(std::move(o.covers_)),
      down_(std::move(o.down_)),
      grid_(std::move(o.grid_)),
      digits_(std::move(o.digits_)),
      minimum_(o.minimum_),
      maximum_(o.maximum_),
      meet_irr_(std::move(o.meet_irr_)),
      join_irr_(std::move(o.join_irr_)) {
  up_ = std::move(o.up_);
  meet_check_ = o.meet_check_;
  join_check_ = o.join_check_;
}

Lattice& Lattice::operator=(const Lattice& o) {
  if (this != &o) {
    Lattice tmp(o);
    *this = std::move(tmp);
  }
  return *this;
}

Lattice& Lattice::operator=(Lattice&& o) noexcept {
  if (this != &o) {
    names_ = std::move(o.names_);
    by_name_ = std::move(o.by_name_);
    covers_ = std::move(o.covers_);
    down_ = std::move(o.down_);
    grid_ = std::move(o.grid_);
    digits_ = std::move(o.digits_);
    minimum_ = o.minimum_;
    maximum_ = o.maximum_;
    meet_irr_ = std::move(o.meet_irr_);
    join_irr_ = std::move(o.join_irr_);
    up_ = std::move(o.up_);
    meet_check_ = o.meet_check_;
    join_check_ = o.join_check_;
  }
  return *this;
}

int Lattice::index(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

int Lattice::index_checked(const std::string& name) const {
  int i = index(name);
  if (i < 0) fail(Errc::UnknownElement, "unknown element '" + name + "'");
  return i;
}

bool Lattice::leq(int x, int y) const {
  if (grid_ && !down_) {
    const std::size_t f = grid_->coords();
    const auto* dx = digits_.data() + std::size_t(x) * f;
    const auto* dy = digits_.data() + std::size_t(y) * f;
    for (std::size_t i = 0; i < f; ++i)
      if (dx[i] > dy[i]) return false;
    return true;
  }
  return down_->get(std::size_t(y), std::size_t(x));
}

const BitRows& Lattice::down_rows() const {
  if (!down_) fail(Errc::TooLarge, "order bit-rows not materialized for this lattice");
  return *down_;
}

const BitRows& Lattice::up_rows() const {
  const BitRows& down = down_rows();
  std::lock_guard<std::mutex> lk(cache_mu_);
  if (!up_) up_ = down.transposed();
  return *up_;
}

const PairVerdict& Lattice::check_meet_semilattice() const {
  std::lock_guard<std::mutex> lk(cache_mu_);
  if (meet_check_) return *meet_check_;
  if (!down_) fail(Errc::TooLarge, "pairwise check requires order bit-rows");
  PairVerdict v;
  const int nn = n();
  const auto& down = *down_;
  const std::size_t wpr = down.words_per_row();
  std::vector<std::uint64_t> both(wpr);
  for (int y = 1; y < nn && v.ok; ++y) {
    const auto* ry = down.row(std::size_t(y));
    for (int x = 0; x < y; ++x) {
      const auto* rx = down.row(std::size_t(x));
      long cand = -1;
      for (std::size_t w = wpr; w-- > 0;) {
        both[w] = rx[w] & ry[w];
        if (cand < 0 && both[w])
          cand = long((w << 6) + 63 - std::size_t(std::countl_zero(both[w])));
      }
      if (cand < 0) {
        v = PairVerdict{false, x, y};
        break;
      }
      const auto* rc = down.row(std::size_t(cand));
      bool sub = true;
      for (std::size_t w = 0; w < wpr; ++w)
        if (both[w] & ~rc[w]) {
          sub = false;
          break;
        }
      if (!sub) {
        v = PairVerdict{false, x, y};
        break;
      }
    }
  }
  meet_check_ = v;
  return *meet_check_;
}

const PairVerdict& Lattice::check_join_semilattice() const {
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    if (join_check_) return *join_check_;
  }
  const BitRows& up = up_rows();
  std::lock_guard<std::mutex> lk(cache_mu_);
  if (join_check_) return *join_check_;
  PairVerdict v;
  const int nn = n();
  const std::size_t wpr = up.words_per_row();
  std::vector<std::uint64_t> both(wpr);
  for (int y = 1; y < nn && v.ok; ++y) {
    const auto* ry = up.row(std::size_t(y));
    for (int x = 0; x < y; ++x) {
      const auto* rx = up.row(std::size_t(x));
      long cand = -1;
      for (std::size_t w = 0; w < wpr; ++w) {
        both[w] = rx[w] & ry[w];
        if (cand < 0 && both[w])
          cand = long((w << 6) + std::size_t(std::countr_zero(both[w])));
      }
      if (cand < 0) {
        v = PairVerdict{false, x, y};
        break;
      }
      const auto* rc = up.row(std::size_t(cand));
      bool sub = true;
      for (std::size_t w = 0; w < wpr; ++w)
        if (both[w] & ~rc[w]) {
          sub = false;
          break;
        }
      if (!sub) {
        v = PairVerdict{false, x, y};
        break;
      }
    }
  }
  join_check_ = v;
  return *join_check_;
}

std::string Lattice::kind_string() const {
  bool m = check_meet_semilattice().ok, j = check_join_semilattice().ok;
  if (m && j) return "lattice";
  if (m) return "meet-semilattice";
  if (j) return "join-semilattice";
  return "poset";
}

int Lattice::meet(int x, int y) const {
  if (grid_) {
    const std::size_t f = grid_->coords();
    std::vector<int> d(f);
    const auto* dx = digits_.data() + std::size_t(x) * f;
    const auto* dy = digits_.data() + std::size_t(y) * f;
    for (std::size_t i = 0; i < f; ++i) d[i] = std::min<int>(dx[i], dy[i]);
    return int(grid_rank(*grid_, d));
  }
  // On a join-semilattice the join of all common lower bounds is itself a
  // common lower bound, so the topo-last element of the intersection is the
  // meet in either verified case.
  if (!check_meet_semilattice().ok && !check_join_semilattice().ok)
    fail(Errc::StructureNotVerified, "meet requires a verified semilattice");
  const auto& down = *down_;
  const auto* rx = down.row(std::size_t(x));
  const auto* ry = down.row(std::size_t(y));
  for (std::size_t w = down.words_per_row(); w-- > 0;) {
    std::uint64_t b = rx[w] & ry[w];
    if (b) return int((w << 6) + 63 - std::size_t(std::countl_zero(b)));
  }
  fail(Errc::MeetUndefined,
       "elements '" + name(x) + "' and '" + name(y) + "' have no common lower bound");
}

int Lattice::join(int x, int y) const {
  if (grid_) {
    const std::size_t f = grid_->coords();
    std::vector<int> d(f);
    const auto* dx = digits_.data() + std::size_t(x) * f;
    const auto* dy = digits_.data() + std::size_t(y) * f;
    for (std::size_t i = 0; i < f; ++i) d[i] = std::max<int>(dx[i], dy[i]);
    return int(grid_rank(*grid_, d));
  }
  // On a verified meet-semilattice a nonempty set of common upper bounds is
  // meet-closed, so its topologically first element is the least upper bound.
  if (!check_join_semilattice().ok && !check_meet_semilattice().ok)
    fail(Errc::StructureNotVerified, "join requires a verified semilattice");
  const BitRows& up = up_rows();
  const auto* rx = up.row(std::size_t(x));
  const auto* ry = up.row(std::size_t(y));
  for (std::size_t w = 0; w < up.words_per_row(); ++w) {
    std::uint64_t b = rx[w] & ry[w];
    if (b) return int((w << 6) + std::size_t(std::countr_zero(b)));
  }
  fail(Errc::JoinUndefined,
       "elements '" + name(x) + "' and '" + name(y) + "' have no common upper bound");
}

const std::vector<int>& Lattice::irreducibles(Variant side) const {
  return side == Variant::Meet ? meet_irr_ : join_irr_;
}

std::vector<int> Lattice::grid_digits(int i) const {
  if (!grid_) fail(Errc::BadInput, "not a grid lattice");
  const std::size_t f = grid_->coords();
  std::vector<int> d(f);
  for (std::size_t k = 0; k < f; ++k) d[k] = digits_[std::size_t(i) * f + k];
  return d;
}

void Lattice::finish_dense() {
  const int nn = n();
  by_name_.clear();
  by_name_.reserve(std::size_t(nn));
  for (int i = 0; i < nn; ++i) {
    if (!by_name_.emplace(names_[std::size_t(i)], i).second)
      fail(Errc::DuplicateElement, "duplicate element '" + names_[std::size_t(i)] + "'");
  }
  if (grid_ && !down_) {
    // Cover lists are not materialized in grid mode; derive the metadata from
    // digit vectors. In a product of chains, x is meet-irreducible iff exactly
    // one coordinate sits below its cap, join-irreducible iff exactly one sits
    // above zero.
    const std::size_t f = grid_->coords();
    minimum_ = 0;
    maximum_ = nn - 1;
    meet_irr_.clear();
    join_irr_.clear();
    for (int i = 0; i < nn; ++i) {
      int below_cap = 0, above_zero = 0;
      for (std::size_t k = 0; k < f; ++k) {
        int d = digits_[std::size_t(i) * f + k];
        if (d < grid_->caps[k]) ++below_cap;
        if (d > 0) ++above_zero;
      }
      if (below_cap == 1) meet_irr_.push_back(i);
      if (above_zero == 1) join_irr_.push_back(i);
    }
    std::lock_guard<std::mutex> lk(cache_mu_);
    meet_check_ = PairVerdict{};
    join_check_ = PairVerdict{};
    return;
  }
  std::vector<int> n_upper(std::size_t(nn), 0), n_lower(std::size_t(nn), 0);
  for (auto [u, l] : covers_) {
    ++n_upper[std::size_t(l)];
    ++n_lower[std::size_t(u)];
  }
  std::vector<int> minimal, maximal;
  for (int i = 0; i < nn; ++i) {
    if (n_lower[std::size_t(i)] == 0) minimal.push_back(i);
    if (n_upper[std::size_t(i)] == 0) maximal.push_back(i);
  }
  // A unique minimal element of a finite poset is its minimum (dually for max).
  minimum_ = (minimal.size() == 1) ? std::optional<int>(minimal[0]) : std::nullopt;
  maximum_ = (maximal.size() == 1) ? std::optional<int>(maximal[0]) : std::nullopt;
  meet_irr_.clear();
  join_irr_.clear();
  for (int i = 0; i < nn; ++i) {
    if (n_upper[std::size_t(i)] <= 1 && !(maximum_ && *maximum_ == i)) meet_irr_.push_back(i);
    if (n_lower[std::size_t(i)] <= 1 && !(minimum_ && *minimum_ == i)) join_irr_.push_back(i);
  }
}

Lattice Lattice::from_covers(const std::vector<std::string>& elements,
                             const std::vector<std::pair<std::string, std::string>>& covers,
                             bool reduce) {
  const int nn = int(elements.size());
  std::unordered_map<std::string, int> input_index;
  input_index.reserve(std::size_t(nn));
  for (int i = 0; i < nn; ++i) {
    if (!input_index.emplace(elements[std::size_t(i)], i).second)
      fail(Errc::DuplicateElement, "duplicate element '" + elements[std::size_t(i)] + "'");
  }

  std::vector<std::pair<int, int>> edges;  // (upper, lower) in input indices
  edges.reserve(covers.size());
  std::set<std::pair<int, int>> seen;
  for (const auto& [uname, lname] : covers) {
    auto iu = input_index.find(uname);
    auto il = input_index.find(lname);
    if (iu == input_index.end()) fail(Errc::UnknownElement, "unknown element '" + uname + "'");
    if (il == input_index.end()) fail(Errc::UnknownElement, "unknown element '" + lname + "'");
    std::pair<int, int> e{iu->second, il->second};
    if (e.first == e.second) fail(Errc::CycleDetected, "self-loop on element '" + uname + "'");
    if (!seen.insert(e).second) {
      if (reduce) continue;
      fail(Errc::NonCoverEdge, "duplicate cover edge (" + uname + ", " + lname + ")");
    }
    edges.push_back(e);
  }

  // Kahn's algorithm; among ready elements the smallest input index goes first.
  std::vector<std::vector<int>> above(static_cast<std::size_t>(nn));
  std::vector<int> indeg(std::size_t(nn), 0);
  for (auto [u, l] : edges) {
    above[std::size_t(l)].push_back(u);
    ++indeg[std::size_t(u)];
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int i = 0; i < nn; ++i)
    if (indeg[std::size_t(i)] == 0) ready.push(i);
  std::vector<int> topo;
  topo.reserve(std::size_t(nn));
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    topo.push_back(v);
    for (int u : above[std::size_t(v)])
      if (--indeg[std::size_t(u)] == 0) ready.push(u);
  }
  if (int(topo.size()) != nn) {
    std::string cyc;
    for (int i = 0; i < nn; ++i)
      if (indeg[std::size_t(i)] > 0) {
        if (!cyc.empty()) cyc += ", ";
        cyc += elements[std::size_t(i)];
      }
    fail(Errc::CycleDetected, "cover relation contains a cycle through: " + cyc);
  }

  std::vector<int> pos(static_cast<std::size_t>(nn));
  for (int p = 0; p < nn; ++p) pos[std::size_t(topo[std::size_t(p)])] = p;

  Lattice L;
  L.names_.resize(std::size_t(nn));
  for (int p = 0; p < nn; ++p)
    L.names_[std::size_t(p)] = elements[std::size_t(topo[std::size_t(p)])];

  // Down-set closure along the reindexed cover DAG, lower rows first.
  std::vector<std::pair<int, int>> tedges;
  tedges.reserve(edges.size());
  for (auto [u, l] : edges) tedges.emplace_back(pos[std::size_t(u)], pos[std::size_t(l)]);
  std::sort(tedges.begin(), tedges.end());
  BitRows down(static_cast<std::size_t>(nn), static_cast<std::size_t>(nn));
  for (int i = 0; i < nn; ++i) down.set(std::size_t(i), std::size_t(i));
  for (auto [u, l] : tedges) down.or_row(std::size_t(u), std::size_t(l));

  if (reduce) {
    L.covers_ = derive_covers(down);
  } else {
    // Every input edge must be a cover of the closed order: no z with l < z < u.
    for (auto [u, l] : tedges) {
      const auto* ru = down.row(std::size_t(u));
      for (std::size_t w = 0; w < down.words_per_row(); ++w) {
        std::uint64_t word = ru[w];
        while (word) {
          int z = int((w << 6) + std::size_t(std::countr_zero(word)));
          word &= word - 1;
          if (z == u || z == l) continue;
          if (down.get(std::size_t(z), std::size_t(l)))
            fail(Errc::NonCoverEdge, "edge (" + L.names_[std::size_t(u)] + ", " +
                                         L.names_[std::size_t(l)] +
                                         ") is implied transitively via '" +
                                         L.names_[std::size_t(z)] + "'");
        }
      }
    }
    L.covers_ = tedges;
  }
  L.down_ = std::move(down);
  L.finish_dense();
  return L;
}

Lattice Lattice::from_order(const std::vector<std::string>& elements, const BitRows& leq) {
  const int nn = int(elements.size());
  if (int(leq.rows()) != nn || int(leq.cols()) != nn)
    fail(Errc::LatticeMismatch, "order relation size does not match element count");
  // Linear extension: ascending down-set size, ties by input order.
  std::vector<int> order(static_cast<std::size_t>(nn));
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> card(static_cast<std::size_t>(nn));
  for (int i = 0; i < nn; ++i) card[std::size_t(i)] = leq.row_popcount(std::size_t(i));
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return card[std::size_t(a)] < card[std::size_t(b)]; });
  std::vector<int> pos(static_cast<std::size_t>(nn));
  for (int p = 0; p < nn; ++p) pos[std::size_t(order[std::size_t(p)])] = p;

  Lattice L;
  L.names_.resize(std::size_t(nn));
  BitRows down(static_cast<std::size_t>(nn), static_cast<std::size_t>(nn));
  for (int p = 0; p < nn; ++p) {
    int src = order[std::size_t(p)];
    L.names_[std::size_t(p)] = elements[std::size_t(src)];
    const auto* r = leq.row(std::size_t(src));
    for (std::size_t w = 0; w < leq.words_per_row(); ++w) {
      std::uint64_t word = r[w];
      while (word) {
        int c = int((w << 6) + std::size_t(std::countr_zero(word)));
        word &= word - 1;
        int cp = pos[std::size_t(c)];
        if (cp > p)
          fail(Errc::BadInput, "order relation is not antisymmetric/transitive at '" +
                                   elements[std::size_t(src)] + "'");
        down.set(std::size_t(p), std::size_t(cp));
      }
    }
    if (!down.get(std::size_t(p), std::size_t(p)))
      fail(Errc::BadInput, "order relation is not reflexive");
  }
  for (int p = 0; p < nn; ++p) {
    const auto* r = down.row(std::size_t(p));
    for (std::size_t w = 0; w < down.words_per_row(); ++w) {
      std::uint64_t word = r[w];
      while (word) {
        int q = int((w << 6) + std::size_t(std::countr_zero(word)));
        word &= word - 1;
        if (!down.row_subset(std::size_t(q), std::size_t(p)))
          fail(Errc::BadInput, "order relation is not transitive at '" +
                                   L.names_[std::size_t(p)] + "' / '" +
                                   L.names_[std::size_t(q)] + "'");
      }
    }
  }
  L.covers_ = derive_covers(down);
  L.down_ = std::move(down);
  L.finish_dense();
  return L;
}

Lattice add_top(const Lattice& L, const std::string& top_name) {
  if (L.maximum()) return L;
  if (L.index(top_name) >= 0)
    fail(Errc::DuplicateElement, "element '" + top_name + "' already exists");
  const int nn = L.n();

  Lattice R;
  R.names_ = L.names_;
  R.names_.push_back(top_name);
  BitRows down(std::size_t(nn) + 1, std::size_t(nn) + 1);
  const auto& src = L.down_rows();
  for (int y = 0; y < nn; ++y) {
    auto* d = down.row(std::size_t(y));
    const auto* s = src.row(std::size_t(y));
    for (std::size_t w = 0; w < src.words_per_row(); ++w) d[w] = s[w];
  }
  for (int x = 0; x <= nn; ++x) down.set(std::size_t(nn), std::size_t(x));
  R.covers_ = L.covers_;
  std::vector<char> has_upper(std::size_t(nn), 0);
  for (auto [u, l] : L.covers_) has_upper[std::size_t(l)] = 1;
  for (int i = 0; i < nn; ++i)
    if (!has_upper[std::size_t(i)]) R.covers_.emplace_back(nn, i);
  std::sort(R.covers_.begin(), R.covers_.end());
  R.down_ = std::move(down);
  R.finish_dense();
  if (L.check_meet_semilattice().ok) {
    // A meet-semilattice with a maximum is a lattice.
    std::lock_guard<std::mutex> lk(R.cache_mu_);
    R.meet_check_ = PairVerdict{};
    R.join_check_ = PairVerdict{};
  }
  return R;
}

Lattice Lattice::dual() const {
  const int nn = n();
  Lattice R;
  R.names_.resize(std::size_t(nn));
  for (int i = 0; i < nn; ++i) R.names_[std::size_t(i)] = names_[std::size_t(nn - 1 - i)];
  R.covers_.reserve(covers_.size());
  for (auto [u, l] : covers_) R.covers_.emplace_back(nn - 1 - l, nn - 1 - u);
  std::sort(R.covers_.begin(), R.covers_.end());

  if (down_) {
    BitRows down(static_cast<std::size_t>(nn), static_cast<std::size_t>(nn));
    const BitRows& up = up_rows();
    for (int y = 0; y < nn; ++y) {
      const auto* s = up.row(std::size_t(nn - 1 - y));
      for (std::size_t w = 0; w < up.words_per_row(); ++w) {
        std::uint64_t word = s[w];
        while (word) {
          int c = int((w << 6) + std::size_t(std::countr_zero(word)));
          word &= word - 1;
          down.set(std::size_t(y), std::size_t(nn - 1 - c));
        }
      }
    }
    R.down_ = std::move(down);
  }
  if (grid_) {
    R.grid_ = grid_;
    const std::size_t f = grid_->coords();
    R.digits_.resize(digits_.size());
    for (int i = 0; i < nn; ++i)
      for (std::size_t k = 0; k < f; ++k)
        R.digits_[std::size_t(i) * f + k] =
            grid_->caps[k] - digits_[std::size_t(nn - 1 - i) * f + k];
  }
  R.finish_dense();
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto flip = [nn](const PairVerdict& v) {
      PairVerdict r;
      r.ok = v.ok;
      if (!r.ok) {
        r.x = std::min(nn - 1 - v.x, nn - 1 - v.y);
        r.y = std::max(nn - 1 - v.x, nn - 1 - v.y);
      }
      return r;
    };
    if (join_check_) R.meet_check_ = flip(*join_check_);
    if (meet_check_) R.join_check_ = flip(*meet_check_);
  }
  return R;
}

SubsetEmbedding embed_subsets(const Lattice& L) {
  if (!L.check_meet_semilattice().ok)
    fail(Errc::StructureNotVerified, "subset embedding requires a verified meet-semilattice");
  const bool need_top = !L.maximum().has_value();
  std::optional<Lattice> topped;
  if (need_top) {
    std::string tname = "_top";
    while (L.index(tname) >= 0) tname += "_";
    topped = add_top(L, tname);
  }
  const Lattice& T = need_top ? *topped : L;
  const auto& gens = T.irreducibles(Variant::Join);

  SubsetEmbedding e;
  e.top_added = need_top;
  const int k = int(gens.size());
  const int nn = L.n();
  e.phi = BitRows(std::size_t(nn), std::size_t(k));
  for (int j = 0; j < k; ++j) {
    int g = gens[std::size_t(j)];
    // An artificial top covers >= 2 maximal elements, so it is never a generator.
    e.generator_names.push_back(T.name(g));
    e.generator_index.push_back(g);
    for (int x = 0; x < nn; ++x)
      if (T.leq(g, x)) e.phi.set(std::size_t(x), std::size_t(j));
  }
  return e;
}

std::int64_t grid_rank(const GridSpec& g, const std::vector<int>& digits) {
  const std::size_t f = g.coords();
  int total = 0;
  for (std::size_t i = 0; i < f; ++i) total += digits[i];
  std::int64_t r = g.level_base[std::size_t(total)];
  int rem = total;
  for (std::size_t j = 0; j < f; ++j) {
    const auto& suf = g.suffix_count[j + 1];
    for (int d = 0; d < digits[j]; ++d) {
      int s = rem - d;
      if (s >= 0 && s < int(suf.size())) r += suf[std::size_t(s)];
    }
    rem -= digits[j];
  }
  return r;
}

std::vector<int> grid_unrank(const GridSpec& g, std::int64_t r) {
  const std::size_t f = g.coords();
  // level_base is ascending; find the level containing r.
  int total = int(std::upper_bound(g.level_base.begin(), g.level_base.end(), r) -
                  g.level_base.begin()) -
              1;
  std::int64_t idx = r - g.level_base[std::size_t(total)];
  std::vector<int> digits(f, 0);
  int rem = total;
  for (std::size_t j = 0; j < f; ++j) {
    const auto& suf = g.suffix_count[j + 1];
    for (int d = 0; d <= g.caps[j]; ++d) {
      int s = rem - d;
      std::int64_t cnt = (s >= 0 && s < int(suf.size())) ? suf[std::size_t(s)] : 0;
      if (idx < cnt) {
        digits[j] = d;
        rem -= d;
        break;
      }
      idx -= cnt;
    }
  }
  return digits;
}

}  // namespace latdsp
