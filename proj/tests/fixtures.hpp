#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "latdsp/bitrows.hpp"
#include "latdsp/lattice.hpp"

namespace fx {

// 8-element meet-semilattice used throughout the golden tests. It has three
// atoms b, c, d over the minimum a, two maximal elements g and h, and no
// global maximum, so joins do not always exist.
inline latdsp::Lattice semilattice8() {
  std::vector<std::string> elems{"a", "b", "c", "d", "e", "f", "g", "h"};
  std::vector<std::pair<std::string, std::string>> covers{
      {"b", "a"}, {"c", "a"}, {"d", "a"}, {"e", "b"}, {"f", "b"},
      {"f", "c"}, {"f", "d"}, {"g", "d"}, {"h", "e"}, {"h", "f"}};
  return latdsp::Lattice::from_covers(elems, covers);
}

// Signal over semilattice8 in topological order a..h; its meet spectrum is
// 4-sparse with support {a,b,d,e} and values (2,-1,3,4).
inline std::vector<double> sparse_signal8() { return {2, 1, 2, 5, 5, 4, 5, 8}; }

// Poset where d and e both cover b and c: the pair (d,e) has two maximal
// common lower bounds, so it is not a meet-semilattice.
inline latdsp::Lattice no_meet_poset() {
  std::vector<std::string> elems{"a", "b", "c", "d", "e"};
  std::vector<std::pair<std::string, std::string>> covers{
      {"b", "a"}, {"c", "a"}, {"d", "b"}, {"d", "c"}, {"e", "b"}, {"e", "c"}};
  return latdsp::Lattice::from_covers(elems, covers);
}

inline latdsp::Lattice chain(int len) {
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < len; ++i) elems.push_back("c" + std::to_string(i));
  for (int i = 1; i < len; ++i) covers.emplace_back(elems[i], elems[i - 1]);
  return latdsp::Lattice::from_covers(elems, covers);
}

// Powerset of {0..k-1} ordered by inclusion, elements named by bitmask.
inline latdsp::Lattice powerset(int k) {
  int n = 1 << k;
  std::vector<std::string> elems;
  for (int m = 0; m < n; ++m) elems.push_back("s" + std::to_string(m));
  latdsp::BitRows leq(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if ((x & y) == x) leq.set(std::size_t(y), std::size_t(x));
  return latdsp::Lattice::from_order(elems, leq);
}

// Random meet-semilattice: the intersection closure of random subsets of a
// small universe, ordered by inclusion. Intersection-closed families are
// always meet-semilattices (meet = set intersection).
inline latdsp::Lattice random_meet_semilattice(std::mt19937_64& rng, int max_n = 32) {
  const int universe = 6;
  std::uniform_int_distribution<int> mask_dist(0, (1 << universe) - 1);
  std::uniform_int_distribution<int> count_dist(2, 7);
  for (;;) {
    std::vector<int> fam;
    auto add = [&](int m) {
      for (int e : fam)
        if (e == m) return;
      fam.push_back(m);
    };
    int seeds = count_dist(rng);
    for (int i = 0; i < seeds; ++i) add(mask_dist(rng));
    // close under intersection
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) add(fam[i] & fam[j]);
    if (int(fam.size()) > max_n) continue;
    int n = int(fam.size());
    std::vector<std::string> elems;
    for (int m : fam) elems.push_back("f" + std::to_string(m));
    latdsp::BitRows leq(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((fam[std::size_t(i)] & fam[std::size_t(j)]) == fam[std::size_t(i)])
          leq.set(std::size_t(j), std::size_t(i));
    return latdsp::Lattice::from_order(elems, leq);
  }
}

inline std::vector<double> random_signal(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-4.0, 4.0);
  std::vector<double> s(static_cast<std::size_t>(n));
  for (auto& v : s) v = d(rng);
  return s;
}

}  // namespace fx
