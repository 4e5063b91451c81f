#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "latdsp/sampling.hpp"
#include "latdsp/transforms.hpp"

using latdsp::Errc;
using latdsp::Error;
using latdsp::Lattice;
using latdsp::RealSignal;
using latdsp::Variant;

TEST_SUITE_BEGIN("sampling");

namespace {

RealSignal plant(const Lattice& L, const std::vector<int>& B, Variant v,
                 std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(1, 9);
  RealSignal spec(std::size_t(L.n()), 0.0);
  for (int b : B) spec[std::size_t(b)] = double(coef(rng));
  return latdsp::idlt(L, spec, v);
}

}  // namespace

TEST_CASE("fourier support") {
  Lattice L = fx::semilattice8();
  std::vector<int> sup = latdsp::fourier_support(L, fx::sparse_signal8(), Variant::Meet, 1e-9);
  std::vector<std::string> names;
  for (int b : sup) names.push_back(L.name(b));
  CHECK(names == std::vector<std::string>{"a", "b", "d", "e"});

  CHECK(latdsp::fourier_support(L, RealSignal(8, 0.0), Variant::Meet, 1e-9).empty());

  Lattice P = fx::powerset(5);
  std::mt19937_64 rng(301);
  std::vector<int> B = {0, 3, 7, 12, 17, 21, 26, 31};
  RealSignal s = plant(P, B, Variant::Meet, rng);
  CHECK(latdsp::fourier_support(P, s, Variant::Meet, 1e-9) == B);
}

TEST_CASE("interpolation operator golden") {
  Lattice L = fx::semilattice8();
  std::vector<int> B = {L.index("a"), L.index("b"), L.index("d"), L.index("e")};
  latdsp::SamplingPlan plan = latdsp::make_plan(L, B, Variant::Meet);
  CHECK(plan.support() == B);

  std::vector<double> picks = latdsp::sample(plan, fx::sparse_signal8());
  CHECK(picks == std::vector<double>{2, 1, 5, 5});

  const double expect[8][4] = {{1, 0, 0, 0},  {0, 1, 0, 0}, {1, 0, 0, 0},
                               {0, 0, 1, 0},  {0, 0, 0, 1}, {-1, 1, 1, 0},
                               {0, 0, 1, 0},  {-1, 0, 1, 1}};
  std::vector<RealSignal> I = plan.interpolation();
  REQUIRE(I.size() == 8);
  for (int x = 0; x < 8; ++x)
    for (int j = 0; j < 4; ++j)
      CHECK(I[std::size_t(x)][std::size_t(j)] == doctest::Approx(expect[x][j]));

  RealSignal rec = latdsp::reconstruct(plan, picks);
  CHECK(rec == fx::sparse_signal8());
}

TEST_CASE("degenerate supports") {
  Lattice L = fx::semilattice8();
  std::vector<int> all(8);
  for (int i = 0; i < 8; ++i) all[std::size_t(i)] = i;
  latdsp::SamplingPlan full = latdsp::make_plan(L, all, Variant::Meet);
  RealSignal s = fx::sparse_signal8();
  CHECK(latdsp::reconstruct(full, latdsp::sample(full, s)) == s);
  std::vector<RealSignal> I = full.interpolation();
  for (int x = 0; x < 8; ++x)
    for (int j = 0; j < 8; ++j)
      CHECK(I[std::size_t(x)][std::size_t(j)] == doctest::Approx(x == j ? 1.0 : 0.0));

  latdsp::SamplingPlan single = latdsp::make_plan(L, {*L.minimum()}, Variant::Meet);
  std::vector<RealSignal> C = single.interpolation();
  for (int x = 0; x < 8; ++x) CHECK(C[std::size_t(x)][0] == doctest::Approx(1.0));
}

TEST_CASE("errors") {
  Lattice L = fx::semilattice8();
  try {
    latdsp::make_plan(L, {}, Variant::Meet);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptySupport);
  }
  CHECK_THROWS_AS(latdsp::make_plan(L, {99}, Variant::Meet), Error);
  try {
    latdsp::make_plan(L, {0, 1}, Variant::Join);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::StructureNotVerified);
  }
  latdsp::SamplingPlan plan = latdsp::make_plan(L, {0, 1}, Variant::Meet);
  try {
    latdsp::reconstruct(plan, {1.0, 2.0, 3.0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
  try {
    latdsp::sample(plan, RealSignal(3, 0.0));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::LatticeMismatch);
  }
}

TEST_CASE("perfect reconstruction on planted supports") {
  std::mt19937_64 rng(302);
  for (int trial = 0; trial < 100; ++trial) {
    Lattice L = fx::random_meet_semilattice(rng);
    const int n = L.n();
    std::uniform_int_distribution<int> ksz(1, n);
    std::set<int> chosen;
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int k = ksz(rng);
    while (int(chosen.size()) < k) chosen.insert(pick(rng));
    std::vector<int> B(chosen.begin(), chosen.end());
    RealSignal s = plant(L, B, Variant::Meet, rng);
    latdsp::SamplingPlan plan = latdsp::make_plan(L, B, Variant::Meet);
    RealSignal rec = latdsp::reconstruct(plan, latdsp::sample(plan, s));
    for (int i = 0; i < n; ++i)
      CHECK(rec[std::size_t(i)] == doctest::Approx(s[std::size_t(i)]).epsilon(1e-10));

    // a larger support still reconstructs
    std::set<int> wide(chosen);
    for (int t = 0; t < 3; ++t) wide.insert(pick(rng));
    latdsp::SamplingPlan wplan =
        latdsp::make_plan(L, std::vector<int>(wide.begin(), wide.end()), Variant::Meet);
    RealSignal wrec = latdsp::reconstruct(wplan, latdsp::sample(wplan, s));
    for (int i = 0; i < n; ++i)
      CHECK(wrec[std::size_t(i)] == doctest::Approx(s[std::size_t(i)]).epsilon(1e-10));
  }

  for (int trial = 0; trial < 50; ++trial) {
    Lattice L = latdsp::add_top(fx::random_meet_semilattice(rng));
    const int n = L.n();
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::set<int> chosen = {pick(rng), pick(rng), pick(rng)};
    std::vector<int> B(chosen.begin(), chosen.end());
    RealSignal s = plant(L, B, Variant::Join, rng);
    latdsp::SamplingPlan plan = latdsp::make_plan(L, B, Variant::Join);
    RealSignal rec = latdsp::reconstruct(plan, latdsp::sample(plan, s));
    for (int i = 0; i < n; ++i)
      CHECK(rec[std::size_t(i)] == doctest::Approx(s[std::size_t(i)]).epsilon(1e-10));
  }
}

TEST_CASE("transfer support") {
  Lattice P = fx::powerset(4);
  std::mt19937_64 rng(303);
  std::vector<int> B1 = {0, 2, 5};
  std::vector<int> B2 = {2, 9, 11};
  RealSignal s1 = plant(P, B1, Variant::Meet, rng);
  RealSignal s2 = plant(P, B2, Variant::Meet, rng);
  std::vector<int> uni = latdsp::transfer_support(P, {s1, s2}, Variant::Meet, 1e-9);
  CHECK(uni == std::vector<int>{0, 2, 5, 9, 11});
  CHECK(latdsp::transfer_support(P, {s1}, Variant::Meet, 1e-9) == B1);

  latdsp::SamplingPlan plan = latdsp::make_plan(P, uni, Variant::Meet);
  for (const RealSignal& s : {s1, s2}) {
    RealSignal rec = latdsp::reconstruct(plan, latdsp::sample(plan, s));
    for (std::size_t i = 0; i < s.size(); ++i)
      CHECK(rec[i] == doctest::Approx(s[i]).epsilon(1e-10));
  }
}

TEST_SUITE_END();
