#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "latdsp/fca.hpp"

using latdsp::BitVec;
using latdsp::Concept;
using latdsp::ConceptLattice;
using latdsp::Context;
using latdsp::Errc;
using latdsp::Error;
using latdsp::Variant;

TEST_SUITE_BEGIN("fca");

namespace {

// Seven telecom users against eight binary properties.
Context telco() {
  std::vector<std::string> users = {"U1", "U2", "U3", "U4", "U5", "U6", "U7"};
  std::vector<std::string> props = {"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8"};
  Context ctx(users, props);
  const std::vector<std::vector<int>> rows = {
      {2, 4, 5}, {1, 4, 5, 6, 7}, {4, 5, 6, 7}, {1, 2, 3, 5, 7},
      {2, 5},    {7},             {2, 5},       {1, 2, 3, 5}};
  for (int p = 0; p < 8; ++p)
    for (int u : rows[std::size_t(p)]) ctx.relate(u - 1, p);
  return ctx;
}

std::set<int> to_set(const BitVec& v) {
  std::set<int> s;
  v.for_each([&](std::size_t i) { s.insert(int(i)); });
  return s;
}

std::set<int> named(const Context& ctx, std::initializer_list<const char*> us) {
  std::set<int> s;
  for (const char* u : us) {
    auto it = std::find(ctx.objects().begin(), ctx.objects().end(), std::string(u));
    REQUIRE(it != ctx.objects().end());
    s.insert(int(it - ctx.objects().begin()));
  }
  return s;
}

Context random_context(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sz(1, 12);
  const int o = sz(rng), a = sz(rng);
  std::vector<std::string> objs, attrs;
  for (int i = 0; i < o; ++i) objs.push_back("o" + std::to_string(i));
  for (int i = 0; i < a; ++i) attrs.push_back("a" + std::to_string(i));
  Context ctx(objs, attrs);
  std::bernoulli_distribution flip(0.4);
  for (int i = 0; i < o; ++i)
    for (int j = 0; j < a; ++j)
      if (flip(rng)) ctx.relate(i, j);
  return ctx;
}

// Reference enumeration over every object subset.
std::set<std::pair<std::set<int>, std::set<int>>> brute_concepts(const Context& ctx) {
  std::set<std::pair<std::set<int>, std::set<int>>> out;
  const int o = ctx.object_count();
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << o); ++mask) {
    BitVec objs(static_cast<std::size_t>(o));
    for (int i = 0; i < o; ++i)
      if ((mask >> i) & 1u) objs.set(std::size_t(i));
    BitVec intent = ctx.derive_attr(objs);
    BitVec closure = ctx.derive_obj(intent);
    if (to_set(closure) == to_set(objs)) out.insert({to_set(objs), to_set(intent)});
  }
  return out;
}

}  // namespace

TEST_CASE("derivations") {
  Context ctx = telco();
  std::vector<int> got = ctx.derive_attr({3, 4});  // U4, U5
  CHECK(got == std::vector<int>{0, 1, 2});         // P1, P2, P3

  BitVec none(7);
  CHECK(to_set(ctx.derive_attr(none)) == std::set<int>{0, 1, 2, 3, 4, 5, 6, 7});
  BitVec noattr(8);
  CHECK(to_set(ctx.derive_obj(noattr)) == std::set<int>{0, 1, 2, 3, 4, 5, 6});

  // Galois-connection identities over every subset
  for (std::uint64_t mask = 0; mask < 128; ++mask) {
    BitVec objs(7);
    for (int i = 0; i < 7; ++i)
      if ((mask >> i) & 1u) objs.set(std::size_t(i));
    BitVec a1 = ctx.derive_attr(objs);
    BitVec back = ctx.derive_obj(a1);
    std::set<int> os = to_set(objs), bs = to_set(back);
    CHECK(std::includes(bs.begin(), bs.end(), os.begin(), os.end()));
    CHECK(to_set(ctx.derive_attr(back)) == to_set(a1));
  }
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    BitVec attrs(8);
    for (int i = 0; i < 8; ++i)
      if ((mask >> i) & 1u) attrs.set(std::size_t(i));
    BitVec o1 = ctx.derive_obj(attrs);
    BitVec closure = ctx.derive_attr(o1);
    std::set<int> as = to_set(attrs), cs = to_set(closure);
    CHECK(std::includes(cs.begin(), cs.end(), as.begin(), as.end()));
  }
  // antitone on nested pairs
  std::mt19937_64 rng(401);
  std::uniform_int_distribution<std::uint64_t> pick(0, 127);
  for (int t = 0; t < 200; ++t) {
    std::uint64_t small = pick(rng);
    std::uint64_t big = small | pick(rng);
    BitVec s(7), b(7);
    for (int i = 0; i < 7; ++i) {
      if ((small >> i) & 1u) s.set(std::size_t(i));
      if ((big >> i) & 1u) b.set(std::size_t(i));
    }
    std::set<int> as = to_set(ctx.derive_attr(s));
    std::set<int> ab = to_set(ctx.derive_attr(b));
    CHECK(std::includes(as.begin(), as.end(), ab.begin(), ab.end()));
  }
}

TEST_CASE("concept enumeration") {
  Context ctx = telco();
  std::vector<Concept> cs = latdsp::enumerate_concepts(ctx);
  CHECK(cs.size() == 14);

  bool found_u25 = false, found_u45 = false;
  for (const Concept& c : cs) {
    if (to_set(c.extent) == named(ctx, {"U2", "U5"})) {
      found_u25 = true;
      CHECK(to_set(c.intent) == std::set<int>{0, 3, 4, 6, 7});  // P1 P4 P5 P7 P8
    }
    if (to_set(c.extent) == named(ctx, {"U4", "U5"})) {
      found_u45 = true;
      CHECK(to_set(c.intent) == std::set<int>{0, 1, 2});
    }
  }
  CHECK(found_u25);
  CHECK(found_u45);

  // ascending lexicographic by intent, first attribute most significant
  auto lex_key = [](const Concept& c) {
    std::string k;
    for (std::size_t i = 0; i < 8; ++i) k += c.intent.get(i) ? '1' : '0';
    return k;
  };
  for (std::size_t i = 1; i < cs.size(); ++i) CHECK(lex_key(cs[i - 1]) < lex_key(cs[i]));

  // matches the brute-force oracle
  std::set<std::pair<std::set<int>, std::set<int>>> got;
  for (const Concept& c : cs) got.insert({to_set(c.extent), to_set(c.intent)});
  CHECK(got == brute_concepts(ctx));

  Context empty({"x", "y", "z"}, {"p", "q"});
  std::vector<Concept> ec = latdsp::enumerate_concepts(empty);
  REQUIRE(ec.size() == 2);
  CHECK(to_set(ec[0].extent) == std::set<int>{0, 1, 2});
  CHECK(to_set(ec[0].intent).empty());
  CHECK(to_set(ec[1].extent).empty());
  CHECK(to_set(ec[1].intent) == std::set<int>{0, 1});

  Context full({"x", "y"}, {"p"});
  full.relate(0, 0);
  full.relate(1, 0);
  CHECK(latdsp::enumerate_concepts(full).size() == 1);

  std::mt19937_64 rng(402);
  for (int t = 0; t < 25; ++t) {
    Context r = random_context(rng);
    std::vector<Concept> mine = latdsp::enumerate_concepts(r);
    std::set<std::pair<std::set<int>, std::set<int>>> s;
    for (const Concept& c : mine) s.insert({to_set(c.extent), to_set(c.intent)});
    CHECK(s.size() == mine.size());
    CHECK(s == brute_concepts(r));
  }
}

TEST_CASE("concept lattice") {
  Context ctx = telco();
  ConceptLattice cl = latdsp::build_concept_lattice(ctx);
  CHECK(cl.lattice.n() == 14);
  CHECK(cl.lattice.is_lattice());

  const int bottom = *cl.lattice.minimum();
  CHECK(to_set(cl.concepts[std::size_t(bottom)].extent) ==
        std::set<int>{0, 1, 2, 3, 4, 5, 6});
  CHECK(to_set(cl.concepts[std::size_t(bottom)].intent).empty());
  const int top = *cl.lattice.maximum();
  CHECK(to_set(cl.concepts[std::size_t(top)].extent).empty());
  CHECK(to_set(cl.concepts[std::size_t(top)].intent).size() == 8);

  auto find_extent = [&](const std::set<int>& ext) {
    for (int i = 0; i < cl.lattice.n(); ++i)
      if (to_set(cl.concepts[std::size_t(i)].extent) == ext) return i;
    REQUIRE(false);
    return -1;
  };
  const int u7 = find_extent(named(ctx, {"U7"}));
  const int u45 = find_extent(named(ctx, {"U4", "U5"}));
  const int met = cl.lattice.meet(u7, u45);
  CHECK(to_set(cl.concepts[std::size_t(met)].extent) ==
        named(ctx, {"U4", "U5", "U6", "U7"}));
  CHECK(to_set(cl.concepts[std::size_t(met)].intent) == std::set<int>{1, 2});

  // meets intersect intents, joins intersect extents
  for (int x = 0; x < cl.lattice.n(); ++x)
    for (int y = 0; y < cl.lattice.n(); ++y) {
      std::set<int> mi = to_set(cl.concepts[std::size_t(x)].intent);
      const std::set<int> yi = to_set(cl.concepts[std::size_t(y)].intent);
      std::set<int> want;
      std::set_intersection(mi.begin(), mi.end(), yi.begin(), yi.end(),
                            std::inserter(want, want.begin()));
      CHECK(to_set(cl.concepts[std::size_t(cl.lattice.meet(x, y))].intent) == want);

      std::set<int> xe = to_set(cl.concepts[std::size_t(x)].extent);
      const std::set<int> ye = to_set(cl.concepts[std::size_t(y)].extent);
      std::set<int> wantj;
      std::set_intersection(xe.begin(), xe.end(), ye.begin(), ye.end(),
                            std::inserter(wantj, wantj.begin()));
      CHECK(to_set(cl.concepts[std::size_t(cl.lattice.join(x, y))].extent) == wantj);
    }

  // order mirrors intent inclusion
  for (int x = 0; x < cl.lattice.n(); ++x)
    for (int y = 0; y < cl.lattice.n(); ++y) {
      const std::set<int> xi = to_set(cl.concepts[std::size_t(x)].intent);
      const std::set<int> yi = to_set(cl.concepts[std::size_t(y)].intent);
      const bool sub = std::includes(yi.begin(), yi.end(), xi.begin(), xi.end());
      CHECK(cl.lattice.leq(x, y) == sub);
    }
}

TEST_CASE("transposed context builds the dual lattice") {
  Context ctx = telco();
  ConceptLattice cl = latdsp::build_concept_lattice(ctx);
  ConceptLattice dl = latdsp::build_concept_lattice(ctx.transposed());
  REQUIRE(dl.lattice.n() == cl.lattice.n());

  // match transposed concepts to originals with extent and intent swapped
  std::vector<int> to_orig(std::size_t(dl.lattice.n()), -1);
  for (int i = 0; i < dl.lattice.n(); ++i) {
    for (int j = 0; j < cl.lattice.n(); ++j)
      if (to_set(dl.concepts[std::size_t(i)].extent) ==
              to_set(cl.concepts[std::size_t(j)].intent) &&
          to_set(dl.concepts[std::size_t(i)].intent) ==
              to_set(cl.concepts[std::size_t(j)].extent)) {
        to_orig[std::size_t(i)] = j;
        break;
      }
    REQUIRE(to_orig[std::size_t(i)] >= 0);
  }
  for (int x = 0; x < dl.lattice.n(); ++x)
    for (int y = 0; y < dl.lattice.n(); ++y)
      CHECK(dl.lattice.leq(x, y) ==
            cl.lattice.leq(to_orig[std::size_t(y)], to_orig[std::size_t(x)]));
}

TEST_CASE("label signal") {
  Context ctx = telco();
  ConceptLattice cl = latdsp::build_concept_lattice(ctx);
  std::map<std::string, double> churn = {{"U1", 1}, {"U2", 0}, {"U3", 1}, {"U4", 0},
                                         {"U5", 1}, {"U6", 0}, {"U7", 1}};
  latdsp::LabeledSignal ls = latdsp::attach_signal(cl, churn);
  CHECK(ls.empty_extent);  // the top concept has no objects
  const int bottom = *cl.lattice.minimum();
  CHECK(ls.signal[std::size_t(bottom)] == doctest::Approx(4.0 / 7.0));
  const int top = *cl.lattice.maximum();
  CHECK(ls.signal[std::size_t(top)] == 0.0);

  for (int i = 0; i < cl.lattice.n(); ++i)
    if (to_set(cl.concepts[std::size_t(i)].intent) == std::set<int>{3, 7})  // P4, P8
      CHECK(ls.signal[std::size_t(i)] == doctest::Approx(3.0 / 4.0));

  std::vector<double> flat(7, 2.5);
  latdsp::LabeledSignal fs = latdsp::attach_signal(cl, flat);
  for (int i = 0; i < cl.lattice.n(); ++i) {
    if (cl.concepts[std::size_t(i)].extent.count() == 0) continue;
    CHECK(fs.signal[std::size_t(i)] == 2.5);
  }

  churn.erase("U7");
  try {
    latdsp::attach_signal(cl, churn);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingLabel);
  }
  CHECK_THROWS_AS(latdsp::attach_signal(cl, std::vector<double>(3, 0.0)), Error);
}

TEST_CASE("context reconstruction") {
  Context ctx = telco();
  CHECK(latdsp::reconstruct_context(latdsp::build_concept_lattice(ctx)) == ctx);

  Context tiny({"x"}, {"p"});
  tiny.relate(0, 0);
  CHECK(latdsp::reconstruct_context(latdsp::build_concept_lattice(tiny)) == tiny);

  std::mt19937_64 rng(403);
  for (int t = 0; t < 50; ++t) {
    Context r = random_context(rng);
    CHECK(latdsp::reconstruct_context(latdsp::build_concept_lattice(r)) == r);
  }
}

TEST_CASE("clarification") {
  Context ctx({"a", "b", "c", "d"}, {"p", "q"});
  ctx.relate(0, 0);
  ctx.relate(1, 0);  // b duplicates a
  ctx.relate(2, 0);
  ctx.relate(2, 1);
  Context c = ctx.clarified();
  CHECK(c.object_count() == 3);  // a, c, d survive
  CHECK(c.objects() == std::vector<std::string>{"a", "c", "d"});
  CHECK(latdsp::enumerate_concepts(c).size() == latdsp::enumerate_concepts(ctx).size());
}

TEST_SUITE_END();
