#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <set>

#include "brw/lattice.hpp"
#include "brw/rng.hpp"

using namespace brw;

namespace {
std::set<LatticePoint> as_set(const std::vector<LatticePoint>& v) {
  return {v.begin(), v.end()};
}
}  // namespace

TEST_CASE("window construction and centering") {
  const LatticeWindow w(1, 100);
  CHECK(w.low() == -50);
  CHECK(w.high() == 49);
  CHECK(w.size() == 100);
  CHECK(w.contains({0}));

  const LatticeWindow w3(3, 5);
  CHECK(w3.low() == -2);
  CHECK(w3.high() == 2);
  CHECK(w3.size() == 125);

  CHECK_THROWS_AS(LatticeWindow(0, 10), std::invalid_argument);
  CHECK_THROWS_AS(LatticeWindow(1, 2), std::invalid_argument);
}

TEST_CASE("neighbors of the origin") {
  const LatticeWindow w1(1, 5);
  CHECK(as_set(neighbors({0}, w1)) ==
        std::set<LatticePoint>{{-1}, {1}});

  const LatticeWindow w3(3, 5);
  const auto n3 = neighbors({0, 0, 0}, w3);
  CHECK(n3.size() == 6);
  CHECK(as_set(n3) == std::set<LatticePoint>{{-1, 0, 0},
                                             {1, 0, 0},
                                             {0, -1, 0},
                                             {0, 1, 0},
                                             {0, 0, -1},
                                             {0, 0, 1}});
}

TEST_CASE("corner neighbors include out-of-window points") {
  // side=3, d=1: coords -1..1; the right corner's neighbor (2) is outside
  const LatticeWindow w(1, 3);
  const auto ns = neighbors({1}, w);
  CHECK(ns.size() == 2);
  CHECK(as_set(ns) == std::set<LatticePoint>{{0}, {2}});
  CHECK(!w.contains({2}));
  CHECK_THROWS_AS(neighbors({2}, w), std::domain_error);
}

TEST_CASE("index/unindex is a bijection") {
  const LatticeWindow w(2, 5);
  std::set<std::int64_t> seen;
  for (std::int32_t x = w.low(); x <= w.high(); ++x)
    for (std::int32_t y = w.low(); y <= w.high(); ++y) {
      const LatticePoint p{x, y};
      const std::int64_t idx = w.index(p);
      CHECK(idx >= 0);
      CHECK(idx < w.size());
      CHECK(w.unindex(idx) == p);
      seen.insert(idx);
    }
  CHECK(seen.size() == 25);

  const LatticeWindow w3(3, 4);
  std::set<std::int64_t> seen3;
  for (std::int64_t i = 0; i < w3.size(); ++i) {
    seen3.insert(w3.index(w3.unindex(i)));
  }
  CHECK(seen3.size() == 64);
}

TEST_CASE("origin index matches the row-major layout") {
  CHECK(LatticeWindow(1, 5).origin_index() == 2);
  CHECK(LatticeWindow(2, 5).origin_index() == 12);
  CHECK(LatticeWindow(3, 4).origin_index() == 42);
  const LatticeWindow w(3, 4);
  CHECK(w.index({0, 0, 0}) == w.origin_index());
}

TEST_CASE("bijection holds on large sampled windows") {
  // side^d up to 1e7
  for (auto [d, side] : {std::pair{1, 10000000}, {2, 3000}, {7, 10}}) {
    const LatticeWindow w(d, side);
    REQUIRE(w.size() <= 10000000);
    rng::SplitMix64 g(5);
    for (int trial = 0; trial < 200; ++trial) {
      const auto idx =
          static_cast<std::int64_t>(g.next_below(static_cast<std::uint64_t>(w.size())));
      CHECK(w.index(w.unindex(idx)) == idx);
    }
  }
}

TEST_CASE("interior neighbor structure and walk symmetry") {
  const LatticeWindow w(3, 7);
  rng::SplitMix64 g(11);
  for (int trial = 0; trial < 50; ++trial) {
    LatticePoint p;
    for (int a = 0; a < 3; ++a)
      p.push_back(static_cast<std::int32_t>(g.next_below(5)) + w.low() + 1);
    const auto ns = neighbors(p, w);
    CHECK(ns.size() == 6);
    for (const auto& q : ns) {
      int diff_axes = 0, total = 0;
      for (int a = 0; a < 3; ++a) {
        const int d = std::abs(q[a] - p[a]);
        total += d;
        diff_axes += d != 0;
      }
      CHECK(diff_axes == 1);
      CHECK(total == 1);
      // a(x,y) = a(y,x): neighborhood is symmetric
      if (w.contains(q)) {
        const auto back = neighbors(q, w);
        CHECK(std::count(back.begin(), back.end(), p) == 1);
      }
    }
  }
}

TEST_CASE("neighbor_index agrees with coordinate neighbors") {
  const LatticeWindow w(3, 6);
  rng::SplitMix64 g(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto idx =
        static_cast<std::int64_t>(g.next_below(static_cast<std::uint64_t>(w.size())));
    const LatticePoint p = w.unindex(idx);
    for (int axis = 0; axis < 3; ++axis)
      for (int dir : {-1, 1}) {
        LatticePoint q = p;
        q[static_cast<std::size_t>(axis)] += dir;
        const std::int64_t nidx = w.neighbor_index(idx, axis, dir);
        if (w.contains(q))
          CHECK(nidx == w.index(q));
        else
          CHECK(nidx == -1);
      }
  }
}

TEST_CASE("index rejects outside points") {
  const LatticeWindow w(2, 5);
  CHECK_THROWS_AS(w.index({3, 0}), std::domain_error);
  CHECK_THROWS_AS(w.index({0}), std::domain_error);
  CHECK_THROWS_AS(w.unindex(25), std::domain_error);
  CHECK_THROWS_AS(w.unindex(-1), std::domain_error);
}
