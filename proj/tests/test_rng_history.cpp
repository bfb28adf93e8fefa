#include <doctest.h>

#include <set>

#include "mgedge/history.hpp"
#include "mgedge/rng.hpp"

using namespace mgedge;

TEST_CASE("splitmix64 streams are deterministic and independent of creation order") {
  SplitMix64 a(derive_seed(42, 3));
  SplitMix64 b(derive_seed(42, 3));
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  SplitMix64 c(derive_seed(42, 4));
  CHECK(SplitMix64(derive_seed(42, 3)).next() != c.next());
}

TEST_CASE("uniform01 stays in [0,1) and is roughly centered") {
  SplitMix64 rng(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("next_below covers the full range without bias at small bounds") {
  SplitMix64 rng(99);
  int counts[7] = {0};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[rng.next_below(7)];
  for (int k = 0; k < 7; ++k) {
    CHECK(counts[k] > draws / 7 - 600);
    CHECK(counts[k] < draws / 7 + 600);
  }
}

TEST_CASE("derive_seed separates nearby roots and streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t root = 0; root < 50; ++root) {
    for (std::uint64_t stream = 0; stream < 50; ++stream) {
      seen.insert(derive_seed(root, stream));
    }
  }
  CHECK(seen.size() == 2500);
}

TEST_CASE("history keeps at most capacity entries, newest in bit 0") {
  WinHistory h(3);
  CHECK(h.size() == 0);
  h.push(Action::Active);    // 1
  h.push(Action::Inactive);  // 10
  CHECK(h.size() == 2);
  CHECK(h.recent(0) == Action::Inactive);
  CHECK(h.recent(1) == Action::Active);
  CHECK(h.encode(2) == 0b10);

  h.push(Action::Active);  // 101
  h.push(Action::Active);  // 011 after dropping the oldest
  CHECK(h.size() == 3);
  CHECK(h.encode(3) == 0b011);
  CHECK(h.encode(1) == 1);
  CHECK(h.encode(0) == 0);
}

TEST_CASE("history rejects requests beyond its contents") {
  WinHistory h(4);
  h.push(Action::Active);
  CHECK_THROWS_AS(h.encode(2), std::invalid_argument);
  CHECK_THROWS_AS(h.recent(1), std::invalid_argument);
  CHECK_THROWS_AS(WinHistory(-1), std::invalid_argument);
}

TEST_CASE("zero-capacity history stays empty") {
  WinHistory h(0);
  h.push(Action::Active);
  h.push(Action::Inactive);
  CHECK(h.size() == 0);
  CHECK(h.encode(0) == 0);
}
