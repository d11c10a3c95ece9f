#include <catch2/catch_amalgamated.hpp>

#include "cloudsim/rng.hpp"

using namespace cloudsim;

TEST_CASE("mix64 matches the reference finalizer") {
  // Frozen against an independent Python implementation.
  CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(mix64(1) == 0x910a2dec89025cc1ULL);
}

TEST_CASE("fnv1a64 matches the reference constants") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("arrivals") == 0xb10bc22ca203cc53ULL);
}

TEST_CASE("stream draws are frozen per (seed, label)") {
  RngStream s(42, "arrivals");
  CHECK(s.next_u64() == 0x297f29f6239a8e3dULL);
  CHECK(s.next_u64() == 0x67e876447ca233e2ULL);
  CHECK(s.next_u64() == 0x2b2e94d358589083ULL);
}

TEST_CASE("next_double is uniform in [0, 1) and frozen") {
  RngStream s(42, "arrivals");
  CHECK(s.next_double() == Catch::Approx(0.16209661731009295).epsilon(1e-15));
  for (int i = 0; i < 1000; ++i) {
    double v = s.next_double();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("same label reproduces, different label diverges") {
  RngStream a(7, "canary");
  RngStream b(7, "canary");
  RngStream c(7, "sources");
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t va = a.next_u64();
    all_equal = all_equal && va == b.next_u64();
    any_diff = any_diff || va != c.next_u64();
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("empty label is rejected") {
  CHECK_THROWS_AS(RngStream(1, ""), EmptyLabelError);
}

TEST_CASE("exponential draws have roughly the requested mean") {
  RngStream s(3, "failures/x");
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += s.next_exponential(2.0);
  CHECK(sum / n == Catch::Approx(2.0).margin(0.05));
}

TEST_CASE("next_below stays below the bound") {
  RngStream s(9, "draws");
  for (int i = 0; i < 1000; ++i) {
    CHECK(s.next_below(7) < 7);
  }
}
