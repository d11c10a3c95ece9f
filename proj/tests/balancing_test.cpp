#include <catch2/catch_amalgamated.hpp>

#include "cloudsim/balancing.hpp"

using namespace cloudsim;

namespace {

Request req(std::uint32_t ip, Protocol proto = Protocol::kTcp) {
  Request r;
  r.src_ip = ip;
  r.dst_node = "ml-cluster";
  r.protocol = proto;
  return r;
}

}  // namespace

TEST_CASE("tuple hashes are frozen") {
  // Frozen against an independent Python implementation.
  CHECK(tuple_hash(0x0a000001, "ml-cluster", Protocol::kTcp, false) ==
        0x07db550985a15a9bULL);
  CHECK(tuple_hash(0x0a000001, "ml-cluster", Protocol::kTcp, true) ==
        0x98ac6391e0b319a7ULL);
}

TEST_CASE("two-tuple ignores the protocol, three-tuple does not") {
  CHECK(tuple_hash(1, "x", Protocol::kTcp, false) ==
        tuple_hash(1, "x", Protocol::kUdp, false));
  CHECK(tuple_hash(1, "x", Protocol::kTcp, true) !=
        tuple_hash(1, "x", Protocol::kUdp, true));
}

TEST_CASE("tuple-hash picks persist while the pool is stable") {
  BackendPool pool({"b0", "b1", "b2", "b3"}, BalancingPolicy::kTupleHash3);
  for (std::uint32_t ip = 1; ip <= 200; ++ip) {
    std::string first = pool.pick_backend(req(ip));
    for (int rep = 0; rep < 10; ++rep) {
      CHECK(pool.pick_backend(req(ip)) == first);
    }
  }
}

TEST_CASE("round robin cycles over the sorted healthy list") {
  BackendPool pool({"c", "a", "b"}, BalancingPolicy::kRoundRobin);
  Request r = req(1);
  CHECK(pool.pick_backend(r) == "a");
  CHECK(pool.pick_backend(r) == "b");
  CHECK(pool.pick_backend(r) == "c");
  CHECK(pool.pick_backend(r) == "a");
}

TEST_CASE("an all-down pool is an error") {
  BackendPool pool({"a", "b"}, BalancingPolicy::kTupleHash3);
  pool.set_health("a", false);
  pool.set_health("b", false);
  CHECK_THROWS_AS(pool.pick_backend(req(1)), NoHealthyBackendError);
}

TEST_CASE("membership change remaps a fraction and then persists again") {
  BackendPool pool({"b0", "b1", "b2", "b3"}, BalancingPolicy::kTupleHash3);
  std::map<std::uint32_t, std::string> before;
  for (std::uint32_t ip = 1; ip <= 500; ++ip) {
    before[ip] = pool.pick_backend(req(ip));
  }
  pool.remove_member("b3");
  int remapped = 0;
  for (std::uint32_t ip = 1; ip <= 500; ++ip) {
    std::string now = pool.pick_backend(req(ip));
    if (now != before[ip]) ++remapped;
    CHECK(pool.pick_backend(req(ip)) == now);  // stable post-change
  }
  // Plain modulo remaps far more than the 1/4 a consistent hash would.
  CHECK(remapped > 125);
}

TEST_CASE("probe follows outage intervals as half-open") {
  BackendPool pool({"a"}, BalancingPolicy::kTupleHash3);
  std::map<std::string, std::vector<OutageInterval>> outages;
  outages["a"] = {{"a", 100, 200}};
  pool.probe(outages, 99);
  CHECK(pool.healthy("a"));
  pool.probe(outages, 100);
  CHECK_FALSE(pool.healthy("a"));
  pool.probe(outages, 199);
  CHECK_FALSE(pool.healthy("a"));
  pool.probe(outages, 200);
  CHECK(pool.healthy("a"));
}

TEST_CASE("policy names parse") {
  CHECK(balancing_policy_from_string("round-robin") ==
        BalancingPolicy::kRoundRobin);
  CHECK(balancing_policy_from_string("tuple-hash-2") ==
        BalancingPolicy::kTupleHash2);
  CHECK(balancing_policy_from_string("tuple-hash-3") ==
        BalancingPolicy::kTupleHash3);
  CHECK_THROWS_AS(balancing_policy_from_string("least-conn"), SyntaxError);
}
