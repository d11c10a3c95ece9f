#include <catch2/catch_amalgamated.hpp>

#include "cloudsim/scenario.hpp"

using namespace cloudsim;

namespace {

json minimal_doc() {
  return json::parse(R"({
    "vnets": [
      {"id": "hub", "role": "hub", "trust": "internal"},
      {"id": "edge", "role": "spoke", "trust": "untrusted", "hub": "hub"},
      {"id": "corp", "role": "spoke", "trust": "trusted", "hub": "hub"}
    ],
    "nodes": [
      {"id": "fd", "kind": "front-door", "vnet": "edge"},
      {"id": "fw", "kind": "firewall", "vnet": "hub"},
      {"id": "c", "kind": "container-cluster", "vnet": "hub",
       "capacity_rps": 100.0,
       "deployments": [{"name": "m", "version": "v1", "replicas": 2}]}
    ],
    "links": [
      {"from": "fd", "to": "fw"},
      {"from": "fw", "to": "c"}
    ],
    "ingress": {"untrusted": "fd"},
    "workload": {
      "profile": "paper-locust",
      "host": "m",
      "target": "c",
      "trusted_fraction": 0.0,
      "source_pool": 16
    },
    "policies": {
      "firewall": {
        "threat_blocklist_ips": ["192.0.2.1"],
        "allow": [{"zone": "untrusted", "dst": "c"}]
      },
      "rate_limit": {"cap": 100, "window_s": 60},
      "autoscaler": {
        "scale_out_threshold": 0.7,
        "scale_in_threshold": 0.5,
        "min_replicas": 1,
        "max_replicas": 5
      }
    },
    "prices": {"book": "paper-2022", "provider": "aws", "storage_gb": 10.0},
    "compliance": {"enabled": ["TR15"], "budget_usd": 5.0}
  })");
}

}  // namespace

TEST_CASE("a well-formed scenario parses") {
  Scenario sc = parse_scenario(minimal_doc());
  CHECK(sc.graph.nodes.size() == 3);
  CHECK(sc.workload.target_node == "c");
  CHECK(sc.workload.profile.name == "paper-locust");
  CHECK(sc.firewall.blocklist_ips.count(0xc0000201u) == 1);
  CHECK(sc.rate_limit.enabled);
  CHECK(sc.rate_limit.cap == 100);
  CHECK(sc.provider == "aws");
  CHECK(sc.compliance.enabled == std::set<std::string>{"TR15"});
  CHECK_FALSE(sc.fingerprint.empty());
}

TEST_CASE("unknown keys are rejected at every level") {
  json doc = minimal_doc();
  doc["extra"] = 1;
  CHECK_THROWS_AS(parse_scenario(doc), SyntaxError);

  json doc2 = minimal_doc();
  doc2["policies"]["surprise"] = 1;
  CHECK_THROWS_AS(parse_scenario(doc2), SyntaxError);

  json doc3 = minimal_doc();
  doc3["workload"]["typo"] = 1;
  CHECK_THROWS_AS(parse_scenario(doc3), SyntaxError);
}

TEST_CASE("malformed addresses and references are rejected") {
  json doc = minimal_doc();
  doc["policies"]["firewall"]["threat_blocklist_ips"] = {"999.1.1.1"};
  CHECK_THROWS_AS(parse_scenario(doc), SyntaxError);

  json doc2 = minimal_doc();
  doc2["workload"]["target"] = "ghost";
  CHECK_THROWS_AS(parse_scenario(doc2), UnknownReferenceError);

  json doc3 = minimal_doc();
  doc3["policies"]["firewall"]["allow"][0]["dst"] = "ghost";
  CHECK_THROWS_AS(parse_scenario(doc3), UnknownReferenceError);
}

TEST_CASE("policy bounds are enforced") {
  json doc = minimal_doc();
  doc["policies"]["rate_limit"]["cap"] = 0;
  CHECK_THROWS_AS(parse_scenario(doc), SyntaxError);

  json doc2 = minimal_doc();
  doc2["policies"]["autoscaler"]["min_replicas"] = 9;
  CHECK_THROWS_AS(parse_scenario(doc2), SyntaxError);

  json doc3 = minimal_doc();
  doc3["policies"]["autoscaler"]["scale_in_threshold"] = 0.9;
  CHECK_THROWS_AS(parse_scenario(doc3), SyntaxError);

  json doc4 = minimal_doc();
  doc4["compliance"]["budget_usd"] = -1.0;
  CHECK_THROWS_AS(parse_scenario(doc4), SyntaxError);
}

TEST_CASE("unknown books and providers are rejected") {
  json doc = minimal_doc();
  doc["prices"]["book"] = "bargain-bin";
  CHECK_THROWS_AS(parse_scenario(doc), SyntaxError);

  json doc2 = minimal_doc();
  doc2["prices"]["provider"] = "oracle";
  CHECK_THROWS_AS(parse_scenario(doc2), SyntaxError);
}

TEST_CASE("fingerprint is stable for identical documents") {
  CHECK(parse_scenario(minimal_doc()).fingerprint ==
        parse_scenario(minimal_doc()).fingerprint);
  json doc = minimal_doc();
  doc["prices"]["storage_gb"] = 11.0;
  CHECK(parse_scenario(doc).fingerprint !=
        parse_scenario(minimal_doc()).fingerprint);
}

TEST_CASE("missing scenario files raise IoError") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/path.json"), IoError);
}
