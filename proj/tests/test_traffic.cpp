#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "wormnoc/fixtures.hpp"
#include "wormnoc/traffic.hpp"

using namespace wormnoc;

namespace {

Flow stub(Coord src, Coord dst, Cycles length) {
  Flow f;
  f.id = "s";
  f.length = length;
  f.period = 1000;
  f.deadline = 1000;
  f.src = src;
  f.dst = dst;
  return f;
}

bool mentions(const std::vector<std::string>& problems,
              const std::string& text) {
  for (const std::string& p : problems)
    if (p.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("no-load latency equals length plus pipeline fill") {
  const Topology t31 = build_mesh(3, 1, 2, 8, 1);
  const Topology t44 = build_mesh(4, 4, 2, 8, 1);

  // route |r| = 2 + hops; C = (L + |r| - 1) * linkl
  CHECK(no_load_latency(stub({0, 0}, {1, 0}, 12), t31) == 14);
  CHECK(no_load_latency(stub({1, 0}, {2, 0}, 50), t31) == 52);
  CHECK(no_load_latency(stub({0, 0}, {2, 0}, 100), t31) == 103);
  CHECK(no_load_latency(stub({0, 0}, {1, 1}, 27), t44) == 30);
  CHECK(no_load_latency(stub({3, 1}, {3, 2}, 28), t44) == 30);
  CHECK(no_load_latency(stub({0, 0}, {3, 2}, 144), t44) == 150);
  CHECK(no_load_latency(stub({2, 2}, {3, 2}, 98), t44) == 100);
  CHECK(no_load_latency(stub({1, 0}, {3, 1}, 96), t44) == 100);
  CHECK(no_load_latency(stub({3, 1}, {3, 2}, 60), t44) == 62);
  CHECK(no_load_latency(stub({0, 0}, {3, 2}, 198), t44) == 204);
  CHECK(no_load_latency(stub({1, 0}, {3, 1}, 128), t44) == 132);

  const Topology slow = build_mesh(3, 1, 2, 8, 4);
  CHECK(no_load_latency(stub({0, 0}, {1, 0}, 12), slow) == 14 * 4);
}

TEST_CASE("no-load latency is strictly monotone in length and distance") {
  const Topology topo = build_mesh(8, 8, 2, 8, 1);
  Cycles prev = 0;
  for (Cycles len = 1; len <= 40; ++len) {
    const Cycles c = no_load_latency(stub({0, 0}, {1, 0}, len), topo);
    CHECK(c > prev);
    prev = c;
  }
  prev = 0;
  for (int x = 1; x < 8; ++x) {
    const Cycles c = no_load_latency(stub({0, 0}, {x, 7}, 64), topo);
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("bundled examples validate clean") {
  for (const std::string& name : example_names())
    CHECK(validate(example_bundle(name).flowset).empty());
}

TEST_CASE("validate reports model violations") {
  FlowSet fs;
  fs.topology = build_mesh(4, 4, 2, 8, 1);

  SUBCASE("duplicate priorities list the members") {
    Flow a = stub({0, 0}, {1, 0}, 8);
    a.id = "a";
    a.priority = 3;
    Flow b = stub({2, 0}, {3, 0}, 8);
    b.id = "b";
    b.priority = 3;
    fs.flows = {a, b};
    const auto problems = validate(fs);
    CHECK(mentions(problems, "duplicate priority 3"));
    CHECK(mentions(problems, "a, b"));
  }

  SUBCASE("deadline beyond period") {
    Flow f = stub({0, 0}, {1, 0}, 8);
    f.deadline = 2 * f.period;
    fs.flows = {f};
    CHECK(mentions(validate(fs), "deadline exceeds period"));
  }

  SUBCASE("degenerate flows") {
    Flow f = stub({0, 0}, {0, 0}, 0);
    f.period = -5;
    f.jitter = -1;
    fs.flows = {f};
    const auto problems = validate(fs);
    CHECK(mentions(problems, "nonpositive period"));
    CHECK(mentions(problems, "nonpositive packet length"));
    CHECK(mentions(problems, "src equals dst"));
    CHECK(mentions(problems, "negative jitter"));
  }

  SUBCASE("endpoints outside the mesh") {
    fs.flows = {stub({0, 0}, {4, 0}, 8)};
    CHECK(mentions(validate(fs), "endpoint outside the mesh"));
  }

  SUBCASE("more priority levels than virtual channels") {
    fs.topology.vc_count = 1;
    Flow a = stub({0, 0}, {1, 0}, 8);
    a.id = "a";
    a.priority = 1;
    Flow b = stub({2, 0}, {3, 0}, 8);
    b.id = "b";
    b.priority = 2;
    fs.flows = {a, b};
    CHECK(mentions(validate(fs), "virtual channels"));
  }

  SUBCASE("empty flow list is fine") { CHECK(validate(fs).empty()); }
}

TEST_CASE("flowset json round-trips") {
  const FlowSet fs = example_bundle("example2").flowset;
  std::stringstream buf;
  save_flowset(fs, buf);
  const FlowSet back = load_flowset(buf);

  CHECK(back.topology.columns == fs.topology.columns);
  CHECK(back.topology.rows == fs.topology.rows);
  CHECK(back.topology.buf == fs.topology.buf);
  CHECK(back.topology.vc_count == fs.topology.vc_count);
  CHECK(back.topology.link_latency == fs.topology.link_latency);
  REQUIRE(back.flows.size() == fs.flows.size());
  for (std::size_t i = 0; i < fs.flows.size(); ++i) {
    CHECK(back.flows[i].id == fs.flows[i].id);
    CHECK(back.flows[i].priority == fs.flows[i].priority);
    CHECK(back.flows[i].length == fs.flows[i].length);
    CHECK(back.flows[i].period == fs.flows[i].period);
    CHECK(back.flows[i].deadline == fs.flows[i].deadline);
    CHECK(back.flows[i].jitter == fs.flows[i].jitter);
    CHECK(back.flows[i].src == fs.flows[i].src);
    CHECK(back.flows[i].dst == fs.flows[i].dst);
  }
}

TEST_CASE("flowset loader flags malformed input") {
  std::stringstream garbage("{ not json");
  CHECK_THROWS_AS(load_flowset(garbage), std::runtime_error);

  std::stringstream missing(R"({"topology": {"cols": 2}, "flows": []})");
  CHECK_THROWS_AS(load_flowset(missing), std::runtime_error);

  std::stringstream ok(
      R"({"topology": {"cols": 2, "rows": 1, "buf": 2, "vc": 4},
          "flows": [{"id": "x", "priority": 1, "length_flits": 5,
                     "period": 100, "deadline": 90,
                     "src": [0, 0], "dst": [1, 0]}]})");
  const FlowSet fs = load_flowset(ok);
  CHECK(fs.topology.link_latency == 1);  // optional, defaulted
  REQUIRE(fs.flows.size() == 1);
  CHECK(fs.flows[0].jitter == 0);  // optional, defaulted
  CHECK(fs.flows[0].deadline == 90);
}

TEST_CASE("find and index_of") {
  const FlowSet fs = example_bundle("example1").flowset;
  CHECK(fs.index_of("t8") == 2);
  CHECK(fs.index_of("nope") == -1);
  REQUIRE(fs.find("t9") != nullptr);
  CHECK(fs.find("t9")->priority == 4);
  CHECK(fs.find("nope") == nullptr);
}
