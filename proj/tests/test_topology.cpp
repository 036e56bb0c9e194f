#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "wormnoc/topology.hpp"

using namespace wormnoc;

TEST_CASE("build_mesh rejects non-positive parameters") {
  CHECK_THROWS_AS(build_mesh(0, 1, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(1, 0, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(2, 2, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(2, 2, 1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(2, 2, 1, 1, 0), std::invalid_argument);
  CHECK(build_mesh(1, 1, 1, 1, 1).node_count() == 1);
}

TEST_CASE("mesh link census") {
  // per node one injection and one ejection; per grid edge two directions
  const Topology t44 = build_mesh(4, 4, 2, 8, 1);
  const auto links44 = mesh_links(t44);
  CHECK(links44.size() == 80);  // 32 core links + 2*24 router links
  int rr = 0, inject = 0, eject = 0;
  for (const Link& l : links44) {
    if (l.kind == LinkKind::RouterToRouter) ++rr;
    if (l.kind == LinkKind::CoreToRouter) ++inject;
    if (l.kind == LinkKind::RouterToCore) ++eject;
  }
  CHECK(rr == 48);
  CHECK(inject == 16);
  CHECK(eject == 16);

  const Topology t31 = build_mesh(3, 1, 2, 8, 1);
  CHECK(mesh_links(t31).size() == 10);

  // no duplicates
  std::set<Link> unique(links44.begin(), links44.end());
  CHECK(unique.size() == links44.size());
}

TEST_CASE("xy routes have deterministic shape") {
  const Topology topo = build_mesh(4, 4, 2, 8, 1);
  const auto links = mesh_links(topo);
  const std::set<Link> link_set(links.begin(), links.end());

  for (int sx = 0; sx < 4; ++sx)
    for (int sy = 0; sy < 4; ++sy)
      for (int dx = 0; dx < 4; ++dx)
        for (int dy = 0; dy < 4; ++dy) {
          const Coord src{sx, sy}, dst{dx, dy};
          if (src == dst) {
            CHECK_THROWS_AS(xy_route(topo, src, dst), std::invalid_argument);
            continue;
          }
          const Route r = xy_route(topo, src, dst);
          CHECK(r.size() ==
                2 + std::abs(sx - dx) + std::abs(sy - dy));
          CHECK(r.front().kind == LinkKind::CoreToRouter);
          CHECK(r.front().src == src);
          CHECK(r.back().kind == LinkKind::RouterToCore);
          CHECK(r.back().dst == dst);
          // x settles before y moves, and hops chain up
          bool seen_y = false;
          Coord cur = src;
          for (std::size_t i = 1; i + 1 < r.size(); ++i) {
            CHECK(r[i].src == cur);
            if (r[i].src.y != r[i].dst.y) seen_y = true;
            if (seen_y) CHECK(r[i].src.x == r[i].dst.x);
            cur = r[i].dst;
          }
          CHECK(cur == dst);
          // every hop is a real mesh link, none repeats
          std::set<Link> seen;
          for (const Link& l : r) {
            CHECK(link_set.count(l) == 1);
            CHECK(seen.insert(l).second);
          }
        }
}

TEST_CASE("xy_route rejects endpoints outside the mesh") {
  const Topology topo = build_mesh(2, 2, 1, 1, 1);
  CHECK_THROWS_AS(xy_route(topo, {0, 0}, {2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(xy_route(topo, {-1, 0}, {1, 0}), std::invalid_argument);
}

TEST_CASE("contention domain is ordered along the first route") {
  const Topology topo = build_mesh(4, 4, 2, 8, 1);
  const Route a = xy_route(topo, {0, 0}, {3, 2});
  const Route b = xy_route(topo, {1, 0}, {3, 1});

  const Route ab = contention_domain(a, b);
  const Route ba = contention_domain(b, a);
  CHECK(ab.size() == ba.size());
  for (std::size_t i = 0; i + 1 < ab.size(); ++i)
    CHECK(link_order(ab[i], a) < link_order(ab[i + 1], a));
  for (const Link& l : ab) {
    CHECK(std::find(a.begin(), a.end(), l) != a.end());
    CHECK(std::find(b.begin(), b.end(), l) != b.end());
  }

  CHECK(contention_domain(a, a).size() == a.size());
  const Route far = xy_route(topo, {0, 3}, {1, 3});
  CHECK(contention_domain(a, far).empty());
}

TEST_CASE("link_order is one-based and strict") {
  const Topology topo = build_mesh(3, 1, 2, 8, 1);
  const Route r = xy_route(topo, {0, 0}, {2, 0});
  CHECK(r.size() == 4);
  CHECK(link_order(r.front(), r) == 1);
  CHECK(link_order(r.back(), r) == 4);
  const Link absent{LinkKind::RouterToRouter, {2, 0}, {1, 0}};
  CHECK_THROWS_AS(link_order(absent, r), std::invalid_argument);
}

TEST_CASE("link and coord formatting") {
  CHECK(to_string(Coord{2, 1}) == "(2,1)");
  CHECK(to_string(Link{LinkKind::CoreToRouter, {0, 0}, {0, 0}}) ==
        "c(0,0)->r(0,0)");
  CHECK(to_string(Link{LinkKind::RouterToRouter, {0, 0}, {1, 0}}) ==
        "r(0,0)->r(1,0)");
  CHECK(to_string(Link{LinkKind::RouterToCore, {1, 0}, {1, 0}}) ==
        "r(1,0)->c(1,0)");
}
