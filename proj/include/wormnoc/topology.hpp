#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace wormnoc {

// All times are in cycles.
using Cycles = std::int64_t;

// Grid position of a node. x counts columns, y counts rows.
struct Coord {
  int x = 0;
  int y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

std::string to_string(const Coord& c);

enum class LinkKind : std::uint8_t {
  CoreToRouter,
  RouterToRouter,
  RouterToCore,
};

// Unidirectional link, identified structurally by kind and endpoints.
// Core<->router links reuse the grid coordinate of their node.
struct Link {
  LinkKind kind = LinkKind::RouterToRouter;
  Coord src;
  Coord dst;
  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};

std::string to_string(const Link& l);

// Totally ordered link sequence: one injection link, zero or more
// router-to-router hops, one ejection link. Never empty, no repeats.
using Route = std::vector<Link>;

// Homogeneous 2D mesh. Every router has the same virtual-channel count,
// per-VC buffer depth and link latency; one VC per priority level.
struct Topology {
  int columns = 1;
  int rows = 1;
  int buf = 1;           // flits per virtual-channel buffer
  int vc_count = 1;      // virtual channels, i.e. priority levels supported
  int link_latency = 1;  // cycles per flit per link

  int node_count() const { return columns * rows; }
  bool contains(Coord c) const {
    return c.x >= 0 && c.x < columns && c.y >= 0 && c.y < rows;
  }
};

// Throws std::invalid_argument unless all parameters are >= 1.
Topology build_mesh(int columns, int rows, int buf, int vc_count,
                    int link_latency);

// Every link of the mesh: injection and ejection per node, plus both
// directions between grid-adjacent routers.
std::vector<Link> mesh_links(const Topology& topo);

// Deterministic dimension-ordered route: all X hops, then all Y hops,
// bracketed by the injection and ejection links. src == dst is an error.
Route xy_route(const Topology& topo, Coord src, Coord dst);

// Links shared by both routes, ordered by their position in `a`.
Route contention_domain(const Route& a, const Route& b);

// 1-based position of a link along a route; throws if absent.
int link_order(const Link& link, const Route& route);

inline const Link& first_link(const Route& r) { return r.front(); }
inline const Link& last_link(const Route& r) { return r.back(); }

}  // namespace wormnoc
