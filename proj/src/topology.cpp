#include "wormnoc/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace wormnoc {

std::string to_string(const Coord& c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

std::string to_string(const Link& l) {
  switch (l.kind) {
    case LinkKind::CoreToRouter:
      return "c" + to_string(l.src) + "->r" + to_string(l.dst);
    case LinkKind::RouterToCore:
      return "r" + to_string(l.src) + "->c" + to_string(l.dst);
    case LinkKind::RouterToRouter:
      break;
  }
  return "r" + to_string(l.src) + "->r" + to_string(l.dst);
}

Topology build_mesh(int columns, int rows, int buf, int vc_count,
                    int link_latency) {
  if (columns < 1 || rows < 1)
    throw std::invalid_argument("mesh dimensions must be at least 1x1");
  if (buf < 1)
    throw std::invalid_argument("buffer depth must be at least one flit");
  if (vc_count < 1)
    throw std::invalid_argument("virtual-channel count must be at least 1");
  if (link_latency < 1)
    throw std::invalid_argument("link latency must be at least one cycle");
  return Topology{columns, rows, buf, vc_count, link_latency};
}

std::vector<Link> mesh_links(const Topology& topo) {
  std::vector<Link> links;
  links.reserve(static_cast<std::size_t>(topo.node_count()) * 6);
  for (int y = 0; y < topo.rows; ++y) {
    for (int x = 0; x < topo.columns; ++x) {
      const Coord c{x, y};
      links.push_back({LinkKind::CoreToRouter, c, c});
      links.push_back({LinkKind::RouterToCore, c, c});
    }
  }
  for (int y = 0; y < topo.rows; ++y) {
    for (int x = 0; x < topo.columns; ++x) {
      const Coord c{x, y};
      if (x + 1 < topo.columns) {
        links.push_back({LinkKind::RouterToRouter, c, {x + 1, y}});
        links.push_back({LinkKind::RouterToRouter, {x + 1, y}, c});
      }
      if (y + 1 < topo.rows) {
        links.push_back({LinkKind::RouterToRouter, c, {x, y + 1}});
        links.push_back({LinkKind::RouterToRouter, {x, y + 1}, c});
      }
    }
  }
  return links;
}

Route xy_route(const Topology& topo, Coord src, Coord dst) {
  if (!topo.contains(src) || !topo.contains(dst))
    throw std::invalid_argument("route endpoints must lie inside the mesh");
  if (src == dst)
    throw std::invalid_argument("zero-length routes are not modeled");
  Route route;
  route.push_back({LinkKind::CoreToRouter, src, src});
  Coord cur = src;
  while (cur.x != dst.x) {
    const Coord next{cur.x + (dst.x > cur.x ? 1 : -1), cur.y};
    route.push_back({LinkKind::RouterToRouter, cur, next});
    cur = next;
  }
  while (cur.y != dst.y) {
    const Coord next{cur.x, cur.y + (dst.y > cur.y ? 1 : -1)};
    route.push_back({LinkKind::RouterToRouter, cur, next});
    cur = next;
  }
  route.push_back({LinkKind::RouterToCore, dst, dst});
  return route;
}

Route contention_domain(const Route& a, const Route& b) {
  Route sorted_b = b;
  std::sort(sorted_b.begin(), sorted_b.end());
  Route shared;
  for (const Link& l : a)
    if (std::binary_search(sorted_b.begin(), sorted_b.end(), l))
      shared.push_back(l);
  return shared;
}

int link_order(const Link& link, const Route& route) {
  for (std::size_t i = 0; i < route.size(); ++i)
    if (route[i] == link) return static_cast<int>(i) + 1;
  throw std::invalid_argument("link " + to_string(link) +
                              " is not part of the route");
}

}  // namespace wormnoc
