#include "wormnoc/flowgen.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "wormnoc/rng.hpp"

namespace wormnoc {

FlowSet generate(const GenParams& p) {
  if (p.flows < 1)
    throw std::invalid_argument("flow count must be at least 1");
  if (p.period_min < 1 || p.period_min > p.period_max)
    throw std::invalid_argument("empty or nonpositive period range");
  if (p.length_min < 1 || p.length_min > p.length_max)
    throw std::invalid_argument("empty or nonpositive length range");

  const int vc = p.vc_count > 0 ? p.vc_count : p.flows;
  FlowSet fs;
  fs.topology = build_mesh(p.columns, p.rows, p.buf, vc, p.link_latency);
  const int nodes = fs.topology.node_count();
  if (nodes < 2)
    throw std::invalid_argument("mesh needs at least two nodes (src != dst)");

  SplitMix64 rng(p.seed);
  fs.flows.reserve(p.flows);
  for (int i = 0; i < p.flows; ++i) {
    Flow f;
    f.id = "f" + std::to_string(i + 1);
    f.period = rng.between(p.period_min, p.period_max);
    f.deadline = f.period;
    f.length = rng.between(p.length_min, p.length_max);
    f.jitter = 0;
    const int s = static_cast<int>(rng.below(nodes));
    int d = static_cast<int>(rng.below(nodes - 1));
    if (d >= s) ++d;  // skip src without a rejection loop
    f.src = {s % p.columns, s / p.columns};
    f.dst = {d % p.columns, d / p.columns};
    fs.flows.push_back(std::move(f));
  }

  // Rate-monotonic: shorter period = higher priority (smaller value);
  // stable sort breaks ties by generation order.
  std::vector<int> idx(fs.flows.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return fs.flows[a].period < fs.flows[b].period;
  });
  for (std::size_t rank = 0; rank < idx.size(); ++rank)
    fs.flows[idx[rank]].priority = static_cast<int>(rank) + 1;
  return fs;
}

}  // namespace wormnoc
