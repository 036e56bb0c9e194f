#include "wormnoc/interference.hpp"

#include <algorithm>
#include <stdexcept>

namespace wormnoc {

InterferenceGraph::InterferenceGraph(const FlowSet& fs) : fs_(&fs) {
  const auto problems = validate(fs);
  if (!problems.empty())
    throw std::invalid_argument("flow set is not analyzable: " +
                                problems.front());
  const int n = static_cast<int>(fs.flows.size());
  routes_.reserve(n);
  for (const Flow& f : fs.flows)
    routes_.push_back(xy_route(fs.topology, f.src, f.dst));

  cd_size_.assign(static_cast<std::size_t>(n) * n, 0);
  cd_first_.assign(static_cast<std::size_t>(n) * n, 0);
  std::vector<Route> sorted(routes_);
  for (Route& r : sorted) std::sort(r.begin(), r.end());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int count = 0;
      int first = 0;
      for (std::size_t pos = 0; pos < routes_[i].size(); ++pos) {
        if (std::binary_search(sorted[j].begin(), sorted[j].end(),
                               routes_[i][pos])) {
          ++count;
          if (first == 0) first = static_cast<int>(pos) + 1;
        }
      }
      cd_size_[cell(i, j)] = count;
      cd_first_[cell(i, j)] = first;
    }
  }

  direct_.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && fs.flows[j].priority < fs.flows[i].priority &&
          cd_size_[cell(i, j)] > 0)
        direct_[i].push_back(j);

  indirect_.assign(n, {});
  std::vector<char> in_direct(n, 0), seen(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j : direct_[i]) in_direct[j] = 1;
    for (int j : direct_[i]) {
      for (int k : direct_[j]) {
        if (k == i || in_direct[k] || seen[k]) continue;
        seen[k] = 1;
        indirect_[i].push_back(k);
      }
    }
    for (int j : direct_[i]) in_direct[j] = 0;
    for (int k : indirect_[i]) seen[k] = 0;
    std::sort(indirect_[i].begin(), indirect_[i].end());
  }
}

Route InterferenceGraph::contention(int i, int j) const {
  return contention_domain(routes_[i], routes_[j]);
}

int InterferenceGraph::contention_size(int i, int j) const {
  return cd_size_[cell(i, j)];
}

int InterferenceGraph::first_shared_order(int i, int j) const {
  return cd_first_[cell(i, j)];
}

InterferenceGraph::Partition InterferenceGraph::updown_partition(int i,
                                                                 int j) const {
  const auto& dj = direct_[j];
  if (!std::binary_search(direct_[i].begin(), direct_[i].end(), j))
    throw std::invalid_argument(
        "upstream/downstream split requires a direct interferer");
  Partition part;
  // Position along route j where j first meets the victim i; indirect
  // interferers of i are upstream or downstream of that point.
  const int pivot = cd_first_[cell(j, i)];
  for (int k : indirect_[i]) {
    if (!std::binary_search(dj.begin(), dj.end(), k)) continue;
    const int pos = cd_first_[cell(j, k)];
    if (pos < pivot) {
      part.upstream.push_back(k);
    } else if (pos > pivot) {
      part.downstream.push_back(k);
    } else {
      // Sharing the pivot link would make k a direct interferer of i.
      throw std::logic_error(
          "upstream/downstream split is not total: indirect interferer "
          "meets the interferer exactly where the victim does");
    }
  }
  return part;
}

}  // namespace wormnoc
