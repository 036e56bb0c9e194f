#pragma once

#include <vector>

#include "wormnoc/traffic.hpp"

namespace wormnoc {

// Direct and indirect interference relations over a validated flow set,
// plus the upstream/downstream split of indirect interferers. Flows are
// keyed by their position in the set. Rebuilt per flow set; construction
// is O(n^2 * route length).
class InterferenceGraph {
 public:
  // Throws std::invalid_argument when validate(fs) reports problems.
  explicit InterferenceGraph(const FlowSet& fs);

  int size() const { return static_cast<int>(routes_.size()); }
  const FlowSet& flow_set() const { return *fs_; }
  const Route& route(int i) const { return routes_[i]; }

  // Higher-priority flows whose route shares at least one link with i.
  const std::vector<int>& direct_set(int i) const { return direct_[i]; }
  // Flows interfering with a direct interferer of i but not with i itself.
  const std::vector<int>& indirect_set(int i) const { return indirect_[i]; }

  // Links shared by flows i and j, ordered along route i (recomputed).
  Route contention(int i, int j) const;
  int contention_size(int i, int j) const;
  // 1-based position in route i of the first link shared with j;
  // 0 when the routes are disjoint.
  int first_shared_order(int i, int j) const;

  struct Partition {
    std::vector<int> upstream;
    std::vector<int> downstream;
  };
  // Splits the indirect interferers of i that also interfere with j by
  // whether they meet route j before or after j first meets i. Requires
  // j in direct_set(i); total for valid route sets.
  Partition updown_partition(int i, int j) const;

 private:
  int cell(int i, int j) const { return i * size() + j; }

  const FlowSet* fs_;
  std::vector<Route> routes_;
  std::vector<std::vector<int>> direct_;
  std::vector<std::vector<int>> indirect_;
  std::vector<int> cd_size_;   // n*n: |cd_ij|
  std::vector<int> cd_first_;  // n*n: order of first shared link in route i
};

}  // namespace wormnoc
