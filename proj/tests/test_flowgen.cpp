#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "wormnoc/flowgen.hpp"

using namespace wormnoc;

TEST_CASE("generation is deterministic per seed") {
  GenParams p;
  p.flows = 50;
  p.seed = 42;
  const FlowSet a = generate(p);
  const FlowSet b = generate(p);
  REQUIRE(a.flows.size() == 50);
  REQUIRE(b.flows.size() == 50);
  for (std::size_t i = 0; i < a.flows.size(); ++i) {
    CHECK(a.flows[i].id == b.flows[i].id);
    CHECK(a.flows[i].priority == b.flows[i].priority);
    CHECK(a.flows[i].period == b.flows[i].period);
    CHECK(a.flows[i].length == b.flows[i].length);
    CHECK(a.flows[i].src == b.flows[i].src);
    CHECK(a.flows[i].dst == b.flows[i].dst);
  }

  p.seed = 43;
  const FlowSet c = generate(p);
  bool any_difference = false;
  for (std::size_t i = 0; i < c.flows.size(); ++i)
    if (c.flows[i].period != a.flows[i].period) any_difference = true;
  CHECK(any_difference);
}

TEST_CASE("priorities are rate-monotonic with generation-order ties") {
  for (std::uint64_t seed : {1ULL, 9ULL, 77ULL}) {
    CAPTURE(seed);
    GenParams p;
    p.flows = 200;
    p.seed = seed;
    // A deliberately narrow period range forces ties.
    p.period_min = 100;
    p.period_max = 120;
    const FlowSet fs = generate(p);

    std::vector<const Flow*> by_priority;
    for (const Flow& f : fs.flows) by_priority.push_back(&f);
    std::sort(by_priority.begin(), by_priority.end(),
              [](const Flow* a, const Flow* b) {
                return a->priority < b->priority;
              });
    std::set<int> priorities;
    for (const Flow* f : by_priority) priorities.insert(f->priority);
    CHECK(priorities.size() == fs.flows.size());
    CHECK(*priorities.begin() == 1);
    CHECK(*priorities.rbegin() == static_cast<int>(fs.flows.size()));

    for (std::size_t i = 1; i < by_priority.size(); ++i) {
      const Flow* prev = by_priority[i - 1];
      const Flow* cur = by_priority[i];
      CHECK(prev->period <= cur->period);
      if (prev->period == cur->period) {
        // Generation order is the id suffix.
        const int gen_prev = std::stoi(prev->id.substr(1));
        const int gen_cur = std::stoi(cur->id.substr(1));
        CHECK(gen_prev < gen_cur);
      }
    }
  }
}

TEST_CASE("draws cover their ranges uniformly") {
  GenParams p;
  p.flows = 100'000;
  p.seed = 7;
  const FlowSet fs = generate(p);

  long double period_sum = 0, length_sum = 0;
  Cycles period_lo = fs.flows[0].period, period_hi = fs.flows[0].period;
  Cycles length_lo = fs.flows[0].length, length_hi = fs.flows[0].length;
  std::set<std::pair<int, int>> sources;
  for (const Flow& f : fs.flows) {
    period_sum += f.period;
    length_sum += f.length;
    period_lo = std::min(period_lo, f.period);
    period_hi = std::max(period_hi, f.period);
    length_lo = std::min(length_lo, f.length);
    length_hi = std::max(length_hi, f.length);
    sources.insert({f.src.x, f.src.y});
    CHECK(f.period >= p.period_min);
    CHECK(f.period <= p.period_max);
    CHECK(f.length >= p.length_min);
    CHECK(f.length <= p.length_max);
  }
  const long double period_mid = (p.period_min + p.period_max) / 2.0L;
  const long double length_mid = (p.length_min + p.length_max) / 2.0L;
  CHECK(period_sum / p.flows > period_mid * 0.98L);
  CHECK(period_sum / p.flows < period_mid * 1.02L);
  CHECK(length_sum / p.flows > length_mid * 0.98L);
  CHECK(length_sum / p.flows < length_mid * 1.02L);
  // Range edges are reachable and every node sources traffic somewhere.
  CHECK(period_lo < p.period_min + (p.period_max - p.period_min) / 100);
  CHECK(period_hi > p.period_max - (p.period_max - p.period_min) / 100);
  CHECK(length_lo == p.length_min);
  CHECK(length_hi == p.length_max);
  CHECK(sources.size() == 16);
}

TEST_CASE("generated sets satisfy the traffic model") {
  for (int n : {1, 10, 100}) {
    CAPTURE(n);
    GenParams p;
    p.flows = n;
    p.seed = 3;
    const FlowSet fs = generate(p);
    CHECK(validate(fs).empty());
    REQUIRE(static_cast<int>(fs.flows.size()) == n);
    for (int i = 0; i < n; ++i) {
      const Flow& f = fs.flows[i];
      CHECK(f.id == "f" + std::to_string(i + 1));
      CHECK(f.deadline == f.period);
      CHECK(f.jitter == 0);
      CHECK(f.src != f.dst);
      CHECK(fs.topology.contains(f.src));
      CHECK(fs.topology.contains(f.dst));
    }
    // One virtual channel per flow unless a count is forced.
    CHECK(fs.topology.vc_count == n);
  }

  GenParams forced;
  forced.flows = 4;
  forced.vc_count = 9;
  CHECK(generate(forced).topology.vc_count == 9);

  GenParams one;
  one.flows = 1;
  const FlowSet solo = generate(one);
  CHECK(solo.flows[0].priority == 1);
}

TEST_CASE("generation parameters are checked") {
  GenParams p;
  p.flows = 0;
  CHECK_THROWS_AS(generate(p), std::invalid_argument);

  p = GenParams{};
  p.period_min = 0;
  CHECK_THROWS_AS(generate(p), std::invalid_argument);

  p = GenParams{};
  p.period_min = 100;
  p.period_max = 50;
  CHECK_THROWS_AS(generate(p), std::invalid_argument);

  p = GenParams{};
  p.length_min = 10;
  p.length_max = 5;
  CHECK_THROWS_AS(generate(p), std::invalid_argument);

  p = GenParams{};
  p.columns = 1;
  p.rows = 1;
  CHECK_THROWS_AS(generate(p), std::invalid_argument);

  p = GenParams{};
  p.columns = 0;
  CHECK_THROWS_AS(generate(p), std::invalid_argument);
}
