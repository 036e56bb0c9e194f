#pragma once

#include <cstdint>

#include "wormnoc/traffic.hpp"

namespace wormnoc {

// Random flow-set generation. Periods and lengths are drawn uniformly from
// the inclusive ranges below; defaults correspond to 0.5 ms .. 0.5 s and
// 128 .. 4096 flits at a 100 MHz clock. Endpoints are uniform with
// src != dst, deadlines equal periods, jitter is zero, and priorities are
// rate-monotonic (shorter period = higher priority, ties broken by
// generation order). Deterministic for a given seed.
struct GenParams {
  int flows = 1;
  int columns = 4;
  int rows = 4;
  int buf = 2;
  int link_latency = 1;
  int vc_count = 0;  // 0: one virtual channel per flow
  Cycles period_min = 50'000;
  Cycles period_max = 50'000'000;
  Cycles length_min = 128;
  Cycles length_max = 4096;
  std::uint64_t seed = 1;
};

FlowSet generate(const GenParams& params);

}  // namespace wormnoc
