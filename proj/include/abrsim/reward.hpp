#pragma once

#include <cstdint>

namespace abrsim {

// Normalized per-RTT reward in [0, 1000].
struct RewardValue {
  uint32_t value = 0;
};

// Running extrema plus the fixed-point weights of the per-RTT reward
//
//   r = (w_r * S*rtt_min/rtt + w_d * S*d/d_max) / (w_r + w_d)
//
// evaluated with integer arithmetic only (scale before divide, truncate per
// ratio, then the weighted average) so the computation stays bit-identical
// across platforms and portable to an in-kernel context. Extrema are
// per-session: trackers are created fresh for each flow.
//
// Caller contract: observe() precedes compute() for each sample, so the
// triggering sample's rtt/delivery rate are already folded into the extrema
// (the first sample of a session therefore scores 1000).
class RewardTracker {
 public:
  static constexpr uint32_t kWeightRtt = 6;       // latency weighted 60%
  static constexpr uint32_t kWeightDelivery = 4;  // throughput weighted 40%
  static constexpr uint32_t kScale = 1000;

  void observe(uint32_t rtt_us, uint32_t delivery_rate_kbps);
  RewardValue compute(uint32_t rtt_us, uint32_t delivery_rate_kbps) const;

  bool initialized() const { return d_max_kbps_ > 0; }
  uint32_t rtt_min_us() const { return rtt_min_us_; }
  uint32_t d_max_kbps() const { return d_max_kbps_; }

 private:
  uint32_t rtt_min_us_ = UINT32_MAX;
  uint32_t d_max_kbps_ = 0;
};

}  // namespace abrsim
