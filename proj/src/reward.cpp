#include "abrsim/reward.hpp"

#include <algorithm>
#include <stdexcept>

namespace abrsim {

void RewardTracker::observe(uint32_t rtt_us, uint32_t delivery_rate_kbps) {
  rtt_min_us_ = std::min(rtt_min_us_, rtt_us);
  d_max_kbps_ = std::max(d_max_kbps_, delivery_rate_kbps);
}

RewardValue RewardTracker::compute(uint32_t rtt_us,
                                   uint32_t delivery_rate_kbps) const {
  if (!initialized()) {
    throw std::logic_error("reward: compute() before first observe()");
  }
  // 64-bit intermediates so kScale * rtt_min cannot overflow
  const uint64_t ratio_rtt = uint64_t{kScale} * rtt_min_us_ / rtt_us;
  const uint64_t ratio_delivery =
      uint64_t{kScale} * delivery_rate_kbps / d_max_kbps_;
  const uint64_t r = (kWeightRtt * ratio_rtt + kWeightDelivery * ratio_delivery) /
                     (kWeightRtt + kWeightDelivery);
  return RewardValue{static_cast<uint32_t>(r)};
}

}  // namespace abrsim
