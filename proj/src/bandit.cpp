#include "abrsim/bandit.hpp"

#include <stdexcept>

namespace abrsim {

ArmOrder better_arm(const ArmStats& a, const ArmStats& b) {
  if (a.pull_count == 0 || b.pull_count == 0) {
    if (a.pull_count == b.pull_count) return ArmOrder::tie;
    return a.pull_count == 0 ? ArmOrder::a_better : ArmOrder::b_better;
  }
  const unsigned __int128 lhs =
      static_cast<unsigned __int128>(a.total_reward) * b.pull_count;
  const unsigned __int128 rhs =
      static_cast<unsigned __int128>(b.total_reward) * a.pull_count;
  if (lhs > rhs) return ArmOrder::a_better;
  if (lhs < rhs) return ArmOrder::b_better;
  return ArmOrder::tie;
}

uint32_t prng_next(PrngState& prng) {
  uint32_t x = prng.state;
  x ^= x << 13;
  x ^= x >> 17;
  x ^= x << 5;
  prng.state = x;
  return x;
}

bool detect_shock(ShockState& shock, uint32_t new_chunk_bw_kbps) {
  if (shock.recent_count < shock.recent_bw_kbps.size()) {
    shock.recent_bw_kbps[shock.recent_count++] = new_chunk_bw_kbps;
  } else {
    for (size_t i = 0; i + 1 < shock.recent_bw_kbps.size(); ++i) {
      shock.recent_bw_kbps[i] = shock.recent_bw_kbps[i + 1];
    }
    shock.recent_bw_kbps.back() = new_chunk_bw_kbps;
  }
  if (shock.recent_count < shock.recent_bw_kbps.size()) {
    return false;
  }
  const uint64_t newer =
      uint64_t{shock.recent_bw_kbps[2]} + shock.recent_bw_kbps[3];
  const uint64_t older =
      uint64_t{shock.recent_bw_kbps[0]} + shock.recent_bw_kbps[1];
  const bool fired = 1000 * newer > uint64_t{shock.threshold_permille} * older;
  if (fired) {
    shock.cooldown_remaining = shock.cooldown_len;
  }
  return fired;
}

BanditState make_bandit(uint32_t eps_permille, uint32_t seed) {
  if (eps_permille > 1000) {
    throw std::invalid_argument("bandit: eps_permille must be <= 1000");
  }
  BanditState state;
  state.eps_permille = eps_permille;
  state.prng.state = seed == 0 ? 1 : seed;
  return state;
}

uint32_t select_arm(BanditState& state) {
  uint32_t arm;
  if (state.shock.cooldown_remaining > 0) {
    --state.shock.cooldown_remaining;
    arm = kArmThroughput;
  } else {
    ++state.prng_draws;
    const uint32_t u = prng_next(state.prng);
    if (u % 1000 < state.eps_permille) {
      ++state.prng_draws;
      arm = prng_next(state.prng) % kNumArms;
    } else {
      // unrolled three-arm comparison, ties keep the lower id
      arm = 0;
      if (better_arm(state.arms[1], state.arms[arm]) == ArmOrder::a_better) arm = 1;
      if (better_arm(state.arms[2], state.arms[arm]) == ArmOrder::a_better) arm = 2;
    }
  }
  state.active_arm = arm;
  return arm;
}

void record_reward(BanditState& state, uint32_t arm, RewardValue r) {
  if (arm >= kNumArms) {
    throw std::out_of_range("bandit: arm id out of range");
  }
  state.arms[arm].pull_count += 1;
  state.arms[arm].total_reward += r.value;
}

BanditState warm_start(const std::array<ArmStats, kNumArms>& calibration,
                       uint32_t prior_pulls, BanditState fresh) {
  if (prior_pulls < 1) {
    throw std::invalid_argument("warm_start: prior_pulls must be >= 1");
  }
  for (uint32_t arm = 0; arm < kNumArms; ++arm) {
    const ArmStats& cal = calibration[arm];
    if (cal.pull_count == 0) {
      throw std::invalid_argument(
          "warm_start: calibration must exercise every arm (arm " +
          std::to_string(arm) + " has zero pulls)");
    }
    // mean reward rounded half-up; totals stay well below 64 bits
    const uint64_t mean =
        (2 * cal.total_reward + cal.pull_count) / (2 * uint64_t{cal.pull_count});
    fresh.arms[arm] = ArmStats{prior_pulls, mean * prior_pulls};
  }
  return fresh;
}

}  // namespace abrsim
