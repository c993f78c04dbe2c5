#pragma once

#include <array>
#include <cstdint>

#include "abrsim/reward.hpp"

namespace abrsim {

// Arm ids in kernel map order.
inline constexpr uint32_t kArmThroughput = 0;
inline constexpr uint32_t kArmBola = 1;
inline constexpr uint32_t kArmHybrid = 2;
inline constexpr uint32_t kNumArms = 3;

struct ArmStats {
  uint32_t pull_count = 0;
  uint64_t total_reward = 0;  // sum of RewardValues, <= pull_count * 1000
};

enum class ArmOrder { a_better, tie, b_better };

// Mean-reward comparison without division: a beats b iff
// a.total * b.count > b.total * a.count (128-bit intermediates).
// A zero-pull arm beats any pulled arm (optimistic initialization, so every
// arm is tried at least once even with eps = 0); two zero-pull arms tie.
ArmOrder better_arm(const ArmStats& a, const ArmStats& b);

// xorshift32 stand-in for the kernel PRNG; state must stay nonzero.
struct PrngState {
  uint32_t state = 1;
};

uint32_t prng_next(PrngState& prng);

// Shock detector: fires when the newest 2-chunk bandwidth average exceeds
// threshold_permille/1000 times the previous non-overlapping 2-chunk
// average, compared by integer cross-multiplication. Needs 4 measurements.
struct ShockState {
  std::array<uint32_t, 4> recent_bw_kbps{};  // newest last
  uint32_t recent_count = 0;
  uint32_t cooldown_remaining = 0;  // chunks
  uint32_t threshold_permille = 2500;
  uint32_t cooldown_len = 5;
};

// Pushes one per-chunk measured throughput; on fire arms the cooldown and
// returns true.
bool detect_shock(ShockState& shock, uint32_t new_chunk_bw_kbps);

struct BanditState {
  std::array<ArmStats, kNumArms> arms{};
  uint32_t eps_permille = 50;
  PrngState prng;
  uint32_t active_arm = kArmThroughput;
  ShockState shock;
  uint64_t prng_draws = 0;  // total draws consumed, for determinism checks
};

// seed 0 is remapped to 1 to keep the xorshift state nonzero
BanditState make_bandit(uint32_t eps_permille, uint32_t seed);

// One election, integer arithmetic only:
//   1. shock override: while the cooldown is armed, return the Throughput
//      arm and decrement it;
//   2. explore with probability eps_permille/1000 (draw mod 1000), picking
//      uniformly over all three arms (second draw mod 3);
//   3. otherwise exploit: best arm by better_arm over the three manually
//      enumerated pairwise comparisons, ties to the lowest arm id.
// Updates state.active_arm.
uint32_t select_arm(BanditState& state);

// One pull per RTT sample: pull_count += 1, total_reward += r.
void record_reward(BanditState& state, uint32_t arm, RewardValue r);

// Mean-preserving prior: every arm starts at pull_count = prior_pulls and
// total_reward = round-half-up(calibration mean) * prior_pulls, so live
// rewards can overturn the prior at a fixed weight. Every calibration arm
// must have been pulled.
BanditState warm_start(const std::array<ArmStats, kNumArms>& calibration,
                       uint32_t prior_pulls, BanditState fresh);

}  // namespace abrsim
