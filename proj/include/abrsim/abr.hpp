#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace abrsim {

struct BitrateLadder {
  std::vector<uint32_t> rungs_kbps{300, 750, 1200, 1850, 2850, 4300};

  // >= 2 rungs, strictly increasing, lowest >= 150 (the QoE utility base).
  void validate() const;
  uint32_t lowest() const { return rungs_kbps.front(); }
  uint32_t highest() const { return rungs_kbps.back(); }
};

// Snapshot handed to a selector at a chunk boundary. Selectors are pure
// functions of these inputs: no policy state survives arm switches.
struct PolicyInputs {
  double buffer_s = 0.0;
  std::span<const uint32_t> throughput_samples_kbps;  // most recent last
  uint32_t prev_bitrate_kbps = 0;
  double chunk_duration_s = 2.5;
};

// Integer harmonic mean of the last min(window, size) samples: reciprocal
// sum in scale-1e6 fixed point, result truncated to whole kbps. Saturates
// at 1e6 kbps.
uint32_t harmonic_mean_kbps(std::span<const uint32_t> samples_kbps,
                            size_t window);

struct ThroughputParams {
  uint32_t safety_permille = 900;
  uint32_t hm_window = 3;
};

// Highest rung <= safety * harmonic-mean estimate; lowest rung when no
// sample qualifies or no samples exist yet.
uint32_t throughput_select(const PolicyInputs& in, const BitrateLadder& ladder,
                           const ThroughputParams& params = {});

// Buffer-aware utility maximization: pick the rung maximizing
//
//   (V * (v_m + gamma*p) - Q) / S_m
//
// with v_m = ln(rung_m / lowest rung), S_m proportional to rung_m, Q the
// buffer level in chunks and p the chunk duration. V and gamma*p are derived
// from (ladder, reservoir, buffer cap) so the 0<->1 rung crossing sits at the
// reservoir and the top crossing one chunk inside the cap (the cap itself
// then strictly prefers the top rung under the lowest-rung tie-break). The
// per-rung ln table is precomputed in 1e-6 fixed point; selection itself is
// integer-only.
struct BolaParams {
  std::vector<int64_t> utility_fp;  // ln(rung/lowest), 1e-6 units
  int64_t gain_fp = 0;              // V in chunks, 1e-6 units
  int64_t gp_fp = 0;                // gamma*p, dimensionless, 1e-6 units
  double chunk_duration_s = 2.5;
  double startup_threshold_s = 10.0;  // below this, cap at the HM estimate
  uint32_t hm_window = 3;

  static BolaParams derive(const BitrateLadder& ladder, double buffer_cap_s,
                           double reservoir_s, double chunk_duration_s,
                           double startup_threshold_s = 10.0,
                           uint32_t hm_window = 3);
};

uint32_t bola_select(const PolicyInputs& in, const BitrateLadder& ladder,
                     const BolaParams& params);

// BBA map: lowest rung below the reservoir, highest above the cushion top,
// linear rung-index interpolation (round down) between.
struct BbaParams {
  double reservoir_s = 5.0;
  double cushion_top_s = 30.0;
};

uint32_t pure_buffer_select(const PolicyInputs& in, const BitrateLadder& ladder,
                            const BbaParams& params = {});

// BBA map gated by a bandwidth cap: min(BBA rung, highest rung <=
// cap_permille/1000 * harmonic-mean estimate). With no samples the gate
// stays open.
struct HybridParams {
  BbaParams bba;
  uint32_t cap_permille = 1250;
  uint32_t hm_window = 3;
};

uint32_t hybrid_select(const PolicyInputs& in, const BitrateLadder& ladder,
                       const HybridParams& params = {});

}  // namespace abrsim
