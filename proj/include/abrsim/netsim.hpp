#pragma once

#include <cstdint>
#include <vector>

#include "abrsim/trace.hpp"

namespace abrsim {

struct NetConfig {
  double chunk_duration_s = 2.5;
  double buffer_cap_s = 60.0;
  uint32_t base_rtt_us = 80'000;
  // RTT inflation is clamped to this multiple of the base (per-mille).
  uint32_t rtt_inflation_cap_permille = 10'000;
  double integration_step_s = 0.010;
};

// One synthesized per-RTT measurement (the kernel-visible signals).
struct RttSample {
  uint32_t rtt_us = 0;
  uint32_t delivery_rate_kbps = 0;
  double at_clock_s = 0.0;
};

struct SessionState {
  double buffer_s = 0.0;  // seconds of video buffered, in [0, buffer_cap_s]
  double clock_s = 0.0;   // wall clock, non-decreasing
  uint32_t prev_bitrate_kbps = 0;
  std::vector<uint32_t> throughput_samples_kbps;  // per-chunk, newest last
  uint32_t chunk_index = 0;  // chunks completed so far
};

struct ChunkResult {
  double download_time_s = 0.0;
  double rebuffer_s = 0.0;
  uint32_t measured_throughput_kbps = 0;
  std::vector<RttSample> rtt_samples;
  uint32_t bitrate_kbps = 0;
  double requested_at_clock_s = 0.0;
  double idle_s = 0.0;  // cap-pacing wait after this chunk
};

// Downloads one chunk of bitrate_kbps * chunk_duration_s kilobits by
// integrating the trace bandwidth over wall-clock time. The playout buffer
// drains during the download; any deficit is the chunk's rebuffer time. The
// buffer then gains one chunk duration, clamped at the cap; a client at the
// cap idles for one chunk duration of drain before the next request.
ChunkResult download_chunk(SessionState& state, uint32_t bitrate_kbps,
                           const BandwidthTrace& trace, const NetConfig& cfg);

// Per-RTT signal synthesis over [t0, t1): samples are emitted at measurement
// epochs spaced by their own RTT, keeping only measurements that complete
// inside the interval (but always at least one). The delivery rate is the
// trace bandwidth at the epoch; the RTT inflates multiplicatively by the
// demand/capacity ratio in per-mille integer steps, floored at the base RTT
// and clamped by rtt_inflation_cap_permille.
//
// The paper's simulation never specifies how these signals were derived from
// a trace, so this model is a declared stand-in; swap it here if a better
// one is available.
std::vector<RttSample> synth_rtt_samples(double t0, double t1,
                                         uint32_t bitrate_kbps,
                                         const BandwidthTrace& trace,
                                         const NetConfig& cfg);

}  // namespace abrsim
