#include "abrsim/abr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abrsim {

namespace {

constexpr int64_t kFixedScale = 1'000'000;

int64_t to_ms(double seconds) {
  return static_cast<int64_t>(std::llround(seconds * 1000.0));
}

// highest rung <= limit, or the lowest rung if none qualifies
uint32_t highest_rung_within(const BitrateLadder& ladder, uint64_t limit_kbps) {
  uint32_t pick = ladder.lowest();
  for (uint32_t rung : ladder.rungs_kbps) {
    if (rung <= limit_kbps) pick = rung;
  }
  return pick;
}

size_t highest_index_within(const BitrateLadder& ladder, uint64_t limit_kbps) {
  size_t pick = 0;
  for (size_t i = 0; i < ladder.rungs_kbps.size(); ++i) {
    if (ladder.rungs_kbps[i] <= limit_kbps) pick = i;
  }
  return pick;
}

}  // namespace

void BitrateLadder::validate() const {
  if (rungs_kbps.size() < 2) {
    throw std::invalid_argument("ladder: need at least 2 rungs");
  }
  if (rungs_kbps.front() < 150) {
    throw std::invalid_argument("ladder: lowest rung must be >= 150 kbps");
  }
  for (size_t i = 1; i < rungs_kbps.size(); ++i) {
    if (rungs_kbps[i] <= rungs_kbps[i - 1]) {
      throw std::invalid_argument("ladder: rungs must strictly increase");
    }
  }
}

uint32_t harmonic_mean_kbps(std::span<const uint32_t> samples_kbps,
                            size_t window) {
  if (samples_kbps.empty()) {
    throw std::invalid_argument("harmonic_mean: no samples");
  }
  if (window < 1) {
    throw std::invalid_argument("harmonic_mean: window must be >= 1");
  }
  const size_t n = std::min(window, samples_kbps.size());
  uint64_t recip_sum = 0;  // 1e-6 units
  for (size_t i = samples_kbps.size() - n; i < samples_kbps.size(); ++i) {
    const uint32_t x = samples_kbps[i];
    if (x == 0) {
      throw std::invalid_argument("harmonic_mean: samples must be positive");
    }
    const uint64_t term = uint64_t{kFixedScale} / x;
    recip_sum += term == 0 ? 1 : term;  // saturate at 1e6 kbps
  }
  return static_cast<uint32_t>(n * uint64_t{kFixedScale} / recip_sum);
}

uint32_t throughput_select(const PolicyInputs& in, const BitrateLadder& ladder,
                           const ThroughputParams& params) {
  if (in.throughput_samples_kbps.empty()) {
    return ladder.lowest();
  }
  const uint32_t estimate =
      harmonic_mean_kbps(in.throughput_samples_kbps, params.hm_window);
  const uint64_t safe = uint64_t{params.safety_permille} * estimate / 1000;
  return highest_rung_within(ladder, safe);
}

BolaParams BolaParams::derive(const BitrateLadder& ladder, double buffer_cap_s,
                              double reservoir_s, double chunk_duration_s,
                              double startup_threshold_s, uint32_t hm_window) {
  ladder.validate();
  const std::vector<uint32_t>& rungs = ladder.rungs_kbps;
  const size_t m = rungs.size();

  std::vector<double> v(m);
  for (size_t i = 0; i < m; ++i) {
    v[i] = std::log(double(rungs[i]) / rungs[0]);
  }
  // crossing(i, j) sits at Q = V * (a(i,j) + gamma*p) chunks
  auto a = [&](size_t i, size_t j) {
    return (rungs[j] * v[i] - rungs[i] * v[j]) / (double(rungs[j]) - rungs[i]);
  };

  const double reservoir_chunks = reservoir_s / chunk_duration_s;
  const double cap_chunks = buffer_cap_s / chunk_duration_s;
  // keep the top crossing strictly inside the cap, and the derivation sane
  // for shallow configurations
  const double top_chunks = std::max(cap_chunks - 1.0, reservoir_chunks + 0.25);

  const double a_low = a(0, 1);
  double gain, gp;
  if (m == 2) {
    // single crossing: pin it at the reservoir
    gp = 1.0 - a_low;
    gain = reservoir_chunks / (gp + a_low);
  } else {
    const double a_top = a(m - 2, m - 1);
    gain = (top_chunks - reservoir_chunks) / (a_top - a_low);
    gp = reservoir_chunks / gain - a_low;
  }

  BolaParams params;
  params.utility_fp.resize(m);
  for (size_t i = 0; i < m; ++i) {
    params.utility_fp[i] = std::llround(v[i] * kFixedScale);
  }
  params.gain_fp = std::llround(gain * kFixedScale);
  params.gp_fp = std::llround(gp * kFixedScale);
  params.chunk_duration_s = chunk_duration_s;
  params.startup_threshold_s = startup_threshold_s;
  params.hm_window = hm_window;
  return params;
}

uint32_t bola_select(const PolicyInputs& in, const BitrateLadder& ladder,
                     const BolaParams& params) {
  const std::vector<uint32_t>& rungs = ladder.rungs_kbps;
  const int64_t chunk_ms = to_ms(params.chunk_duration_s);
  const int64_t buffer_ms = std::max<int64_t>(0, to_ms(in.buffer_s));
  const int64_t q_fp = buffer_ms * kFixedScale / chunk_ms;  // chunks, 1e-6

  // argmax of (V*(v_m + gp) - Q) / rung_m via cross-multiplication; strict
  // improvement required, so ties fall to the lowest rung
  size_t best = 0;
  int64_t best_num =
      params.gain_fp * (params.utility_fp[0] + params.gp_fp) / kFixedScale -
      q_fp;
  for (size_t i = 1; i < rungs.size(); ++i) {
    const int64_t num =
        params.gain_fp * (params.utility_fp[i] + params.gp_fp) / kFixedScale -
        q_fp;
    if (num * int64_t{rungs[best]} > best_num * int64_t{rungs[i]}) {
      best = i;
      best_num = num;
    }
  }

  // adaptive safety margin: while the buffer is still shallow, never exceed
  // the harmonic-mean throughput estimate
  if (buffer_ms < to_ms(params.startup_threshold_s) &&
      !in.throughput_samples_kbps.empty()) {
    const uint32_t estimate =
        harmonic_mean_kbps(in.throughput_samples_kbps, params.hm_window);
    best = std::min(best, highest_index_within(ladder, estimate));
  }
  return rungs[best];
}

uint32_t pure_buffer_select(const PolicyInputs& in, const BitrateLadder& ladder,
                            const BbaParams& params) {
  const int64_t buffer_ms = std::max<int64_t>(0, to_ms(in.buffer_s));
  const int64_t reservoir_ms = to_ms(params.reservoir_s);
  const int64_t cushion_top_ms = to_ms(params.cushion_top_s);
  const size_t top = ladder.rungs_kbps.size() - 1;

  size_t idx;
  if (buffer_ms <= reservoir_ms) {
    idx = 0;
  } else if (buffer_ms >= cushion_top_ms) {
    idx = top;
  } else {
    idx = static_cast<size_t>(int64_t(top) * (buffer_ms - reservoir_ms) /
                              (cushion_top_ms - reservoir_ms));
  }
  return ladder.rungs_kbps[idx];
}

uint32_t hybrid_select(const PolicyInputs& in, const BitrateLadder& ladder,
                       const HybridParams& params) {
  const uint32_t bba = pure_buffer_select(in, ladder, params.bba);
  if (in.throughput_samples_kbps.empty()) {
    return bba;
  }
  const uint32_t estimate =
      harmonic_mean_kbps(in.throughput_samples_kbps, params.hm_window);
  const uint64_t cap = uint64_t{params.cap_permille} * estimate / 1000;
  return std::min(bba, highest_rung_within(ladder, cap));
}

}  // namespace abrsim
