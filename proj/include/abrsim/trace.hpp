#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace abrsim {

enum class TraceSource { synthetic, imported };

struct TraceSample {
  double time_s = 0.0;
  uint32_t bandwidth_kbps = 1;
};

// Time-indexed available-bandwidth series driving a session. Immutable after
// construction; safe to share read-only across parallel session runs.
//
// Invariants enforced by the constructor: sample times strictly increasing,
// first sample at time 0, every bandwidth >= 1 kbps.
class BandwidthTrace {
 public:
  BandwidthTrace(std::vector<TraceSample> samples, std::string name,
                 TraceSource source);

  const std::vector<TraceSample>& samples() const { return samples_; }
  const std::string& name() const { return name_; }
  TraceSource source() const { return source_; }

  // Time of the last sample plus one median inter-sample gap. Sessions longer
  // than this replay the trace from the start.
  double duration_s() const { return duration_s_; }

  // Zero-order hold: value of the latest sample with time <= t, wrapping
  // modulo duration_s() beyond the end. Total on t >= 0.
  uint32_t bandwidth_at(double t_s) const;

 private:
  std::vector<TraceSample> samples_;
  std::string name_;
  TraceSource source_;
  double duration_s_;
};

// Three-phase synthetic trace: jitter square wave, then a capacity cliff,
// then a capacity surge. Phase k covers the chunk range
// (prev_end, phase_end]; chunk i maps to sample time (i-1)*chunk_duration_s.
struct AdversarialSpec {
  uint32_t jitter_high_kbps = 4500;
  uint32_t jitter_low_kbps = 800;
  uint32_t jitter_end_chunk = 40;
  uint32_t cliff_kbps = 200;
  uint32_t cliff_end_chunk = 120;
  uint32_t rocket_kbps = 9000;
  uint32_t rocket_end_chunk = 180;
  double chunk_duration_s = 2.5;
  // Square wave: first half of each period high, second half low.
  uint32_t jitter_period_chunks = 4;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

BandwidthTrace generate_adversarial(const AdversarialSpec& spec);

enum class TraceFormat {
  // Whitespace-separated "timestamp_ms bytes_received" rows; bytes in row i
  // cover the interval since row i-1, converted to one kbps sample at the
  // interval start. Timestamps are normalized so the trace starts at 0.
  hsdpa_log,
  // UTF-8 "time_s,bandwidth_kbps" per line; '#' comment lines ignored.
  normalized_csv,
};

// Parse errors carry the 1-based line number. Zero bandwidths clamp to
// 1 kbps; an input without any usable sample is an error.
BandwidthTrace import_trace(std::istream& in, TraceFormat format,
                            const std::string& name);
BandwidthTrace import_trace_file(const std::string& path, TraceFormat format);

// Canonical normalized_csv, no comments, times printed with up to
// millisecond precision. import -> export_csv is stable on canonical files.
void export_csv(const BandwidthTrace& trace, std::ostream& out);

}  // namespace abrsim
