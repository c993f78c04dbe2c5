#include "abrsim/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace abrsim {

namespace {

double median_gap(const std::vector<TraceSample>& samples) {
  if (samples.size() < 2) {
    return 1.0;  // single-sample trace: nominal 1 s gap
  }
  std::vector<double> gaps;
  gaps.reserve(samples.size() - 1);
  for (size_t i = 1; i < samples.size(); ++i) {
    gaps.push_back(samples[i].time_s - samples[i - 1].time_s);
  }
  std::sort(gaps.begin(), gaps.end());
  const size_t n = gaps.size();
  return n % 2 == 1 ? gaps[n / 2] : 0.5 * (gaps[n / 2 - 1] + gaps[n / 2]);
}

[[noreturn]] void parse_fail(const std::string& name, size_t line,
                             const std::string& what) {
  throw std::runtime_error("trace '" + name + "' line " +
                           std::to_string(line) + ": " + what);
}

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", t);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

BandwidthTrace::BandwidthTrace(std::vector<TraceSample> samples,
                               std::string name, TraceSource source)
    : samples_(std::move(samples)), name_(std::move(name)), source_(source) {
  if (samples_.empty()) {
    throw std::invalid_argument("trace '" + name_ + "': no samples");
  }
  if (samples_.front().time_s != 0.0) {
    throw std::invalid_argument("trace '" + name_ +
                                "': first sample must be at time 0");
  }
  for (size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].bandwidth_kbps < 1) {
      throw std::invalid_argument("trace '" + name_ +
                                  "': bandwidth_kbps must be >= 1");
    }
    if (i > 0 && samples_[i].time_s <= samples_[i - 1].time_s) {
      throw std::invalid_argument("trace '" + name_ +
                                  "': sample times must strictly increase");
    }
  }
  duration_s_ = samples_.back().time_s + median_gap(samples_);
}

uint32_t BandwidthTrace::bandwidth_at(double t_s) const {
  double t = std::fmod(t_s, duration_s_);
  if (t < 0.0) t = 0.0;
  auto it = std::upper_bound(
      samples_.begin(), samples_.end(), t,
      [](double v, const TraceSample& s) { return v < s.time_s; });
  // first sample sits at time 0, so it never points at begin()
  return std::prev(it)->bandwidth_kbps;
}

void AdversarialSpec::validate() const {
  if (jitter_high_kbps < 1) throw std::invalid_argument("jitter_high_kbps must be positive");
  if (jitter_low_kbps < 1) throw std::invalid_argument("jitter_low_kbps must be positive");
  if (cliff_kbps < 1) throw std::invalid_argument("cliff_kbps must be positive");
  if (rocket_kbps < 1) throw std::invalid_argument("rocket_kbps must be positive");
  if (chunk_duration_s <= 0.0) throw std::invalid_argument("chunk_duration_s must be positive");
  if (jitter_period_chunks < 2) throw std::invalid_argument("jitter_period_chunks must be >= 2");
  if (jitter_end_chunk < 1) throw std::invalid_argument("jitter_end_chunk must be >= 1");
  if (cliff_end_chunk <= jitter_end_chunk) {
    throw std::invalid_argument("cliff_end_chunk must exceed jitter_end_chunk");
  }
  if (rocket_end_chunk <= cliff_end_chunk) {
    throw std::invalid_argument("rocket_end_chunk must exceed cliff_end_chunk");
  }
}

BandwidthTrace generate_adversarial(const AdversarialSpec& spec) {
  spec.validate();
  std::vector<TraceSample> samples;
  samples.reserve(spec.rocket_end_chunk);
  for (uint32_t chunk = 1; chunk <= spec.rocket_end_chunk; ++chunk) {
    uint32_t bw;
    if (chunk <= spec.jitter_end_chunk) {
      const uint32_t phase = (chunk - 1) % spec.jitter_period_chunks;
      bw = phase < spec.jitter_period_chunks / 2 ? spec.jitter_high_kbps
                                                 : spec.jitter_low_kbps;
    } else if (chunk <= spec.cliff_end_chunk) {
      bw = spec.cliff_kbps;
    } else {
      bw = spec.rocket_kbps;
    }
    samples.push_back({(chunk - 1) * spec.chunk_duration_s, bw});
  }
  return BandwidthTrace(std::move(samples), "adversarial",
                        TraceSource::synthetic);
}

namespace {

BandwidthTrace import_csv(std::istream& in, const std::string& name) {
  std::vector<TraceSample> samples;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos) parse_fail(name, lineno, "expected 'time_s,bandwidth_kbps'");
    double t;
    long long bw;
    try {
      size_t used = 0;
      t = std::stod(line.substr(first, comma - first), &used);
      bw = std::stoll(line.substr(comma + 1), &used);
    } catch (const std::exception&) {
      parse_fail(name, lineno, "expected 'time_s,bandwidth_kbps'");
    }
    if (bw < 0) parse_fail(name, lineno, "negative bandwidth");
    if (t < 0.0) parse_fail(name, lineno, "negative time");
    samples.push_back({t, bw == 0 ? 1u : static_cast<uint32_t>(bw)});
  }
  if (samples.empty()) {
    throw std::runtime_error("trace '" + name + "': empty trace");
  }
  return BandwidthTrace(std::move(samples), name, TraceSource::imported);
}

BandwidthTrace import_hsdpa(std::istream& in, const std::string& name) {
  std::vector<std::pair<long long, long long>> rows;  // (timestamp_ms, bytes)
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    long long ts_ms, bytes;
    std::string extra;
    if (!(row >> ts_ms >> bytes) || (row >> extra)) {
      parse_fail(name, lineno, "expected 'timestamp_ms bytes_received'");
    }
    if (bytes < 0) parse_fail(name, lineno, "negative bytes");
    if (!rows.empty() && ts_ms <= rows.back().first) {
      parse_fail(name, lineno, "timestamps must strictly increase");
    }
    rows.push_back({ts_ms, bytes});
  }
  if (rows.size() < 2) {
    throw std::runtime_error("trace '" + name + "': empty trace");
  }
  std::vector<TraceSample> samples;
  samples.reserve(rows.size() - 1);
  for (size_t i = 1; i < rows.size(); ++i) {
    const long long delta_ms = rows[i].first - rows[i - 1].first;
    // bytes * 8 bits over delta_ms milliseconds is exactly kbit/s
    const long long kbps = rows[i].second * 8 / delta_ms;
    samples.push_back({(rows[i - 1].first - rows[0].first) / 1000.0,
                       kbps < 1 ? 1u : static_cast<uint32_t>(kbps)});
  }
  return BandwidthTrace(std::move(samples), name, TraceSource::imported);
}

}  // namespace

BandwidthTrace import_trace(std::istream& in, TraceFormat format,
                            const std::string& name) {
  return format == TraceFormat::normalized_csv ? import_csv(in, name)
                                               : import_hsdpa(in, name);
}

BandwidthTrace import_trace_file(const std::string& path, TraceFormat format) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trace file: " + path);
  }
  // strip directories from the display name
  const size_t slash = path.find_last_of('/');
  return import_trace(in, format,
                      slash == std::string::npos ? path : path.substr(slash + 1));
}

void export_csv(const BandwidthTrace& trace, std::ostream& out) {
  for (const TraceSample& s : trace.samples()) {
    out << format_time(s.time_s) << ',' << s.bandwidth_kbps << '\n';
  }
}

}  // namespace abrsim
