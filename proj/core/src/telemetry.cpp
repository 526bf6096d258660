#include "ransim/telemetry.hpp"

#include <algorithm>
#include <cmath>

namespace ransim {

namespace {
constexpr double kDeliveryEps = 1e-9;
constexpr double kVarianceFloor = 1e-8;
constexpr double kNormClip = 10.0;
}  // namespace

CellKPIWindow aggregate_window(const WindowAccumulator& acc, double window_s) {
  const WindowStats stats = window_stats(acc, window_s);
  CellKPIWindow w;
  w.utilization = stats.utilization;
  w.throughput_bps = stats.throughput_bps;
  w.jitter_s = stats.jitter_s;
  w.latency_s = stats.mean_delay_s;
  w.plr = stats.plr;
  w.ho_activity = static_cast<double>(acc.ho_events);
  w.empty = stats.empty;
  return w;
}

CellKPIWindow corrupt(const CellKPIWindow& window, const NoiseParams& noise, RandomStream& rng) {
  CellKPIWindow noisy = window;
  if (noise.sigma_delay_s > 0.0) {
    noisy.latency_s += rng.gaussian(0.0, noise.sigma_delay_s);
    noisy.jitter_s += rng.gaussian(0.0, noise.sigma_delay_s);
  }
  noisy.latency_s = std::max(noisy.latency_s, 0.0);
  noisy.jitter_s = std::max(noisy.jitter_s, 0.0);
  noisy.plr = std::clamp(noisy.plr, 0.0, 1.0);
  noisy.utilization = std::clamp(noisy.utilization, 0.0, 1.0);
  noisy.throughput_bps = std::max(noisy.throughput_bps, 0.0);
  return noisy;
}

std::pair<double, double> corrupt_link_summary(double rsrp_dbm, double cqi,
                                               const NoiseParams& noise, RandomStream& rng) {
  const double noisy_rsrp =
      noise.sigma_rsrp_db > 0.0 ? rsrp_dbm + rng.gaussian(0.0, noise.sigma_rsrp_db) : rsrp_dbm;
  double noisy_cqi = noise.sigma_cqi > 0.0 ? cqi + rng.gaussian(0.0, noise.sigma_cqi) : cqi;
  noisy_cqi = std::clamp(noisy_cqi, 0.0, 15.0);
  return {noisy_rsrp, noisy_cqi};
}

void ObservationPipe::push(std::vector<double> report, double now) {
  if (held_.empty()) held_.assign(report.size(), 0.0);
  in_flight_.emplace_back(now + lag_s_, std::move(report));
}

const std::vector<double>& ObservationPipe::poll(double now, RandomStream& rng) {
  while (!in_flight_.empty() && in_flight_.front().first <= now + kDeliveryEps) {
    auto [deliver_at, report] = std::move(in_flight_.front());
    in_flight_.pop_front();
    const bool dropped = p_miss_ > 0.0 && rng.bernoulli(p_miss_);
    if (!dropped) {
      held_ = std::move(report);
      valid_ = true;
    }
  }
  return held_;
}

void ObservationPipe::clear() {
  in_flight_.clear();
  held_.clear();
  valid_ = false;
}

double ema_filter(double x, EmaState& state, double ema_constant) {
  if (!state.initialized) {
    state.value = x;
    state.initialized = true;
  } else {
    state.value = ema_constant * x + (1.0 - ema_constant) * state.value;
  }
  return state.value;
}

double RunningNormalizer::normalize(int channel, double x) {
  auto& n = count_[channel];
  auto& mean = mean_[channel];
  auto& m2 = m2_[channel];
  ++n;
  const double delta = x - mean;
  mean += delta / static_cast<double>(n);
  m2 += delta * (x - mean);
  const double var = m2 / static_cast<double>(n);
  const double z = (x - mean) / std::sqrt(var + kVarianceFloor);
  return std::clamp(z, -kNormClip, kNormClip);
}

void RunningNormalizer::normalize_vector(std::span<const double> x, std::span<double> out) {
  RANSIM_REQUIRE(x.size() == mean_.size() && out.size() == mean_.size(),
                 "running_normalize: channel count mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = normalize(static_cast<int>(i), x[i]);
}

void RunningNormalizer::restore(std::span<const double> mean, std::span<const double> m2,
                                std::span<const std::uint64_t> counts) {
  RANSIM_REQUIRE(mean.size() == mean_.size() && m2.size() == m2_.size() &&
                     counts.size() == count_.size(),
                 "running_normalize restore: channel count mismatch");
  std::copy(mean.begin(), mean.end(), mean_.begin());
  std::copy(m2.begin(), m2.end(), m2_.begin());
  std::copy(counts.begin(), counts.end(), count_.begin());
}

JainResult jain_index_flagged(std::span<const double> x) {
  RANSIM_REQUIRE(!x.empty(), "jain_index: need at least one entry");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : x) {
    RANSIM_REQUIRE(v >= 0.0, "jain_index: entries must be nonnegative");
    sum += v;
    sum_sq += v * v;
  }
  if (sum_sq == 0.0) return {1.0, true};  // all zero: perfectly equal by convention
  return {(sum * sum) / (static_cast<double>(x.size()) * sum_sq), false};
}

double jain_index(std::span<const double> x) { return jain_index_flagged(x).index; }

double normalize_kpi(double x, double m_k, double M_k, bool higher_is_better) {
  if (M_k <= m_k) throw ConfigError("normalize_kpi: anchors must satisfy M > m");
  const double t = higher_is_better ? (x - m_k) / (M_k - m_k) : (M_k - x) / (M_k - m_k);
  return std::clamp(t, 0.0, 1.0);
}

PercentileAnchors calibrate_percentiles(std::vector<double> samples) {
  if (samples.size() < 2) throw ConfigError("calibrate_percentiles: need at least 2 samples");
  std::sort(samples.begin(), samples.end());

  auto percentile = [&](double p) {
    const double pos = p * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= samples.size()) return samples.back();
    const double frac = pos - static_cast<double>(lo);
    return samples[lo] + frac * (samples[lo + 1] - samples[lo]);
  };

  PercentileAnchors anchors;
  anchors.low = percentile(0.05);
  anchors.high = percentile(0.95);
  if (anchors.high <= anchors.low) {
    const double center = anchors.low;
    anchors.low = center - 1.0;
    anchors.high = center + 1.0;
    anchors.widened = true;
  }
  return anchors;
}

std::vector<double> build_state(std::span<const CellKPIWindow> windows) {
  const auto cells = windows.size();
  std::vector<double> state(cells * kStateChannels);
  for (std::size_t i = 0; i < cells; ++i) {
    state[0 * cells + i] = windows[i].utilization;
    state[1 * cells + i] = windows[i].throughput_bps;
    state[2 * cells + i] = windows[i].jitter_s;
    state[3 * cells + i] = windows[i].plr;
    state[4 * cells + i] = windows[i].latency_s;
    state[5 * cells + i] = windows[i].ho_activity;
  }
  return state;
}

ObservationPipeline::ObservationPipeline(int num_cells, double lag_s, double p_miss,
                                         double ema_constant)
    : num_cells_(num_cells),
      ema_constant_(ema_constant),
      pipe_(lag_s, p_miss),
      ema_(static_cast<std::size_t>(num_cells) * kStateChannels),
      normalizer_(num_cells * kStateChannels) {
  if (ema_constant_ <= 0.0 || ema_constant_ > 1.0)
    throw ConfigError("pipe.ema constant must be in (0,1]");
}

ObservationPipeline::Result ObservationPipeline::process(std::span<const CellKPIWindow> corrupted,
                                                         double now, RandomStream& rng) {
  RANSIM_REQUIRE(static_cast<int>(corrupted.size()) == num_cells_,
                 "observation pipeline: expected one window per cell");
  pipe_.push(build_state(corrupted), now);
  const auto& delivered = pipe_.poll(now, rng);

  Result result;
  result.valid = pipe_.valid();
  result.state.resize(delivered.size());
  for (std::size_t i = 0; i < delivered.size(); ++i) {
    result.state[i] = ema_filter(delivered[i], ema_[i], ema_constant_);
  }
  normalizer_.normalize_vector(result.state, result.state);
  return result;
}

void ObservationPipeline::start_episode() {
  pipe_.clear();
  for (auto& e : ema_) e = EmaState{};
}

}  // namespace ransim
