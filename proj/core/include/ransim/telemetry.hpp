#pragma once

#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "ransim/errors.hpp"
#include "ransim/kpi.hpp"
#include "ransim/rng.hpp"
#include "ransim/scheduler.hpp"

namespace ransim {

// Windowed per-cell KPI snapshot, the state's raw material.
struct CellKPIWindow {
  double utilization = 0.0;     // scheduled PRB-ticks / available PRB-ticks
  double throughput_bps = 0.0;
  double jitter_s = 0.0;
  double latency_s = 0.0;
  double plr = 0.0;
  double ho_activity = 0.0;     // handovers touching this cell in the window
  bool empty = false;
};

struct NoiseParams {
  double sigma_rsrp_db = 1.0;
  double sigma_cqi = 0.5;
  double sigma_delay_s = 0.002;

  void validate() const {
    if (sigma_rsrp_db < 0.0 || sigma_cqi < 0.0 || sigma_delay_s < 0.0)
      throw ConfigError("noise sigmas must be >= 0");
  }
};

// Builds the per-cell window from a cell's tick-level accumulator.
CellKPIWindow aggregate_window(const WindowAccumulator& acc, double window_s);

// Additive Gaussian measurement noise on the delay-like channels, with the
// physical clamps re-applied afterwards.
CellKPIWindow corrupt(const CellKPIWindow& window, const NoiseParams& noise, RandomStream& rng);

// Diagnostics-only noisy radio summaries (not part of the state vector).
std::pair<double, double> corrupt_link_summary(double rsrp_dbm, double cqi,
                                               const NoiseParams& noise, RandomStream& rng);

// Report transport: delivers each pushed report exactly `lag` seconds later,
// drops a delivery with probability p_miss, and holds the last delivered
// value in between (zero-order hold). Before anything is delivered the held
// value is all-zero and flagged invalid.
class ObservationPipe {
 public:
  ObservationPipe(double lag_s, double p_miss)
      : lag_s_(lag_s), p_miss_(p_miss) {
    if (lag_s_ < 0.0) throw ConfigError("pipe.lag must be >= 0");
    if (p_miss_ < 0.0 || p_miss_ > 1.0) throw ConfigError("pipe.p_miss must be in [0,1]");
  }

  void push(std::vector<double> report, double now);

  // Processes deliveries due by `now` and returns the held value.
  const std::vector<double>& poll(double now, RandomStream& rng);

  bool valid() const { return valid_; }
  void clear();

 private:
  double lag_s_;
  double p_miss_;
  std::deque<std::pair<double, std::vector<double>>> in_flight_;  // (deliver_at, report)
  std::vector<double> held_;
  bool valid_ = false;
};

// First-order low-pass: y_t = c*x_t + (1-c)*y_{t-1}, seeded with y_0 = x_0.
struct EmaState {
  double value = 0.0;
  bool initialized = false;
};

double ema_filter(double x, EmaState& state, double ema_constant);

// Streaming standardization with Welford moments, clipped to [-10, 10].
// The sample updates the moments before being standardized, so the very
// first value always maps to 0.
class RunningNormalizer {
 public:
  explicit RunningNormalizer(int channels)
      : mean_(channels, 0.0), m2_(channels, 0.0), count_(channels, 0) {}

  double normalize(int channel, double x);
  void normalize_vector(std::span<const double> x, std::span<double> out);

  std::span<const double> mean() const { return mean_; }
  std::span<const double> m2() const { return m2_; }
  std::span<const std::uint64_t> counts() const { return count_; }

  void restore(std::span<const double> mean, std::span<const double> m2,
               std::span<const std::uint64_t> counts);

 private:
  std::vector<double> mean_;
  std::vector<double> m2_;
  std::vector<std::uint64_t> count_;
};

// Jain's fairness index (sum x)^2 / (n * sum x^2) in [1/n, 1].
// All-zero input is defined as perfectly equal (1) and flagged.
struct JainResult {
  double index = 1.0;
  bool degenerate = false;
};

JainResult jain_index_flagged(std::span<const double> x);
double jain_index(std::span<const double> x);

// Percentile-anchored min-max normalization with the KPI's direction
// encoded: the better end maps to 1, the worse end to 0, clipped to [0,1].
double normalize_kpi(double x, double m_k, double M_k, bool higher_is_better);

struct PercentileAnchors {
  double low = 0.0;   // 5th percentile
  double high = 1.0;  // 95th percentile
  bool widened = false;
};

// Empirical 5th/95th percentiles with linear interpolation between order
// statistics. A degenerate (all-equal) trace widens by +/-1 and is flagged.
PercentileAnchors calibrate_percentiles(std::vector<double> samples);

// Fixed state layout: channel blocks [eta | T | J | P | L | H], cell-major
// within each block, length 6*M.
inline constexpr int kStateChannels = 6;

std::vector<double> build_state(std::span<const CellKPIWindow> windows);

// Corrupt -> lag/drop -> EMA -> running-normalize pipeline producing the
// agent-facing state. Normalizer statistics persist until restored or the
// pipeline is destroyed; the pipe and filters clear at episode boundaries.
class ObservationPipeline {
 public:
  ObservationPipeline(int num_cells, double lag_s, double p_miss, double ema_constant);

  struct Result {
    std::vector<double> state;
    bool valid = true;  // false before the first pipe delivery
  };

  Result process(std::span<const CellKPIWindow> corrupted, double now, RandomStream& rng);

  // Episode boundary: drop in-flight reports and filter memory, keep moments.
  void start_episode();

  RunningNormalizer& normalizer() { return normalizer_; }
  const RunningNormalizer& normalizer() const { return normalizer_; }
  int state_size() const { return num_cells_ * kStateChannels; }

 private:
  int num_cells_;
  double ema_constant_;
  ObservationPipe pipe_;
  std::vector<EmaState> ema_;
  RunningNormalizer normalizer_;
};

}  // namespace ransim
