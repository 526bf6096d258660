#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ransim/channel.hpp"
#include "ransim/handover.hpp"
#include "ransim/kpi.hpp"
#include "ransim/mobility.hpp"
#include "ransim/reward.hpp"
#include "ransim/rng.hpp"
#include "ransim/scheduler.hpp"
#include "ransim/telemetry.hpp"

namespace ransim {

struct TrafficClass {
  FlowSpec flow;
  double fraction = 1.0;  // share of the UE population
};

struct SimConfig {
  int num_cells = 3;
  int num_ues = 45;
  double area_width_m = 1000.0;
  double area_height_m = 1000.0;
  double control_interval_s = 1.0;  // decision cadence and KPI window
  double tick_s = 0.1;              // mobility/scheduling sub-tick
  int episode_steps = 600;
  int warmup_ticks = 10;            // simulated before the first observation
  double cio_min_db = -6.0;
  double cio_max_db = 6.0;
  double gamma = 0.99;

  MobilityParams mobility;

  // Radio plane.
  double tx_power_dbm = 43.0;
  double bandwidth_mhz = 20.0;
  int prb_count = 106;
  double noise_figure_db = 9.0;
  double shadow_sigma_db = 6.0;
  double shadow_decorrelation_m = 50.0;
  std::string cqi_table_path;  // empty selects the built-in table

  // Traffic and scheduling.
  std::vector<TrafficClass> traffic;
  int queue_capacity_packets = 500;
  SchedulerParams scheduler;

  A3Params handover;
  NoiseParams noise;

  // Observation pipe.
  double pipe_lag_s = 0.0;
  double pipe_p_miss = 0.0;
  double ema_constant = 0.3;

  int ticks_per_step() const;
  void validate() const;
};

enum class RewardMode { kCanonical, kLegacy, kNone };

struct RewardSettings {
  RewardMode mode = RewardMode::kCanonical;
  RewardWeights weights;
  RewardRefs refs;
  SmoothnessForm smoothness_form = SmoothnessForm::kL2Norm;
  double squared_delta_a = 12.0;
};

struct StepInfo {
  KpiSummary clean;                         // ground-truth window KPIs
  std::vector<CellKPIWindow> cell_windows;  // clean, per cell
  RewardBreakdown reward_breakdown;
  std::vector<HOEvent> events;              // handovers in this window
  std::vector<double> cio_db;               // installed action
  std::vector<double> noisy_rsrp_dbm;       // per-cell diagnostics
  std::vector<double> noisy_cqi;
  bool obs_valid = true;
};

struct StepResult {
  std::vector<double> observation;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

// Episode-level rollup of the six KPIs plus control-smoothness stats.
struct EpisodeSummary {
  KpiSummary kpis;
  HOOutcomes outcomes;
  double mean_reward = 0.0;
  double mean_action_delta = 0.0;  // per-step ||delta CIO||_2, dB
  int steps = 0;
};

struct TraceSample {
  double time_s = 0.0;
  std::vector<std::array<double, 2>> positions;
  std::vector<int> serving_cell;
  std::vector<HOEvent> events;
};

// Minimal episodic environment surface shared by the 5G simulator and the
// test stubs the trainers are exercised against.
class IEnv {
 public:
  virtual ~IEnv() = default;
  virtual int observation_size() const = 0;
  virtual int action_size() const = 0;
  virtual std::vector<double> reset(std::uint64_t seed) = 0;
  virtual StepResult step(std::span<const double> action) = 0;
};

// Downlink multi-cell network as an episodic MDP: actions install per-cell
// CIO biases, one step simulates a full control interval.
class NetworkEnv : public IEnv {
 public:
  NetworkEnv(SimConfig config, RewardSettings reward);
  ~NetworkEnv() override;

  NetworkEnv(const NetworkEnv&) = delete;
  NetworkEnv& operator=(const NetworkEnv&) = delete;

  int observation_size() const override;
  int action_size() const override;

  std::vector<double> reset(std::uint64_t seed) override;
  StepResult step(std::span<const double> action) override;

  // Finalizes handover classification for the episode so far.
  EpisodeSummary episode_summary();

  const std::vector<HOEvent>& episode_events() const;
  const SimConfig& config() const;
  ObservationPipeline& observation_pipeline();

  void set_trace_hook(std::function<void(const TraceSample&)> hook);

  int serving_cell(int ue) const;  // exposed for attachment tests

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Affine map from a squashed action in [-1,1] to the CIO range.
double scale_action(double squashed, double cio_min_db, double cio_max_db);

}  // namespace ransim
