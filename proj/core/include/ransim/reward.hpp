#pragma once

#include <array>
#include <span>

#include "ransim/errors.hpp"
#include "ransim/kpi.hpp"
#include "ransim/telemetry.hpp"

namespace ransim {

struct RewardWeights {
  double throughput = 0.35;
  double fairness = 0.20;
  double latency = 0.20;
  double plr = 0.10;
  double jitter = 0.10;
  double handover = 0.05;
  double smoothness_coef = 0.10;  // lambda_s

  double weight(Kpi k) const {
    switch (k) {
      case Kpi::kThroughput: return throughput;
      case Kpi::kFairness: return fairness;
      case Kpi::kLatency: return latency;
      case Kpi::kJitter: return jitter;
      case Kpi::kPlr: return plr;
      case Kpi::kHandover: return handover;
    }
    return 0.0;
  }

  void set_weight(Kpi k, double v) {
    switch (k) {
      case Kpi::kThroughput: throughput = v; break;
      case Kpi::kFairness: fairness = v; break;
      case Kpi::kLatency: latency = v; break;
      case Kpi::kJitter: jitter = v; break;
      case Kpi::kPlr: plr = v; break;
      case Kpi::kHandover: handover = v; break;
    }
  }

  double sum() const { return throughput + fairness + latency + jitter + plr + handover; }

  // Rescales the six KPI weights to sum to one (used after ablation edits).
  void renormalize();

  void validate() const;
};

struct RewardRefs {
  std::array<PercentileAnchors, kKpiCount> anchors;
  bool calibrated = false;

  // Reference maxima for the legacy signed form.
  double t_max_bps = 106.0 * 180e3 * 5.5547;  // cell peak PHY rate
  double j_max_s = 0.05;
  double l_max_s = 0.1;
  double h_max = 10.0;
};

enum class SmoothnessForm {
  kL2Norm,            // -lambda_s * ||a_t - a_prev||_2
  kSquaredNormalized  // -||a_t - a_prev||_2^2 / delta_a^2
};

// Nonpositive penalty on action change. `scale` is lambda_s for the L2 form
// and the delta_a normalizer for the squared form.
double smoothness_penalty(std::span<const double> a_t, std::span<const double> a_prev,
                          double scale, SmoothnessForm form = SmoothnessForm::kL2Norm);

struct RewardBreakdown {
  std::array<double, kKpiCount> normalized = {};  // directional x-hat per KPI
  std::array<double, kKpiCount> weighted = {};
  double smoothness = 0.0;  // <= 0
  double total = 0.0;
};

// Canonical training reward: weighted sum of percentile-normalized KPIs
// minus the action-smoothness penalty. Actions are the installed CIO
// vectors in dB.
RewardBreakdown compute_reward(const KpiSummary& kpis, std::span<const double> a_t,
                               std::span<const double> a_prev, const RewardWeights& weights,
                               const RewardRefs& refs,
                               SmoothnessForm form = SmoothnessForm::kL2Norm,
                               double squared_delta_a = 12.0);

// Signed-combination form with per-term reference maxima.
struct LegacyTerms {
  double thr = 0.0;
  double jit = 0.0;
  double lat = 0.0;
  double fair = 0.0;
  double plr = 0.0;
  double ho = 0.0;
};

LegacyTerms legacy_terms(std::span<const CellKPIWindow> cells, double ho_count,
                         const RewardRefs& refs);

double combine_legacy(const LegacyTerms& terms, const RewardWeights& weights);

double compute_reward_legacy(std::span<const CellKPIWindow> cells, double ho_count,
                             const RewardWeights& weights, const RewardRefs& refs);

}  // namespace ransim
