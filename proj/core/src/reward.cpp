#include "ransim/reward.hpp"

#include <cmath>

namespace ransim {

void RewardWeights::renormalize() {
  const double s = sum();
  if (s <= 0.0) throw ConfigError("reward weights: sum must be positive to renormalize");
  for (Kpi k : kAllKpis) set_weight(k, weight(k) / s);
}

void RewardWeights::validate() const {
  for (Kpi k : kAllKpis) {
    if (weight(k) < 0.0) throw ConfigError("reward weights must be >= 0");
  }
  if (std::abs(sum() - 1.0) > 1e-9) throw ConfigError("reward weights must sum to 1");
  if (smoothness_coef < 0.0) throw ConfigError("reward smoothness coefficient must be >= 0");
}

double smoothness_penalty(std::span<const double> a_t, std::span<const double> a_prev,
                          double scale, SmoothnessForm form) {
  RANSIM_REQUIRE(a_t.size() == a_prev.size(), "smoothness_penalty: action length mismatch");
  double sq = 0.0;
  for (std::size_t i = 0; i < a_t.size(); ++i) {
    const double d = a_t[i] - a_prev[i];
    sq += d * d;
  }
  if (form == SmoothnessForm::kL2Norm) return -scale * std::sqrt(sq);
  RANSIM_REQUIRE(scale > 0.0, "smoothness_penalty: delta_a must be > 0");
  return -sq / (scale * scale);
}

RewardBreakdown compute_reward(const KpiSummary& kpis, std::span<const double> a_t,
                               std::span<const double> a_prev, const RewardWeights& weights,
                               const RewardRefs& refs, SmoothnessForm form,
                               double squared_delta_a) {
  if (!refs.calibrated) throw ConfigError("compute_reward: percentile anchors not calibrated");
  weights.validate();

  RewardBreakdown bd;
  for (Kpi k : kAllKpis) {
    const auto i = static_cast<std::size_t>(k);
    const auto& a = refs.anchors[i];
    bd.normalized[i] = normalize_kpi(kpi_value(kpis, k), a.low, a.high, kpi_higher_is_better(k));
    bd.weighted[i] = weights.weight(k) * bd.normalized[i];
    bd.total += bd.weighted[i];
  }
  const double scale = form == SmoothnessForm::kL2Norm ? weights.smoothness_coef : squared_delta_a;
  bd.smoothness = smoothness_penalty(a_t, a_prev, scale, form);
  bd.total += bd.smoothness;
  return bd;
}

LegacyTerms legacy_terms(std::span<const CellKPIWindow> cells, double ho_count,
                         const RewardRefs& refs) {
  RANSIM_REQUIRE(!cells.empty(), "legacy_terms: need at least one cell");
  if (refs.t_max_bps <= 0.0 || refs.j_max_s <= 0.0 || refs.l_max_s <= 0.0 || refs.h_max <= 0.0)
    throw ConfigError("legacy reward refs must be positive");

  auto unit = [](double v) { return std::clamp(v, 0.0, 1.0); };
  LegacyTerms t;
  std::vector<double> utilization(cells.size());
  const double inv_m = 1.0 / static_cast<double>(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    t.thr += unit(cells[i].throughput_bps / refs.t_max_bps) * inv_m;
    t.jit += unit(cells[i].jitter_s / refs.j_max_s) * inv_m;
    t.lat += unit(cells[i].latency_s / refs.l_max_s) * inv_m;
    t.plr += unit(cells[i].plr) * inv_m;
    utilization[i] = cells[i].utilization;
  }
  t.fair = jain_index(utilization);
  t.ho = unit(ho_count / refs.h_max);
  return t;
}

double combine_legacy(const LegacyTerms& t, const RewardWeights& w) {
  return w.throughput * t.thr - w.jitter * t.jit - w.latency * t.lat + w.fairness * t.fair -
         w.plr * t.plr - w.handover * t.ho;
}

double compute_reward_legacy(std::span<const CellKPIWindow> cells, double ho_count,
                             const RewardWeights& weights, const RewardRefs& refs) {
  return combine_legacy(legacy_terms(cells, ho_count, refs), weights);
}

}  // namespace ransim
