#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace ransim {

// Network-wide KPI summary for one control window or one episode.
struct KpiSummary {
  double throughput_bps = 0.0;
  double fairness = 1.0;   // Jain index over per-cell served rate
  double latency_s = 0.0;
  double jitter_s = 0.0;
  double plr = 0.0;
  double handovers = 0.0;  // event count
};

enum class Kpi : int {
  kThroughput = 0,
  kFairness = 1,
  kLatency = 2,
  kJitter = 3,
  kPlr = 4,
  kHandover = 5,
};

inline constexpr std::size_t kKpiCount = 6;

inline constexpr std::array<Kpi, kKpiCount> kAllKpis = {
    Kpi::kThroughput, Kpi::kFairness, Kpi::kLatency, Kpi::kJitter, Kpi::kPlr, Kpi::kHandover};

constexpr bool kpi_higher_is_better(Kpi k) {
  return k == Kpi::kThroughput || k == Kpi::kFairness;
}

constexpr std::string_view kpi_name(Kpi k) {
  switch (k) {
    case Kpi::kThroughput: return "throughput_bps";
    case Kpi::kFairness: return "fairness";
    case Kpi::kLatency: return "latency_s";
    case Kpi::kJitter: return "jitter_s";
    case Kpi::kPlr: return "plr";
    case Kpi::kHandover: return "handovers";
  }
  return "unknown";
}

constexpr double kpi_value(const KpiSummary& s, Kpi k) {
  switch (k) {
    case Kpi::kThroughput: return s.throughput_bps;
    case Kpi::kFairness: return s.fairness;
    case Kpi::kLatency: return s.latency_s;
    case Kpi::kJitter: return s.jitter_s;
    case Kpi::kPlr: return s.plr;
    case Kpi::kHandover: return s.handovers;
  }
  return 0.0;
}

constexpr void set_kpi_value(KpiSummary& s, Kpi k, double v) {
  switch (k) {
    case Kpi::kThroughput: s.throughput_bps = v; break;
    case Kpi::kFairness: s.fairness = v; break;
    case Kpi::kLatency: s.latency_s = v; break;
    case Kpi::kJitter: s.jitter_s = v; break;
    case Kpi::kPlr: s.plr = v; break;
    case Kpi::kHandover: s.handovers = v; break;
  }
}

}  // namespace ransim
