#include "ransim/handover.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ransim {

A3Tracker::A3Tracker(int num_ues, int num_cells)
    : num_cells_(num_cells),
      hold_s_(static_cast<std::size_t>(num_ues) * num_cells, 0.0) {}

std::optional<int> A3Tracker::evaluate(int ue, int serving_cell, std::span<const double> rsrp_dbm,
                                       std::span<const double> cio_db, const A3Params& params,
                                       double tick_s) {
  RANSIM_REQUIRE(static_cast<int>(rsrp_dbm.size()) == num_cells_, "evaluate_a3: rsrp length");
  RANSIM_REQUIRE(static_cast<int>(cio_db.size()) == num_cells_, "evaluate_a3: cio length");
  double* hold = &hold_s_[static_cast<std::size_t>(ue) * num_cells_];
  const double serving_level = rsrp_dbm[serving_cell] + cio_db[serving_cell];

  int best = -1;
  double best_margin = 0.0;
  for (int n = 0; n < num_cells_; ++n) {
    if (n == serving_cell) {
      hold[n] = 0.0;
      continue;
    }
    const double margin = rsrp_dbm[n] + cio_db[n] - serving_level;
    if (margin > params.hysteresis_db) {
      hold[n] += tick_s;
      if (hold[n] >= params.ttt_s && (best < 0 || margin > best_margin)) {
        best = n;
        best_margin = margin;
      }
    } else {
      hold[n] = 0.0;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

void A3Tracker::reset_ue(int ue) {
  std::fill_n(hold_s_.begin() + static_cast<std::size_t>(ue) * num_cells_, num_cells_, 0.0);
}

void A3Tracker::reset_all() { std::fill(hold_s_.begin(), hold_s_.end(), 0.0); }

void mark_pingpongs(std::span<HOEvent> events, double t_pingpong_s) {
  std::map<int, const HOEvent*> last_by_ue;
  for (auto& ev : events) {
    auto it = last_by_ue.find(ev.ue_id);
    if (it != last_by_ue.end()) {
      const HOEvent& prev = *it->second;
      ev.pingpong = ev.target_cell == prev.source_cell &&
                    ev.trigger_time - prev.trigger_time <= t_pingpong_s;
    }
    last_by_ue[ev.ue_id] = &ev;
  }
}

HOOutcomes classify_outcomes(std::span<HOEvent> events, const SinrTrace& trace,
                             const A3Params& params) {
  mark_pingpongs(events, params.t_pingpong_s);

  // Below-threshold run of at least this many consecutive samples is an RLF.
  const int rlf_samples =
      std::max(1, static_cast<int>(std::ceil(params.rlf_duration_s / trace.tick_s)));

  HOOutcomes out;
  out.ho_count = events.size();
  if (events.empty()) return out;

  static const std::vector<double> kNoSamples;
  std::uint64_t pingpongs = 0;
  std::uint64_t failures = 0;
  for (auto& ev : events) {
    if (ev.pingpong) ++pingpongs;
    const auto& samples = ev.ue_id < static_cast<int>(trace.per_ue.size())
                              ? trace.per_ue[ev.ue_id]
                              : kNoSamples;
    const int first =
        static_cast<int>(std::floor((ev.trigger_time - trace.start_time_s) / trace.tick_s)) + 1;
    const int last = std::min<int>(
        static_cast<int>(samples.size()),
        first + static_cast<int>(std::round(params.t_hof_s / trace.tick_s)));
    int run = 0;
    bool failed = false;
    for (int i = std::max(first, 0); i < last; ++i) {
      run = samples[i] < params.rlf_sinr_db ? run + 1 : 0;
      if (run >= rlf_samples) {
        failed = true;
        break;
      }
    }
    ev.failure = failed;
    if (failed) ++failures;
  }
  out.pingpong_rate = static_cast<double>(pingpongs) / static_cast<double>(events.size());
  out.hof_rate = static_cast<double>(failures) / static_cast<double>(events.size());
  return out;
}

}  // namespace ransim
