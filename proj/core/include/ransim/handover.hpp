#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ransim/errors.hpp"

namespace ransim {

struct A3Params {
  double hysteresis_db = 2.0;
  double ttt_s = 0.32;
  double t_pingpong_s = 5.0;   // A->B->A faster than this is a ping-pong
  double t_hof_s = 1.0;        // RLF watch window after a handover
  double rlf_sinr_db = -8.0;
  double rlf_duration_s = 0.2; // SINR must stay below threshold this long
  double interruption_s = 0.05;

  void validate() const {
    if (hysteresis_db < 0.0) throw ConfigError("handover.hysteresis must be >= 0");
    if (ttt_s < 0.0) throw ConfigError("handover.ttt must be >= 0");
    if (t_pingpong_s < 0.0 || t_hof_s < 0.0 || rlf_duration_s < 0.0 || interruption_s < 0.0)
      throw ConfigError("handover timers must be >= 0");
  }
};

struct HOEvent {
  int ue_id = 0;
  int source_cell = 0;
  int target_cell = 0;
  double trigger_time = 0.0;  // s
  bool failure = false;       // RLF within t_hof after the handover
  bool pingpong = false;
};

// Per-(UE, neighbour) time-to-trigger bookkeeping for the A3 rule
//   RSRP_n + CIO_n > RSRP_s + CIO_s + hysteresis.
// The condition must hold continuously for ttt before a target is returned;
// any lapse resets that neighbour's timer. Among several qualified
// neighbours the largest biased margin wins, ties to the lowest cell id.
class A3Tracker {
 public:
  A3Tracker(int num_ues, int num_cells);

  std::optional<int> evaluate(int ue, int serving_cell, std::span<const double> rsrp_dbm,
                              std::span<const double> cio_db, const A3Params& params,
                              double tick_s);

  void reset_ue(int ue);
  void reset_all();

 private:
  int num_cells_;
  std::vector<double> hold_s_;  // [ue * num_cells + cell]
};

// Serving-link SINR sampled at a fixed tick cadence for every UE, used to
// decide whether a handover degenerated into radio-link failure.
struct SinrTrace {
  double tick_s = 0.1;
  double start_time_s = 0.0;
  std::vector<std::vector<double>> per_ue;  // [ue][sample]

  void record(int ue, double sinr_db) { per_ue[ue].push_back(sinr_db); }
};

struct HOOutcomes {
  std::uint64_t ho_count = 0;
  double pingpong_rate = 0.0;
  double hof_rate = 0.0;
};

// Flags events that return a UE to its previous cell within t_pingpong.
// The later event of the pair carries the flag.
void mark_pingpongs(std::span<HOEvent> events, double t_pingpong_s);

// Marks failures from the SINR trace and returns aggregate rates. Events
// must be in trigger-time order per UE.
HOOutcomes classify_outcomes(std::span<HOEvent> events, const SinrTrace& trace,
                             const A3Params& params);

}  // namespace ransim
