#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "ransim/errors.hpp"
#include "ransim/rng.hpp"

namespace ransim {

enum class FlowKind { kFullBuffer, kPoissonBursty };

struct FlowSpec {
  FlowKind kind = FlowKind::kPoissonBursty;
  double arrival_rate_pps = 100.0;  // bursty only
  int packet_bytes = 1500;
  double qci_weight = 1.0;

  void validate() const {
    if (kind == FlowKind::kPoissonBursty && arrival_rate_pps < 0.0)
      throw ConfigError("flow.arrival_rate must be >= 0");
    if (packet_bytes <= 0) throw ConfigError("flow.packet_bytes must be > 0");
    if (qci_weight <= 0.0) throw ConfigError("flow.qci_weight must be > 0");
  }
};

struct SchedulerParams {
  double beta = 0.5;      // delay-awareness exponent
  double rate_ema = 0.05; // smoothing for the PF average rate
  int harq_max = 4;       // total transmission attempts per transport block
  double bler_target = 0.1;

  void validate() const {
    if (beta < 0.0 || beta > 1.0) throw ConfigError("scheduler.beta must be in [0,1]");
    if (rate_ema <= 0.0 || rate_ema > 1.0) throw ConfigError("scheduler.rate_ema must be in (0,1]");
    if (harq_max < 1) throw ConfigError("scheduler.harq_max must be >= 1");
    if (bler_target < 0.0 || bler_target >= 1.0)
      throw ConfigError("scheduler.bler_target must be in [0,1)");
  }
};

struct Packet {
  double arrival_time = 0.0;  // s
  int size_bytes = 0;
};

// FIFO with a byte capacity; overflow arrivals are counted, not queued.
// Full-buffer flows bypass the capacity check.
class PacketQueue {
 public:
  explicit PacketQueue(long capacity_bytes = 0) : capacity_bytes_(capacity_bytes) {}

  // Returns false when the packet was dropped for lack of room.
  bool push(const Packet& pkt, bool enforce_capacity = true);
  void pop_front(int count);

  bool empty() const { return packets_.empty(); }
  int size() const { return static_cast<int>(packets_.size()); }
  long backlog_bytes() const { return backlog_bytes_; }
  long capacity_bytes() const { return capacity_bytes_; }
  const Packet& front(int i = 0) const { return packets_[i]; }

  // Age of the oldest packet; 0 when empty.
  double hol_delay(double now) const {
    return packets_.empty() ? 0.0 : now - packets_.front().arrival_time;
  }

  std::uint64_t drops() const { return drops_; }

 private:
  std::deque<Packet> packets_;
  long capacity_bytes_ = 0;
  long backlog_bytes_ = 0;
  std::uint64_t drops_ = 0;
};

// A transport block that failed and is awaiting retransmission.
struct PendingTb {
  int packet_count = 0;
  long bytes = 0;
  int attempts = 0;  // transmissions so far
};

// Per-UE downlink traffic and link-adaptation state.
struct UETrafficState {
  int ue_id = 0;
  FlowSpec flow;
  PacketQueue queue;
  std::optional<PendingTb> pending;
  double avg_rate_bps = 1e5;  // PF exponential average, floored positive

  long backlog_bytes() const { return queue.backlog_bytes(); }
};

// Arrivals for one tick. Full-buffer flows are topped up with packets
// stamped `now`; bursty flows draw Poisson(rate * tick) packets.
// Returns the number of offered (arrived) packets, including any dropped.
int generate_traffic(UETrafficState& ue, double tick, double now, RandomStream& rng);

// Delay-aware weighted proportional-fair score.
// hol and hol_mean must already carry the zero-delay substitution.
double pf_score(double rate_bps, double avg_rate_bps, double hol_s, double hol_mean_s,
                double beta, double qci_weight);

// Floor applied to head-of-line delays so idle-but-backlogged UEs never
// score exactly zero.
inline double effective_hol(double hol_s, double tick_s) {
  return hol_s > 0.0 ? hol_s : tick_s / 10.0;
}

// One UE's view for the greedy allocator.
struct SchedCandidate {
  int ue_id = 0;
  double rate_bps = 0.0;      // instantaneous rate with one PRB's worth of airtime scaled out
  double per_prb_bits = 0.0;  // bits one PRB carries this tick
  double avg_rate_bps = 1.0;
  double hol_s = 0.0;         // effective (already substituted)
  double qci_weight = 1.0;
  long backlog_bytes = 0;
};

struct Grant {
  int ue_id = 0;
  int prbs = 0;
};

// Greedy PRB-by-PRB assignment to the current highest score. After each
// grant the winner is rescored with its PF average lifted by the rate it
// has been granted this tick, which spreads PRBs across equal competitors.
// Ties go to the lowest ue_id. Candidates with zero per-PRB capacity are
// never scheduled.
std::vector<Grant> allocate_prbs(int prb_budget, std::span<const SchedCandidate> candidates,
                                 const SchedulerParams& params, double tick_s);

struct ServeResult {
  long served_bytes = 0;              // bytes removed from the queue (delivered)
  std::vector<double> delivered_delays;  // s, one per delivered packet, FIFO order
  int delivered_packets = 0;
  int lost_packets = 0;               // HARQ exhaustion this tick
  bool attempted = false;             // a transport block was transmitted
  bool first_attempt_failed = false;
};

// Transmits one transport block for a UE that received `granted_prbs`.
// A pending block is retransmitted as-is; otherwise a fresh block is formed
// from whole packets at the queue head that fit the granted capacity.
ServeResult serve_and_update(UETrafficState& ue, int granted_prbs, double per_prb_bits,
                             double now, const SchedulerParams& params, RandomStream& rng);

// End-of-tick PF average update with the rate scheduled this tick.
void update_avg_rate(UETrafficState& ue, double scheduled_bits, double tick_s,
                     const SchedulerParams& params);

// Windowed KPI accumulator for one cell.
struct WindowAccumulator {
  std::uint64_t prb_granted = 0;
  std::uint64_t prb_capacity = 0;  // prb_count * ticks elapsed
  double delivered_bits = 0.0;
  double delay_sum_s = 0.0;
  std::uint64_t delay_count = 0;
  double jitter_abs_sum_s = 0.0;
  std::uint64_t jitter_pairs = 0;
  double last_delay_s = 0.0;
  bool has_last_delay = false;
  std::uint64_t offered_packets = 0;
  std::uint64_t dropped_packets = 0;  // queue overflow
  std::uint64_t lost_packets = 0;     // HARQ exhaustion
  std::uint64_t ho_events = 0;        // handovers touching this cell

  void add_delay(double delay_s);
  void reset();
};

struct WindowStats {
  double throughput_bps = 0.0;
  double mean_delay_s = 0.0;
  double jitter_s = 0.0;
  double plr = 0.0;
  double utilization = 0.0;
  bool empty = false;  // no deliveries and no offered packets in the window
};

WindowStats window_stats(const WindowAccumulator& acc, double window_s);

}  // namespace ransim
