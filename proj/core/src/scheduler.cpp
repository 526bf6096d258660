#include "ransim/scheduler.hpp"

#include <algorithm>
#include <cmath>

namespace ransim {

namespace {
// Keeps a full-buffer queue comfortably above any single-tick transport
// block (106 PRBs at top CQI move ~1.3 MB per 0.1 s tick).
constexpr long kFullBufferFloorBytes = 2'000'000;
constexpr double kMinAvgRateBps = 1.0;
}  // namespace

bool PacketQueue::push(const Packet& pkt, bool enforce_capacity) {
  if (enforce_capacity && backlog_bytes_ + pkt.size_bytes > capacity_bytes_) {
    ++drops_;
    return false;
  }
  packets_.push_back(pkt);
  backlog_bytes_ += pkt.size_bytes;
  return true;
}

void PacketQueue::pop_front(int count) {
  for (int i = 0; i < count && !packets_.empty(); ++i) {
    backlog_bytes_ -= packets_.front().size_bytes;
    packets_.pop_front();
  }
}

int generate_traffic(UETrafficState& ue, double tick, double now, RandomStream& rng) {
  RANSIM_REQUIRE(tick > 0.0, "generate_traffic: tick must be > 0");
  int offered = 0;
  if (ue.flow.kind == FlowKind::kFullBuffer) {
    while (ue.queue.backlog_bytes() < kFullBufferFloorBytes) {
      ue.queue.push({now, ue.flow.packet_bytes}, /*enforce_capacity=*/false);
      ++offered;
    }
  } else {
    const auto arrivals = rng.poisson(ue.flow.arrival_rate_pps * tick);
    for (std::uint64_t i = 0; i < arrivals; ++i) {
      ue.queue.push({now, ue.flow.packet_bytes});
      ++offered;
    }
  }
  return offered;
}

double pf_score(double rate_bps, double avg_rate_bps, double hol_s, double hol_mean_s,
                double beta, double qci_weight) {
  RANSIM_REQUIRE(avg_rate_bps > 0.0, "pf_score: average rate must be > 0");
  RANSIM_REQUIRE(hol_mean_s > 0.0, "pf_score: mean HOL must be > 0");
  const double rate_term = rate_bps / avg_rate_bps;
  const double delay_term = hol_s / hol_mean_s;
  return std::pow(rate_term, 1.0 - beta) * std::pow(delay_term, beta) * qci_weight;
}

std::vector<Grant> allocate_prbs(int prb_budget, std::span<const SchedCandidate> candidates,
                                 const SchedulerParams& params, double tick_s) {
  struct Slot {
    const SchedCandidate* cand;
    double granted_bits = 0.0;
    int prbs = 0;
  };
  std::vector<Slot> slots;
  slots.reserve(candidates.size());
  double hol_sum = 0.0;
  for (const auto& c : candidates) {
    if (c.backlog_bytes <= 0 || c.per_prb_bits <= 0.0) continue;
    slots.push_back({&c});
    hol_sum += c.hol_s;
  }
  std::vector<Grant> grants;
  if (slots.empty()) return grants;
  // Ascending id order makes the strict `>` comparison break ties low.
  std::sort(slots.begin(), slots.end(),
            [](const Slot& a, const Slot& b) { return a.cand->ue_id < b.cand->ue_id; });
  const double hol_mean = hol_sum / static_cast<double>(slots.size());

  for (int prb = 0; prb < prb_budget; ++prb) {
    int best = -1;
    double best_score = 0.0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& c = *slots[i].cand;
      if (slots[i].granted_bits >= 8.0 * static_cast<double>(c.backlog_bytes)) continue;
      // Virtual PF update: bits already granted this tick raise the average.
      const double virtual_avg = c.avg_rate_bps + slots[i].granted_bits / tick_s;
      const double score = pf_score(c.rate_bps, virtual_avg, c.hol_s, hol_mean, params.beta,
                                    c.qci_weight);
      if (best < 0 || score > best_score) {
        best = static_cast<int>(i);
        best_score = score;
      }
    }
    if (best < 0) break;  // everyone satisfied
    slots[best].prbs += 1;
    slots[best].granted_bits += slots[best].cand->per_prb_bits;
  }

  for (const auto& slot : slots) {
    if (slot.prbs > 0) grants.push_back({slot.cand->ue_id, slot.prbs});
  }
  return grants;
}

ServeResult serve_and_update(UETrafficState& ue, int granted_prbs, double per_prb_bits,
                             double now, const SchedulerParams& params, RandomStream& rng) {
  ServeResult result;
  if (granted_prbs <= 0) return result;

  auto transmit_ok = [&] {
    return params.bler_target <= 0.0 || !rng.bernoulli(params.bler_target);
  };

  if (ue.pending.has_value()) {
    // HARQ retransmission of the stored block; the grant carries it whole.
    PendingTb& tb = *ue.pending;
    result.attempted = true;
    tb.attempts += 1;
    if (transmit_ok()) {
      for (int i = 0; i < tb.packet_count; ++i) {
        result.delivered_delays.push_back(now - ue.queue.front(i).arrival_time);
      }
      result.delivered_packets = tb.packet_count;
      result.served_bytes = tb.bytes;
      ue.queue.pop_front(tb.packet_count);
      ue.pending.reset();
    } else if (tb.attempts >= params.harq_max) {
      result.lost_packets = tb.packet_count;
      ue.queue.pop_front(tb.packet_count);
      ue.pending.reset();
    }
    return result;
  }

  const double capacity_bytes = static_cast<double>(granted_prbs) * per_prb_bits / 8.0;
  int tb_packets = 0;
  long tb_bytes = 0;
  for (int i = 0; i < ue.queue.size(); ++i) {
    const long next = tb_bytes + ue.queue.front(i).size_bytes;
    if (static_cast<double>(next) > capacity_bytes) break;
    tb_bytes = next;
    ++tb_packets;
  }
  if (tb_packets == 0) return result;  // grant too small for a whole packet

  result.attempted = true;
  if (transmit_ok()) {
    for (int i = 0; i < tb_packets; ++i) {
      result.delivered_delays.push_back(now - ue.queue.front(i).arrival_time);
    }
    result.delivered_packets = tb_packets;
    result.served_bytes = tb_bytes;
    ue.queue.pop_front(tb_packets);
  } else {
    result.first_attempt_failed = true;
    if (params.harq_max <= 1) {
      result.lost_packets = tb_packets;
      ue.queue.pop_front(tb_packets);
    } else {
      ue.pending = PendingTb{tb_packets, tb_bytes, 1};
    }
  }
  return result;
}

void update_avg_rate(UETrafficState& ue, double scheduled_bits, double tick_s,
                     const SchedulerParams& params) {
  const double rate = scheduled_bits / tick_s;
  ue.avg_rate_bps = (1.0 - params.rate_ema) * ue.avg_rate_bps + params.rate_ema * rate;
  ue.avg_rate_bps = std::max(ue.avg_rate_bps, kMinAvgRateBps);
}

void WindowAccumulator::add_delay(double delay_s) {
  delay_sum_s += delay_s;
  ++delay_count;
  if (has_last_delay) {
    jitter_abs_sum_s += std::abs(delay_s - last_delay_s);
    ++jitter_pairs;
  }
  last_delay_s = delay_s;
  has_last_delay = true;
}

void WindowAccumulator::reset() { *this = WindowAccumulator{}; }

WindowStats window_stats(const WindowAccumulator& acc, double window_s) {
  RANSIM_REQUIRE(window_s > 0.0, "window_stats: window length must be > 0");
  WindowStats stats;
  stats.throughput_bps = acc.delivered_bits / window_s;
  stats.mean_delay_s = acc.delay_count > 0 ? acc.delay_sum_s / acc.delay_count : 0.0;
  stats.jitter_s = acc.jitter_pairs > 0 ? acc.jitter_abs_sum_s / acc.jitter_pairs : 0.0;
  const std::uint64_t lost = acc.dropped_packets + acc.lost_packets;
  stats.plr = acc.offered_packets > 0 ? static_cast<double>(lost) / acc.offered_packets : 0.0;
  stats.utilization =
      acc.prb_capacity > 0 ? static_cast<double>(acc.prb_granted) / acc.prb_capacity : 0.0;
  stats.empty = acc.delay_count == 0 && acc.offered_packets == 0;
  return stats;
}

}  // namespace ransim
