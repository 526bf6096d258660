#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ransim/errors.hpp"
#include "ransim/rng.hpp"

namespace ransim {

struct BSConfig {
  int id = 0;                  // cell index, 0-based
  double x = 0.0;              // m
  double y = 0.0;              // m
  double tx_power_dbm = 43.0;  // total downlink power
  double bandwidth_mhz = 20.0;
  int prb_count = 106;
  double noise_figure_db = 9.0;
};

struct LinkQuality {
  double rsrp_dbm = 0.0;
  double sinr_db = 0.0;
  int cqi = 0;               // 0..15
  double spectral_eff = 0.0; // bit/s/Hz
};

constexpr double kPrbBandwidthHz = 180e3;  // 12 subcarriers at 15 kHz SCS
constexpr double kThermalNoiseDbmPerHz = -174.0;
constexpr double kPathLossMinDistanceM = 10.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Log-distance macro urban model with a flat close-in floor below 10 m.
double path_loss_db(double distance_m);

// Per-PRB reference power: total power split evenly over the PRBs, minus
// path loss, plus the current shadowing value for this link.
double rsrp_dbm(const BSConfig& bs, double ue_x, double ue_y, double shadow_db);

// Thermal noise over one PRB including the receiver noise figure.
double noise_dbm_per_prb(double noise_figure_db);

// Linear-domain SINR of the serving link against faded interferers plus
// noise. fading spans hold unit-mean exponential power gains, one per BS id.
double sinr_db(double serving_rsrp_dbm, double serving_fading,
               std::span<const double> interferer_rsrp_dbm,
               std::span<const double> interferer_fading, double noise_dbm);

// SINR -> CQI -> spectral efficiency lookup. 16 monotone entries; a SINR
// exactly on a threshold maps to the higher index.
class CqiTable {
 public:
  // Built-in copy of the table committed under core/data/cqi_table.txt.
  static const CqiTable& standard();

  // Parses a whitespace table "cqi min_sinr_db efficiency"; '#' comments.
  static CqiTable load(const std::string& path);

  int cqi_from_sinr(double sinr_db) const;
  double spectral_efficiency(int cqi) const;

  const std::array<double, 16>& thresholds_db() const { return min_sinr_db_; }
  const std::array<double, 16>& efficiencies() const { return efficiency_; }

 private:
  CqiTable() = default;
  void validate() const;

  std::array<double, 16> min_sinr_db_ = {};
  std::array<double, 16> efficiency_ = {};
};

// Bits one PRB carries in `duration_s` at the given efficiency.
inline double prb_bits(double spectral_eff, double duration_s) {
  return spectral_eff * kPrbBandwidthHz * duration_s;
}

// Log-normal shadowing per (UE, BS) pair, spatially correlated through an
// exponential decay over the distance each UE has travelled.
class ShadowingField {
 public:
  ShadowingField(int num_ues, int num_bs, double sigma_db, double decorrelation_m);

  void initialize(RandomStream& rng);

  // Evolves the UE's shadowing values after it moved `moved_m` metres.
  void advance(int ue, double moved_m, RandomStream& rng);

  double value_db(int ue, int bs) const { return values_db_[ue * num_bs_ + bs]; }

 private:
  int num_ues_;
  int num_bs_;
  double sigma_db_;
  double decorrelation_m_;
  std::vector<double> values_db_;
};

// Three sites on an equilateral triangle centred in the area. For other M,
// sites are spread on a circle of the same radius.
std::vector<BSConfig> make_cell_layout(int num_cells, double area_width, double area_height,
                                       double tx_power_dbm, int prb_count,
                                       double noise_figure_db, double bandwidth_mhz = 20.0);

}  // namespace ransim
