#include "ransim/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ransim {

double path_loss_db(double distance_m) {
  RANSIM_REQUIRE(distance_m >= 0.0, "path_loss: distance must be >= 0");
  const double d_km = std::max(distance_m, kPathLossMinDistanceM) / 1000.0;
  return 128.1 + 37.6 * std::log10(d_km);
}

double rsrp_dbm(const BSConfig& bs, double ue_x, double ue_y, double shadow_db) {
  const double dx = ue_x - bs.x;
  const double dy = ue_y - bs.y;
  const double dist = std::sqrt(dx * dx + dy * dy);
  const double per_prb_tx = bs.tx_power_dbm - linear_to_db(static_cast<double>(bs.prb_count));
  return per_prb_tx - path_loss_db(dist) + shadow_db;
}

double noise_dbm_per_prb(double noise_figure_db) {
  return kThermalNoiseDbmPerHz + linear_to_db(kPrbBandwidthHz) + noise_figure_db;
}

double sinr_db(double serving_rsrp_dbm, double serving_fading,
               std::span<const double> interferer_rsrp_dbm,
               std::span<const double> interferer_fading, double noise_dbm) {
  RANSIM_REQUIRE(interferer_rsrp_dbm.size() == interferer_fading.size(),
                 "sinr: interferer spans must have equal length");
  const double signal_mw = db_to_linear(serving_rsrp_dbm) * serving_fading;
  double denom_mw = db_to_linear(noise_dbm);
  for (std::size_t i = 0; i < interferer_rsrp_dbm.size(); ++i) {
    denom_mw += db_to_linear(interferer_rsrp_dbm[i]) * interferer_fading[i];
  }
  return linear_to_db(signal_mw / denom_mw);
}

namespace {

// Mirrors core/data/cqi_table.txt; the unit test cross-checks both copies.
constexpr double kMinSinrDb[16] = {-1e9, -6.7, -4.7, -2.3, 0.2,  2.4,  4.3,  5.9,
                                   8.1,  10.3, 11.7, 14.1, 16.3, 18.7, 21.0, 22.7};
constexpr double kEfficiency[16] = {0.0,    0.1523, 0.2344, 0.3770, 0.6016, 0.8770,
                                    1.1758, 1.4766, 1.9141, 2.4063, 2.7305, 3.3223,
                                    3.9023, 4.5234, 5.1152, 5.5547};

}  // namespace

const CqiTable& CqiTable::standard() {
  static const CqiTable table = [] {
    CqiTable t;
    for (int i = 0; i < 16; ++i) {
      t.min_sinr_db_[i] = kMinSinrDb[i];
      t.efficiency_[i] = kEfficiency[i];
    }
    t.validate();
    return t;
  }();
  return table;
}

CqiTable CqiTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cqi table: cannot open " + path);
  CqiTable t;
  bool seen[16] = {};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    int cqi;
    double min_sinr, eff;
    if (!(row >> cqi >> min_sinr >> eff)) continue;
    if (cqi < 0 || cqi > 15) throw ConfigError("cqi table: index out of range in " + path);
    t.min_sinr_db_[cqi] = min_sinr;
    t.efficiency_[cqi] = eff;
    seen[cqi] = true;
  }
  for (int i = 0; i < 16; ++i) {
    if (!seen[i]) throw ConfigError("cqi table: missing row for cqi " + std::to_string(i));
  }
  t.validate();
  return t;
}

void CqiTable::validate() const {
  for (int i = 1; i < 16; ++i) {
    if (min_sinr_db_[i] <= min_sinr_db_[i - 1])
      throw ConfigError("cqi table: SINR thresholds must be strictly increasing");
    if (efficiency_[i] < efficiency_[i - 1])
      throw ConfigError("cqi table: efficiencies must be nondecreasing");
  }
  if (efficiency_[0] != 0.0) throw ConfigError("cqi table: cqi 0 must carry zero efficiency");
}

int CqiTable::cqi_from_sinr(double sinr_db) const {
  int cqi = 0;
  for (int i = 15; i >= 1; --i) {
    if (sinr_db >= min_sinr_db_[i]) {
      cqi = i;
      break;
    }
  }
  return cqi;
}

double CqiTable::spectral_efficiency(int cqi) const {
  RANSIM_REQUIRE(cqi >= 0 && cqi <= 15, "spectral_efficiency: cqi must be in 0..15");
  return efficiency_[cqi];
}

ShadowingField::ShadowingField(int num_ues, int num_bs, double sigma_db, double decorrelation_m)
    : num_ues_(num_ues),
      num_bs_(num_bs),
      sigma_db_(sigma_db),
      decorrelation_m_(decorrelation_m),
      values_db_(static_cast<std::size_t>(num_ues) * num_bs, 0.0) {
  if (decorrelation_m_ <= 0.0) throw ConfigError("shadowing decorrelation distance must be > 0");
}

void ShadowingField::initialize(RandomStream& rng) {
  for (auto& v : values_db_) v = rng.gaussian(0.0, sigma_db_);
}

void ShadowingField::advance(int ue, double moved_m, RandomStream& rng) {
  if (moved_m <= 0.0) return;
  const double rho = std::exp(-moved_m / decorrelation_m_);
  const double innovation = sigma_db_ * std::sqrt(std::max(0.0, 1.0 - rho * rho));
  double* row = &values_db_[static_cast<std::size_t>(ue) * num_bs_];
  for (int b = 0; b < num_bs_; ++b) {
    row[b] = rho * row[b] + rng.gaussian(0.0, innovation);
  }
}

std::vector<BSConfig> make_cell_layout(int num_cells, double area_width, double area_height,
                                       double tx_power_dbm, int prb_count,
                                       double noise_figure_db, double bandwidth_mhz) {
  if (num_cells < 1) throw ConfigError("layout: need at least one cell");
  const double cx = area_width / 2.0;
  const double cy = area_height / 2.0;
  // Radius chosen so three sites sit on a triangle with ~500 m sides.
  const double radius = std::min(area_width, area_height) * 0.2887;
  std::vector<BSConfig> cells(num_cells);
  for (int i = 0; i < num_cells; ++i) {
    BSConfig& bs = cells[i];
    bs.id = i;
    if (num_cells == 1) {
      bs.x = cx;
      bs.y = cy;
    } else {
      const double angle = M_PI / 2.0 + 2.0 * M_PI * i / num_cells;
      bs.x = cx + radius * std::cos(angle);
      bs.y = cy + radius * std::sin(angle);
    }
    bs.tx_power_dbm = tx_power_dbm;
    bs.prb_count = prb_count;
    bs.noise_figure_db = noise_figure_db;
    bs.bandwidth_mhz = bandwidth_mhz;
  }
  return cells;
}

}  // namespace ransim
