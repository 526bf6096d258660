#pragma once

#include "ransim/errors.hpp"
#include "ransim/rng.hpp"

namespace ransim {

// How the heading drift target is chosen each step.
//  kPrevious: target equals the current heading, so heading performs a
//             correlated random walk with no preferred direction.
//  kFixed:    target is MobilityParams::mean_heading for every UE.
enum class HeadingMode { kPrevious, kFixed };

struct MobilityParams {
  double alpha = 0.9;            // memory coefficient, [0, 1]
  double mean_speed = 1.5;       // m/s
  double mean_heading = 3.14159265358979323846;  // rad, used in kFixed mode
  double sigma_speed = 0.5;      // m/s
  double sigma_heading = 0.5;    // rad
  double tick = 0.1;             // s
  double area_width = 1000.0;    // m
  double area_height = 1000.0;   // m
  HeadingMode heading_mode = HeadingMode::kPrevious;

  void validate() const {
    if (alpha < 0.0 || alpha > 1.0) throw ConfigError("mobility.alpha must be in [0,1]");
    if (sigma_speed < 0.0) throw ConfigError("mobility.sigma_speed must be >= 0");
    if (sigma_heading < 0.0) throw ConfigError("mobility.sigma_heading must be >= 0");
    if (tick <= 0.0) throw ConfigError("mobility.tick must be > 0");
    if (area_width <= 0.0 || area_height <= 0.0) throw ConfigError("mobility area must be positive");
  }
};

struct UEKinematics {
  double x = 0.0;        // m
  double y = 0.0;        // m
  double speed = 0.0;    // m/s, >= 0
  double heading = 0.0;  // rad, [0, 2*pi)
};

// Wraps an angle into [0, 2*pi).
double wrap_heading(double heading);

// One correlated speed/heading update followed by a position advance with
// specular reflection at the area edges. Negative speed draws clamp to 0.
UEKinematics step_kinematics(const UEKinematics& k, const MobilityParams& p, RandomStream& rng);

// Speed/heading recursion only (no position update, no clamping of position).
// Used by the stationarity tests on an unbounded domain.
void step_speed_heading(double& speed, double& heading, const MobilityParams& p,
                        RandomStream& rng, bool clamp_speed = true);

}  // namespace ransim
