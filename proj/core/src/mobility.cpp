#include "ransim/mobility.hpp"

#include <cmath>

namespace ransim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double wrap_heading(double heading) {
  double w = std::fmod(heading, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

void step_speed_heading(double& speed, double& heading, const MobilityParams& p,
                        RandomStream& rng, bool clamp_speed) {
  const double memory = p.alpha;
  const double innovation = std::sqrt(std::max(0.0, 1.0 - memory * memory));
  const double delta_v = rng.gaussian(0.0, p.sigma_speed);
  const double delta_h = rng.gaussian(0.0, p.sigma_heading);

  speed = memory * speed + (1.0 - memory) * p.mean_speed + innovation * delta_v;
  if (clamp_speed && speed < 0.0) speed = 0.0;

  const double target =
      p.heading_mode == HeadingMode::kPrevious ? heading : p.mean_heading;
  heading = wrap_heading(memory * heading + (1.0 - memory) * target + innovation * delta_h);
}

UEKinematics step_kinematics(const UEKinematics& k, const MobilityParams& p, RandomStream& rng) {
  UEKinematics next = k;
  step_speed_heading(next.speed, next.heading, p, rng);

  next.x += next.speed * p.tick * std::cos(next.heading);
  next.y += next.speed * p.tick * std::sin(next.heading);

  // Specular reflection keeps UEs in-area without teleporting them.
  bool reflected_x = false;
  bool reflected_y = false;
  if (next.x < 0.0) {
    next.x = -next.x;
    reflected_x = true;
  } else if (next.x > p.area_width) {
    next.x = 2.0 * p.area_width - next.x;
    reflected_x = true;
  }
  if (next.y < 0.0) {
    next.y = -next.y;
    reflected_y = true;
  } else if (next.y > p.area_height) {
    next.y = 2.0 * p.area_height - next.y;
    reflected_y = true;
  }
  if (reflected_x || reflected_y) {
    double dx = std::cos(next.heading);
    double dy = std::sin(next.heading);
    if (reflected_x) dx = -dx;
    if (reflected_y) dy = -dy;
    next.heading = wrap_heading(std::atan2(dy, dx));
    // A step longer than the area could still land outside; clamp as backstop.
    next.x = std::fmin(std::fmax(next.x, 0.0), p.area_width);
    next.y = std::fmin(std::fmax(next.y, 0.0), p.area_height);
  }
  return next;
}

}  // namespace ransim
