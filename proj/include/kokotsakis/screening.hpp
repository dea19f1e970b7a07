#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "kokotsakis/planar.hpp"

namespace kokotsakis::screening {

// Pipeline stage at which a point fails; declared in pipeline order.
enum class FailureStage { Base, RcRange, Beta, Elliptic, None };
const char* to_string(FailureStage s);

struct ScreenPoint {
    double x = 0.0, y = 0.0, s = 0.0;
    bool admissible = false;
    std::optional<double> tau_witness;
    FailureStage failure_stage = FailureStage::Base;
    bool convex = false;
};

struct Bounds {
    double lo[3];
    double hi[3];
};
Bounds default_bounds();

inline constexpr int kDefaultTauGrid = 1024;
inline constexpr int kBisectionSteps = 40;

// Stage reached by the full admissibility test at a single tau.
FailureStage evaluate_tau(const planar::XYSParams& p, double tau);

// Scans tau over `grid` points of [0, 2pi), refines the first passing run by
// bisection on both ends and returns a validated witness.
std::optional<double> admissible_tau(const planar::XYSParams& p, int grid = kDefaultTauGrid);

ScreenPoint screen_point(const planar::XYSParams& p, int grid = kDefaultTauGrid);

// Cell-centred resolution^3 grid over `bounds`, in row-major (x, y, s) order.
std::vector<ScreenPoint> screen_grid(int resolution, const Bounds& bounds, int workers = 1,
                                     int tau_grid = kDefaultTauGrid);

void write_csv(std::ostream& out, const std::vector<ScreenPoint>& points);
// delta1, delta2, delta3 and convexity of admissible points.
void write_delta_triples(std::ostream& out, const std::vector<ScreenPoint>& points);

planar::XYSParams central_image(const planar::XYSParams& p);  // through (pi/4, pi/4, pi/4)
planar::XYSParams mirror_image(const planar::XYSParams& p);   // in the plane x = y
planar::XYSParams origin_image(const planar::XYSParams& p);   // through the origin

}  // namespace kokotsakis::screening
