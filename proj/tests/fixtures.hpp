#pragma once

#include <cmath>
#include <random>

#include "kokotsakis/planar.hpp"

namespace fixtures {

inline constexpr double kPi = 3.14159265358979323846;

// Worked example: base angles and tau = -arctan 60.
inline kokotsakis::planar::BaseAngles example_base() {
    return kokotsakis::planar::make_base_angles({1.36292, 1.41009, 1.80327, 1.70691});
}
inline double example_tau() { return -std::atan(60.0); }
inline kokotsakis::planar::PolyhedronSpec example_spec() {
    return kokotsakis::planar::construct(example_base(), example_tau());
}

// Reference angle table of the worked example, in input vertex order.
inline constexpr double kAlpha[4] = {1.34086, 1.42575, 1.69859, 1.81798};
inline constexpr double kGamma[4] = {1.15746, 2.00166, 1.4875, 1.63656};
inline constexpr double kBeta[4] = {1.11122, 1.18397, 1.61684, 1.68958};

}  // namespace fixtures

namespace fixtures {

// Draws random (x, y, s, tau) until construct succeeds. Base angles stay
// at least `margin` away from pi/2 so that tan(delta) is well conditioned.
inline kokotsakis::planar::PolyhedronSpec random_spec(std::mt19937_64& rng, double margin = 1e-2) {
    using namespace kokotsakis;
    std::uniform_real_distribution<double> box(-kPi / 2, kPi / 2), angle(0.0, 2 * kPi);
    for (;;) {
        const planar::XYSParams p{box(rng), box(rng), box(rng)};
        const auto d = planar::xys_to_deltas(p);
        bool ok = true;
        for (double v : d) ok = ok && v > 0.0 && std::abs(std::cos(v)) >= margin;
        if (!ok) continue;
        try {
            return planar::construct(planar::make_base_angles(d), angle(rng));
        } catch (const std::exception&) {
        }
    }
}

}  // namespace fixtures
