#pragma once

#include <cmath>
#include <limits>

namespace kokotsakis {

// A point of the real projective line stored as num/den. The pair (1, 0) is
// the point at infinity; (0, 0) never occurs in valid data.
struct Projective {
    double num = 0.0;
    double den = 1.0;

    static Projective finite(double v) { return {v, 1.0}; }
    static Projective infinity() { return {1.0, 0.0}; }

    bool is_infinite(double tol = 0.0) const { return std::abs(den) <= tol * std::abs(num); }

    double value() const {
        if (den == 0.0) return std::numeric_limits<double>::infinity();
        return num / den;
    }

    // Representative with num^2 + den^2 = 1 and den >= 0.
    Projective normalized() const {
        double n = std::hypot(num, den);
        double s = (den < 0.0 || (den == 0.0 && num < 0.0)) ? -1.0 : 1.0;
        return {s * num / n, s * den / n};
    }

    // The angle whose half-tangent is this value, in (-pi, pi].
    double half_angle_double() const {
        Projective p = normalized();
        return 2.0 * std::atan2(p.num, p.den);
    }

    Projective negated() const { return {-num, den}; }
    Projective scaled(double s) const { return {s * num, den}; }
};

}  // namespace kokotsakis
