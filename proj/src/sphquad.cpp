#include "kokotsakis/sphquad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "kokotsakis/error.hpp"

namespace kokotsakis::sphquad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDenominatorTol = 1e-12;
constexpr double kFactorTol = 1e-14;

bool is_right(double angle) { return std::abs(std::cos(angle)) < kRightAngleTol; }

double distance_to_multiple_of_two_pi(double v) {
    double r = std::fmod(v, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    return std::min(r, 2.0 * kPi - r);
}

// sin(d + x) / sin(d - x), which equals (tan d + tan x) / (tan d - tan x)
// wherever the tangents exist.
double tangent_ratio(double d, double x) {
    double den = std::sin(d - x);
    if (std::abs(den) < kDenominatorTol)
        throw Error(ErrorKind::DegenerateQuad, "involution factor denominator vanishes (side equals delta)");
    return std::sin(d + x) / den;
}

double cosine_ratio(double beta, double other) {
    double den = std::cos(beta) - std::cos(other);
    if (std::abs(den) < kDenominatorTol)
        throw Error(ErrorKind::DegenerateQuad, "involution factor denominator vanishes (cos beta = cos side)");
    return (std::cos(beta) + std::cos(other)) / den;
}

// Segments with a chosen strictly inside its feasible range; requires cos(alpha) != 0.
DiagonalSegments segments_from_a(double alpha, double beta, double delta) {
    double ca = std::cos(alpha);
    double cb = std::cos(beta);
    double cd = std::cos(delta);
    double lo = std::max(std::abs(ca), std::abs(cd));
    double hi = std::abs(cb) > 0.0 ? std::min(1.0, std::abs(ca) / std::abs(cb)) : 1.0;
    if (lo > hi * (1.0 + 1e-12))
        throw Error(ErrorKind::Unrealizable, "no diagonal segment satisfies all right-triangle relations");
    double cos_a = 0.5 * (lo + std::min(hi, 1.0));
    double cos_b = std::clamp(ca / cos_a, -1.0, 1.0);
    double cos_c = std::clamp(cb * cos_a / ca, -1.0, 1.0);
    double cos_d = std::clamp(cd / cos_a, -1.0, 1.0);
    return {std::acos(cos_a), std::acos(cos_b), std::acos(cos_c), std::acos(cos_d)};
}

}  // namespace

double wrap_two_pi(double a) {
    double r = std::fmod(a, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    return r;
}

bool is_valid(const SphericalQuad& q) {
    for (double v : {q.alpha, q.beta, q.gamma, q.delta}) {
        if (!std::isfinite(v)) return false;
        if (std::abs(std::sin(v)) < 1e-15) return false;
    }
    return true;
}

bool is_orthodiagonal(const SphericalQuad& q, double tol) {
    double r = std::cos(q.alpha) * std::cos(q.gamma) - std::cos(q.beta) * std::cos(q.delta);
    return std::abs(r) <= tol;
}

bool is_elliptic(const SphericalQuad& q, double tol) {
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int s3 : {1, -1}) {
                double v = q.alpha + s1 * q.beta + s2 * q.gamma + s3 * q.delta;
                if (distance_to_multiple_of_two_pi(v) < tol) return false;
            }
    return true;
}

InvolutionFactors involution_factors(const SphericalQuad& q) {
    const bool ra = is_right(q.alpha);
    const bool rg = is_right(q.gamma);
    const bool rd = is_right(q.delta);

    InvolutionFactors f;
    f.lambda = (ra && rd) ? cosine_ratio(q.beta, q.gamma) : tangent_ratio(q.delta, q.alpha);
    f.mu = (rg && rd) ? cosine_ratio(q.beta, q.alpha) : tangent_ratio(q.delta, q.gamma);

    if (!rd) {
        f.nu = (f.lambda - 1.0) * (f.mu - 1.0) / std::cos(q.delta);
    } else if (rg && !ra) {
        f.nu = 2.0 * (f.mu - 1.0) * std::tan(q.alpha);
    } else if (ra && !rg) {
        f.nu = 2.0 * (f.lambda - 1.0) * std::tan(q.gamma);
    } else {
        // Either alpha = gamma = delta = pi/2, which the case analysis does not
        // cover, or delta = pi/2 alone, which contradicts orthodiagonality.
        throw Error(ErrorKind::DegenerateQuad, "no case of the nu formula applies for delta = pi/2");
    }

    if (std::abs(f.lambda) < kFactorTol || std::abs(f.mu) < kFactorTol || std::abs(f.nu) < kFactorTol)
        throw Error(ErrorKind::DegenerateQuad, "an involution factor vanishes");
    return f;
}

double config_residual(const InvolutionFactors& f, const Projective& z, const Projective& w) {
    const double z0 = z.num, z1 = z.den, w0 = w.num, w1 = w.den;
    return (z0 * z0 + f.lambda * z1 * z1) * (w0 * w0 + f.mu * w1 * w1) - f.nu * z0 * z1 * w0 * w1;
}

double config_residual(const InvolutionFactors& f, double z, double w) {
    auto lift = [](double v) { return std::isinf(v) ? Projective::infinity() : Projective::finite(v); };
    return config_residual(f, lift(z), lift(w));
}

double config_residual_normalized(const InvolutionFactors& f, const Projective& z, const Projective& w) {
    return config_residual(f, z.normalized(), w.normalized());
}

DiagonalSegments construct_orthodiagonal(double alpha, double beta, double gamma, double delta) {
    for (double v : {alpha, beta, gamma, delta})
        if (!(v > 0.0 && v < kPi))
            throw Error(ErrorKind::InvalidInput, "quadrilateral sides must lie in (0, pi)");
    if (!is_orthodiagonal({alpha, beta, gamma, delta}))
        throw Error(ErrorKind::NotOrthodiagonal, "cos(alpha)cos(gamma) != cos(beta)cos(delta)");

    // Parametrize by the segment touching the first side whose cosine is
    // clearly nonzero; rotating the labels rotates the segments with them.
    std::array<double, 4> sides{alpha, beta, gamma, delta};
    int shift = -1;
    for (int k = 0; k < 4; ++k)
        if (std::abs(std::cos(sides[k])) > 1e-6) {
            shift = k;
            break;
        }
    if (shift < 0) return {kPi / 2, kPi / 2, kPi / 2, kPi / 2};

    DiagonalSegments rotated =
        segments_from_a(sides[shift], sides[(shift + 1) % 4], sides[(shift + 3) % 4]);
    std::array<double, 4> rs{rotated.a, rotated.b, rotated.c, rotated.d};
    std::array<double, 4> seg{};
    for (int k = 0; k < 4; ++k) seg[(k + shift) % 4] = rs[k];
    DiagonalSegments out{seg[0], seg[1], seg[2], seg[3]};

    const double checks[4] = {
        std::cos(out.a) * std::cos(out.b) - std::cos(alpha),
        std::cos(out.b) * std::cos(out.c) - std::cos(beta),
        std::cos(out.c) * std::cos(out.d) - std::cos(gamma),
        std::cos(out.d) * std::cos(out.a) - std::cos(delta),
    };
    for (double c : checks)
        if (std::abs(c) > 1e-10) throw Error(ErrorKind::Unrealizable, "diagonal segment relations not satisfied");
    return out;
}

SphericalQuad apply_vertex_symmetry(const SphericalQuad& q, int which) {
    SphericalQuad r = q;
    switch (which) {
        case 1:
            r.alpha = wrap_two_pi(q.alpha - kPi);
            r.gamma = wrap_two_pi(q.gamma - kPi);
            break;
        case 2:
            r.alpha = wrap_two_pi(q.alpha - kPi);
            r.beta = kPi - q.beta;
            break;
        case 3:
            r.gamma = wrap_two_pi(q.gamma - kPi);
            r.beta = kPi - q.beta;
            break;
        default:
            throw Error(ErrorKind::InvalidInput, "vertex symmetry index must be 1, 2 or 3");
    }
    return r;
}

Tangents tangents_from_factors(const InvolutionFactors& f, double delta) {
    double td = std::tan(delta);
    return {td * (f.lambda - 1.0) / (f.lambda + 1.0), td * (f.mu - 1.0) / (f.mu + 1.0)};
}

}  // namespace kokotsakis::sphquad
