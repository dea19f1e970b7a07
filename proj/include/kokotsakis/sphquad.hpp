#pragma once

#include "kokotsakis/projective.hpp"

namespace kokotsakis::sphquad {

// Side lengths of a spherical quadrilateral. delta is the side lying on the
// base plane; alpha and gamma are the sides adjacent to it.
struct SphericalQuad {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

// Coefficients of the configuration curve (z^2 + lambda)(w^2 + mu) = nu z w.
struct InvolutionFactors {
    double lambda = 0.0;
    double mu = 0.0;
    double nu = 0.0;
};

// Distances from the diagonal intersection to the four vertices.
struct DiagonalSegments {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

inline constexpr double kRightAngleTol = 1e-9;
inline constexpr double kOrthoTol = 1e-9;

bool is_valid(const SphericalQuad& q);
bool is_orthodiagonal(const SphericalQuad& q, double tol = kOrthoTol);
bool is_elliptic(const SphericalQuad& q, double tol = 1e-9);

// Throws Error(DegenerateQuad) when the selected piecewise case divides by
// (nearly) zero or a factor vanishes.
InvolutionFactors involution_factors(const SphericalQuad& q);

double config_residual(const InvolutionFactors& f, const Projective& z, const Projective& w);
double config_residual(const InvolutionFactors& f, double z, double w);

// Residual on unit-normalized homogeneous coordinates, so the value is
// meaningful at infinity.
double config_residual_normalized(const InvolutionFactors& f, const Projective& z,
                                  const Projective& w);

DiagonalSegments construct_orthodiagonal(double alpha, double beta, double gamma, double delta);

// The three sign symmetries (alpha, gamma shifted by pi and/or beta -> pi - beta).
SphericalQuad apply_vertex_symmetry(const SphericalQuad& q, int which);

// tan(alpha) and tan(gamma) recovered from (lambda, mu) and delta.
struct Tangents {
    double tan_alpha;
    double tan_gamma;
};
Tangents tangents_from_factors(const InvolutionFactors& f, double delta);

// Reduce an angle into [0, 2pi).
double wrap_two_pi(double a);

}  // namespace kokotsakis::sphquad
