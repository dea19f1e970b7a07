#pragma once

#include <array>
#include <vector>

#include "kokotsakis/planar.hpp"
#include "kokotsakis/projective.hpp"

namespace kokotsakis::flexion {

/// Coefficients of the reduced system in the scaled variables
/// f1 = z sgn(nu1)/sqrt(lambda1), g1 = w1/sqrt(mu1),
/// f3 = u sgn(nu4)/sqrt(-lambda3), g3 = w2 sgn(nu1 nu2)/sqrt(-mu3).
struct ReducedCoeffs {
    std::array<double, 4> zeta{};
    std::array<int, 4> sgn_nu{};
    double sqrt_lambda1 = 0.0;
    double sqrt_mu1 = 0.0;
    double sqrt_neg_lambda3 = 0.0;
    double sqrt_neg_mu3 = 0.0;
};

/// sigma picks the simultaneous sign in u and w2; rho = -1 negates the whole
/// solution (reflection in the base plane).
struct Branch {
    int sigma = 1;
    int rho = 1;
};

std::array<Branch, 4> all_branches();

enum class Edge { Phi, Psi1, Theta, Psi2 };
const char* edge_name(Edge e);

struct FlexionSample {
    double t = 0.0;
    Branch branch;
    Projective z, w1, u, w2;
    double phi = 0.0, psi1 = 0.0, theta = 0.0, psi2 = 0.0;

    double angle(Edge e) const;
    Projective coordinate(Edge e) const;
};

/// Fills the dihedral angles from the half-tangent coordinates.
FlexionSample make_sample(double t, Branch b, Projective z, Projective w1, Projective u, Projective w2);

/// Throws NoValidPattern for a spec that is not normalized and NotFlexible
/// when zeta1 <= 1.
ReducedCoeffs reduce(const planar::PolyhedronSpec& spec);

/// zeta1^2 - zeta3^2, zeta2^2 - zeta4^2, zeta1^2 - zeta2^2 - 1.
std::array<double, 3> zeta_system_residuals(const ReducedCoeffs& rc);

double F(double t, double zeta1);
double G(double t, double zeta1);
double V(double t, double zeta1);

FlexionSample flexion_elementary(const ReducedCoeffs& rc, Branch b, double t);

struct CoshCoordinates {
    double X;
    double Y;
};
/// X = log(f1/g1), Y = log(f1 g1) along the elementary flexion.
CoshCoordinates cosh_coordinates(const ReducedCoeffs& rc, double t);

struct FlatteningEvent {
    double t;
    Edge edge;
};
std::vector<FlatteningEvent> flattening_parameters(const ReducedCoeffs& rc);

/// The four system residuals on unit-normalized homogeneous coordinates,
/// divided by the 1-norm of the corresponding coefficient vector.
std::array<double, 4> residual_main(const planar::PolyhedronSpec& spec, const FlexionSample& s);

struct ReducedPoint {
    Projective f1, g1, f3, g3;
};
ReducedPoint to_reduced(const ReducedCoeffs& rc, const FlexionSample& s);
std::array<double, 4> residual_reduced(const ReducedCoeffs& rc, const ReducedPoint& p);

/// Uniform grid of n samples over [0, 2pi) plus the four flattening triggers,
/// sorted by t.
std::vector<double> verification_grid(int n);

}  // namespace kokotsakis::flexion
