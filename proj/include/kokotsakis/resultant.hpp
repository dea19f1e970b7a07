#pragma once

#include <array>
#include <complex>

#include "kokotsakis/planar.hpp"

namespace kokotsakis::resultant {

// a22 x^2 y^2 + a20 x^2 + a02 y^2 + 2 a11 x y + a00
struct Biquadratic {
    double a22 = 0.0;
    double a20 = 0.0;
    double a02 = 0.0;
    double a11 = 0.0;
    double a00 = 0.0;

    double operator()(double x, double y) const {
        return a22 * x * x * y * y + a20 * x * x + a02 * y * y + 2.0 * a11 * x * y + a00;
    }
};

// The configuration polynomial (x^2 + lambda)(y^2 + mu) - nu x y.
Biquadratic from_factors(const sphquad::InvolutionFactors& f);

// Dense polynomial in two variables, coefficient c[i][j] of u^i v^j, degrees <= 4.
struct BiPoly {
    std::array<std::array<double, 5>, 5> c{};

    double operator()(double u, double v) const;
    BiPoly transposed() const;
    double max_abs() const;
};

// Sylvester resultant eliminating the shared variable x of p(x, u) and q(x, v).
BiPoly resultant_z(const Biquadratic& p, const Biquadratic& q);

// Sylvester resultant at a point, from the 4x4 determinant.
double sylvester_determinant(const Biquadratic& p, const Biquadratic& q, double u, double v);

// Max deviation between the two coefficient arrays after each is divided by
// its largest-magnitude coefficient (with that coefficient's sign).
double proportionality_deviation(const BiPoly& a, const BiPoly& b);

// The closed form of one quarter of the reduced resultant in (g1, g3).
BiPoly reduced_resultant_quarter(double zeta1, double zeta2);

// g1^2 g3^2 + c (g1^2 - g3^2) - 1
struct QuadricFactor {
    double c = 0.0;
    BiPoly poly() const;
};

struct ReducedFactorization {
    bool irreducible = true;
    QuadricFactor first;   // c = (zeta1 + zeta2)^2
    QuadricFactor second;  // c = (zeta1 - zeta2)^2
    double product_residual = 0.0;
    bool discriminant_is_square = false;
};

ReducedFactorization factor_reduced_resultant(double zeta1, double zeta2);

struct BranchSet {
    std::array<std::complex<double>, 4> points{};
};

BranchSet branch_set_first(double zeta1);
BranchSet branch_set_second(double zeta2);
// Values of x where (x^2 + lambda)(y^2 + mu) = nu x y has a double root in y.
BranchSet branch_points_quad(const sphquad::InvolutionFactors& f);

// Smallest over all matchings of the largest relative pointwise distance.
double branch_set_distance(const BranchSet& a, const BranchSet& b);

struct StachelReport {
    double branch_set_distance = 0.0;
    ReducedFactorization factorization;
    double proportionality = 0.0;
    bool pass = false;
};

// Branch sets of P1 and P2 over the shared variable, reduced resultant
// factorization and proportionality of R12 and R34.
StachelReport stachel_check(const planar::PolyhedronSpec& spec);

}  // namespace kokotsakis::resultant
