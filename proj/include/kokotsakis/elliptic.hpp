#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "kokotsakis/flexion.hpp"

namespace kokotsakis::elliptic {

struct EllipticModulus {
    double k = 0.0;
    double k_prime = 1.0;
    double K = 0.0;
    double K_prime = 0.0;
};

/// Complete elliptic integral of the first kind by the arithmetic-geometric mean.
double complete_K(double k);
/// Same integral through Carlson's R_F(0, 1 - k^2, 1); an independent check.
double complete_K_carlson(double k);

EllipticModulus make_modulus(double k);
EllipticModulus modulus_from_zeta(double zeta1);

struct JacobiValues {
    double sn, cn, dn;
};
/// Real Jacobi functions for modulus k in [0, 1).
JacobiValues sn_cn_dn(double u, double k);

/// sn(x + i y, k) via the addition theorem; used as a reference.
std::complex<double> sn_complex(double x, double y, double k);

/// sn(n K + m i K'/2 + i t). `value` is num/den; when `imaginary` is set the
/// true result is i times that ratio. `pole` marks the point at infinity.
struct QuarterShift {
    Projective value;
    bool imaginary = false;
    bool pole = false;
};
QuarterShift quarter_shift_eval(int n, int m, double t, const EllipticModulus& mod);
/// As quarter_shift_eval but returns a finite complex number, throwing
/// PoleEncountered at a pole.
std::complex<double> quarter_shift_value(int n, int m, double t, const EllipticModulus& mod);

/// The elliptic flexion; t ranges over [0, 2K').
flexion::FlexionSample flexion_elliptic(const flexion::ReducedCoeffs& rc, const EllipticModulus& mod,
                                        flexion::Branch b, double t);

/// Linear substitution t_elliptic = scale * t + shift aligning the elliptic
/// curves of `elliptic_sigma` with the elementary curves of `elementary`.
struct Alignment {
    flexion::Branch elementary;
    int elliptic_sigma = 1;
    double scale = 0.0;
    double shift = 0.0;
    double max_diff = 0.0;
    std::array<double, 4> max_diff_per_angle{};
};

/// Fits the shift by least squares with scale fixed to -K'/pi, trying both
/// elliptic sign choices and keeping the better one.
Alignment fit_alignment(const flexion::ReducedCoeffs& rc, const EllipticModulus& mod, flexion::Branch elementary,
                        int samples = 360);

/// Angle difference wrapped into (-pi, pi].
double angle_difference(double a, double b);

/// Rows `t,angle,angle_elementary,angle_elliptic,diff` for an alignment.
void write_difference_csv(std::ostream& out, const flexion::ReducedCoeffs& rc, const EllipticModulus& mod,
                          const Alignment& al, int samples);

}  // namespace kokotsakis::elliptic
