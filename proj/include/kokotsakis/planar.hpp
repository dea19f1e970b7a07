#pragma once

#include <array>
#include <optional>
#include <vector>

#include "kokotsakis/sphquad.hpp"

namespace kokotsakis::planar {

using sphquad::InvolutionFactors;
using sphquad::SphericalQuad;

/// Interior angles of the planar base quadrilateral A1A2A3A4.
struct BaseAngles {
    std::array<double, 4> delta{};
};

/// Half-differences of opposite base angles plus the alternating mean.
struct XYSParams {
    double x = 0.0;
    double y = 0.0;
    double s = 0.0;
};

/// Coefficients of the four trigonometric forms S, L, N, D in (cos tau, sin tau).
template <class T>
struct BasicCoefficientTable {
    T s10, s01;
    T l20, l11, l02;
    T n20, n11, n02;
    T d20, d11, d02;
};
using CoefficientTable = BasicCoefficientTable<double>;
/// Extended-precision copy used by the root formula. Near |r| = 1 the
/// Z-values depend on 1 - |r|, which double rounding of the table spoils.
using WideCoefficientTable = BasicCoefficientTable<long double>;

struct TrigForms {
    double S, L, N, D;
};

/// r1, c1, r3, c3; the remaining values follow from r2 = -r1, r4 = -r3,
/// c2 = -c3, c4 = -c1.
struct RCQuadruple {
    double r1 = 0.0;
    double c1 = 0.0;
    double r3 = 0.0;
    double c3 = 0.0;
};

/// Per-vertex (r_i, c_i), indexed 0..3.
struct VertexRC {
    std::array<double, 4> r{};
    std::array<double, 4> c{};
};

/// Sign choices for the arctangents of alpha_i and gamma_i.
struct SigmaSigns {
    std::array<int, 4> alpha{1, 1, 1, 1};
    std::array<int, 4> gamma{1, 1, 1, 1};
};

/// The full construction result. `quads`, `factors`, `zetas` and `sigma` are
/// stored in the normalized vertex order; `base` keeps the order in which the
/// base angles were supplied. enumeration[i] is the 0-based input index of
/// normalized vertex i. An odd rotation also exchanges alpha and gamma.
struct PolyhedronSpec {
    BaseAngles base;
    double tau = 0.0;
    std::array<SphericalQuad, 4> quads{};
    std::array<InvolutionFactors, 4> factors{};
    std::array<double, 4> zetas{};
    std::array<int, 4> enumeration{0, 1, 2, 3};
    SigmaSigns sigma;
};

inline constexpr double kDeltaSumTol = 1e-4;
inline constexpr double kRangeUpper = 1.0 - 1e-12;
inline constexpr double kZeroTol = 1e-14;

/// Validates the base angles. A sum off from 2pi by less than kDeltaSumTol is
/// repaired by recomputing delta4; anything else throws.
BaseAngles make_base_angles(std::array<double, 4> delta);

XYSParams deltas_to_xys(const BaseAngles& b);
/// Inverse of deltas_to_xys under the constraint that the angles sum to 2pi.
std::array<double, 4> xys_to_deltas(const XYSParams& p);

CoefficientTable coefficient_table(const XYSParams& p);
TrigForms trig_forms(const CoefficientTable& t, double tau);

double r1_of(double tau, const XYSParams& p);
/// r1_of without exceptions: empty when L < 0 or D vanishes.
std::optional<double> try_r1_of(double tau, const XYSParams& p);

RCQuadruple rc_quadruple(double tau, const XYSParams& p);
std::optional<RCQuadruple> try_rc_quadruple(double tau, const XYSParams& p);

VertexRC vertex_values(const RCQuadruple& rc);

/// Per-vertex (r_i, c_i) for base angles given in input order. The closed form
/// is evaluated with the base angles taken in reverse order and the result is
/// mapped back (input vertex i corresponds to formula vertex 3 - i).
VertexRC solve_vertex_rc(const BaseAngles& b, double tau);
std::optional<VertexRC> try_solve_vertex_rc(const BaseAngles& b, double tau);

/// solve_vertex_rc with the coefficient tables cached, for repeated
/// evaluation at many tau. Returns empty on any failure.
class RCSolver {
public:
    explicit RCSolver(const BaseAngles& b);
    std::optional<VertexRC> at(double tau) const;

private:
    std::array<WideCoefficientTable, 4> tables_{};
    std::array<long double, 4> scales_{};
};

/// Both branches of the inversion r = 2 lambda / (lambda^2 + 1).
/// sign = +1 picks |lambda| >= 1, -1 picks the reciprocal.
double lambda_from_r(double r, int sign = 1);
std::array<std::pair<double, double>, 4> rc_to_lambda_mu(const VertexRC& v,
                                                         const std::array<int, 4>& sign_choice = {1, 1, 1, 1});

/// Orthodiagonal quadrilaterals from (r, c) and the base angles.
std::array<SphericalQuad, 4> recover_angles(const BaseAngles& b, const VertexRC& v, const SigmaSigns& sigma);

/// All sixteen sign assignments allowed by the product constraints,
/// starting with the all-plus one.
std::vector<SigmaSigns> admissible_sigmas();

/// Sign pattern of (lambda_i, mu_i) after normalization.
bool has_normal_pattern(const std::array<InvolutionFactors, 4>& f);

/// Relabels so that new vertex i is old vertex (i + shift) mod 4.
PolyhedronSpec reenumerate(const PolyhedronSpec& spec, int shift);
/// Shifts for which reenumerate yields the normal sign pattern.
std::vector<int> normalizing_shifts(const PolyhedronSpec& spec);
PolyhedronSpec normalize_enumeration(const PolyhedronSpec& spec);

std::array<double, 4> compute_zetas(const std::array<InvolutionFactors, 4>& f);

SphericalQuad apply_vertex_symmetry(const SphericalQuad& q, int which);

/// Builds a spec from base angles and tau. When `sigma` is given only that
/// assignment is tried; otherwise the admissible assignments are tried in
/// order and the first elliptic one wins.
PolyhedronSpec construct(const BaseAngles& b, double tau, const std::optional<SigmaSigns>& sigma = std::nullopt);

/// Residuals of the anti-involutive relations lambda1 = -lambda2 etc.
std::array<double, 4> opposite_factor_residuals(const std::array<InvolutionFactors, 4>& f);
/// Z_i = nu_i^2 / (4 lambda_i mu_i) from the factors.
std::array<double, 4> z_values(const std::array<InvolutionFactors, 4>& f);

}  // namespace kokotsakis::planar
