#include "kokotsakis/flexion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kokotsakis/error.hpp"

namespace kokotsakis::flexion {

namespace {

constexpr double kPi = std::numbers::pi;

int sign_of(double v) { return v >= 0.0 ? 1 : -1; }

// n_sigma / d where n_plus * n_minus = d^2. Near the flattening triggers one
// numerator and d vanish together; the reciprocal form d / n_{-sigma} keeps
// the value exact there.
Projective stable_quotient(double n_sigma, double n_other, double d) {
    if (std::abs(n_sigma) >= std::abs(n_other)) return {n_sigma, d};
    return {d, n_other};
}

double homogeneous_residual(double lambda, double mu, double nu, Projective a, Projective b) {
    a = a.normalized();
    b = b.normalized();
    const double r = (a.num * a.num + lambda * a.den * a.den) * (b.num * b.num + mu * b.den * b.den) -
                     nu * a.num * a.den * b.num * b.den;
    const double scale = 1.0 + std::abs(lambda) + std::abs(mu) + std::abs(lambda * mu) + std::abs(nu);
    return std::abs(r) / scale;
}

}  // namespace

std::array<Branch, 4> all_branches() { return {Branch{1, 1}, Branch{-1, 1}, Branch{1, -1}, Branch{-1, -1}}; }

const char* edge_name(Edge e) {
    switch (e) {
        case Edge::Phi: return "phi";
        case Edge::Psi1: return "psi1";
        case Edge::Theta: return "theta";
        case Edge::Psi2: return "psi2";
    }
    return "?";
}

double FlexionSample::angle(Edge e) const {
    switch (e) {
        case Edge::Phi: return phi;
        case Edge::Psi1: return psi1;
        case Edge::Theta: return theta;
        case Edge::Psi2: return psi2;
    }
    return 0.0;
}

Projective FlexionSample::coordinate(Edge e) const {
    switch (e) {
        case Edge::Phi: return z;
        case Edge::Psi1: return w1;
        case Edge::Theta: return u;
        case Edge::Psi2: return w2;
    }
    return {};
}

FlexionSample make_sample(double t, Branch b, Projective z, Projective w1, Projective u, Projective w2) {
    FlexionSample s;
    s.t = t;
    s.branch = b;
    s.z = z.normalized();
    s.w1 = w1.normalized();
    s.u = u.normalized();
    s.w2 = w2.normalized();
    s.phi = s.z.half_angle_double();
    s.psi1 = s.w1.half_angle_double();
    s.theta = s.u.half_angle_double();
    s.psi2 = s.w2.half_angle_double();
    return s;
}

ReducedCoeffs reduce(const planar::PolyhedronSpec& spec) {
    const auto& f = spec.factors;
    if (!planar::has_normal_pattern(f))
        throw Error(ErrorKind::NoValidPattern, "spec is not in the normal sign pattern");
    ReducedCoeffs rc;
    rc.zeta = planar::compute_zetas(f);
    for (int i = 0; i < 4; ++i) rc.sgn_nu[i] = sign_of(f[i].nu);
    rc.sqrt_lambda1 = std::sqrt(f[0].lambda);
    rc.sqrt_mu1 = std::sqrt(f[0].mu);
    rc.sqrt_neg_lambda3 = std::sqrt(-f[2].lambda);
    rc.sqrt_neg_mu3 = std::sqrt(-f[2].mu);
    if (!(rc.zeta[0] > 1.0)) throw Error(ErrorKind::NotFlexible, "zeta1 <= 1: no real flexion exists");
    return rc;
}

std::array<double, 3> zeta_system_residuals(const ReducedCoeffs& rc) {
    const auto& z = rc.zeta;
    return {z[0] * z[0] - z[2] * z[2], z[1] * z[1] - z[3] * z[3], z[0] * z[0] - z[1] * z[1] - 1.0};
}

double F(double t, double zeta1) {
    const double s = std::sin(t);
    return s * std::sqrt(zeta1 - 1.0) + std::sqrt(1.0 + (zeta1 - 1.0) * s * s);
}

double G(double t, double zeta1) {
    const double s = std::sin(t);
    return s * std::sqrt(1.0 + (zeta1 - 1.0) * s * s);
}

double V(double t, double zeta1) {
    const double c = std::cos(t);
    return std::sin(t) * std::sqrt(1.0 + (zeta1 - 1.0) * c * c);
}

FlexionSample flexion_elementary(const ReducedCoeffs& rc, Branch b, double t) {
    const double z1 = rc.zeta[0];
    const double h = kPi / 2;
    const double root = std::sqrt(z1 + 1.0);
    const int s12 = rc.sgn_nu[0] * rc.sgn_nu[1];
    const int s34 = rc.sgn_nu[2] * rc.sgn_nu[3];
    const int sg = b.sigma >= 0 ? 1 : -1;

    const double z = rc.sgn_nu[0] * rc.sqrt_lambda1 * F(t, z1) * F(t + h, z1);
    const double w1 = rc.sqrt_mu1 * F(t, z1) * F(t - h, z1);

    const double gu = G(t, z1) + G(t + h, z1);
    const Projective qu = stable_quotient(root + sg * gu, root - sg * gu, V(t, z1) - V(t + h, z1));
    const Projective u{rc.sgn_nu[3] * rc.sqrt_neg_lambda3 * qu.num, qu.den};

    const double gw = s34 * (G(t, z1) + G(t - h, z1));
    const Projective qw = stable_quotient(s12 * root + sg * gw, s12 * root - sg * gw, V(t, z1) - V(t - h, z1));
    const Projective w2{rc.sqrt_neg_mu3 * qw.num, qw.den};

    const double r = b.rho >= 0 ? 1.0 : -1.0;
    return make_sample(t, b, Projective::finite(r * z), Projective::finite(r * w1), u.scaled(r), w2.scaled(r));
}

CoshCoordinates cosh_coordinates(const ReducedCoeffs& rc, double t) {
    // The factor 2 makes cosh X + cosh Y = 2 zeta1 hold identically.
    const double omega = std::acosh(rc.zeta[0]);
    const double rho = std::sqrt(2.0) * std::sinh(omega / 2.0);
    return {2.0 * std::asinh(rho * std::cos(t)), 2.0 * std::asinh(rho * std::sin(t))};
}

std::vector<FlatteningEvent> flattening_parameters(const ReducedCoeffs&) {
    return {{kPi / 4, Edge::Theta}, {3 * kPi / 4, Edge::Psi2}, {5 * kPi / 4, Edge::Theta}, {7 * kPi / 4, Edge::Psi2}};
}

std::array<double, 4> residual_main(const planar::PolyhedronSpec& spec, const FlexionSample& s) {
    const auto& f = spec.factors;
    const double l1 = f[0].lambda, m1 = f[0].mu, l3 = f[2].lambda, m3 = f[2].mu;
    return {
        homogeneous_residual(l1, m1, f[0].nu, s.z, s.w1),
        homogeneous_residual(-l1, -m3, f[1].nu, s.z, s.w2),
        homogeneous_residual(l3, m3, f[2].nu, s.u, s.w2),
        homogeneous_residual(-l3, -m1, f[3].nu, s.u, s.w1),
    };
}

ReducedPoint to_reduced(const ReducedCoeffs& rc, const FlexionSample& s) {
    const int s12 = rc.sgn_nu[0] * rc.sgn_nu[1];
    return {
        {s.z.num * rc.sgn_nu[0], s.z.den * rc.sqrt_lambda1},
        {s.w1.num, s.w1.den * rc.sqrt_mu1},
        {s.u.num * rc.sgn_nu[3], s.u.den * rc.sqrt_neg_lambda3},
        {s.w2.num * s12, s.w2.den * rc.sqrt_neg_mu3},
    };
}

std::array<double, 4> residual_reduced(const ReducedCoeffs& rc, const ReducedPoint& p) {
    const auto& z = rc.zeta;
    return {
        homogeneous_residual(1.0, 1.0, 4.0 * z[0], p.f1, p.g1),
        homogeneous_residual(-1.0, 1.0, 4.0 * z[1], p.f1, p.g3),
        homogeneous_residual(-1.0, -1.0, 4.0 * z[2], p.f3, p.g3),
        homogeneous_residual(1.0, -1.0, 4.0 * z[3], p.f3, p.g1),
    };
}

std::vector<double> verification_grid(int n) {
    std::vector<double> ts;
    ts.reserve(n + 4);
    for (int i = 0; i < n; ++i) ts.push_back(2.0 * kPi * i / n);
    for (int k : {1, 3, 5, 7}) ts.push_back(k * kPi / 4);
    std::sort(ts.begin(), ts.end());
    return ts;
}

}  // namespace kokotsakis::flexion
