#include "kokotsakis/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "kokotsakis/error.hpp"

namespace kokotsakis::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAgmTol = 1e-15;
constexpr double kSmallModulus = 1e-7;

double agm(double a, double b) {
    for (int i = 0; i < 64 && std::abs(a - b) >= kAgmTol * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return a;
}

double carlson_rf(double x, double y, double z) {
    for (int i = 0; i < 100; ++i) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lam = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        const double mu = (x + y + z) / 3.0;
        const double dx = 1.0 - x / mu, dy = 1.0 - y / mu, dz = 1.0 - z / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 1e-6) {
            const double e2 = dx * dy - dz * dz;
            const double e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(mu);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double complete_K(double k) { return kPi / (2.0 * agm(1.0, std::sqrt((1.0 - k) * (1.0 + k)))); }

double complete_K_carlson(double k) { return carlson_rf(0.0, (1.0 - k) * (1.0 + k), 1.0); }

EllipticModulus make_modulus(double k) {
    if (!(k > 0.0 && k < 1.0)) throw Error(ErrorKind::InvalidInput, "elliptic modulus must lie in (0, 1)");
    EllipticModulus m;
    m.k = k;
    m.k_prime = std::sqrt((1.0 - k) * (1.0 + k));
    m.K = complete_K(k);
    m.K_prime = complete_K(m.k_prime);
    return m;
}

EllipticModulus modulus_from_zeta(double zeta1) {
    if (!(zeta1 > 1.0)) throw Error(ErrorKind::NotFlexible, "zeta1 must exceed 1");
    // zeta1 - sqrt(zeta1^2 - 1) written without cancellation.
    const double root = 1.0 / (zeta1 + std::sqrt(zeta1 * zeta1 - 1.0));
    return make_modulus(root * root);
}

JacobiValues sn_cn_dn(double u, double k) {
    if (!(k >= 0.0 && k < 1.0)) throw Error(ErrorKind::InvalidInput, "Jacobi functions need 0 <= k < 1");
    const double kc = std::sqrt((1.0 - k) * (1.0 + k));

    if (k < kSmallModulus) {
        // First-order expansion in m = k^2.
        const double m = k * k;
        const double s = std::sin(u), c = std::cos(u);
        const double corr = 0.25 * m * (u - s * c);
        return {s - corr * c, c + corr * s, 1.0 - 0.5 * m * s * s};
    }

    // Reduce modulo the real period 4K first so the amplitude stays small.
    const double K = complete_K(k);
    u = std::remainder(u, 4.0 * K);

    std::array<double, 64> a{}, c{};
    a[0] = 1.0;
    double b = kc;
    c[0] = k;
    int n = 0;
    while (n < 63 && std::abs(a[n] - b) >= kAgmTol * a[n]) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }
    double phi = std::ldexp(a[n] * u, n);
    for (int i = n; i > 0; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));

    const double sn = std::sin(phi), cn = std::cos(phi);
    // dn^2 = k'^2 + k^2 cn^2 has no cancellation even for k close to 1.
    return {sn, cn, std::sqrt(kc * kc + k * k * cn * cn)};
}

std::complex<double> sn_complex(double x, double y, double k) {
    const double kc = std::sqrt((1.0 - k) * (1.0 + k));
    const JacobiValues r = sn_cn_dn(x, k);
    const JacobiValues i = sn_cn_dn(y, kc);
    const double den = i.cn * i.cn + k * k * r.sn * r.sn * i.sn * i.sn;
    return {r.sn * i.dn / den, r.cn * r.dn * i.sn * i.cn / den};
}

QuarterShift quarter_shift_eval(int n, int m, double t, const EllipticModulus& mod) {
    // sn(nK + iv) with v = m K'/2 + t, reduced with the imaginary
    // transformation to functions of modulus k'.
    const double v = m * mod.K_prime / 2.0 + t;
    const JacobiValues j = sn_cn_dn(v, mod.k_prime);
    QuarterShift q;
    switch (((n % 4) + 4) % 4) {
        case 0: q.value = {j.sn, j.cn}; q.imaginary = true; break;
        case 1: q.value = {1.0, j.dn}; break;
        case 2: q.value = {-j.sn, j.cn}; q.imaginary = true; break;
        case 3: q.value = {-1.0, j.dn}; break;
    }
    q.pole = q.value.den == 0.0 || std::abs(q.value.den) < 1e-15 * std::abs(q.value.num);
    return q;
}

std::complex<double> quarter_shift_value(int n, int m, double t, const EllipticModulus& mod) {
    const QuarterShift q = quarter_shift_eval(n, m, t, mod);
    if (q.pole) throw Error(ErrorKind::PoleEncountered, "sn has a pole at this shifted argument");
    const double v = q.value.num / q.value.den;
    return q.imaginary ? std::complex<double>(0.0, v) : std::complex<double>(v, 0.0);
}

flexion::FlexionSample flexion_elliptic(const flexion::ReducedCoeffs& rc, const EllipticModulus& mod,
                                        flexion::Branch b, double t) {
    const int sg = b.sigma >= 0 ? 1 : -1;
    const int s12 = rc.sgn_nu[0] * rc.sgn_nu[1];
    const int s34 = rc.sgn_nu[2] * rc.sgn_nu[3];
    const double sk = std::sqrt(mod.k);

    const QuarterShift qz = quarter_shift_eval(1, 0, t, mod);
    const QuarterShift qw1 = quarter_shift_eval(1, 1, t, mod);
    const QuarterShift qu = quarter_shift_eval(1 + sg * s12, 1 - sg * s12, t, mod);
    const QuarterShift qw2 = quarter_shift_eval(1 - sg * s34, sg * s34, t, mod);

    // u and w2 carry an explicit factor i that cancels against the purely
    // imaginary shifted sn, leaving a factor -1.
    const Projective z = qz.value.scaled(rc.sgn_nu[0] * rc.sqrt_lambda1 * sk);
    const Projective w1 = qw1.value.scaled(rc.sqrt_mu1 * sk);
    const Projective u = qu.value.scaled(-rc.sgn_nu[3] * rc.sqrt_neg_lambda3 * sk);
    const Projective w2 = qw2.value.scaled(-s12 * rc.sqrt_neg_mu3 * sk);

    const double r = b.rho >= 0 ? 1.0 : -1.0;
    return flexion::make_sample(t, b, z.scaled(r), w1.scaled(r), u.scaled(r), w2.scaled(r));
}

double angle_difference(double a, double b) { return std::remainder(a - b, 2.0 * kPi); }

namespace {

constexpr std::array<flexion::Edge, 4> kEdges{flexion::Edge::Phi, flexion::Edge::Psi1, flexion::Edge::Theta,
                                              flexion::Edge::Psi2};

struct FitData {
    std::vector<flexion::FlexionSample> elementary;
    std::vector<double> ts;
};

double sum_squares(const FitData& d, const flexion::ReducedCoeffs& rc, const EllipticModulus& mod,
                   flexion::Branch eb, double scale, double shift) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.ts.size(); ++i) {
        const auto e = flexion_elliptic(rc, mod, eb, scale * d.ts[i] + shift);
        for (auto edge : kEdges) {
            const double diff = angle_difference(d.elementary[i].angle(edge), e.angle(edge));
            s += diff * diff;
        }
    }
    return s;
}

}  // namespace

Alignment fit_alignment(const flexion::ReducedCoeffs& rc, const EllipticModulus& mod, flexion::Branch elementary,
                        int samples) {
    FitData data;
    for (int i = 0; i < samples; ++i) {
        // Offset by half a step so no sample sits on a flattening trigger.
        const double t = 2.0 * kPi * (i + 0.5) / samples;
        data.ts.push_back(t);
        data.elementary.push_back(flexion::flexion_elementary(rc, elementary, t));
    }
    const double scale = -mod.K_prime / kPi;
    const double period = 2.0 * mod.K_prime;

    Alignment best;
    best.max_diff = std::numeric_limits<double>::infinity();
    for (int esig : {1, -1}) {
        const flexion::Branch eb{esig, elementary.rho};
        auto objective = [&](double c) { return sum_squares(data, rc, mod, eb, scale, c); };

        const int coarse = 256;
        double c0 = 0.0, f0 = std::numeric_limits<double>::infinity();
        for (int i = 0; i < coarse; ++i) {
            const double c = period * i / coarse;
            const double f = objective(c);
            if (f < f0) {
                f0 = f;
                c0 = c;
            }
        }
        // Golden-section refinement inside the neighbouring coarse cells.
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = c0 - period / coarse, hi = c0 + period / coarse;
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = objective(x1), f2 = objective(x2);
        for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = objective(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = objective(x2);
            }
        }
        double shift = std::fmod(0.5 * (lo + hi), period);
        if (shift < 0.0) shift += period;

        Alignment al;
        al.elementary = elementary;
        al.elliptic_sigma = esig;
        al.scale = scale;
        al.shift = shift;
        for (std::size_t i = 0; i < data.ts.size(); ++i) {
            const auto e = flexion_elliptic(rc, mod, eb, scale * data.ts[i] + shift);
            for (int a = 0; a < 4; ++a) {
                const double diff = std::abs(angle_difference(data.elementary[i].angle(kEdges[a]), e.angle(kEdges[a])));
                al.max_diff_per_angle[a] = std::max(al.max_diff_per_angle[a], diff);
            }
        }
        al.max_diff = *std::max_element(al.max_diff_per_angle.begin(), al.max_diff_per_angle.end());
        if (al.max_diff < best.max_diff) best = al;
    }
    return best;
}

void write_difference_csv(std::ostream& out, const flexion::ReducedCoeffs& rc, const EllipticModulus& mod,
                          const Alignment& al, int samples) {
    out << "t,angle,angle_elementary,angle_elliptic,diff\n";
    char buf[256];
    const flexion::Branch eb{al.elliptic_sigma, al.elementary.rho};
    for (int i = 0; i < samples; ++i) {
        const double t = 2.0 * kPi * i / samples;
        const auto s = flexion::flexion_elementary(rc, al.elementary, t);
        const auto e = flexion_elliptic(rc, mod, eb, al.scale * t + al.shift);
        for (auto edge : kEdges) {
            const double a = s.angle(edge), b = e.angle(edge);
            std::snprintf(buf, sizeof buf, "%.12g,%s,%.12g,%.12g,%.12g\n", t, flexion::edge_name(edge), a, b,
                          angle_difference(a, b));
            out << buf;
        }
    }
}

}  // namespace kokotsakis::elliptic
