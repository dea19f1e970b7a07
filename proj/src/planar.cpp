#include "kokotsakis/planar.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kokotsakis/error.hpp"

namespace kokotsakis::planar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBaseRightAngleTol = 1e-6;

using Wide = long double;

template <class T>
T table_scale(const BasicCoefficientTable<T>& t) {
    T m = 0.0;
    for (T v : {t.s10, t.s01, t.l20, t.l11, t.l02, t.n20, t.n11, t.n02, t.d20, t.d11, t.d02})
        m = std::max(m, std::abs(v));
    return std::max(m, T(1));
}

template <class T>
struct Forms {
    T S, L, N, D;
};

// Forms evaluated on an explicit (cos, sin) pair so that tau + pi is exact.
template <class T>
Forms<T> forms_at(const BasicCoefficientTable<T>& t, T c, T s) {
    return {
        t.s10 * c + t.s01 * s,
        t.l20 * c * c + t.l11 * s * c + t.l02 * s * s,
        t.n20 * c * c + t.n11 * s * c + t.n02 * s * s,
        t.d20 * c * c + t.d11 * s * c + t.d02 * s * s,
    };
}

template <class T>
BasicCoefficientTable<T> table_of(const XYSParams& p) {
    const T x = p.x, y = p.y, s = p.s;
    using std::cos, std::sin;
    const T c2x = cos(2 * x), c2y = cos(2 * y), c2s = cos(2 * s);
    auto sq = [](T v) { return v * v; };
    BasicCoefficientTable<T> t{};
    t.s10 = c2x + c2y + 2 * c2s;
    t.s01 = c2x - c2y;
    t.l20 = sq(c2x - c2y) + 8 * c2s * (c2x + c2y);
    t.l11 = 2 * (c2x - c2y) * (c2x + c2y + 2 * c2s);
    t.l02 = sq(c2x + c2y - 2 * c2s);
    t.n20 = sin(x + y) * (sin(x - 3 * y) + sin(3 * x - y) + 6 * sin(x - y + 2 * s) - 2 * sin(x - y - 2 * s));
    t.n11 = 8 * (sq(sin(x + s)) * sq(cos(x - s)) + sq(sin(y - s)) * sq(cos(y + s)));
    t.n02 = (c2y - c2x) * (c2x + c2y - 2 * c2s);
    t.d20 = cos(x - y) * (cos(3 * x + y) + cos(x + 3 * y) + 2 * cos(x + y - 2 * s) + 4 * cos(x + 3 * s) * cos(y - s));
    t.d11 = cos(4 * x) - cos(4 * y) - 4 * sin(x + y) * sin(x - y + 2 * s);
    t.d02 = sin(x - y) * (sin(x + 3 * y) - sin(3 * x + y) + 2 * sin(x + y - 2 * s) - 4 * cos(x + 3 * s) * sin(y - s));
    return t;
}

enum class RootStatus { Ok, NegativeDiscriminant, ZeroDenominator };

RootStatus root_from_table(const WideCoefficientTable& t, Wide scale, Wide c, Wide s, double& out) {
    const Forms<Wide> f = forms_at(t, c, s);
    Wide L = f.L;
    if (L < 0.0L) {
        if (L < -1e-13L * scale) return RootStatus::NegativeDiscriminant;
        L = 0.0L;
    }
    if (std::abs(f.D) < 1e-14L * scale) return RootStatus::ZeroDenominator;
    out = static_cast<double>((f.N + f.S * std::sqrt(L)) / (2.0L * f.D));
    return RootStatus::Ok;
}

RootStatus root_at(const XYSParams& p, Wide c, Wide s, double& out) {
    const WideCoefficientTable t = table_of<Wide>(p);
    return root_from_table(t, table_scale(t), c, s, out);
}

bool in_range(double v) { return v >= -1.0 && v <= kRangeUpper && std::abs(v) > kZeroTol; }

void check_delta(double d, int index) {
    const std::string name = "delta" + std::to_string(index + 1);
    if (!std::isfinite(d) || d <= 0.0 || d >= 2.0 * kPi)
        throw Error(ErrorKind::InvalidInput, name + " must lie in (0, 2pi)");
    if (std::abs(d - kPi / 2) < kBaseRightAngleTol)
        throw Error(ErrorKind::RightAngle,
                    "geometric assumption 1 violated: " + name + " is a right angle");
}

double arctan_zero_pi(double t) {
    double a = std::atan(t);
    return a < 0.0 ? a + kPi : a;
}

}  // namespace

BaseAngles make_base_angles(std::array<double, 4> delta) {
    for (int i = 0; i < 3; ++i) check_delta(delta[i], i);
    const double sum = delta[0] + delta[1] + delta[2] + delta[3];
    if (!(std::abs(sum - 2.0 * kPi) <= kDeltaSumTol))
        throw Error(ErrorKind::InvalidInput, "base angles must sum to 2pi");
    delta[3] = 2.0 * kPi - delta[0] - delta[1] - delta[2];
    check_delta(delta[3], 3);
    return BaseAngles{delta};
}

XYSParams deltas_to_xys(const BaseAngles& b) {
    const auto& d = b.delta;
    return {(d[0] - d[2]) / 2.0, (d[1] - d[3]) / 2.0, (d[0] - d[1] + d[2] - d[3]) / 4.0};
}

std::array<double, 4> xys_to_deltas(const XYSParams& p) {
    return {kPi / 2 + p.s + p.x, kPi / 2 - p.s + p.y, kPi / 2 + p.s - p.x, kPi / 2 - p.s - p.y};
}

CoefficientTable coefficient_table(const XYSParams& p) { return table_of<double>(p); }

TrigForms trig_forms(const CoefficientTable& t, double tau) {
    const Forms<double> f = forms_at(t, std::cos(tau), std::sin(tau));
    return {f.S, f.L, f.N, f.D};
}

double r1_of(double tau, const XYSParams& p) {
    double out = 0.0;
    switch (root_at(p, std::cos(Wide(tau)), std::sin(Wide(tau)), out)) {
        case RootStatus::NegativeDiscriminant:
            throw Error(ErrorKind::NegativeDiscriminant, "L(tau) < 0: no real r1 for this tau");
        case RootStatus::ZeroDenominator:
            throw Error(ErrorKind::ZeroDenominator, "D(tau) = 0: r1 undefined for this tau");
        case RootStatus::Ok:
            break;
    }
    return out;
}

std::optional<double> try_r1_of(double tau, const XYSParams& p) {
    double out = 0.0;
    if (root_at(p, std::cos(Wide(tau)), std::sin(Wide(tau)), out) != RootStatus::Ok) return std::nullopt;
    return out;
}

namespace {

// The four tables behind r1, c1, r3, c3.
std::array<XYSParams, 4> variants(const XYSParams& p) {
    return {XYSParams{p.x, p.y, p.s}, XYSParams{p.x, -p.y, p.s}, XYSParams{-p.x, -p.y, p.s}, XYSParams{-p.x, p.y, p.s}};
}

// Shared by the throwing and non-throwing variants; returns the failing
// status (if any) alongside the quadruple.
RootStatus quadruple_from_tables(const std::array<WideCoefficientTable, 4>& t, const std::array<Wide, 4>& scale,
                                 double tau, RCQuadruple& rc) {
    const Wide c = std::cos(Wide(tau)), s = std::sin(Wide(tau));
    RootStatus st;
    if ((st = root_from_table(t[0], scale[0], c, s, rc.r1)) != RootStatus::Ok) return st;
    if ((st = root_from_table(t[1], scale[1], -c, -s, rc.c1)) != RootStatus::Ok) return st;
    if ((st = root_from_table(t[2], scale[2], c, s, rc.r3)) != RootStatus::Ok) return st;
    if ((st = root_from_table(t[3], scale[3], -c, -s, rc.c3)) != RootStatus::Ok) return st;
    return RootStatus::Ok;
}

RootStatus quadruple_at(double tau, const XYSParams& p, RCQuadruple& rc) {
    std::array<WideCoefficientTable, 4> t;
    std::array<Wide, 4> scale;
    const auto v = variants(p);
    for (int i = 0; i < 4; ++i) {
        t[i] = table_of<Wide>(v[i]);
        scale[i] = table_scale(t[i]);
    }
    return quadruple_from_tables(t, scale, tau, rc);
}

bool all_in_range(const VertexRC& v) {
    for (int i = 0; i < 4; ++i)
        if (!in_range(v.r[i]) || !in_range(v.c[i])) return false;
    return true;
}

}  // namespace

RCQuadruple rc_quadruple(double tau, const XYSParams& p) {
    RCQuadruple rc;
    switch (quadruple_at(tau, p, rc)) {
        case RootStatus::NegativeDiscriminant:
            throw Error(ErrorKind::NegativeDiscriminant, "L < 0 for one of r1, c1, r3, c3");
        case RootStatus::ZeroDenominator:
            throw Error(ErrorKind::ZeroDenominator, "D = 0 for one of r1, c1, r3, c3");
        case RootStatus::Ok:
            break;
    }
    if (!all_in_range(vertex_values(rc)))
        throw Error(ErrorKind::OutOfRange,
                    "geometric assumption 2 violated: some r_i or c_i is outside [-1, 1) or zero");
    return rc;
}

std::optional<RCQuadruple> try_rc_quadruple(double tau, const XYSParams& p) {
    RCQuadruple rc;
    if (quadruple_at(tau, p, rc) != RootStatus::Ok) return std::nullopt;
    if (!all_in_range(vertex_values(rc))) return std::nullopt;
    return rc;
}

VertexRC vertex_values(const RCQuadruple& rc) {
    return {{rc.r1, -rc.r1, rc.r3, -rc.r3}, {rc.c1, -rc.c3, rc.c3, -rc.c1}};
}

namespace {

VertexRC reversed(const VertexRC& v) {
    VertexRC out;
    for (int i = 0; i < 4; ++i) {
        out.r[i] = v.r[3 - i];
        out.c[i] = v.c[3 - i];
    }
    return out;
}

XYSParams reversed_xys(const BaseAngles& b) {
    const auto& d = b.delta;
    return deltas_to_xys(BaseAngles{{d[3], d[2], d[1], d[0]}});
}

}  // namespace

RCSolver::RCSolver(const BaseAngles& b) {
    const auto v = variants(reversed_xys(b));
    for (int i = 0; i < 4; ++i) {
        tables_[i] = table_of<Wide>(v[i]);
        scales_[i] = table_scale(tables_[i]);
    }
}

std::optional<VertexRC> RCSolver::at(double tau) const {
    RCQuadruple rc;
    if (quadruple_from_tables(tables_, scales_, tau, rc) != RootStatus::Ok) return std::nullopt;
    const VertexRC v = vertex_values(rc);
    if (!all_in_range(v)) return std::nullopt;
    return reversed(v);
}

VertexRC solve_vertex_rc(const BaseAngles& b, double tau) {
    return reversed(vertex_values(rc_quadruple(tau, reversed_xys(b))));
}

std::optional<VertexRC> try_solve_vertex_rc(const BaseAngles& b, double tau) { return RCSolver(b).at(tau); }

double lambda_from_r(double r, int sign) {
    const double root = std::sqrt(std::max(0.0, 1.0 - r * r));
    // (1 - root) / r is computed as r / (1 + root) to avoid cancellation.
    return sign >= 0 ? (1.0 + root) / r : r / (1.0 + root);
}

std::array<std::pair<double, double>, 4> rc_to_lambda_mu(const VertexRC& v, const std::array<int, 4>& sign_choice) {
    std::array<std::pair<double, double>, 4> out;
    for (int i = 0; i < 4; ++i)
        out[i] = {lambda_from_r(v.r[i], sign_choice[i]), lambda_from_r(v.c[i], sign_choice[i])};
    return out;
}

std::array<SphericalQuad, 4> recover_angles(const BaseAngles& b, const VertexRC& v, const SigmaSigns& sigma) {
    const auto& sa = sigma.alpha;
    const auto& sg = sigma.gamma;
    if (sa[0] != sa[1] || sa[2] != sa[3] || sg[0] != sg[3] || sg[1] != sg[2])
        throw Error(ErrorKind::InvalidInput, "sigma signs violate the product constraints");

    auto side = [](double r, int sign, double tan_delta) {
        if (1.0 + r <= 0.0) return kPi / 2;
        return arctan_zero_pi(sign * std::sqrt((1.0 - r) / (1.0 + r)) * tan_delta);
    };

    std::array<SphericalQuad, 4> quads;
    for (int i = 0; i < 4; ++i) {
        const double d = b.delta[i];
        const double td = std::tan(d);
        const double a = side(v.r[i], sa[i], td);
        const double g = side(v.c[i], sg[i], td);
        const double cb = std::cos(a) * std::cos(g) / std::cos(d);
        if (!(std::abs(cb) < 1.0))
            throw Error(ErrorKind::BetaUndefined, "geometric assumption 3 violated: |cos(beta" +
                                                      std::to_string(i + 1) + ")| >= 1");
        quads[i] = {a, std::acos(cb), g, d};
    }
    return quads;
}

std::vector<SigmaSigns> admissible_sigmas() {
    std::vector<SigmaSigns> out;
    for (int a12 : {1, -1})
        for (int a34 : {1, -1})
            for (int g14 : {1, -1})
                for (int g23 : {1, -1})
                    out.push_back({{a12, a12, a34, a34}, {g14, g23, g23, g14}});
    return out;
}

bool has_normal_pattern(const std::array<InvolutionFactors, 4>& f) {
    return f[0].lambda > 0 && f[0].mu > 0 && f[1].lambda < 0 && f[1].mu > 0 && f[2].lambda < 0 && f[2].mu < 0 &&
           f[3].lambda > 0 && f[3].mu < 0;
}

std::array<double, 4> compute_zetas(const std::array<InvolutionFactors, 4>& f) {
    std::array<double, 4> z{};
    for (int i : {0, 1, 3}) z[i] = std::abs(f[i].nu) / (4.0 * std::sqrt(std::abs(f[i].lambda * f[i].mu)));
    const double sign = (f[0].nu * f[1].nu * f[3].nu) >= 0 ? 1.0 : -1.0;
    z[2] = f[2].nu * sign / (4.0 * std::sqrt(f[2].lambda * f[2].mu));
    return z;
}

PolyhedronSpec reenumerate(const PolyhedronSpec& spec, int shift) {
    shift = ((shift % 4) + 4) % 4;
    const bool swap = (shift % 2) == 1;
    PolyhedronSpec out = spec;
    for (int i = 0; i < 4; ++i) {
        const int j = (i + shift) % 4;
        SphericalQuad q = spec.quads[j];
        InvolutionFactors f = spec.factors[j];
        int sa = spec.sigma.alpha[j], sg = spec.sigma.gamma[j];
        if (swap) {
            std::swap(q.alpha, q.gamma);
            std::swap(f.lambda, f.mu);
            std::swap(sa, sg);
        }
        out.quads[i] = q;
        out.factors[i] = f;
        out.sigma.alpha[i] = sa;
        out.sigma.gamma[i] = sg;
        out.enumeration[i] = spec.enumeration[j];
    }
    if (out.factors[2].lambda * out.factors[2].mu > 0) out.zetas = compute_zetas(out.factors);
    return out;
}

std::vector<int> normalizing_shifts(const PolyhedronSpec& spec) {
    std::vector<int> shifts;
    for (int k = 0; k < 4; ++k)
        if (has_normal_pattern(reenumerate(spec, k).factors)) shifts.push_back(k);
    return shifts;
}

PolyhedronSpec normalize_enumeration(const PolyhedronSpec& spec) {
    const auto shifts = normalizing_shifts(spec);
    if (shifts.empty())
        throw Error(ErrorKind::NoValidPattern, "no cyclic re-enumeration gives the normal sign pattern");
    PolyhedronSpec out = reenumerate(spec, shifts.front());
    out.zetas = compute_zetas(out.factors);
    return out;
}

SphericalQuad apply_vertex_symmetry(const SphericalQuad& q, int which) { return sphquad::apply_vertex_symmetry(q, which); }

PolyhedronSpec construct(const BaseAngles& b, double tau, const std::optional<SigmaSigns>& sigma) {
    const VertexRC v = solve_vertex_rc(b, tau);
    const std::vector<SigmaSigns> candidates = sigma ? std::vector<SigmaSigns>{*sigma} : admissible_sigmas();

    for (const SigmaSigns& sg : candidates) {
        const auto quads = recover_angles(b, v, sg);
        bool elliptic = true;
        for (const auto& q : quads) elliptic = elliptic && sphquad::is_elliptic(q);
        if (!elliptic) continue;

        PolyhedronSpec spec;
        spec.base = b;
        spec.tau = tau;
        spec.quads = quads;
        spec.sigma = sg;
        for (int i = 0; i < 4; ++i) spec.factors[i] = sphquad::involution_factors(quads[i]);
        spec = normalize_enumeration(spec);
        if (!(spec.zetas[0] > 1.0))
            throw Error(ErrorKind::NotFlexible, "zeta1 <= 1: the system has no real flexion");
        return spec;
    }
    throw Error(ErrorKind::NotElliptic,
                "geometric assumption 4 violated: no sign choice makes all four quadrilaterals elliptic");
}

std::array<double, 4> opposite_factor_residuals(const std::array<InvolutionFactors, 4>& f) {
    auto rel = [](double a, double b) { return std::abs(a + b) / std::max({1.0, std::abs(a), std::abs(b)}); };
    return {rel(f[0].lambda, f[1].lambda), rel(f[0].mu, f[3].mu), rel(f[1].mu, f[2].mu), rel(f[2].lambda, f[3].lambda)};
}

std::array<double, 4> z_values(const std::array<InvolutionFactors, 4>& f) {
    std::array<double, 4> z{};
    for (int i = 0; i < 4; ++i) z[i] = f[i].nu * f[i].nu / (4.0 * f[i].lambda * f[i].mu);
    return z;
}

}  // namespace kokotsakis::planar
