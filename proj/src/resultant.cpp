#include "kokotsakis/resultant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kokotsakis/error.hpp"

namespace kokotsakis::resultant {

namespace {

using Poly1 = std::array<double, 3>;  // c0 + c1 t + c2 t^2

BiPoly outer(const Poly1& p, const Poly1& q) {
    BiPoly r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.c[i][j] = p[i] * q[j];
    return r;
}

BiPoly minus(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) r.c[i][j] = a.c[i][j] - b.c[i][j];
    return r;
}

BiPoly times(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            if (a.c[i][j] == 0.0) continue;
            for (int k = 0; i + k < 5; ++k)
                for (int l = 0; j + l < 5; ++l) r.c[i + k][j + l] += a.c[i][j] * b.c[k][l];
        }
    return r;
}

struct Rows {
    Poly1 A, B, C;
};

Rows rows_of(const Biquadratic& p) { return {{p.a20, 0.0, p.a22}, {0.0, 2.0 * p.a11, 0.0}, {p.a00, 0.0, p.a02}}; }

double det4(std::array<std::array<double, 4>, 4> m) {
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
        }
    }
    return det;
}

// Even-power part of a polynomial in (g1, g3) as a polynomial in (g1^2, g3^2).
std::array<std::array<double, 3>, 3> squared_variables(const BiPoly& p) {
    std::array<std::array<double, 3>, 3> m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = p.c[2 * i][2 * j];
    return m;
}

// Whether a real polynomial of degree <= 4 is the square of a real polynomial.
bool is_square_polynomial(const std::array<double, 5>& d) {
    const double scale = std::max(1e-300, *std::max_element(d.begin(), d.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
    }));
    const double s = std::abs(scale);
    const double tol = 1e-9 * s;
    int deg = 4;
    while (deg > 0 && std::abs(d[deg]) <= 1e-12 * s) --deg;
    if (deg % 2 == 1 || d[deg] < 0.0) return false;
    if (deg == 0) return true;
    if (deg == 2) {
        const double q1 = std::sqrt(d[2]);
        const double q0 = d[1] / (2.0 * q1);
        return std::abs(d[0] - q0 * q0) <= tol;
    }
    const double q2 = std::sqrt(d[4]);
    const double q1 = d[3] / (2.0 * q2);
    const double q0 = (d[2] - q1 * q1) / (2.0 * q2);
    return std::abs(d[1] - 2.0 * q1 * q0) <= tol && std::abs(d[0] - q0 * q0) <= tol;
}

double relative_distance(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

Biquadratic from_factors(const sphquad::InvolutionFactors& f) {
    return {1.0, f.mu, f.lambda, -0.5 * f.nu, f.lambda * f.mu};
}

double BiPoly::operator()(double u, double v) const {
    double total = 0.0;
    for (int i = 4; i >= 0; --i) {
        double row = 0.0;
        for (int j = 4; j >= 0; --j) row = row * v + c[i][j];
        total = total * u + row;
    }
    return total;
}

BiPoly BiPoly::transposed() const {
    BiPoly r;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) r.c[i][j] = c[j][i];
    return r;
}

double BiPoly::max_abs() const {
    double m = 0.0;
    for (const auto& row : c)
        for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

BiPoly resultant_z(const Biquadratic& p, const Biquadratic& q) {
    if (p.a22 == 0.0 && p.a20 == 0.0 && q.a22 == 0.0 && q.a20 == 0.0)
        throw Error(ErrorKind::DegenerateLeading, "both polynomials lack an x^2 term");
    const Rows r = rows_of(p);
    const Rows s = rows_of(q);
    // det [[A B C 0] [0 A B C] [A' B' C' 0] [0 A' B' C']]
    //   = (AC' - A'C)^2 - (AB' - A'B)(BC' - B'C)
    const BiPoly ac = minus(outer(r.A, s.C), outer(r.C, s.A));
    const BiPoly ab = minus(outer(r.A, s.B), outer(r.B, s.A));
    const BiPoly bc = minus(outer(r.B, s.C), outer(r.C, s.B));
    return minus(times(ac, ac), times(ab, bc));
}

double sylvester_determinant(const Biquadratic& p, const Biquadratic& q, double u, double v) {
    const double A = p.a22 * u * u + p.a20, B = 2.0 * p.a11 * u, C = p.a02 * u * u + p.a00;
    const double A2 = q.a22 * v * v + q.a20, B2 = 2.0 * q.a11 * v, C2 = q.a02 * v * v + q.a00;
    return det4({{{A, B, C, 0.0}, {0.0, A, B, C}, {A2, B2, C2, 0.0}, {0.0, A2, B2, C2}}});
}

double proportionality_deviation(const BiPoly& a, const BiPoly& b) {
    auto pivot = [](const BiPoly& p) {
        double best = 0.0;
        for (const auto& row : p.c)
            for (double v : row)
                if (std::abs(v) > std::abs(best)) best = v;
        return best;
    };
    const double pa = pivot(a), pb = pivot(b);
    if (pa == 0.0 || pb == 0.0) return (pa == pb) ? 0.0 : 1.0;
    double dev = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) dev = std::max(dev, std::abs(a.c[i][j] / pa - b.c[i][j] / pb));
    return dev;
}

BiPoly reduced_resultant_quarter(double zeta1, double zeta2) {
    const double z1 = zeta1 * zeta1, z2 = zeta2 * zeta2;
    BiPoly r;
    r.c[0][0] = 1.0;
    r.c[2][0] = 2.0 * (1.0 - 2.0 * z1);
    r.c[0][2] = 2.0 * (1.0 + 2.0 * z2);
    r.c[4][0] = 1.0;
    r.c[2][2] = 4.0 * (1.0 - 2.0 * z1 + 2.0 * z2);
    r.c[0][4] = 1.0;
    r.c[4][2] = 2.0 * (1.0 + 2.0 * z2);
    r.c[2][4] = 2.0 * (1.0 - 2.0 * z1);
    r.c[4][4] = 1.0;
    return r;
}

BiPoly QuadricFactor::poly() const {
    BiPoly p;
    p.c[2][2] = 1.0;
    p.c[2][0] = c;
    p.c[0][2] = -c;
    p.c[0][0] = -1.0;
    return p;
}

ReducedFactorization factor_reduced_resultant(double zeta1, double zeta2) {
    ReducedFactorization out;
    out.first.c = (zeta1 + zeta2) * (zeta1 + zeta2);
    out.second.c = (zeta1 - zeta2) * (zeta1 - zeta2);
    const BiPoly quarter = reduced_resultant_quarter(zeta1, zeta2);
    const BiPoly product = times(out.first.poly(), out.second.poly());

    double diff = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) diff = std::max(diff, std::abs(product.c[i][j] - quarter.c[i][j]));
    out.product_residual = diff / quarter.max_abs();

    // Splitting test: as a quadratic in g1^2 the resultant factors into
    // linear pieces exactly when its discriminant is a perfect square.
    const auto m = squared_variables(quarter);
    std::array<double, 5> disc{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) disc[i + j] += m[1][i] * m[1][j] - 4.0 * m[2][i] * m[0][j];
    out.discriminant_is_square = is_square_polynomial(disc);

    out.irreducible = out.product_residual > 1e-6 && !out.discriminant_is_square;
    return out;
}

BranchSet branch_set_first(double zeta1) {
    const double r = std::sqrt(zeta1 * zeta1 - 1.0);
    return {{zeta1 + r, zeta1 - r, -zeta1 + r, -zeta1 - r}};
}

BranchSet branch_set_second(double zeta2) {
    const double r = std::sqrt(zeta2 * zeta2 + 1.0);
    return {{zeta2 + r, zeta2 - r, -zeta2 + r, -zeta2 - r}};
}

BranchSet branch_points_quad(const sphquad::InvolutionFactors& f) {
    // The discriminant in y vanishes where x^2 + lambda = +-(nu / (2 sqrt(mu))) x.
    using C = std::complex<double>;
    const C k = C(f.nu) / (2.0 * std::sqrt(C(f.mu)));
    BranchSet out;
    int idx = 0;
    for (double s : {1.0, -1.0}) {
        const C b = s * k;
        const C root = std::sqrt(b * b - 4.0 * f.lambda);
        out.points[idx++] = 0.5 * (b + root);
        out.points[idx++] = 0.5 * (b - root);
    }
    return out;
}

double branch_set_distance(const BranchSet& a, const BranchSet& b) {
    std::array<int, 4> perm{0, 1, 2, 3};
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) worst = std::max(worst, relative_distance(a.points[i], b.points[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

StachelReport stachel_check(const planar::PolyhedronSpec& spec) {
    const auto& f = spec.factors;
    const sphquad::InvolutionFactors p1 = f[0];
    const sphquad::InvolutionFactors p2{-f[0].lambda, -f[2].mu, f[1].nu};
    const sphquad::InvolutionFactors p3 = f[2];
    const sphquad::InvolutionFactors p4{-f[2].lambda, -f[0].mu, f[3].nu};

    StachelReport rep;
    rep.branch_set_distance = branch_set_distance(branch_points_quad(p1), branch_points_quad(p2));

    const auto zetas = planar::compute_zetas(f);
    rep.factorization = factor_reduced_resultant(zetas[0], zetas[1]);

    const BiPoly r12 = resultant_z(from_factors(p1), from_factors(p2));
    const BiPoly r34 = resultant_z(from_factors(p3), from_factors(p4)).transposed();
    rep.proportionality = proportionality_deviation(r12, r34);

    rep.pass = rep.branch_set_distance <= 1e-9 && !rep.factorization.irreducible &&
               rep.factorization.product_residual <= 1e-12 && rep.proportionality <= 1e-8;
    return rep;
}

}  // namespace kokotsakis::resultant
