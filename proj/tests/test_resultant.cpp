#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "fixtures.hpp"
#include "kokotsakis/error.hpp"
#include "kokotsakis/flexion.hpp"
#include "kokotsakis/resultant.hpp"

using namespace kokotsakis;
using namespace kokotsakis::resultant;

namespace {

Biquadratic random_biquadratic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return {u(rng), u(rng), u(rng), u(rng), u(rng)};
}

// Resultant from the roots: a^2 a'^2 prod (x_i - y_j) for the two quadratics in x.
double resultant_from_roots(const Biquadratic& p, const Biquadratic& q, double u, double v) {
    using C = std::complex<double>;
    auto roots = [](double A, double B, double C0) {
        const C d = std::sqrt(C(B * B - 4 * A * C0));
        return std::array<C, 2>{(-B + d) / (2 * A), (-B - d) / (2 * A)};
    };
    const double A = p.a22 * u * u + p.a20, B = 2 * p.a11 * u, C0 = p.a02 * u * u + p.a00;
    const double A2 = q.a22 * v * v + q.a20, B2 = 2 * q.a11 * v, C2 = q.a02 * v * v + q.a00;
    const auto r = roots(A, B, C0), s = roots(A2, B2, C2);
    C prod = A * A * A2 * A2;
    for (const auto& x : r)
        for (const auto& y : s) prod *= x - y;
    return prod.real();
}

bool same_set(const BranchSet& a, std::array<double, 4> expected, double tol) {
    std::array<double, 4> got;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(a.points[i].imag()) > tol) return false;
        got[i] = a.points[i].real();
    }
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < 4; ++i)
        if (std::abs(got[i] - expected[i]) > tol) return false;
    return true;
}

}  // namespace

TEST_CASE("expanded resultant matches the Sylvester determinant") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> w(-2.0, 2.0);
    for (int n = 0; n < 20; ++n) {
        const auto p = random_biquadratic(rng), q = random_biquadratic(rng);
        const BiPoly r = resultant_z(p, q);
        for (int k = 0; k < 100; ++k) {
            const double u = w(rng), v = w(rng);
            const double det = sylvester_determinant(p, q, u, v);
            const double scale = std::max(1.0, r.max_abs() * std::pow(std::max({1.0, u * u, v * v}), 2));
            CHECK(std::abs(r(u, v) - det) / scale < 1e-9);
        }
    }
}

TEST_CASE("Sylvester determinant equals the product formula") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> w(-2.0, 2.0);
    int checked = 0;
    for (int n = 0; n < 100; ++n) {
        const auto p = random_biquadratic(rng), q = random_biquadratic(rng);
        const double u = w(rng), v = w(rng);
        if (std::abs(p.a22 * u * u + p.a20) < 1e-2 || std::abs(q.a22 * v * v + q.a20) < 1e-2) continue;
        const double det = sylvester_determinant(p, q, u, v);
        const double ref = resultant_from_roots(p, q, u, v);
        CHECK(std::abs(det - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
        ++checked;
    }
    CHECK(checked > 80);
}

TEST_CASE("identical polynomials have vanishing resultant on the diagonal") {
    std::mt19937_64 rng(8);
    const auto p = random_biquadratic(rng);
    const BiPoly r = resultant_z(p, p);
    for (double t : {-1.5, -0.3, 0.0, 0.7, 1.9}) CHECK(std::abs(r(t, t)) < 1e-12 * std::max(1.0, r.max_abs()));
}

TEST_CASE("degenerate leading rows") {
    const Biquadratic p{0.0, 0.0, 1.0, 1.0, 1.0};
    try {
        resultant_z(p, p);
        FAIL("expected DegenerateLeading");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateLeading);
    }
}

TEST_CASE("reduced pair reproduces the closed form") {
    for (double z1 : {1.25, 2.0, 5.52268}) {
        const double z2 = std::sqrt(z1 * z1 - 1);
        const auto p = from_factors({1.0, 1.0, 4 * z1});
        const auto q = from_factors({-1.0, 1.0, 4 * z2});
        const BiPoly r = resultant_z(p, q);
        const BiPoly closed = reduced_resultant_quarter(z1, z2);
        CHECK(proportionality_deviation(r, closed) < 1e-9);
        // The resultant is four times the closed form.
        CHECK(r.c[0][0] == doctest::Approx(4 * closed.c[0][0]).epsilon(1e-12));
        CHECK(r.c[4][4] == doctest::Approx(4 * closed.c[4][4]).epsilon(1e-12));
    }
}

TEST_CASE("factorization of the reduced resultant") {
    const auto f = factor_reduced_resultant(1.25, 0.75);
    CHECK_FALSE(f.irreducible);
    CHECK(f.first.c == doctest::Approx(4.0));
    CHECK(f.second.c == doctest::Approx(0.25));
    CHECK(f.product_residual <= 1e-12);

    const auto g = factor_reduced_resultant(1.25, -0.75);
    CHECK(g.first.c == doctest::Approx(f.second.c));
    CHECK(g.second.c == doctest::Approx(f.first.c));

    const auto h = factor_reduced_resultant(1.25, 1.0);
    CHECK(h.irreducible);
    CHECK(h.product_residual > 1e-6);
    CHECK_FALSE(h.discriminant_is_square);
}

TEST_CASE("perturbed zeta pairs are irreducible") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> z(1.01, 10.0), eps(1e-4, 1e-1);
    for (int n = 0; n < 200; ++n) {
        const double z1 = z(rng);
        const double z2 = std::sqrt(z1 * z1 - 1) + (n % 2 ? 1 : -1) * eps(rng);
        CHECK(factor_reduced_resultant(z1, z2).irreducible);
        CHECK_FALSE(factor_reduced_resultant(z1, std::sqrt(z1 * z1 - 1)).irreducible);
    }
}

TEST_CASE("branch sets from zeta values") {
    CHECK(same_set(branch_set_first(1.25), {2.0, 0.5, -2.0, -0.5}, 1e-14));
    CHECK(same_set(branch_set_second(0.75), {2.0, -0.5, -2.0, 0.5}, 1e-14));
    CHECK(branch_set_distance(branch_set_first(1.25), branch_set_second(0.75)) < 1e-14);
    const double d = branch_set_distance(branch_set_first(1.25), branch_set_second(0.751));
    CHECK(d > 3e-4);
    CHECK(d < 3e-3);

    // Closed under x -> 1/x and x -> -x.
    const auto b = branch_set_first(3.7);
    BranchSet inv, neg;
    for (int i = 0; i < 4; ++i) inv.points[i] = 1.0 / b.points[i], neg.points[i] = -b.points[i];
    CHECK(branch_set_distance(b, inv) < 1e-12);
    CHECK(branch_set_distance(b, neg) < 1e-12);
}

TEST_CASE("branch points of the configuration polynomial") {
    for (double z : {1.25, 3.0, 5.52268}) {
        const auto b = branch_points_quad({1.0, 1.0, 4 * z});
        CHECK(branch_set_distance(b, branch_set_first(z)) < 1e-12);
        // Scaling x by sqrt(lambda) maps the reduced set to the general one.
        const double lam = 2.7, mu = 0.4;
        const auto g = branch_points_quad({lam, mu, 4 * z * std::sqrt(lam * mu)});
        BranchSet scaled;
        for (int i = 0; i < 4; ++i) scaled.points[i] = std::sqrt(lam) * branch_set_first(z).points[i];
        CHECK(branch_set_distance(g, scaled) < 1e-12);
    }
}

TEST_CASE("Stachel check on the worked example") {
    const auto rep = stachel_check(fixtures::example_spec());
    CHECK(rep.pass);
    CHECK(rep.branch_set_distance <= 1e-9);
    CHECK_FALSE(rep.factorization.irreducible);
    CHECK(rep.proportionality <= 1e-8);
}

TEST_CASE("Stachel check on random flexible specs") {
    std::mt19937_64 rng(19);
    for (int n = 0; n < 100; ++n) {
        const auto spec = fixtures::random_spec(rng);
        const auto rep = stachel_check(spec);
        CHECK(rep.branch_set_distance <= 1e-9);
        CHECK_FALSE(rep.factorization.irreducible);
        CHECK(rep.factorization.product_residual <= 1e-12);
        CHECK(rep.proportionality <= 1e-8);
        CHECK(rep.pass);
    }
}
