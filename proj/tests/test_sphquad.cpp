#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "kokotsakis/error.hpp"
#include "kokotsakis/sphquad.hpp"

using namespace kokotsakis;
using namespace kokotsakis::sphquad;
using fixtures::kPi;

namespace {

const double kBetaRef = std::acos(1.0 / (2.0 * std::sqrt(3.0)));
const SphericalQuad kRef{kPi / 3, kBetaRef, kPi / 3, kPi / 6};

// Random orthodiagonal elliptic quads with no side near pi/2.
struct QuadSampler {
    std::mt19937_64 rng{20240601};
    std::uniform_real_distribution<double> side{0.05, kPi - 0.05};

    SphericalQuad next() {
        for (;;) {
            const double a = side(rng), g = side(rng), d = side(rng);
            if (std::abs(std::cos(a)) < 0.05 || std::abs(std::cos(g)) < 0.05 || std::abs(std::cos(d)) < 0.05) continue;
            const double cb = std::cos(a) * std::cos(g) / std::cos(d);
            if (std::abs(cb) >= 0.999) continue;
            SphericalQuad q{a, std::acos(cb), g, d};
            if (is_elliptic(q, 1e-3)) return q;
        }
    }
};

}  // namespace

TEST_CASE("orthodiagonality predicate") {
    CHECK(is_orthodiagonal({0.7, 0.7, 1.9, 1.9}));
    CHECK(is_orthodiagonal({2.2, 2.2, 0.4, 0.4}));
    CHECK(is_orthodiagonal(kRef));
    CHECK_FALSE(is_orthodiagonal({kPi / 3, kPi / 3, kPi / 3, kPi / 6}));
}

TEST_CASE("ellipticity predicate") {
    CHECK_FALSE(is_elliptic({kPi / 3, kPi / 3, kPi / 3, kPi / 3}));
    CHECK(is_elliptic({kPi / 3, 1.27795, kPi / 3, kPi / 6}));
    CHECK_FALSE(is_elliptic({kPi / 2, kPi / 2, kPi / 2, kPi / 2}));
}

TEST_CASE("involution factors of the reference quad") {
    const auto f = involution_factors(kRef);
    CHECK(f.lambda == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(f.mu == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(f.nu == doctest::Approx(6.0 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("shifting alpha and gamma by pi keeps the factors") {
    const auto f = involution_factors(kRef);
    const auto g = involution_factors(apply_vertex_symmetry(kRef, 1));
    CHECK(g.lambda == doctest::Approx(f.lambda).epsilon(1e-12));
    CHECK(g.mu == doctest::Approx(f.mu).epsilon(1e-12));
    CHECK(g.nu == doctest::Approx(f.nu).epsilon(1e-12));
}

TEST_CASE("vertex symmetries compose and stay elliptic") {
    QuadSampler s;
    for (int n = 0; n < 200; ++n) {
        const auto q = s.next();
        const auto twice = apply_vertex_symmetry(apply_vertex_symmetry(q, 1), 1);
        CHECK(std::abs(std::remainder(twice.alpha - q.alpha, 2 * kPi)) < 1e-12);
        CHECK(std::abs(std::remainder(twice.gamma - q.gamma, 2 * kPi)) < 1e-12);

        const auto a = apply_vertex_symmetry(apply_vertex_symmetry(q, 2), 3);
        const auto b = apply_vertex_symmetry(q, 1);
        CHECK(std::abs(std::remainder(a.alpha - b.alpha, 2 * kPi)) < 1e-12);
        CHECK(std::abs(std::remainder(a.gamma - b.gamma, 2 * kPi)) < 1e-12);
        CHECK(a.beta == doctest::Approx(b.beta).epsilon(1e-12));

        for (int w : {1, 2, 3}) {
            const auto r = apply_vertex_symmetry(q, w);
            CHECK(is_elliptic(r, 1e-6));
            CHECK(is_orthodiagonal(r, 1e-12));
        }
    }
}

TEST_CASE("right-angle case alpha = delta = pi/2") {
    const double beta = 2 * kPi / 3, gamma = 1.0;
    const auto f = involution_factors({kPi / 2, beta, gamma, kPi / 2});
    const double expected = (std::cos(beta) + std::cos(gamma)) / (std::cos(beta) - std::cos(gamma));
    CHECK(f.lambda == doctest::Approx(expected).epsilon(1e-12));
    CHECK(f.mu != 0.0);
    CHECK(f.nu != 0.0);
}

TEST_CASE("missing right-angle case raises DegenerateQuad") {
    try {
        involution_factors({kPi / 2, kPi / 3, kPi / 2, kPi / 2});
        FAIL("expected an exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateQuad);
    }
}

TEST_CASE("configuration residual") {
    const InvolutionFactors f{1.0, 1.0, 4.0};
    CHECK(config_residual(f, 1.0, 1.0) == doctest::Approx(0.0));
    CHECK(config_residual(f, 1.0, 2.0) == doctest::Approx(2.0));
    CHECK(config_residual(f, Projective::infinity(), Projective::finite(3.0)) != doctest::Approx(0.0));
    CHECK(config_residual(f, Projective::infinity(), Projective::finite(3.0)) == doctest::Approx(10.0));
}

TEST_CASE("configuration residual is symmetric under swapping the variables") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int n = 0; n < 500; ++n) {
        const InvolutionFactors f{u(rng), u(rng), u(rng)};
        const double z = u(rng), w = u(rng);
        const InvolutionFactors g{f.mu, f.lambda, f.nu};
        CHECK(config_residual(f, z, w) == doctest::Approx(config_residual(g, w, z)).epsilon(1e-12));
    }
}

TEST_CASE("involutions preserve the configuration curve") {
    QuadSampler s;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    int checked = 0;
    for (int n = 0; n < 2000 && checked < 300; ++n) {
        const auto f = involution_factors(s.next());
        const double z = u(rng);
        // (z^2 + lambda) w^2 - nu z w + mu (z^2 + lambda) = 0
        const double a = z * z + f.lambda, b = -f.nu * z, c = f.mu * a;
        const double disc = b * b - 4 * a * c;
        if (std::abs(a) < 1e-3 || disc < 0 || std::abs(z) < 1e-3) continue;
        const double w = (-b + std::sqrt(disc)) / (2 * a);
        if (std::abs(w) < 1e-3) continue;
        const double scale = std::abs(a) * (w * w + std::abs(f.mu)) + std::abs(f.nu * z * w);
        CHECK(std::abs(config_residual(f, z, w)) / scale < 1e-12);
        const double z2 = f.lambda / z;
        const double s2 = std::abs(z2 * z2 + f.lambda) * (w * w + std::abs(f.mu)) + std::abs(f.nu * z2 * w);
        CHECK(std::abs(config_residual(f, z2, w)) / s2 < 1e-11);
        const double w2 = f.mu / w;
        const double s3 = std::abs(a) * (w2 * w2 + std::abs(f.mu)) + std::abs(f.nu * z * w2);
        CHECK(std::abs(config_residual(f, z, w2)) / s3 < 1e-11);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("tangents round trip through the factors") {
    QuadSampler s;
    for (int n = 0; n < 1000; ++n) {
        const auto q = s.next();
        const auto t = tangents_from_factors(involution_factors(q), q.delta);
        CHECK(t.tan_alpha == doctest::Approx(std::tan(q.alpha)).epsilon(1e-10));
        CHECK(t.tan_gamma == doctest::Approx(std::tan(q.gamma)).epsilon(1e-10));
    }
}

TEST_CASE("diagonal segments of the reference quad") {
    const auto seg = construct_orthodiagonal(kRef.alpha, kRef.beta, kRef.gamma, kRef.delta);
    CHECK(std::abs(std::cos(seg.a) * std::cos(seg.b) - std::cos(kRef.alpha)) < 1e-10);
    CHECK(std::abs(std::cos(seg.b) * std::cos(seg.c) - std::cos(kRef.beta)) < 1e-10);
    CHECK(std::abs(std::cos(seg.c) * std::cos(seg.d) - std::cos(kRef.gamma)) < 1e-10);
    CHECK(std::abs(std::cos(seg.d) * std::cos(seg.a) - std::cos(kRef.delta)) < 1e-10);
}

TEST_CASE("diagonal segments for alpha = beta, gamma = delta") {
    const auto seg = construct_orthodiagonal(0.9, 0.9, 2.1, 2.1);
    CHECK(std::abs(std::cos(seg.a) * std::cos(seg.b) - std::cos(0.9)) < 1e-10);
    CHECK(std::abs(std::cos(seg.b) * std::cos(seg.c) - std::cos(0.9)) < 1e-10);
    CHECK(std::abs(std::cos(seg.c) * std::cos(seg.d) - std::cos(2.1)) < 1e-10);
    CHECK(std::abs(std::cos(seg.d) * std::cos(seg.a) - std::cos(2.1)) < 1e-10);
}

TEST_CASE("non-orthodiagonal input is rejected") {
    try {
        construct_orthodiagonal(0.3, 0.3, 0.4, 0.5);
        FAIL("expected an exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotOrthodiagonal);
    }
}

TEST_CASE("diagonal segments satisfy the Pythagorean identities on random quads") {
    QuadSampler s;
    for (int n = 0; n < 500; ++n) {
        const auto q = s.next();
        const auto seg = construct_orthodiagonal(q.alpha, q.beta, q.gamma, q.delta);
        for (double v : {seg.a, seg.b, seg.c, seg.d}) {
            CHECK(v > 0.0);
            CHECK(v < kPi);
        }
        CHECK(std::abs(std::cos(seg.a) * std::cos(seg.b) - std::cos(q.alpha)) < 1e-10);
        CHECK(std::abs(std::cos(seg.b) * std::cos(seg.c) - std::cos(q.beta)) < 1e-10);
        CHECK(std::abs(std::cos(seg.c) * std::cos(seg.d) - std::cos(q.gamma)) < 1e-10);
        CHECK(std::abs(std::cos(seg.d) * std::cos(seg.a) - std::cos(q.delta)) < 1e-10);
    }
}
