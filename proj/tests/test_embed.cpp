#include <doctest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "kokotsakis/embed.hpp"
#include "kokotsakis/flexion.hpp"

using namespace kokotsakis;
using namespace kokotsakis::embed;
using fixtures::kPi;

namespace {

const planar::PolyhedronSpec& spec7() {
    static const planar::PolyhedronSpec s = fixtures::example_spec();
    return s;
}

double interior_angle(const BaseRealization& b, int i) {
    const Eigen::Vector3d u = b.A[(i + 1) % 4] - b.A[i], v = b.A[(i + 3) % 4] - b.A[i];
    // Counter-clockwise from the next vertex to the previous one, in [0, 2pi).
    const double a = std::atan2(u.cross(v).z(), u.dot(v));
    return a < 0 ? a + 2 * kPi : a;
}

double flat_distance(double a) { return std::abs(std::remainder(a, kPi)); }

}  // namespace

TEST_CASE("base polygon has the prescribed angles") {
    const std::array<double, 4> d{1.36292, 1.41009, 1.80327, 1.70691};
    const auto delta = planar::make_base_angles(d).delta;
    const auto b = realize_base(delta);
    for (int i = 0; i < 4; ++i) {
        CHECK(interior_angle(b, i) == doctest::Approx(delta[i]).epsilon(1e-10));
        CHECK(b.A[i].z() == 0.0);
        CHECK(b.length[i] > 0.0);
    }
    // Counter-clockwise orientation.
    double area = 0;
    for (int i = 0; i < 4; ++i) area += b.A[i].x() * b.A[(i + 1) % 4].y() - b.A[(i + 1) % 4].x() * b.A[i].y();
    CHECK(area > 0);
}

TEST_CASE("base polygon for random quadrilaterals") {
    std::mt19937_64 rng(2);
    for (int n = 0; n < 100; ++n) {
        const auto spec = fixtures::random_spec(rng);
        const auto b = realize_base(spec);
        for (int i = 0; i < 4; ++i) {
            const double expected = spec.quads[i].delta;
            CHECK(std::abs(std::remainder(interior_angle(b, i) - expected, 2 * kPi)) < 1e-10);
        }
    }
}

TEST_CASE("frames close and carry the sampled dihedrals") {
    const auto& spec = spec7();
    const auto rc = flexion::reduce(spec);
    const auto base = realize_base(spec);
    for (const auto b : flexion::all_branches()) {
        for (int i = 0; i < 60; ++i) {
            const auto s = flexion::flexion_elementary(rc, b, 2 * kPi * (i + 0.3) / 60);
            const auto fr = build_frame(spec, base, s);
            CHECK(fr.vertices.size() == static_cast<std::size_t>(kVertexCount));
            CHECK(fr.faces.size() == 9);
            CHECK(fr.closure_error <= 1e-8);
            for (double r : closure_residuals(spec, fr)) CHECK(std::abs(r) <= 1e-8);
            const auto m = measured_base_dihedrals(fr);
            for (int e = 0; e < 4; ++e)
                CHECK(std::abs(std::remainder(m[e] - s.angle(edge_dihedral(e)), 2 * kPi)) < 1e-9);
        }
    }
}

TEST_CASE("frames are isometric over a full period") {
    const auto& spec = spec7();
    const auto rc = flexion::reduce(spec);
    const auto base = realize_base(spec);
    for (const auto b : flexion::all_branches()) {
        std::vector<MeshFrame> frames;
        for (int i = 0; i < 120; ++i)
            frames.push_back(build_frame(spec, base, flexion::flexion_elementary(rc, b, 2 * kPi * i / 120)));
        const auto rep = verify_isometry(frames);
        CHECK(rep.pass);
        CHECK(rep.max_length_deviation <= 1e-8);
        CHECK(rep.max_angle_deviation <= 1e-8);
        CHECK(rep.max_planarity_error <= 1e-8);
    }
}

TEST_CASE("isometry check detects a moved vertex") {
    const auto& spec = spec7();
    const auto rc = flexion::reduce(spec);
    const auto base = realize_base(spec);
    std::vector<MeshFrame> frames{build_frame(spec, base, flexion::flexion_elementary(rc, {1, 1}, 0.2)),
                                  build_frame(spec, base, flexion::flexion_elementary(rc, {1, 1}, 0.9))};
    frames[1].vertices[wing_start_corner(2)].z() += 1e-4;
    CHECK_FALSE(verify_isometry(frames).pass);
}

TEST_CASE("random specs embed isometrically") {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 20; ++n) {
        const auto spec = fixtures::random_spec(rng);
        const auto rc = flexion::reduce(spec);
        const auto base = realize_base(spec);
        std::vector<MeshFrame> frames;
        for (int i = 0; i < 24; ++i)
            frames.push_back(build_frame(spec, base, flexion::flexion_elementary(rc, {1, 1}, 2 * kPi * (i + 0.5) / 24)));
        CHECK(verify_isometry(frames).pass);
    }
}

TEST_CASE("simultaneous flattening of bold edges") {
    const auto& spec = spec7();
    const auto rc = flexion::reduce(spec);
    const auto base = realize_base(spec);
    for (const auto b : flexion::all_branches()) {
        for (const auto& ev : flexion::flattening_parameters(rc)) {
            const auto fr = build_frame(spec, base, flexion::flexion_elementary(rc, b, ev.t));
            const auto dihedrals = measured_base_dihedrals(fr);
            for (int e = 0; e < 4; ++e)
                if (edge_dihedral(e) == ev.edge) CHECK(flat_distance(dihedrals[e]) <= 1e-7);
            const auto bold = bold_wing_edges(ev);
            CHECK(bold.size() == 2);
            const auto wings = wing_edge_angles(fr);
            for (const auto& [vertex, side] : bold)
                for (const auto& w : wings)
                    if (w.vertex == vertex && w.side == side) CHECK(flat_distance(w.angle) <= 1e-7);
        }
    }
}

TEST_CASE("non-bold wing edges stay folded at a trigger") {
    const auto& spec = spec7();
    const auto rc = flexion::reduce(spec);
    const auto base = realize_base(spec);
    const auto ev = flexion::flattening_parameters(rc).front();
    const auto fr = build_frame(spec, base, flexion::flexion_elementary(rc, {1, 1}, ev.t));
    const auto bold = bold_wing_edges(ev);
    int folded = 0;
    for (const auto& w : wing_edge_angles(fr)) {
        bool is_bold = false;
        for (const auto& [vertex, side] : bold) is_bold = is_bold || (w.vertex == vertex && w.side == side);
        if (!is_bold && flat_distance(w.angle) > 1e-3) ++folded;
    }
    CHECK(folded >= 4);
}

TEST_CASE("OBJ output") {
    const auto& spec = spec7();
    const auto rc = flexion::reduce(spec);
    const auto fr = build_frame(spec, realize_base(spec), flexion::flexion_elementary(rc, {1, -1}, 0.5));
    std::ostringstream os;
    write_obj(os, fr);
    std::istringstream is(os.str());
    std::string line;
    int v = 0, f = 0;
    std::getline(is, line);
    CHECK(line.rfind("# t 0.5 branch +-", 0) == 0);
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        if (line.rfind("f ", 0) == 0) {
            ++f;
            std::istringstream fs(line.substr(2));
            int idx;
            while (fs >> idx) {
                CHECK(idx >= 1);
                CHECK(idx <= kVertexCount);
            }
        }
    }
    CHECK(v == kVertexCount);
    CHECK(f == 9);
    CHECK(branch_label({-1, 1}) == "-+");
}
