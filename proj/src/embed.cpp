#include "kokotsakis/embed.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "kokotsakis/error.hpp"

namespace kokotsakis::embed {

namespace {

using Eigen::Vector2d;
using Eigen::Vector3d;

constexpr double kPi = std::numbers::pi;
const Vector3d kNormal(0.0, 0.0, 1.0);

double angle_between(const Vector3d& a, const Vector3d& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

// Signed angle about `axis` from the half-plane through p1 to the one through p2.
double signed_dihedral(const Vector3d& axis, const Vector3d& p1, const Vector3d& p2) {
    const Vector3d n = axis.normalized();
    const Vector3d q1 = p1 - p1.dot(n) * n;
    const Vector3d q2 = p2 - p2.dot(n) * n;
    return std::atan2(q1.cross(q2).dot(n), q1.dot(q2));
}

struct WingAngles {
    double start, end;
};

// Planar angles of the wing face on each base edge at its two ends.
std::array<WingAngles, 4> wing_angles(const planar::PolyhedronSpec& spec, bool swapped) {
    const auto& q = spec.quads;
    auto a = [&](int i) { return swapped ? q[i].gamma : q[i].alpha; };
    auto g = [&](int i) { return swapped ? q[i].alpha : q[i].gamma; };
    return {WingAngles{a(0), a(1)}, WingAngles{g(1), g(2)}, WingAngles{a(2), a(3)}, WingAngles{g(3), g(0)}};
}

MeshFrame assemble(const planar::PolyhedronSpec& spec, const BaseRealization& base,
                   const flexion::FlexionSample& sample, bool swapped) {
    MeshFrame f;
    f.sample = sample;
    f.swapped_mapping = swapped;
    f.vertices.assign(kVertexCount, Vector3d::Zero());
    for (int i = 0; i < 4; ++i) f.vertices[i] = base.A[i];

    const auto wings = wing_angles(spec, swapped);
    for (int e = 0; e < 4; ++e) {
        const Vector3d& a = base.A[e];
        const Vector3d& b = base.A[(e + 1) % 4];
        const Vector3d d = (b - a).normalized();
        const Vector3d m = d.cross(kNormal);
        const double chi = sample.angle(edge_dihedral(e));
        const Vector3d mp = std::cos(chi) * m + std::sin(chi) * kNormal;
        f.vertices[wing_start_corner(e)] = a + std::cos(wings[e].start) * d + std::sin(wings[e].start) * mp;
        f.vertices[wing_end_corner(e)] = b - std::cos(wings[e].end) * d + std::sin(wings[e].end) * mp;
    }

    f.faces.push_back({0, 1, 2, 3});
    for (int e = 0; e < 4; ++e) f.faces.push_back({e, (e + 1) % 4, wing_end_corner(e), wing_start_corner(e)});
    for (int i = 0; i < 4; ++i) f.faces.push_back({i, wing_end_corner((i + 3) % 4), wing_start_corner(i)});
    return f;
}

double max_abs(const std::array<double, 4>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

BaseRealization realize_base(const std::array<double, 4>& delta) {
    std::array<Vector2d, 4> dir;
    double heading = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (i > 0) heading += kPi - delta[i];
        dir[i] = Vector2d(std::cos(heading), std::sin(heading));
    }
    Eigen::Matrix2d m;
    m.col(0) = dir[2];
    m.col(1) = dir[3];
    const double det = m.determinant();
    if (std::abs(det) < 1e-12) throw Error(ErrorKind::NoClosure, "base closure system is singular");
    // With the first side fixed to 1 the last two sides are affine in the
    // second one: l = a + l1 * b. Keep l1 = 1 when it works, otherwise take
    // the middle of the feasible interval.
    const auto lu = m.partialPivLu();
    const Vector2d a = lu.solve(-dir[0]);
    const Vector2d b = lu.solve(-dir[1]);
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 2; ++j) {
        if (b[j] > 0.0) lo = std::max(lo, -a[j] / b[j]);
        else if (b[j] < 0.0) hi = std::min(hi, -a[j] / b[j]);
        else if (a[j] <= 0.0) hi = -1.0;
    }
    if (!(hi > lo * (1.0 + 1e-9) + 1e-12))
        throw Error(ErrorKind::NoClosure, "base closure gives non-positive side lengths");
    double l1 = 1.0;
    if (!(l1 > lo && l1 < hi)) l1 = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * lo + 1.0;
    const Vector2d l = a + l1 * b;

    BaseRealization base;
    base.length = {1.0, l1, l[0], l[1]};
    Vector2d p = Vector2d::Zero();
    for (int i = 0; i < 4; ++i) {
        base.A[i] = Vector3d(p.x(), p.y(), 0.0);
        p += base.length[i] * dir[i];
    }
    return base;
}

BaseRealization realize_base(const planar::PolyhedronSpec& spec) {
    std::array<double, 4> d{};
    for (int i = 0; i < 4; ++i) d[i] = spec.quads[i].delta;
    return realize_base(d);
}

flexion::Edge edge_dihedral(int edge) {
    static constexpr std::array<flexion::Edge, 4> map{flexion::Edge::Phi, flexion::Edge::Psi2, flexion::Edge::Theta,
                                                      flexion::Edge::Psi1};
    return map[edge];
}

std::array<double, 4> closure_residuals(const planar::PolyhedronSpec& spec, const MeshFrame& frame) {
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        const Vector3d& a = frame.vertices[i];
        const Vector3d in = frame.vertices[wing_end_corner((i + 3) % 4)] - a;
        const Vector3d outr = frame.vertices[wing_start_corner(i)] - a;
        out[i] = angle_between(in, outr) - spec.quads[i].beta;
    }
    return out;
}

MeshFrame build_frame(const planar::PolyhedronSpec& spec, const BaseRealization& base,
                      const flexion::FlexionSample& sample, double closure_tol) {
    MeshFrame f = assemble(spec, base, sample, false);
    f.closure_error = max_abs(closure_residuals(spec, f));
    if (f.closure_error <= closure_tol) return f;

    MeshFrame g = assemble(spec, base, sample, true);
    g.closure_error = max_abs(closure_residuals(spec, g));
    if (g.closure_error <= closure_tol) return g;

    char buf[160];
    std::snprintf(buf, sizeof buf, "cone closure fails at t = %.9g (angle error %.3g)", sample.t,
                  std::min(f.closure_error, g.closure_error));
    throw Error(ErrorKind::ClosureFailure, buf);
}

std::array<double, 4> measured_base_dihedrals(const MeshFrame& frame) {
    std::array<double, 4> out{};
    for (int e = 0; e < 4; ++e) {
        const Vector3d& a = frame.vertices[e];
        const Vector3d& b = frame.vertices[(e + 1) % 4];
        const Vector3d d = (b - a).normalized();
        const Vector3d m = d.cross(kNormal);
        Vector3d q = frame.vertices[wing_start_corner(e)] - a;
        q -= q.dot(d) * d;
        out[e] = std::atan2(q.dot(kNormal), q.dot(m));
    }
    return out;
}

std::array<WingEdgeAngle, 8> wing_edge_angles(const MeshFrame& frame) {
    std::array<WingEdgeAngle, 8> out{};
    for (int i = 0; i < 4; ++i) {
        const int prev = (i + 3) % 4;
        const Vector3d& a = frame.vertices[i];
        const Vector3d in = frame.vertices[wing_end_corner(prev)] - a;
        const Vector3d outr = frame.vertices[wing_start_corner(i)] - a;
        const Vector3d to_prev = frame.vertices[prev] - a;
        const Vector3d to_next = frame.vertices[(i + 1) % 4] - a;
        out[2 * i] = {i, WingSide::Incoming, signed_dihedral(in, to_prev, outr)};
        out[2 * i + 1] = {i, WingSide::Outgoing, signed_dihedral(outr, in, to_next)};
    }
    return out;
}

std::vector<std::pair<int, WingSide>> bold_wing_edges(const flexion::FlatteningEvent& event) {
    if (event.edge == flexion::Edge::Psi2) return {{0, WingSide::Outgoing}, {3, WingSide::Incoming}};
    return {{0, WingSide::Incoming}, {1, WingSide::Outgoing}};
}

IsometryReport verify_isometry(const std::vector<MeshFrame>& frames, double tol) {
    IsometryReport rep;
    if (frames.empty()) return rep;

    // Every edge length and every corner angle of every face.
    auto measures = [](const MeshFrame& f, std::vector<double>& lengths, std::vector<double>& angles) {
        lengths.clear();
        angles.clear();
        for (const auto& face : f.faces) {
            const int n = static_cast<int>(face.size());
            for (int k = 0; k < n; ++k) {
                const Vector3d& p = f.vertices[face[k]];
                const Vector3d& q = f.vertices[face[(k + 1) % n]];
                const Vector3d& r = f.vertices[face[(k + n - 1) % n]];
                lengths.push_back((q - p).norm());
                angles.push_back(angle_between(q - p, r - p));
            }
        }
    };
    auto planarity = [](const MeshFrame& f) {
        double worst = 0.0;
        for (const auto& face : f.faces) {
            if (face.size() < 4) continue;
            const Vector3d& p0 = f.vertices[face[0]];
            const Vector3d n = (f.vertices[face[1]] - p0).cross(f.vertices[face[face.size() - 1]] - p0).normalized();
            for (int v : face) worst = std::max(worst, std::abs((f.vertices[v] - p0).dot(n)));
        }
        return worst;
    };

    std::vector<double> l0, a0, l, a;
    measures(frames.front(), l0, a0);
    for (const auto& f : frames) {
        measures(f, l, a);
        for (std::size_t k = 0; k < l.size(); ++k) rep.max_length_deviation = std::max(rep.max_length_deviation, std::abs(l[k] - l0[k]));
        for (std::size_t k = 0; k < a.size(); ++k) rep.max_angle_deviation = std::max(rep.max_angle_deviation, std::abs(a[k] - a0[k]));
        rep.max_planarity_error = std::max(rep.max_planarity_error, planarity(f));
    }
    rep.pass = rep.max_length_deviation <= tol && rep.max_angle_deviation <= tol && rep.max_planarity_error <= tol;
    return rep;
}

void write_obj(std::ostream& out, const MeshFrame& frame) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "# t %.12g branch %s\n", frame.sample.t, branch_label(frame.sample.branch).c_str());
    out << buf;
    for (const auto& v : frame.vertices) {
        std::snprintf(buf, sizeof buf, "v %.9f %.9f %.9f\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const auto& face : frame.faces) {
        out << 'f';
        for (int idx : face) out << ' ' << (idx + 1);
        out << '\n';
    }
}

std::string branch_label(const flexion::Branch& b) {
    std::string s;
    s += b.sigma >= 0 ? '+' : '-';
    s += b.rho >= 0 ? '+' : '-';
    return s;
}

}  // namespace kokotsakis::embed
