#pragma once

#include <Eigen/Core>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "kokotsakis/flexion.hpp"
#include "kokotsakis/planar.hpp"

namespace kokotsakis::embed {

struct BaseRealization {
    std::array<Eigen::Vector3d, 4> A;
    std::array<double, 4> length{};
};

// Base polygon A1A2A3A4, counter-clockwise in the z = 0 plane.
BaseRealization realize_base(const std::array<double, 4>& delta);
// Base polygon for the normalized vertex order of a spec.
BaseRealization realize_base(const planar::PolyhedronSpec& spec);

// Mesh vertex layout: 0..3 are A1..A4; 4 + 2e and 5 + 2e are the outer
// corners of the wing on base edge e (edge e runs from A_{e+1} to A_{e+2}),
// at its start and end vertex respectively.
inline constexpr int kVertexCount = 12;
inline int wing_start_corner(int edge) { return 4 + 2 * edge; }
inline int wing_end_corner(int edge) { return 5 + 2 * edge; }

struct MeshFrame {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::vector<int>> faces;  // base quad, four wing quads, four triangles
    flexion::FlexionSample sample;
    double closure_error = 0.0;
    bool swapped_mapping = false;
};

// Dihedral angle carried by base edge e (0: A1A2 -> phi, 1: A2A3 -> psi2,
// 2: A3A4 -> theta, 3: A4A1 -> psi1).
flexion::Edge edge_dihedral(int edge);

MeshFrame build_frame(const planar::PolyhedronSpec& spec, const BaseRealization& base,
                      const flexion::FlexionSample& sample, double closure_tol = 1e-8);

// Cone closure: angle between the two outer rays at each A_i minus beta_i.
std::array<double, 4> closure_residuals(const planar::PolyhedronSpec& spec, const MeshFrame& frame);

// Signed dihedral angles of the four base edges recovered from the geometry.
std::array<double, 4> measured_base_dihedrals(const MeshFrame& frame);

enum class WingSide { Incoming, Outgoing };

struct WingEdgeAngle {
    int vertex;     // 0-based A index
    WingSide side;  // edge of the wing on base edge (vertex - 1) or on base edge vertex
    double angle;   // in (-pi, pi]
};

// The eight interior wing edges, two per vertex.
std::array<WingEdgeAngle, 8> wing_edge_angles(const MeshFrame& frame);

// Wing edges expected to flatten together with the base edge of a trigger.
std::vector<std::pair<int, WingSide>> bold_wing_edges(const flexion::FlatteningEvent& event);

struct IsometryReport {
    double max_length_deviation = 0.0;
    double max_angle_deviation = 0.0;
    double max_planarity_error = 0.0;
    bool pass = false;
};

IsometryReport verify_isometry(const std::vector<MeshFrame>& frames, double tol = 1e-8);

void write_obj(std::ostream& out, const MeshFrame& frame);
std::string branch_label(const flexion::Branch& b);

}  // namespace kokotsakis::embed
