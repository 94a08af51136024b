#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hyperdimer {

// Planar map given by counterclockwise rotation lists.  Vertex ids are stable
// integers; sub-maps keep the ids of their parent map (present[] marks the
// active subset).  Faces are traced with the next-edge-clockwise rule
// next(u,v) = (v, predecessor of u in rotation[v]), which walks interior
// faces counterclockwise and the outer face clockwise.
struct PlanarTriangulation {
  int degree = 0;  // construction degree bound
  int radius = 0;  // construction/extraction radius
  int root = 0;
  std::vector<std::vector<int>> rotation;  // indexed by vertex id, ccw order
  std::vector<char> present;
  std::vector<int> boundary;  // outer cycle, ccw ([root] when there are no edges)
  std::vector<int> layer;     // graph distance from root (-1 when absent)

  int capacity() const { return static_cast<int>(rotation.size()); }
  bool has_vertex(int v) const {
    return v >= 0 && v < capacity() && present[v];
  }
  std::vector<int> vertices() const;
  int num_vertices() const;
  long num_edges() const;
  bool adjacent(int u, int v) const;
};

// degree >= 7 keeps the triangulation in the hyperbolic (nonamenable) regime;
// degree 6 would be the flat triangular lattice.
PlanarTriangulation build_regular_ball(int degree, int radius);

// Faces of a rotation system.  faces[i] is the vertex cycle in trace order;
// outer is the index of the outer face when an outer dart was supplied.
struct FaceSet {
  std::vector<std::vector<int>> faces;
  int outer = -1;
  std::map<std::pair<int, int>, int> face_of_dart;  // dart (u,v) -> face index

  int face_of(int u, int v) const;
  long dart_count() const;
};

FaceSet trace_faces(const std::vector<std::vector<int>>& rotation,
                    const std::vector<char>& present,
                    std::pair<int, int> outer_dart = {-1, -1});
FaceSet trace_faces(const PlanarTriangulation& tri);

// Dual map with the crossing bijection between primal and dual edges.
struct DualMap {
  std::vector<std::vector<int>> face_vertices;  // dual vertex -> primal cycle
  int outer_face = -1;
  std::vector<std::vector<int>> rotation;  // dual rotation (face trace order)
  std::vector<std::array<int, 2>> primal_edge;  // edge id -> {u, v}, u < v
  std::vector<std::array<int, 2>> dual_edge;    // edge id -> {f, g}
  std::map<std::pair<int, int>, int> primal_edge_id;

  int edge_count() const { return static_cast<int>(primal_edge.size()); }
  int crossing_of(int u, int v) const;  // edge id of primal edge (u,v)
};

DualMap dual(const PlanarTriangulation& tri);

// Rotation system of the dual of a generic rotation system (dual vertices in
// face-trace discovery order).
std::vector<std::vector<int>> dual_rotation(
    const std::vector<std::vector<int>>& rotation,
    const std::vector<char>& present);

struct RepairReport {
  std::vector<int> added_vertices;  // hole vertices absorbed into the ball
};

// Induced ball around `center` with hole filling; boundary recomputed from
// the outer face.  Vertex ids are preserved from `tri`.
PlanarTriangulation ball(const PlanarTriangulation& tri, int center, int r,
                         RepairReport* report = nullptr);

std::vector<PlanarTriangulation> exhaustion(const PlanarTriangulation& tri,
                                            const std::vector<int>& radii);

int graph_distance(const PlanarTriangulation& tri, int u, int v);

std::string serialize(const PlanarTriangulation& tri);
PlanarTriangulation parse_map(const std::string& text);

// Canonical BFS relabeling code starting from a dart; two maps are
// orientation-preservingly isomorphic iff some start dart of one yields the
// code of a fixed dart of the other.
std::vector<int> canonical_code(const std::vector<std::vector<int>>& rotation,
                                const std::vector<char>& present,
                                std::pair<int, int> start_dart);
bool oriented_isomorphic(const std::vector<std::vector<int>>& rot_a,
                         const std::vector<char>& present_a,
                         const std::vector<std::vector<int>>& rot_b,
                         const std::vector<char>& present_b);

}  // namespace hyperdimer
