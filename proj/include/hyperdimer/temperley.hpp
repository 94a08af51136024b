#pragma once

#include <array>
#include <string>
#include <vector>

#include "hyperdimer/geometry.hpp"
#include "hyperdimer/packing.hpp"
#include "hyperdimer/planar_map.hpp"

namespace hyperdimer {

enum class NodeKind {
  PrimalVertex,  // black: vertex of the patch
  OuterApex,     // black: the vertex representing the outer face of the patch
  TriangleDual,  // black: dual of a bounded (triangular) face
  WedgeDual,     // black: dual of one wedge face at the outer apex
  RingBlack,     // black: vertex of the boundary cycle (extension only)
  EdgeWhite,     // white: crossing on a patch edge
  RimWhite,      // white: crossing on an edge to the outer apex
  OmegaWhite,    // white: crossing on a boundary-cycle edge (extension only)
};

inline bool kind_is_black(NodeKind k) {
  return k == NodeKind::PrimalVertex || k == NodeKind::OuterApex ||
         k == NodeKind::TriangleDual || k == NodeKind::WedgeDual ||
         k == NodeKind::RingBlack;
}

// Superposition of a simply connected patch with its dual, viewed on the
// sphere: the patch plus the outer apex, the bounded-face duals plus one
// wedge dual per boundary edge, and a white vertex on every edge crossing.
struct TemperleyanGraph {
  std::vector<NodeKind> kind;
  std::vector<int> ref;  // primal vertex id / face id / boundary slot / edge id
  std::vector<Cplx> pos;
  std::vector<std::vector<int>> adj;  // ccw rotation lists over node indices
  std::vector<char> active;           // false after removal of a node

  int apex = -1;
  int m = 0;                  // boundary length of the patch
  std::vector<int> boundary;  // patch boundary vertex ids, ccw
  Cplx centroid = 0;          // centroid of the boundary circle centers
  double reach = 0;           // max distance from centroid to a circle's far side

  std::vector<int> primal_node;  // patch vertex id -> node (-1 when absent)
  std::vector<int> dual_node;    // face id -> node (-1 for the outer face)
  std::vector<int> wedge_node;   // boundary slot -> node
  std::vector<int> edge_white;   // patch edge id -> node
  std::vector<int> rim_white;    // boundary slot -> node
  std::vector<int> slot_of;      // patch vertex id -> boundary slot (-1)

  std::vector<std::array<int, 4>> quads;  // all superposition faces

  int size() const { return static_cast<int>(kind.size()); }
  bool is_black(int n) const { return kind_is_black(kind[n]); }
  int count_black() const;
  int count_white() const;
};

TemperleyanGraph superimpose(const PlanarTriangulation& tri, const DualMap& dm,
                             const Packing& p);

// Remove the outer apex and one boundary (wedge) black vertex, leaving a
// balanced bipartite graph.
TemperleyanGraph remove_for_dimers(const TemperleyanGraph& g, int b_choice);

struct ExtendedGraph {
  TemperleyanGraph g;  // superposition nodes plus the boundary cycle nodes
  std::vector<int> ring_node;   // slot -> ring black (-1 at the gap slot)
  std::vector<int> omega_node;  // slot -> boundary-cycle white
  int k = -1;                   // removed wedge's slot; gap sits at slot k+1
  int b_node = -1;              // removed black (wedge dual at slot k)
  int w_node = -1;              // removed white (omega at slot k)
  std::array<int, 2> e_edge{-1, -1};          // distinguished edge (b, w)
  std::vector<std::array<int, 2>> forced;     // forced dimers (black, white)
  std::vector<char> in_g;                     // node participates in the dimer graph G
  std::vector<char> on_outer;                 // node lies on the outer face
  FaceSet faces;                              // faces of the extended graph
  int outer_face = -1;
  int base_face = -1;                         // face to the side of e_edge
  std::vector<Cplx> face_mid;                 // black-diagonal midpoints; outer gets
                                              // the pseudo-midpoint at the gap mouth
};

ExtendedGraph extend_with_boundary(const TemperleyanGraph& g, int b_choice);

// Boundary black vertex whose embedded position is closest to the segment
// (0, x]; ties broken by smallest node index.
int choose_b_towards(const TemperleyanGraph& g, Cplx x);
int choose_b_towards(const TemperleyanGraph& g, Cplx x,
                     const std::vector<int>& boundary_blacks);

std::string extended_to_text(const ExtendedGraph& eg);

}  // namespace hyperdimer
