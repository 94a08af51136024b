#pragma once

#include <string>
#include <vector>

#include "hyperdimer/geometry.hpp"
#include "hyperdimer/temperley.hpp"

namespace hyperdimer {

struct Polyline {
  std::vector<Cplx> pts;
  bool closed = false;
};

// Continuous-argument increment of the polyline seen from p.
double topological_winding(const Polyline& poly, Cplx p);

// Sum of signed turning angles at interior vertices.  Exact half-turns
// contribute zero; their count is reported through `degenerate_turns`.
double intrinsic_winding(const Polyline& poly, int* degenerate_turns = nullptr);

// Reference flow on white->black edges of the extended graph, stored in the
// slot order of eg.g.adj at each white vertex.
struct ReferenceFlow {
  std::vector<std::vector<double>> val;  // val[white][slot]
  double at(const ExtendedGraph& eg, int w, int b) const;
};

ReferenceFlow reference_flow(const ExtendedGraph& eg);

struct HeightField {
  std::vector<double> h;  // per face of eg.faces
  int base_face = -1;
  Cplx x = 0;
};

// Integrate cover minus reference flow over faces from the base face; the
// result is audited for path independence across every edge.  `x` records the
// boundary target (defaults to the removed wedge's direction).
HeightField height_from_flow(const std::vector<int>& cover,
                             const ReferenceFlow& flow, const ExtendedGraph& eg,
                             Cplx x = Cplx(0.0, 0.0));

// Wired tree together with its complementary dual tree.
struct TreePair {
  std::vector<int> wired_parent;  // patch vertex id -> parent id or apex_index
  std::vector<int> dual_parent;   // dual node -> parent dual node; root -> itself
  std::vector<int> dual_via;      // dual node -> white crossed by the parent arrow
  int apex_index = -1;
};

TreePair tree_pair_of_cover(const TemperleyanGraph& g, int b_choice,
                            const std::vector<int>& cover, int apex_index);

// Height of one face as the intrinsic winding of the branch polyline from the
// face midpoint to the base face, divided by 2*pi.  `dual_version` follows the
// dual tree instead of the wired tree.
double height_via_winding(const TreePair& trees, const ExtendedGraph& eg,
                          int face, bool dual_version = false);

// Same combinatorics with every node position mapped through phi and face
// midpoints rebuilt from the mapped black diagonals.
ExtendedGraph transform_extended(const ExtendedGraph& eg,
                                 const DiscAutomorphism& phi);

struct MobiusHeightReport {
  double max_deviation = 0.0;
  int worst_face = -1;
  int faces_checked = 0;
  bool branch_ok = true;
  int branch_fail_node = -1;
};

// Verify the conformal change-of-height identity between two embeddings of
// the same extended graph related by the disc automorphism phi.
MobiusHeightReport mobius_height_change(const HeightField& before,
                                        const HeightField& after,
                                        const DiscAutomorphism& phi,
                                        const ExtendedGraph& eg_before,
                                        const ExtendedGraph& eg_after);

std::string height_to_csv(const ExtendedGraph& eg, const HeightField& field);

}  // namespace hyperdimer
