#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperdimer/geometry.hpp"
#include "hyperdimer/planar_map.hpp"

namespace hyperdimer {

enum class BoundaryCondition {
  FixedRadii,  // boundary circles keep the given Euclidean radius
  Hyperbolic,  // boundary circles are horocycles (internally tangent to the unit circle)
};

struct RadiiSolution {
  bool hyperbolic = false;
  // Euclidean radii, or hyperbolic radii with +inf marking horocycles.
  std::vector<double> radius;
  int iterations = 0;
  double max_residual = 0.0;
};

// Gauss-Seidel angle-sum relaxation with a monotone per-vertex solve.
// max_iters counts full sweeps.
RadiiSolution solve_radii(const PlanarTriangulation& tri, BoundaryCondition bc,
                          double tol = 1e-10, int max_iters = 200000,
                          double boundary_radius = 1.0);

// Interior angle at the first vertex of a mutually tangent triple.
double triangle_angle_euclid(double rv, double ru, double rw);
double triangle_angle_hyperbolic(double hv, double hu, double hw);

struct Packing {
  int root = 0;
  bool carrier_note = false;  // boundary circles internally tangent to the unit circle
  std::vector<Cplx> center;
  std::vector<double> radius;  // Euclidean radius of the drawn circle
  std::vector<char> present;
};

Packing layout(const PlanarTriangulation& tri, const RadiiSolution& radii);

// max |dist(center_u, center_v) - r_u - r_v| over edges
double tangency_residual(const PlanarTriangulation& tri, const Packing& p);

struct MobiusMode {
  enum Kind { RootAtOrigin, FixBoundaryPoint } kind = RootAtOrigin;
  Cplx x{1.0, 0.0};       // fixed boundary point
  double strength = 0.5;  // translation length parameter along the axis at x
  static MobiusMode root_at_origin() { return MobiusMode{RootAtOrigin, {0, 0}, 0}; }
  static MobiusMode fix_boundary_point(Cplx x, double strength = 0.5) {
    return MobiusMode{FixBoundaryPoint, x, strength};
  }
};

Packing apply_automorphism(const Packing& p, const DiscAutomorphism& phi);
std::pair<Packing, DiscAutomorphism> mobius_normalize(const Packing& p,
                                                      const MobiusMode& mode);

// Hyperbolic center of a circle drawn inside the unit disc.
Cplx hyperbolic_center(const Circle& c);

struct DualEmbedding {
  std::vector<Cplx> dual_pos;   // per dual vertex; outer face gets a marker spot
  std::vector<Cplx> white_pos;  // per crossing edge id (tangency points)
};

DualEmbedding dual_embedding(const Packing& p, const DualMap& dm);

// Minimum signed area of the quad (u, m(right face), v, m(left face)) over
// primal edges whose two flanking faces are both bounded; positive means the
// superposition drawing is properly oriented.
double min_quad_orientation(const Packing& p, const DualMap& dm,
                            const DualEmbedding& de);

std::string packing_to_csv(const Packing& p);

}  // namespace hyperdimer
