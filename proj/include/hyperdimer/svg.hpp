#pragma once

#include <string>
#include <vector>

#include "hyperdimer/doubledimer.hpp"
#include "hyperdimer/height.hpp"
#include "hyperdimer/packing.hpp"
#include "hyperdimer/planar_map.hpp"
#include "hyperdimer/temperley.hpp"

namespace hyperdimer {

// Standalone SVG documents with deterministic element order (index order).

// One circle element per present vertex, tangency edges underneath.
std::string svg_packing(const PlanarTriangulation& tri, const Packing& p);

// Wired tree (purple) over the primal vertices and the dual tree (green)
// threaded through its crossing whites.
std::string svg_trees(const ExtendedGraph& eg, const TreePair& tp);

// Dimer cover as white-black segments over faint packing circles.
std::string svg_cover(const ExtendedGraph& eg, const std::vector<int>& cover);

// Loop ensemble overlay; an empty ensemble leaves just the packing.
std::string svg_loops(const PlanarTriangulation& tri, const Packing& p,
                      const LoopEnsemble& ens);

// Face heatmap of a height field; the scale group carries data-min/data-max
// attributes equal to the observed range.
std::string svg_height(const ExtendedGraph& eg, const HeightField& field);

}  // namespace hyperdimer
