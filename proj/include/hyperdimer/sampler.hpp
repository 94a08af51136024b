#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hyperdimer/planar_map.hpp"
#include "hyperdimer/temperley.hpp"

namespace hyperdimer {

uint64_t splitmix64_next(uint64_t& state);

// Deterministic stream-splitting RNG: the (seed, stream) pair selects an
// independent mt19937_64 sequence, identical across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0);
  uint64_t next_u64() { return engine_(); }
  uint64_t below(uint64_t n);  // uniform on [0, n), unbiased
  double unit();               // uniform on [0, 1)
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Adjacency of the wired patch: every patch vertex keeps its edges and every
// boundary vertex gains one edge to the wired vertex, indexed tri.capacity().
std::vector<std::vector<int>> wired_adjacency(const PlanarTriangulation& tri);

// Wilson's algorithm: uniform spanning tree rooted at `root`, grown by
// loop-erased random walks from `order` (every vertex reachable must appear).
// parent[root] == root; untouched entries stay -1.
std::vector<int> wilson_ust(const std::vector<std::vector<int>>& nbrs, int root,
                            Rng& rng, const std::vector<int>& order);
std::vector<int> wilson_ust(const std::vector<std::vector<int>>& nbrs, int root,
                            Rng& rng);

// Bijection between spanning trees of the wired patch and dimer covers of the
// superposition with the apex and one wedge removed.  Covers are symmetric
// partner arrays over superposition nodes, -1 where unmatched.
std::vector<int> trees_to_dimers(const TemperleyanGraph& g, int b_choice,
                                 const std::vector<int>& parent, int apex_index);
std::vector<int> dimers_to_trees(const TemperleyanGraph& g, int b_choice,
                                 const std::vector<int>& cover, int apex_index);

// One uniform dimer cover of the reduced superposition.
std::vector<int> sample_dimer(const PlanarTriangulation& tri,
                              const TemperleyanGraph& g, int b_choice, Rng& rng);

// Exhaustive cover list for graphs with at most 24 active white vertices.
std::vector<std::vector<int>> enumerate_dimer_covers(const TemperleyanGraph& g);

// Cover of the extended graph: the given cover plus all forced dimers.
std::vector<int> with_forced(const ExtendedGraph& eg, std::vector<int> cover);

}  // namespace hyperdimer
