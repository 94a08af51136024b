#include "hyperdimer/sampler.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "hyperdimer/errors.hpp"

namespace hyperdimer {

uint64_t splitmix64_next(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(uint64_t seed, uint64_t stream) {
  uint64_t s = seed;
  uint64_t k1 = splitmix64_next(s);
  uint64_t k2 = splitmix64_next(s);
  uint64_t t = k2 ^ stream;
  uint64_t a = splitmix64_next(t);
  uint64_t b = splitmix64_next(t);
  std::seed_seq seq{static_cast<uint32_t>(k1), static_cast<uint32_t>(k1 >> 32),
                    static_cast<uint32_t>(a),  static_cast<uint32_t>(a >> 32),
                    static_cast<uint32_t>(b),  static_cast<uint32_t>(b >> 32)};
  engine_.seed(seq);
}

uint64_t Rng::below(uint64_t n) {
  if (n == 0) throw ValidationError("below(0) is undefined");
  uint64_t threshold = (-n) % n;
  for (;;) {
    uint64_t x = engine_();
    if (x >= threshold) return x % n;
  }
}

double Rng::unit() {
  return (engine_() >> 11) * (1.0 / 9007199254740992.0);
}

std::vector<std::vector<int>> wired_adjacency(const PlanarTriangulation& tri) {
  int apex = tri.capacity();
  std::vector<std::vector<int>> nbrs(apex + 1);
  for (int v = 0; v < apex; ++v) {
    if (tri.present[v]) nbrs[v] = tri.rotation[v];
  }
  for (int b : tri.boundary) {
    nbrs[b].push_back(apex);
    nbrs[apex].push_back(b);
  }
  return nbrs;
}

std::vector<int> wilson_ust(const std::vector<std::vector<int>>& nbrs, int root,
                            Rng& rng, const std::vector<int>& order) {
  int n = static_cast<int>(nbrs.size());
  if (root < 0 || root >= n) throw ValidationError("wilson root out of range");
  std::vector<int> parent(n, -1);
  std::vector<char> in_tree(n, 0);
  std::vector<int> succ(n, -1);
  in_tree[root] = 1;
  parent[root] = root;
  long long steps = 0;
  for (int start : order) {
    if (start < 0 || start >= n) throw ValidationError("wilson order out of range");
    if (in_tree[start]) continue;
    int u = start;
    while (!in_tree[u]) {
      const auto& nb = nbrs[u];
      if (nb.empty()) throw StructuralError("random walk reached an isolated vertex");
      succ[u] = nb[rng.below(nb.size())];
      u = succ[u];
      if (++steps > 200000000LL)
        throw NumericalError("random walk failed to reach the wired tree");
    }
    u = start;
    while (!in_tree[u]) {
      in_tree[u] = 1;
      parent[u] = succ[u];
      u = succ[u];
    }
  }
  return parent;
}

std::vector<int> wilson_ust(const std::vector<std::vector<int>>& nbrs, int root,
                            Rng& rng) {
  std::vector<int> order;
  for (int v = 0; v < static_cast<int>(nbrs.size()); ++v) {
    if (!nbrs[v].empty()) order.push_back(v);
  }
  return wilson_ust(nbrs, root, rng, order);
}

namespace {

// A white crossing connects two sphere-map vertices at rotation slots 0 and 2
// and the two duals behind them at slots 1 and 3.
int other_end(const TemperleyanGraph& g, int white, int from) {
  return g.adj[white][0] == from ? g.adj[white][2] : g.adj[white][0];
}

int node_for(const TemperleyanGraph& g, int vertex_id, int apex_index) {
  return vertex_id == apex_index ? g.apex : g.primal_node[vertex_id];
}

}  // namespace

std::vector<int> trees_to_dimers(const TemperleyanGraph& g, int b_choice,
                                 const std::vector<int>& parent,
                                 int apex_index) {
  if (g.kind[b_choice] != NodeKind::WedgeDual)
    throw ValidationError("b_choice must be a wedge dual");
  if (g.apex < 0 || !g.active[g.apex])
    throw ValidationError("pass the full superposition, not the reduced graph");
  std::vector<int> cover(g.size(), -1);
  std::vector<char> tree_white(g.size(), 0);

  for (int v = 0; v < static_cast<int>(parent.size()); ++v) {
    if (v == apex_index || parent[v] < 0) continue;
    int vn = g.primal_node[v];
    if (vn < 0) throw ValidationError("tree vertex missing from the superposition");
    int pn = node_for(g, parent[v], apex_index);
    int white = -1;
    for (int w : g.adj[vn]) {
      if (other_end(g, w, vn) == pn) white = w;
    }
    if (white < 0) throw StructuralError("tree edge has no crossing white");
    tree_white[white] = 1;
    if (cover[white] >= 0) throw StructuralError("two tree arrows share a white");
    cover[white] = vn;
    cover[vn] = white;
  }

  // The complementary edges span the duals; orient them toward the removed
  // wedge and match every other dual to its parent crossing.
  std::vector<char> seen(g.size(), 0);
  seen[b_choice] = 1;
  std::queue<int> q;
  q.push(b_choice);
  while (!q.empty()) {
    int d = q.front();
    q.pop();
    for (int w : g.adj[d]) {
      if (tree_white[w]) continue;
      int e = g.adj[w][1] == d ? g.adj[w][3] : g.adj[w][1];
      if (seen[e]) continue;
      seen[e] = 1;
      cover[w] = e;
      cover[e] = w;
      q.push(e);
    }
  }

  for (int n = 0; n < g.size(); ++n) {
    bool in_g = g.active[n] && n != g.apex && n != b_choice;
    if (in_g && cover[n] < 0)
      throw StructuralError("tree-to-dimer map left a vertex unmatched");
  }
  return cover;
}

std::vector<int> dimers_to_trees(const TemperleyanGraph& g, int b_choice,
                                 const std::vector<int>& cover, int apex_index) {
  if (g.kind[b_choice] != NodeKind::WedgeDual)
    throw ValidationError("b_choice must be a wedge dual");
  std::vector<int> parent(apex_index + 1, -1);
  parent[apex_index] = apex_index;
  for (int n = 0; n < g.size(); ++n) {
    if (g.kind[n] != NodeKind::PrimalVertex) continue;
    int w = cover[n];
    if (w < 0 || cover[w] != n)
      throw ValidationError("cover does not match every patch vertex");
    int pn = other_end(g, w, n);
    if (pn == g.apex) {
      parent[g.ref[n]] = apex_index;
    } else if (g.kind[pn] == NodeKind::PrimalVertex) {
      parent[g.ref[n]] = g.ref[pn];
    } else {
      throw StructuralError("matched white does not cross a patch edge");
    }
  }
  return parent;
}

std::vector<int> sample_dimer(const PlanarTriangulation& tri,
                              const TemperleyanGraph& g, int b_choice,
                              Rng& rng) {
  auto nbrs = wired_adjacency(tri);
  auto parent = wilson_ust(nbrs, tri.capacity(), rng);
  return trees_to_dimers(g, b_choice, parent, tri.capacity());
}

namespace {

void cover_rec(const TemperleyanGraph& g, const std::vector<int>& whites,
               size_t i, std::vector<int>& cover,
               std::vector<std::vector<int>>& out) {
  if (i == whites.size()) {
    out.push_back(cover);
    return;
  }
  int w = whites[i];
  for (int b : g.adj[w]) {
    if (!g.active[b] || cover[b] >= 0) continue;
    cover[w] = b;
    cover[b] = w;
    cover_rec(g, whites, i + 1, cover, out);
    cover[w] = -1;
    cover[b] = -1;
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_dimer_covers(const TemperleyanGraph& g) {
  std::vector<int> whites;
  for (int n = 0; n < g.size(); ++n) {
    if (g.active[n] && !g.is_black(n)) whites.push_back(n);
  }
  if (whites.size() > 24)
    throw ValidationError("cover enumeration is limited to 24 white vertices");
  std::vector<int> cover(g.size(), -1);
  std::vector<std::vector<int>> out;
  cover_rec(g, whites, 0, cover, out);
  return out;
}

std::vector<int> with_forced(const ExtendedGraph& eg, std::vector<int> cover) {
  cover.resize(eg.g.size(), -1);
  for (const auto& f : eg.forced) {
    if (cover[f[0]] >= 0 || cover[f[1]] >= 0)
      throw ValidationError("cover already uses a forced vertex");
    cover[f[0]] = f[1];
    cover[f[1]] = f[0];
  }
  return cover;
}

}  // namespace hyperdimer
