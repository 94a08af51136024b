#include "hyperdimer/temperley.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hyperdimer/errors.hpp"

namespace hyperdimer {

namespace {

double positive_angle_gap(double from, double to) {
  double d = to - from;
  while (d <= 0) d += 2 * kPi;
  while (d > 2 * kPi) d -= 2 * kPi;
  return d;
}

int require_wedge(const TemperleyanGraph& g, int b_choice) {
  if (b_choice < 0 || b_choice >= g.size() || !g.active[b_choice])
    throw ValidationError("b_choice is not an active vertex of the superposition");
  if (!g.is_black(b_choice))
    throw ValidationError("b_choice must be a black vertex");
  if (g.kind[b_choice] != NodeKind::WedgeDual)
    throw ValidationError(
        "b_choice must lie on the boundary of the superposition; interior "
        "black vertices cannot be removed");
  return g.ref[b_choice];
}

void audit_quads(const TemperleyanGraph& g,
                 const std::vector<std::vector<int>>& faces) {
  for (const auto& f : faces) {
    if (f.size() != 4) throw StructuralError("superposition face is not a quadrangle");
    for (int i = 0; i < 4; ++i) {
      if (g.is_black(f[i]) == g.is_black(f[(i + 1) % 4]))
        throw StructuralError("superposition face colors do not alternate");
    }
    int b0 = g.is_black(f[0]) ? f[0] : f[1];
    int b1 = g.is_black(f[0]) ? f[2] : f[3];
    auto side = [&](int n) {
      return g.kind[n] == NodeKind::TriangleDual || g.kind[n] == NodeKind::WedgeDual;
    };
    if (side(b0) == side(b1))
      throw StructuralError("quadrangle lacks a primal/dual black diagonal");
  }
}

}  // namespace

int TemperleyanGraph::count_black() const {
  int c = 0;
  for (int n = 0; n < size(); ++n)
    if (active[n] && is_black(n)) ++c;
  return c;
}

int TemperleyanGraph::count_white() const {
  int c = 0;
  for (int n = 0; n < size(); ++n)
    if (active[n] && !is_black(n)) ++c;
  return c;
}

TemperleyanGraph superimpose(const PlanarTriangulation& tri, const DualMap& dm,
                             const Packing& p) {
  const int m = static_cast<int>(tri.boundary.size());
  if (m < 3) throw ValidationError("patch boundary is too short to superimpose");
  if (static_cast<int>(p.present.size()) < tri.capacity())
    throw ValidationError("packing does not cover the triangulation");
  for (int v = 0; v < tri.capacity(); ++v) {
    if (tri.present[v] && !p.present[v])
      throw ValidationError("packing does not cover the triangulation");
  }

  FaceSet fs = trace_faces(tri);
  if (static_cast<int>(fs.faces.size()) !=
      static_cast<int>(dm.face_vertices.size()) ||
      fs.outer != dm.outer_face)
    throw StructuralError("dual map does not match the triangulation");
  int num_edges = tri.num_edges();
  if (dm.edge_count() != num_edges)
    throw StructuralError("dual map does not match the triangulation");
  for (int v = 0; v < tri.capacity(); ++v) {
    if (!tri.present[v]) continue;
    for (int w : tri.rotation[v]) {
      if (!dm.primal_edge_id.count({std::min(v, w), std::max(v, w)}))
        throw StructuralError("dual map is missing a crossing for a patch edge");
    }
  }

  DualEmbedding de = dual_embedding(p, dm);

  TemperleyanGraph g;
  g.m = m;
  g.boundary = tri.boundary;

  Cplx centroid = 0;
  for (int b : tri.boundary) centroid += p.center[b];
  centroid /= static_cast<double>(m);
  double reach = 0;
  for (int v = 0; v < tri.capacity(); ++v) {
    if (p.present[v])
      reach = std::max(reach, std::abs(p.center[v] - centroid) + p.radius[v]);
  }
  g.centroid = centroid;
  g.reach = reach;
  const double r_ring = 1.12 * reach;
  const double r_rim = 1.06 * reach;
  const double r_wedge = 1.04 * reach;

  g.slot_of.assign(tri.capacity(), -1);
  std::vector<double> theta(m);
  for (int i = 0; i < m; ++i) {
    g.slot_of[tri.boundary[i]] = i;
    theta[i] = std::arg(p.center[tri.boundary[i]] - centroid);
  }
  std::vector<double> phi(m);
  for (int i = 0; i < m; ++i) {
    double gap = positive_angle_gap(theta[i], theta[(i + 1) % m]);
    if (gap < 1e-12)
      throw NumericalError("patch boundary is not star-shaped about its centroid");
    phi[i] = theta[i] + gap / 2;
  }

  auto add_node = [&](NodeKind k, int ref, Cplx pos) {
    g.kind.push_back(k);
    g.ref.push_back(ref);
    g.pos.push_back(pos);
    return static_cast<int>(g.kind.size()) - 1;
  };

  g.primal_node.assign(tri.capacity(), -1);
  for (int v = 0; v < tri.capacity(); ++v) {
    if (tri.present[v])
      g.primal_node[v] = add_node(NodeKind::PrimalVertex, v, p.center[v]);
  }
  g.apex = add_node(NodeKind::OuterApex, -1,
                    centroid + 1.3 * r_ring * std::polar(1.0, theta[0] + kPi));
  g.dual_node.assign(fs.faces.size(), -1);
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
    if (f != fs.outer)
      g.dual_node[f] = add_node(NodeKind::TriangleDual, f, de.dual_pos[f]);
  }
  g.wedge_node.resize(m);
  for (int i = 0; i < m; ++i) {
    g.wedge_node[i] = add_node(NodeKind::WedgeDual, i,
                               centroid + r_wedge * std::polar(1.0, phi[i]));
  }
  g.edge_white.resize(num_edges);
  for (int e = 0; e < num_edges; ++e) {
    g.edge_white[e] = add_node(NodeKind::EdgeWhite, e, de.white_pos[e]);
  }
  g.rim_white.resize(m);
  for (int i = 0; i < m; ++i) {
    g.rim_white[i] = add_node(NodeKind::RimWhite, i,
                              centroid + r_rim * std::polar(1.0, theta[i]));
  }
  g.active.assign(g.size(), 1);
  g.adj.assign(g.size(), {});

  auto white_of = [&](int u, int v) {
    return g.edge_white[dm.primal_edge_id.at({std::min(u, v), std::max(u, v)})];
  };
  // Black across dart (a, b): the dual of its face, where the outer face of
  // the patch stands for the wedge behind the boundary edge ending at b.
  auto across = [&](int a, int b) {
    int f = fs.face_of(a, b);
    return f == fs.outer ? g.wedge_node[g.slot_of[b]] : g.dual_node[f];
  };

  for (int v = 0; v < tri.capacity(); ++v) {
    if (!tri.present[v]) continue;
    auto& rot = g.adj[g.primal_node[v]];
    for (int w : tri.rotation[v]) rot.push_back(white_of(v, w));
    if (g.slot_of[v] >= 0) {
      int gaps = 0, at = -1;
      for (int j = 0; j < static_cast<int>(tri.rotation[v].size()); ++j) {
        if (fs.face_of(v, tri.rotation[v][j]) == fs.outer) {
          ++gaps;
          at = j;
        }
      }
      if (gaps != 1) throw StructuralError("boundary vertex touches the outer face twice");
      rot.insert(rot.begin() + at + 1, g.rim_white[g.slot_of[v]]);
    }
  }
  for (int i = m - 1; i >= 0; --i) g.adj[g.apex].push_back(g.rim_white[i]);
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
    if (f == fs.outer) continue;
    const auto& cyc = fs.faces[f];
    for (int j = 0; j < static_cast<int>(cyc.size()); ++j)
      g.adj[g.dual_node[f]].push_back(
          white_of(cyc[j], cyc[(j + 1) % cyc.size()]));
  }
  for (int i = 0; i < m; ++i) {
    int bi = tri.boundary[i], bn = tri.boundary[(i + 1) % m];
    g.adj[g.wedge_node[i]] = {g.rim_white[i], g.rim_white[(i + 1) % m],
                              white_of(bi, bn)};
  }
  for (int e = 0; e < num_edges; ++e) {
    auto [u, v] = dm.primal_edge[e];
    g.adj[g.edge_white[e]] = {g.primal_node[u], across(v, u), g.primal_node[v],
                              across(u, v)};
  }
  for (int i = 0; i < m; ++i) {
    g.adj[g.rim_white[i]] = {g.primal_node[tri.boundary[i]],
                             g.wedge_node[(i + m - 1) % m], g.apex,
                             g.wedge_node[i]};
  }

  FaceSet sup = trace_faces(g.adj, g.active);
  if (static_cast<int>(sup.faces.size()) != 2 * (num_edges + m))
    throw StructuralError("superposition face count is off");
  audit_quads(g, sup.faces);
  g.quads.clear();
  for (const auto& f : sup.faces)
    g.quads.push_back({f[0], f[1], f[2], f[3]});
  return g;
}

TemperleyanGraph remove_for_dimers(const TemperleyanGraph& g, int b_choice) {
  if (g.apex < 0 || !g.active[g.apex])
    throw ValidationError(
        "outer apex already removed; removing more would unbalance black and "
        "white counts");
  require_wedge(g, b_choice);

  TemperleyanGraph out = g;
  out.active[out.apex] = 0;
  out.active[b_choice] = 0;
  for (auto& rot : out.adj) {
    rot.erase(std::remove_if(rot.begin(), rot.end(),
                             [&](int n) { return !out.active[n]; }),
              rot.end());
  }
  out.adj[out.apex].clear();
  out.adj[b_choice].clear();
  std::vector<std::array<int, 4>> kept;
  for (const auto& q : out.quads) {
    bool ok = true;
    for (int n : q) ok = ok && out.active[n];
    if (ok) kept.push_back(q);
  }
  out.quads = kept;
  if (out.count_black() != out.count_white())
    throw StructuralError("black/white counts differ after removal");
  return out;
}

ExtendedGraph extend_with_boundary(const TemperleyanGraph& g, int b_choice) {
  if (g.apex < 0 || !g.active[g.apex])
    throw ValidationError("superposition was already reduced; extend from the original");
  const int k = require_wedge(g, b_choice);
  const int m = g.m;

  ExtendedGraph eg;
  eg.g = g;
  eg.k = k;
  eg.b_node = b_choice;
  const int gap = (k + 1) % m;
  const double r_ring = 1.12 * g.reach;

  std::vector<double> theta(m);
  for (int i = 0; i < m; ++i)
    theta[i] = std::arg(g.pos[g.rim_white[i]] - g.centroid);
  std::vector<double> phi(m);
  for (int i = 0; i < m; ++i)
    phi[i] = std::arg(g.pos[g.wedge_node[i]] - g.centroid);

  auto add_node = [&](NodeKind kind, int ref, Cplx pos) {
    eg.g.kind.push_back(kind);
    eg.g.ref.push_back(ref);
    eg.g.pos.push_back(pos);
    eg.g.active.push_back(1);
    eg.g.adj.push_back({});
    return eg.g.size() - 1;
  };

  eg.ring_node.assign(m, -1);
  for (int j = 0; j < m; ++j) {
    if (j == gap) continue;
    eg.ring_node[j] = add_node(NodeKind::RingBlack, j,
                               g.centroid + r_ring * std::polar(1.0, theta[j]));
  }
  eg.omega_node.resize(m);
  for (int j = 0; j < m; ++j) {
    eg.omega_node[j] = add_node(NodeKind::OmegaWhite, j,
                                g.centroid + r_ring * std::polar(1.0, phi[j]));
  }
  eg.w_node = eg.omega_node[k];
  eg.e_edge = {eg.b_node, eg.w_node};

  // Rewire the rim whites from the apex to the ring and thread the ring in.
  eg.g.active[eg.g.apex] = 0;
  eg.g.adj[eg.g.apex].clear();
  for (int j = 0; j < m; ++j) {
    int r = g.rim_white[j];
    if (eg.ring_node[j] >= 0) {
      eg.g.adj[r] = {g.primal_node[g.boundary[j]], g.wedge_node[(j + m - 1) % m],
                     eg.ring_node[j], g.wedge_node[j]};
    } else {
      eg.g.adj[r] = {g.primal_node[g.boundary[j]], g.wedge_node[(j + m - 1) % m],
                     g.wedge_node[j]};
    }
  }
  for (int j = 0; j < m; ++j) {
    if (eg.ring_node[j] < 0) continue;
    eg.g.adj[eg.ring_node[j]] = {g.rim_white[j], eg.omega_node[(j + m - 1) % m],
                                 eg.omega_node[j]};
  }
  for (int j = 0; j < m; ++j) {
    auto& rot = eg.g.adj[eg.omega_node[j]];
    if (eg.ring_node[(j + 1) % m] >= 0) rot.push_back(eg.ring_node[(j + 1) % m]);
    rot.push_back(g.wedge_node[j]);
    if (eg.ring_node[j] >= 0) rot.push_back(eg.ring_node[j]);
  }
  for (int j = 0; j < m; ++j) {
    int w = g.wedge_node[j];
    auto& rot = eg.g.adj[w];
    rot.insert(std::find(rot.begin(), rot.end(), g.rim_white[j]) + 1,
               eg.omega_node[j]);
  }

  for (int j = 0; j < m; ++j) {
    if (eg.ring_node[j] < 0) continue;
    eg.forced.push_back({eg.ring_node[j], eg.omega_node[(j + m - 1) % m]});
  }
  eg.forced.push_back(eg.e_edge);

  eg.in_g.assign(eg.g.size(), 0);
  for (int n = 0; n < eg.g.size(); ++n) {
    NodeKind kn = eg.g.kind[n];
    eg.in_g[n] = eg.g.active[n] && n != eg.b_node &&
                 kn != NodeKind::RingBlack && kn != NodeKind::OmegaWhite;
  }

  eg.faces = trace_faces(eg.g.adj, eg.g.active);
  eg.outer_face = -1;
  for (int f = 0; f < static_cast<int>(eg.faces.faces.size()); ++f) {
    int rings = 0;
    for (int n : eg.faces.faces[f])
      if (eg.g.kind[n] == NodeKind::RingBlack) ++rings;
    if (rings >= 2) {
      if (eg.outer_face >= 0)
        throw StructuralError("extended graph has two candidate outer faces");
      eg.outer_face = f;
    }
  }
  if (eg.outer_face < 0)
    throw StructuralError("extended graph outer face not found");
  eg.faces.outer = eg.outer_face;

  eg.base_face = -1;
  eg.g.quads.clear();
  eg.face_mid.assign(eg.faces.faces.size(), 0);
  for (int f = 0; f < static_cast<int>(eg.faces.faces.size()); ++f) {
    const auto& cyc = eg.faces.faces[f];
    if (f == eg.outer_face) {
      double mouth = theta[gap];
      eg.face_mid[f] = g.centroid + 1.1 * r_ring * std::polar(1.0, mouth);
      continue;
    }
    if (cyc.size() != 4)
      throw StructuralError("bounded face of the extended graph is not a quadrangle");
    eg.g.quads.push_back({cyc[0], cyc[1], cyc[2], cyc[3]});
    int b0 = eg.g.is_black(cyc[0]) ? cyc[0] : cyc[1];
    int b1 = eg.g.is_black(cyc[0]) ? cyc[2] : cyc[3];
    eg.face_mid[f] = (eg.g.pos[b0] + eg.g.pos[b1]) / 2.0;
    bool has_b = false, has_w = false;
    for (int n : cyc) {
      has_b = has_b || n == eg.b_node;
      has_w = has_w || n == eg.w_node;
    }
    if (has_b && has_w) {
      if (eg.base_face >= 0) throw StructuralError("base face is not unique");
      eg.base_face = f;
    }
  }
  if (eg.base_face < 0) throw StructuralError("base face not found");
  std::vector<std::vector<int>> bounded;
  for (int f = 0; f < static_cast<int>(eg.faces.faces.size()); ++f)
    if (f != eg.outer_face) bounded.push_back(eg.faces.faces[f]);
  audit_quads(eg.g, bounded);

  eg.on_outer.assign(eg.g.size(), 0);
  for (int n : eg.faces.faces[eg.outer_face]) eg.on_outer[n] = 1;

  if (eg.g.count_black() != eg.g.count_white())
    throw StructuralError("extended graph is not balanced");
  if (static_cast<int>(eg.forced.size()) != m)
    throw StructuralError("forced dimer count is off");
  return eg;
}

int choose_b_towards(const TemperleyanGraph& g, Cplx x) {
  std::vector<int> wedges;
  for (int n = 0; n < g.size(); ++n) {
    if (g.active[n] && g.kind[n] == NodeKind::WedgeDual) wedges.push_back(n);
  }
  return choose_b_towards(g, x, wedges);
}

int choose_b_towards(const TemperleyanGraph& g, Cplx x,
                     const std::vector<int>& boundary_blacks) {
  if (std::abs(std::abs(x) - 1.0) > 1e-9)
    throw ValidationError("target direction must be a unit vector");
  if (boundary_blacks.empty())
    throw ValidationError("no boundary black vertices to choose from");
  x /= std::abs(x);
  int best = -1;
  double best_d = 0;
  for (int n : boundary_blacks) {
    if (n < 0 || n >= g.size() || !g.active[n] || !g.is_black(n))
      throw ValidationError("candidate list contains a non-black or absent vertex");
    Cplx pz = g.pos[n];
    double t = std::clamp(pz.real() * x.real() + pz.imag() * x.imag(), 0.0, 1.0);
    double d = std::abs(pz - t * x);
    if (best < 0 || d < best_d || (d == best_d && n < best)) {
      best = n;
      best_d = d;
    }
  }
  return best;
}

std::string extended_to_text(const ExtendedGraph& eg) {
  std::ostringstream os;
  os.precision(17);
  auto tag = [&](NodeKind k) {
    switch (k) {
      case NodeKind::PrimalVertex: return "primal";
      case NodeKind::OuterApex: return "apex";
      case NodeKind::TriangleDual: return "tridual";
      case NodeKind::WedgeDual: return "wedge";
      case NodeKind::RingBlack: return "ring";
      case NodeKind::EdgeWhite: return "ewhite";
      case NodeKind::RimWhite: return "rwhite";
      case NodeKind::OmegaWhite: return "owhite";
    }
    return "?";
  };
  os << "hyperdimer-extended 1\n";
  os << "nodes " << eg.g.size() << "\n";
  for (int n = 0; n < eg.g.size(); ++n) {
    os << n << " " << tag(eg.g.kind[n]) << " " << eg.g.ref[n] << " "
       << eg.g.pos[n].real() << " " << eg.g.pos[n].imag() << " "
       << int(eg.g.active[n]) << " " << int(eg.in_g[n]) << "\n";
  }
  os << "adj\n";
  for (int n = 0; n < eg.g.size(); ++n) {
    if (!eg.g.active[n]) continue;
    os << n << ":";
    for (int w : eg.g.adj[n]) os << " " << w;
    os << "\n";
  }
  os << "markers b " << eg.b_node << " w " << eg.w_node << " e " << eg.e_edge[0]
     << " " << eg.e_edge[1] << " k " << eg.k << " base_face " << eg.base_face
     << " outer_face " << eg.outer_face << "\n";
  os << "forced " << eg.forced.size() << "\n";
  for (const auto& d : eg.forced) os << d[0] << " " << d[1] << "\n";
  return os.str();
}

}  // namespace hyperdimer
