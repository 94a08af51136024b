#include "hyperdimer/height.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "hyperdimer/errors.hpp"
#include "hyperdimer/sampler.hpp"

namespace hyperdimer {

namespace {

// Signed angle subtended at p by the segment a -> b, in (-pi, pi).  The
// magnitude reaches pi exactly when p lies on the open segment.
double subtended(const Cplx& a, const Cplx& b, const Cplx& p) {
  Cplx u = a - p, v = b - p;
  if (std::abs(u) == 0.0 || std::abs(v) == 0.0)
    throw NumericalError("winding point coincides with a polyline vertex");
  double ang = std::atan2(u.real() * v.imag() - u.imag() * v.real(),
                          u.real() * v.real() + u.imag() * v.imag());
  if (std::abs(std::abs(ang) - kPi) < 1e-12)
    throw NumericalError("winding point lies on a polyline segment");
  return ang;
}

}  // namespace

double topological_winding(const Polyline& poly, Cplx p) {
  const int n = static_cast<int>(poly.pts.size());
  if (n < 2) return 0.0;
  const int segs = poly.closed ? n : n - 1;
  double total = 0.0;
  for (int i = 0; i < segs; ++i) {
    const Cplx& a = poly.pts[i];
    const Cplx& b = poly.pts[(i + 1) % n];
    if (std::abs(b - a) == 0.0) continue;  // repeated point, no angle swept
    total += subtended(a, b, p);
  }
  return total;
}

double intrinsic_winding(const Polyline& poly, int* degenerate_turns) {
  const int n = static_cast<int>(poly.pts.size());
  int degenerate = 0;
  double total = 0.0;
  auto turn = [&degenerate](const Cplx& a, const Cplx& b, const Cplx& c) {
    Cplx u = b - a, v = c - b;
    if (std::abs(u) == 0.0 || std::abs(v) == 0.0)
      throw NumericalError("zero-length segment at a polyline turn");
    double t = std::atan2(u.real() * v.imag() - u.imag() * v.real(),
                          u.real() * v.real() + u.imag() * v.imag());
    if (std::abs(std::abs(t) - kPi) < 1e-12) {
      // An exact about-face has no well-defined turning sign.
      ++degenerate;
      return 0.0;
    }
    return t;
  };
  if (poly.closed) {
    for (int i = 0; i < n; ++i)
      total += turn(poly.pts[(i + n - 1) % n], poly.pts[i],
                    poly.pts[(i + 1) % n]);
  } else {
    for (int i = 1; i + 1 < n; ++i)
      total += turn(poly.pts[i - 1], poly.pts[i], poly.pts[i + 1]);
  }
  if (degenerate_turns) *degenerate_turns = degenerate;
  return total;
}

double ReferenceFlow::at(const ExtendedGraph& eg, int w, int b) const {
  const auto& rot = eg.g.adj[w];
  for (size_t s = 0; s < rot.size(); ++s) {
    if (rot[s] == b) return val[w][s];
  }
  throw StructuralError("reference flow queried on a missing edge");
}

ReferenceFlow reference_flow(const ExtendedGraph& eg) {
  const TemperleyanGraph& g = eg.g;
  ReferenceFlow flow;
  flow.val.assign(g.size(), {});
  for (int w = 0; w < g.size(); ++w) {
    if (!g.active[w] || g.is_black(w)) continue;
    const auto& rot = g.adj[w];
    flow.val[w].assign(rot.size(), 0.0);
    for (size_t s = 0; s < rot.size(); ++s) {
      int b = rot[s];
      int left = eg.faces.face_of(w, b);
      int right = eg.faces.face_of(b, w);
      if (left < 0 || right < 0)
        throw StructuralError("flow edge is missing a face adjacency");
      const Cplx& bb = g.pos[b];
      const Cplx& ml = eg.face_mid[left];
      const Cplx& mr = eg.face_mid[right];
      if (std::abs(ml - bb) < 1e-14 || std::abs(mr - bb) < 1e-14)
        throw NumericalError("face midpoint collides with a black vertex");
      flow.val[w][s] = (turn_angle(ml, bb, mr) + kPi) / (2.0 * kPi);
    }
  }

  // The flow pushes one unit out of every white and into every black of the
  // dimer graph; the finite boundary cycle perturbs only the outer-face ring.
  for (int n = 0; n < g.size(); ++n) {
    if (!eg.in_g[n] || eg.on_outer[n]) continue;
    double div = 0.0;
    if (g.is_black(n)) {
      for (int w : g.adj[n]) div += flow.at(eg, w, n);
    } else {
      for (double x : flow.val[n]) div += x;
    }
    if (std::abs(div - 1.0) > 1e-9)
      throw NumericalError("reference flow divergence audit failed");
  }
  return flow;
}

namespace {

void check_extended_cover(const std::vector<int>& cover,
                          const TemperleyanGraph& g) {
  if (static_cast<int>(cover.size()) != g.size())
    throw ValidationError("cover does not span the extended graph");
  for (int n = 0; n < g.size(); ++n) {
    if (!g.active[n] || g.is_black(n)) continue;
    int b = cover[n];
    if (b < 0 || b >= g.size() || cover[b] != n)
      throw ValidationError("cover leaves a white vertex unmatched");
  }
}

}  // namespace

HeightField height_from_flow(const std::vector<int>& cover,
                             const ReferenceFlow& flow, const ExtendedGraph& eg,
                             Cplx x) {
  const TemperleyanGraph& g = eg.g;
  check_extended_cover(cover, g);
  const int nf = static_cast<int>(eg.faces.faces.size());

  struct Step {
    int to;
    double inc;
  };
  std::vector<std::vector<Step>> nb(nf);
  std::vector<std::array<double, 3>> edges;  // (left, right, increment)
  for (int w = 0; w < g.size(); ++w) {
    if (!g.active[w] || g.is_black(w)) continue;
    const auto& rot = g.adj[w];
    for (size_t s = 0; s < rot.size(); ++s) {
      int b = rot[s];
      int left = eg.faces.face_of(w, b);
      int right = eg.faces.face_of(b, w);
      // The height lives on bounded faces; never integrate across the outer
      // face, whose pseudo-midpoint is only a finite stand-in.
      if (left == eg.outer_face || right == eg.outer_face) continue;
      double inc = (cover[w] == b ? 1.0 : 0.0) - flow.val[w][s];
      nb[left].push_back({right, -inc});
      nb[right].push_back({left, inc});
      edges.push_back({static_cast<double>(left), static_cast<double>(right), inc});
    }
  }

  HeightField out;
  out.h.assign(nf, 0.0);
  out.base_face = eg.base_face;
  out.x = x;
  if (std::abs(x) == 0.0 && eg.b_node >= 0)
    out.x = (g.pos[eg.b_node] - g.centroid) /
            std::abs(g.pos[eg.b_node] - g.centroid);

  std::vector<char> seen(nf, 0);
  std::deque<int> q;
  seen[eg.base_face] = 1;
  q.push_back(eg.base_face);
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    for (const Step& st : nb[f]) {
      if (seen[st.to]) continue;
      seen[st.to] = 1;
      out.h[st.to] = out.h[f] + st.inc;
      q.push_back(st.to);
    }
  }
  for (int f = 0; f < nf; ++f) {
    if (f == eg.outer_face) continue;
    if (!seen[f]) throw StructuralError("face not reachable from the base face");
  }
  for (const auto& e : edges) {
    int left = static_cast<int>(e[0]), right = static_cast<int>(e[1]);
    if (std::abs(out.h[left] - out.h[right] - e[2]) > 1e-9)
      throw NumericalError("height field is not path independent");
  }
  return out;
}

TreePair tree_pair_of_cover(const TemperleyanGraph& g, int b_choice,
                            const std::vector<int>& cover, int apex_index) {
  if (g.apex < 0 || !g.active[g.apex])
    throw ValidationError("pass the full superposition, not the reduced graph");
  TreePair t;
  t.apex_index = apex_index;
  t.wired_parent = dimers_to_trees(g, b_choice, cover, apex_index);
  t.dual_parent.assign(g.size(), -1);
  t.dual_via.assign(g.size(), -1);
  t.dual_parent[b_choice] = b_choice;
  for (int w = 0; w < g.size(); ++w) {
    if (!g.active[w] || g.is_black(w)) continue;
    if (w >= static_cast<int>(cover.size())) break;
    int p = cover[w];
    if (p < 0 || p == b_choice) continue;
    NodeKind kp = g.kind[p];
    if (kp != NodeKind::TriangleDual && kp != NodeKind::WedgeDual) continue;
    t.dual_parent[p] = g.adj[w][1] == p ? g.adj[w][3] : g.adj[w][1];
    t.dual_via[p] = w;
  }
  for (int n = 0; n < g.size(); ++n) {
    NodeKind kn = g.kind[n];
    bool dual_side =
        kn == NodeKind::TriangleDual || kn == NodeKind::WedgeDual;
    if (g.active[n] && dual_side && n != b_choice && t.dual_parent[n] < 0)
      throw StructuralError("dual vertex missing from the dual tree");
  }
  return t;
}

namespace {

// Polyline of the tree branch from the midpoint of `face` to the midpoint of
// the base face.  The wired branch climbs to the boundary, hops to the
// boundary cycle, and walks the cycle (counterclockwise, away from the gap)
// to the ring vertex beside the distinguished edge; a branch leaving through
// the gap detours through the outer pseudo-midpoint.
Polyline branch_polyline(const TreePair& trees, const ExtendedGraph& eg,
                         int face, bool dual_version) {
  const TemperleyanGraph& g = eg.g;
  if (face < 0 || face >= static_cast<int>(eg.faces.faces.size()) ||
      face == eg.outer_face)
    throw ValidationError("height is defined on bounded faces");
  const auto& cyc = eg.faces.faces[face];
  int b0 = g.is_black(cyc[0]) ? cyc[0] : cyc[1];
  int b1 = g.is_black(cyc[0]) ? cyc[2] : cyc[3];
  bool b0_dual = g.kind[b0] == NodeKind::TriangleDual ||
                 g.kind[b0] == NodeKind::WedgeDual;
  int bp = b0_dual ? b1 : b0;
  int bd = b0_dual ? b0 : b1;

  Polyline pl;
  pl.pts.push_back(eg.face_mid[face]);
  const int guard = 4 * g.size() + 8;

  if (dual_version) {
    int d = bd;
    pl.pts.push_back(g.pos[d]);
    int steps = 0;
    while (trees.dual_parent[d] != d) {
      if (trees.dual_via[d] >= 0) pl.pts.push_back(g.pos[trees.dual_via[d]]);
      d = trees.dual_parent[d];
      if (d < 0 || ++steps > guard)
        throw StructuralError("dual branch does not reach the root");
      pl.pts.push_back(g.pos[d]);
    }
    if (d != eg.b_node)
      throw StructuralError("dual branch ends away from the removed wedge");
  } else {
    const int m = g.m;
    auto ring_walk = [&](int slot) {
      for (int j = slot, steps = 0; ; j = (j + 1) % m) {
        if (eg.ring_node[j] < 0 || ++steps > m + 1)
          throw StructuralError("boundary-cycle walk crossed the gap");
        pl.pts.push_back(g.pos[eg.ring_node[j]]);
        if (j == eg.k) break;
        pl.pts.push_back(g.pos[eg.omega_node[j]]);
      }
    };
    if (g.kind[bp] == NodeKind::RingBlack) {
      ring_walk(g.ref[bp]);
    } else if (g.kind[bp] == NodeKind::PrimalVertex) {
      int v = g.ref[bp];
      pl.pts.push_back(g.pos[bp]);
      int steps = 0;
      for (;;) {
        if (v < 0 || v >= static_cast<int>(trees.wired_parent.size()))
          throw StructuralError("tree branch left the patch");
        int p = trees.wired_parent[v];
        if (p < 0 || ++steps > guard)
          throw StructuralError("tree branch does not reach the boundary");
        if (p == trees.apex_index) {
          int slot = g.slot_of[v];
          if (slot < 0)
            throw StructuralError("apex arrow from an interior vertex");
          pl.pts.push_back(g.pos[g.rim_white[slot]]);
          if (eg.ring_node[slot] >= 0) {
            ring_walk(slot);
          } else {
            // Gap exit: out to the pseudo-midpoint, then the full
            // anticlockwise circuit back to the ring vertex beside the base.
            pl.pts.push_back(eg.face_mid[eg.outer_face]);
            pl.pts.push_back(g.pos[eg.omega_node[slot]]);
            ring_walk((slot + 1) % m);
          }
          break;
        }
        v = p;
        pl.pts.push_back(g.pos[g.primal_node[v]]);
      }
    } else {
      throw StructuralError("face has no primal-side black vertex");
    }
  }
  pl.pts.push_back(eg.face_mid[eg.base_face]);
  return pl;
}

}  // namespace

double height_via_winding(const TreePair& trees, const ExtendedGraph& eg,
                          int face, bool dual_version) {
  if (face == eg.base_face) return 0.0;
  Polyline pl = branch_polyline(trees, eg, face, dual_version);
  double w = intrinsic_winding(pl) / (2.0 * kPi);
  // The half-unit offsets are the endpoint half-turns of the branch, which
  // starts and ends along face diagonals; signs match the flow heights.
  return dual_version ? -0.5 - w : 0.5 - w;
}

ExtendedGraph transform_extended(const ExtendedGraph& eg,
                                 const DiscAutomorphism& phi) {
  ExtendedGraph out = eg;
  for (int n = 0; n < out.g.size(); ++n) out.g.pos[n] = phi(eg.g.pos[n]);
  out.g.centroid = phi(eg.g.centroid);
  for (int f = 0; f < static_cast<int>(out.faces.faces.size()); ++f) {
    if (f == out.outer_face) {
      out.face_mid[f] = phi(eg.face_mid[f]);
      continue;
    }
    const auto& cyc = out.faces.faces[f];
    int b0 = out.g.is_black(cyc[0]) ? cyc[0] : cyc[1];
    int b1 = out.g.is_black(cyc[0]) ? cyc[2] : cyc[3];
    out.face_mid[f] = (out.g.pos[b0] + out.g.pos[b1]) / 2.0;
  }
  return out;
}

MobiusHeightReport mobius_height_change(const HeightField& before,
                                        const HeightField& after,
                                        const DiscAutomorphism& phi,
                                        const ExtendedGraph& eg_before,
                                        const ExtendedGraph& eg_after) {
  const TemperleyanGraph& g = eg_before.g;
  if (before.h.size() != after.h.size() ||
      before.h.size() != eg_before.faces.faces.size() ||
      eg_before.faces.faces.size() != eg_after.faces.faces.size())
    throw ValidationError("height fields do not share a face set");
  if (std::abs(phi(before.x) - before.x) > 1e-6)
    throw ValidationError("transform must fix the height target");

  MobiusHeightReport rep;
  auto face_arg = [&](int f) {
    const auto& cyc = eg_before.faces.faces[f];
    int b0 = g.is_black(cyc[0]) ? cyc[0] : cyc[1];
    int b1 = g.is_black(cyc[0]) ? cyc[2] : cyc[3];
    for (int b : {b0, b1}) {
      if ((Cplx(1.0, 0.0) - std::conj(phi.a) * g.pos[b]).real() <= 0.0) {
        rep.branch_ok = false;
        if (rep.branch_fail_node < 0) rep.branch_fail_node = b;
      }
    }
    return 0.5 * (phi.arg_deriv(g.pos[b0]) + phi.arg_deriv(g.pos[b1]));
  };

  double base_arg = face_arg(eg_before.base_face);
  for (int f = 0; f < static_cast<int>(before.h.size()); ++f) {
    if (f == eg_before.outer_face) continue;
    double predicted =
        before.h[f] + (face_arg(f) - base_arg) / (2.0 * kPi);
    double dev = std::abs(after.h[f] - predicted);
    ++rep.faces_checked;
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_face = f;
    }
  }
  return rep;
}

std::string height_to_csv(const ExtendedGraph& eg, const HeightField& field) {
  std::ostringstream os;
  os.precision(17);
  os << "face_id,x,y,h\n";
  for (int f = 0; f < static_cast<int>(field.h.size()); ++f) {
    if (f == eg.outer_face) continue;
    os << f << ',' << eg.face_mid[f].real() << ',' << eg.face_mid[f].imag()
       << ',' << field.h[f] << '\n';
  }
  return os.str();
}

}  // namespace hyperdimer
