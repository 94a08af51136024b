#include "hyperdimer/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "hyperdimer/errors.hpp"

namespace hyperdimer {

double triangle_angle_euclid(double rv, double ru, double rw) {
  double s = (ru * rw) / ((rv + ru) * (rv + rw));
  s = std::clamp(s, 0.0, 1.0);
  return 2.0 * std::asin(std::sqrt(s));
}

double triangle_angle_hyperbolic(double hv, double hu, double hw) {
  double xv = std::exp(-2.0 * hv);
  double xu = std::exp(-2.0 * hu);
  double xw = std::exp(-2.0 * hw);
  double s = xv * (1.0 - xu) * (1.0 - xw) / ((1.0 - xv * xu) * (1.0 - xv * xw));
  s = std::clamp(s, 0.0, 1.0);
  return 2.0 * std::asin(std::sqrt(s));
}

namespace {

void check_triangulated_disc(const PlanarTriangulation& tri) {
  if (tri.num_edges() == 0) return;
  FaceSet fs = trace_faces(tri);
  if (fs.outer < 0)
    throw StructuralError("triangulation has no outer-face marker");
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f)
    if (f != fs.outer && fs.faces[f].size() != 3)
      throw StructuralError("input is not a triangulation: bounded face of size " +
                            std::to_string(fs.faces[f].size()));
  long f_int = static_cast<long>(fs.faces.size()) - 1;
  if (tri.num_vertices() - tri.num_edges() + f_int != 1)
    throw StructuralError("input is not simply connected");
}

struct AngleSystem {
  bool hyperbolic = false;
  // corner triples per interior vertex: (u, w) consecutive around v
  std::vector<int> interior;
  std::vector<std::vector<std::pair<int, int>>> corners;  // by vertex id

  // x-variables: Euclidean radius, or x = exp(-2h) with 0 marking horocycles
  double theta(const std::vector<double>& var, int v, double vv) const {
    double sum = 0.0;
    for (auto [u, w] : corners[v]) {
      if (hyperbolic) {
        double s = vv * (1.0 - var[u]) * (1.0 - var[w]) /
                   ((1.0 - vv * var[u]) * (1.0 - vv * var[w]));
        sum += 2.0 * std::asin(std::sqrt(std::clamp(s, 0.0, 1.0)));
      } else {
        sum += triangle_angle_euclid(vv, var[u], var[w]);
      }
    }
    return sum;
  }
};

}  // namespace

RadiiSolution solve_radii(const PlanarTriangulation& tri, BoundaryCondition bc,
                          double tol, int max_iters, double boundary_radius) {
  if (tol <= 0) throw ValidationError("solve_radii: tol must be positive");
  if (max_iters < 1) throw ValidationError("solve_radii: max_iters must be >= 1");
  if (boundary_radius <= 0)
    throw ValidationError("solve_radii: boundary radius must be positive");
  check_triangulated_disc(tri);

  int cap = tri.capacity();
  std::vector<char> is_boundary(cap, 0);
  for (int b : tri.boundary) is_boundary[b] = 1;

  AngleSystem sys;
  sys.hyperbolic = (bc == BoundaryCondition::Hyperbolic);
  sys.corners.resize(cap);
  for (int v = 0; v < cap; ++v) {
    if (!tri.present[v] || is_boundary[v]) continue;
    sys.interior.push_back(v);
    const auto& rv = tri.rotation[v];
    int deg = static_cast<int>(rv.size());
    for (int i = 0; i < deg; ++i)
      sys.corners[v].push_back({rv[i], rv[(i + 1) % deg]});
  }

  RadiiSolution sol;
  sol.hyperbolic = sys.hyperbolic;
  std::vector<double> var(cap, 0.0);
  for (int v = 0; v < cap; ++v) {
    if (!tri.present[v]) continue;
    if (sys.hyperbolic)
      var[v] = is_boundary[v] ? 0.0 : 0.3;
    else
      var[v] = boundary_radius;
  }

  auto max_residual = [&]() {
    double worst = 0.0;
    for (int v : sys.interior)
      worst = std::max(worst, std::abs(sys.theta(var, v, var[v]) - 2 * kPi));
    return worst;
  };

  if (sys.interior.empty()) {
    sol.iterations = 0;
    sol.max_residual = 0.0;
  } else {
    bool done = false;
    for (int it = 1; it <= max_iters && !done; ++it) {
      for (int v : sys.interior) {
        double lo, hi;
        if (sys.hyperbolic) {
          lo = 0.0;
          hi = 1.0;
        } else {
          // theta decreases in the Euclidean radius
          lo = 1e-12;
          hi = std::max(var[v], 1e-6);
          int guard = 0;
          while (sys.theta(var, v, hi) > 2 * kPi && guard++ < 400) hi *= 2.0;
        }
        for (int step = 0; step < 90; ++step) {
          double mid = 0.5 * (lo + hi);
          double th = sys.theta(var, v, mid);
          bool too_small_angle = (th < 2 * kPi);
          if (sys.hyperbolic ? too_small_angle : !too_small_angle)
            lo = mid;
          else
            hi = mid;
        }
        var[v] = 0.5 * (lo + hi);
      }
      sol.iterations = it;
      sol.max_residual = max_residual();
      if (sol.max_residual <= tol) done = true;
    }
    if (!done)
      throw NumericalError("solve_radii did not converge in " +
                           std::to_string(max_iters) +
                           " sweeps; worst angle-sum residual " +
                           std::to_string(sol.max_residual));
  }

  sol.radius.assign(cap, 0.0);
  for (int v = 0; v < cap; ++v) {
    if (!tri.present[v]) continue;
    if (sys.hyperbolic)
      sol.radius[v] = is_boundary[v] ? std::numeric_limits<double>::infinity()
                                     : -0.5 * std::log(var[v]);
    else
      sol.radius[v] = var[v];
  }
  return sol;
}

namespace {

double corner_angle(const RadiiSolution& sol, int v, int a, int b) {
  if (sol.hyperbolic)
    return triangle_angle_hyperbolic(sol.radius[v], sol.radius[a], sol.radius[b]);
  return triangle_angle_euclid(sol.radius[v], sol.radius[a], sol.radius[b]);
}

}  // namespace

Packing layout(const PlanarTriangulation& tri, const RadiiSolution& sol) {
  int cap = tri.capacity();
  if (static_cast<int>(sol.radius.size()) != cap)
    throw ValidationError("layout: radius assignment does not match the map");

  Packing p;
  p.root = tri.root;
  p.carrier_note = sol.hyperbolic;
  p.center.assign(cap, Cplx(0, 0));
  p.radius.assign(cap, 0.0);
  p.present = tri.present;

  const auto& h = sol.radius;
  if (tri.num_edges() == 0) {
    p.radius[tri.root] =
        sol.hyperbolic
            ? (std::isfinite(h[tri.root]) ? std::tanh(h[tri.root] / 2) : 1.0)
            : h[tri.root];
    return p;
  }
  if (sol.hyperbolic && !std::isfinite(h[tri.root]))
    throw ValidationError("layout: root must be an interior circle in hyperbolic mode");

  FaceSet fs = trace_faces(tri);
  std::vector<char> placed(cap, 0);
  std::vector<Cplx> hypc(cap, Cplx(0, 0));

  // chart helpers: charts are automorphisms with no rotation part, whose
  // inverse is the automorphism with the opposite base point
  auto place_hyp = [&](int v, const DiscAutomorphism& chart_inv, int u,
                       double psi) {
    double t1 = std::tanh(h[v] / 2);
    double t2 = std::isfinite(h[u]) ? std::tanh((h[v] + 2 * h[u]) / 2) : 1.0;
    Cplx dir = std::polar(1.0, psi);
    Circle world = map_circle(chart_inv, {(t1 + t2) / 2 * dir, (t2 - t1) / 2});
    p.center[u] = world.center;
    p.radius[u] = world.radius;
    hypc[u] = chart_inv(std::isfinite(h[u])
                            ? Cplx(std::tanh((h[v] + h[u]) / 2) * dir)
                            : dir);
    placed[u] = 1;
  };
  auto place_euclid = [&](int v, int u, double psi) {
    p.center[u] = p.center[v] + (h[v] + h[u]) * std::polar(1.0, psi);
    p.radius[u] = h[u];
    placed[u] = 1;
  };

  int root = tri.root;
  p.center[root] = 0;
  p.radius[root] = sol.hyperbolic ? std::tanh(h[root] / 2) : h[root];
  hypc[root] = 0;
  placed[root] = 1;

  int a0 = tri.rotation[root][0];
  if (sol.hyperbolic)
    place_hyp(root, DiscAutomorphism{Cplx(0, 0), 0.0}, a0, 0.0);
  else
    place_euclid(root, a0, 0.0);

  std::queue<int> q;
  q.push(root);
  q.push(a0);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (sol.hyperbolic && !std::isfinite(h[v])) continue;  // horocycles never pivot
    const auto& rv = tri.rotation[v];
    int deg = static_cast<int>(rv.size());
    int ia = -1;
    for (int i = 0; i < deg && ia < 0; ++i)
      if (placed[rv[i]]) ia = i;
    if (ia < 0) throw StructuralError("layout pivot has no placed neighbor");

    DiscAutomorphism chart{hypc[v], 0.0}, chart_inv{-hypc[v], 0.0};
    double psi0;
    if (sol.hyperbolic) {
      Circle im = map_circle(chart, {p.center[rv[ia]], p.radius[rv[ia]]});
      psi0 = std::arg(im.center);
    } else {
      psi0 = std::arg(p.center[rv[ia]] - p.center[v]);
    }

    double psi = psi0;
    for (int step = 1; step < deg; ++step) {
      int cur = rv[(ia + step - 1) % deg], nxt = rv[(ia + step) % deg];
      if (fs.face_of(v, cur) == fs.outer) break;
      psi += corner_angle(sol, v, cur, nxt);
      if (!placed[nxt]) {
        if (sol.hyperbolic)
          place_hyp(v, chart_inv, nxt, psi);
        else
          place_euclid(v, nxt, psi);
        q.push(nxt);
      }
    }
    psi = psi0;
    for (int step = 1; step < deg; ++step) {
      int cur = rv[(ia - step + 1 + deg) % deg], prv = rv[(ia - step + deg) % deg];
      if (fs.face_of(v, prv) == fs.outer) break;
      psi -= corner_angle(sol, v, prv, cur);
      if (!placed[prv]) {
        if (sol.hyperbolic)
          place_hyp(v, chart_inv, prv, psi);
        else
          place_euclid(v, prv, psi);
        q.push(prv);
      }
    }
  }

  for (int v = 0; v < cap; ++v)
    if (tri.present[v] && !placed[v])
      throw StructuralError("layout left vertex " + std::to_string(v) +
                            " unplaced");

  double worst = 0.0;
  std::pair<int, int> worst_edge{-1, -1};
  for (int u = 0; u < cap; ++u) {
    if (!tri.present[u]) continue;
    for (int v : tri.rotation[u]) {
      if (v < u) continue;
      double res = std::abs(std::abs(p.center[u] - p.center[v]) -
                            (p.radius[u] + p.radius[v]));
      if (res > worst) {
        worst = res;
        worst_edge = {u, v};
      }
    }
  }
  if (worst > 1e-7)
    throw NumericalError("layout tangency residual " + std::to_string(worst) +
                         " at edge (" + std::to_string(worst_edge.first) + "," +
                         std::to_string(worst_edge.second) + ")");
  return p;
}

double tangency_residual(const PlanarTriangulation& tri, const Packing& p) {
  double worst = 0.0;
  for (int u = 0; u < tri.capacity(); ++u) {
    if (!tri.present[u]) continue;
    for (int v : tri.rotation[u]) {
      if (v < u) continue;
      worst = std::max(worst, std::abs(std::abs(p.center[u] - p.center[v]) -
                                       (p.radius[u] + p.radius[v])));
    }
  }
  return worst;
}

Packing apply_automorphism(const Packing& p, const DiscAutomorphism& phi) {
  Packing out = p;
  for (int v = 0; v < static_cast<int>(p.center.size()); ++v) {
    if (!p.present[v]) continue;
    Circle im = map_circle(phi, {p.center[v], p.radius[v]});
    out.center[v] = im.center;
    out.radius[v] = im.radius;
  }
  return out;
}

Cplx hyperbolic_center(const Circle& c) {
  double d = std::abs(c.center);
  double t1 = d - c.radius, t2 = d + c.radius;
  if (t1 <= -1.0 || t2 >= 1.0 - 1e-14) {
    if (t2 >= 1.0 - 1e-14 && d > 1e-15) return c.center / d;  // ideal point
    throw ValidationError("circle does not lie inside the unit disc");
  }
  double rho = std::tanh((std::atanh(t1) + std::atanh(t2)) / 2);
  Cplx dir = d > 1e-15 ? c.center / d : Cplx(1, 0);
  return rho * dir;
}

std::pair<Packing, DiscAutomorphism> mobius_normalize(const Packing& p,
                                                      const MobiusMode& mode) {
  DiscAutomorphism phi{Cplx(0, 0), 0.0};
  if (mode.kind == MobiusMode::RootAtOrigin) {
    Cplx a = hyperbolic_center({p.center[p.root], p.radius[p.root]});
    if (std::abs(a) >= 1.0)
      throw ValidationError("root circle does not lie inside the unit disc");
    phi = DiscAutomorphism::to_origin(a);
  } else {
    double ax = std::abs(mode.x);
    if (std::abs(ax - 1.0) > 1e-9)
      throw ValidationError("fix_boundary_point requires |x| = 1");
    if (!(std::abs(mode.strength) < 1.0))
      throw ValidationError("fix_boundary_point strength must lie in (-1,1)");
    Cplx x = mode.x / ax;
    phi = DiscAutomorphism{-mode.strength * x, 0.0};
  }
  return {apply_automorphism(p, phi), phi};
}

DualEmbedding dual_embedding(const Packing& p, const DualMap& dm) {
  DualEmbedding de;
  int nf = static_cast<int>(dm.face_vertices.size());
  de.dual_pos.assign(nf, Cplx(0, 0));
  double reach = 0.0;
  for (int v = 0; v < static_cast<int>(p.center.size()); ++v)
    if (p.present[v]) reach = std::max(reach, std::abs(p.center[v]) + p.radius[v]);
  for (int f = 0; f < nf; ++f) {
    if (f == dm.outer_face) {
      de.dual_pos[f] = Cplx(1.15 * reach, 0.0);
      continue;
    }
    const auto& cyc = dm.face_vertices[f];
    if (cyc.size() != 3)
      throw StructuralError("dual_embedding expects triangular bounded faces");
    Cplx z1 = p.center[cyc[0]], z2 = p.center[cyc[1]], z3 = p.center[cyc[2]];
    double area2 = std::abs((z2 - z1).real() * (z3 - z1).imag() -
                            (z2 - z1).imag() * (z3 - z1).real());
    if (area2 < 1e-30)
      throw NumericalError("degenerate interstice in dual_embedding");
    de.dual_pos[f] = incenter(z1, z2, z3);
  }
  de.white_pos.resize(dm.edge_count());
  for (int e = 0; e < dm.edge_count(); ++e) {
    auto [u, v] = dm.primal_edge[e];
    Cplx d = p.center[v] - p.center[u];
    de.white_pos[e] = p.center[u] + p.radius[u] * d / std::abs(d);
  }
  return de;
}

double min_quad_orientation(const Packing& p, const DualMap& dm,
                            const DualEmbedding& de) {
  double mn = std::numeric_limits<double>::infinity();
  for (int e = 0; e < dm.edge_count(); ++e) {
    int fl = dm.dual_edge[e][0], fr = dm.dual_edge[e][1];
    if (fl == dm.outer_face || fr == dm.outer_face) continue;
    auto [u, v] = dm.primal_edge[e];
    Cplx quad[4] = {p.center[u], de.dual_pos[fr], p.center[v], de.dual_pos[fl]};
    double area2 = 0.0;
    for (int i = 0; i < 4; ++i) {
      Cplx a = quad[i], b = quad[(i + 1) % 4];
      area2 += a.real() * b.imag() - a.imag() * b.real();
    }
    mn = std::min(mn, area2 / 2);
  }
  return mn;
}

std::string packing_to_csv(const Packing& p) {
  std::ostringstream os;
  os.precision(17);
  os << "vertex_id,x,y,r\n";
  for (int v = 0; v < static_cast<int>(p.center.size()); ++v) {
    if (!p.present[v]) continue;
    os << v << "," << p.center[v].real() << "," << p.center[v].imag() << ","
       << p.radius[v] << "\n";
  }
  return os.str();
}

}  // namespace hyperdimer
