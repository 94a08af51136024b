#include "hyperdimer/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "hyperdimer/errors.hpp"

namespace hyperdimer {
namespace {

constexpr double kCanvas = 840.0;
constexpr double kMargin = 20.0;

struct View {
  double reach = 1.0;
  double sx(Cplx z) const {
    return kMargin + (z.real() + reach) * (kCanvas - 2 * kMargin) / (2 * reach);
  }
  double sy(Cplx z) const {
    return kMargin + (reach - z.imag()) * (kCanvas - 2 * kMargin) / (2 * reach);
  }
  double sr(double r) const { return r * (kCanvas - 2 * kMargin) / (2 * reach); }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void open_doc(std::ostringstream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" height=\"840\""
     << " viewBox=\"0 0 840 840\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"840\" height=\"840\" fill=\"#ffffff\"/>\n";
}

void close_doc(std::ostringstream& os) { os << "</svg>\n"; }

void line(std::ostringstream& os, const View& vw, Cplx a, Cplx b,
          const char* stroke, double width) {
  os << "<line x1=\"" << fmt(vw.sx(a)) << "\" y1=\"" << fmt(vw.sy(a))
     << "\" x2=\"" << fmt(vw.sx(b)) << "\" y2=\"" << fmt(vw.sy(b))
     << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(width)
     << "\"/>\n";
}

View packing_view(const PlanarTriangulation& tri, const Packing& p) {
  View vw;
  vw.reach = 1.0;
  for (int v = 0; v < static_cast<int>(tri.capacity()); ++v)
    if (p.present.size() > static_cast<size_t>(v) && p.present[v])
      vw.reach = std::max(vw.reach, std::abs(p.center[v]) + p.radius[v]);
  vw.reach *= 1.02;
  return vw;
}

View graph_view(const TemperleyanGraph& g) {
  View vw;
  vw.reach = 1.0;
  for (int v = 0; v < g.size(); ++v)
    if (g.active[v]) vw.reach = std::max(vw.reach, std::abs(g.pos[v]));
  vw.reach *= 1.05;
  return vw;
}

void packing_elements(std::ostringstream& os, const View& vw,
                      const PlanarTriangulation& tri, const Packing& p,
                      const char* stroke) {
  for (int u = 0; u < static_cast<int>(tri.capacity()); ++u) {
    if (!p.present[u]) continue;
    for (int v : tri.rotation[u])
      if (v > u && p.present[v]) line(os, vw, p.center[u], p.center[v], "#dddddd", 0.8);
  }
  for (int v = 0; v < static_cast<int>(tri.capacity()); ++v) {
    if (!p.present[v]) continue;
    os << "<circle cx=\"" << fmt(vw.sx(p.center[v])) << "\" cy=\""
       << fmt(vw.sy(p.center[v])) << "\" r=\"" << fmt(vw.sr(p.radius[v]))
       << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
  }
}

const char* kLoopPalette[6] = {"#d7191c", "#2c7bb6", "#fdae61",
                               "#abdda4", "#756bb1", "#636363"};

}  // namespace

std::string svg_packing(const PlanarTriangulation& tri, const Packing& p) {
  std::ostringstream os;
  View vw = packing_view(tri, p);
  open_doc(os);
  packing_elements(os, vw, tri, p, "#555555");
  close_doc(os);
  return os.str();
}

std::string svg_trees(const ExtendedGraph& eg, const TreePair& tp) {
  const TemperleyanGraph& g = eg.g;
  std::ostringstream os;
  View vw = graph_view(g);
  open_doc(os);
  for (int v = 0; v < static_cast<int>(tp.wired_parent.size()); ++v) {
    int u = tp.wired_parent[v];
    if (u < 0 || u == tp.apex_index) continue;
    if (v >= static_cast<int>(g.primal_node.size()) ||
        u >= static_cast<int>(g.primal_node.size()))
      continue;
    int a = g.primal_node[v], b = g.primal_node[u];
    if (a < 0 || b < 0) continue;
    line(os, vw, g.pos[a], g.pos[b], "#7b3294", 2.2);
  }
  for (int p = 0; p < static_cast<int>(tp.dual_parent.size()); ++p) {
    int q = tp.dual_parent[p];
    if (q < 0 || q == p) continue;
    int w = tp.dual_via[p];
    if (w >= 0) {
      line(os, vw, g.pos[p], g.pos[w], "#008837", 1.6);
      line(os, vw, g.pos[w], g.pos[q], "#008837", 1.6);
    } else {
      line(os, vw, g.pos[p], g.pos[q], "#008837", 1.6);
    }
  }
  close_doc(os);
  return os.str();
}

std::string svg_cover(const ExtendedGraph& eg, const std::vector<int>& cover) {
  const TemperleyanGraph& g = eg.g;
  if (static_cast<int>(cover.size()) != g.size())
    throw ValidationError("cover does not match the extended graph");
  std::ostringstream os;
  View vw = graph_view(g);
  open_doc(os);
  for (int w = 0; w < g.size(); ++w) {
    if (!g.active[w] || g.is_black(w)) continue;
    int b = cover[w];
    if (b < 0) continue;
    line(os, vw, g.pos[w], g.pos[b], "#1a1a1a", 2.4);
  }
  for (int v = 0; v < g.size(); ++v) {
    if (!g.active[v] || !g.is_black(v)) continue;
    os << "<circle cx=\"" << fmt(vw.sx(g.pos[v])) << "\" cy=\""
       << fmt(vw.sy(g.pos[v]))
       << "\" r=\"2.4\" fill=\"#1a1a1a\" stroke=\"none\"/>\n";
  }
  close_doc(os);
  return os.str();
}

std::string svg_loops(const PlanarTriangulation& tri, const Packing& p,
                      const LoopEnsemble& ens) {
  std::ostringstream os;
  View vw = packing_view(tri, p);
  for (int l = 0; l < ens.size(); ++l)
    for (Cplx z : ens.polygon[l])
      vw.reach = std::max(vw.reach, std::abs(z) * 1.02);
  open_doc(os);
  packing_elements(os, vw, tri, p, "#bbbbbb");
  for (int l = 0; l < ens.size(); ++l) {
    const std::vector<Cplx>& poly = ens.polygon[l];
    os << "<path class=\"loop\" d=\"";
    for (size_t i = 0; i < poly.size(); ++i)
      os << (i == 0 ? "M " : "L ") << fmt(vw.sx(poly[i])) << ' '
         << fmt(vw.sy(poly[i])) << ' ';
    os << "Z\" fill=\"none\" stroke=\"" << kLoopPalette[l % 6]
       << "\" stroke-width=\"2.6\"/>\n";
  }
  close_doc(os);
  return os.str();
}

std::string svg_height(const ExtendedGraph& eg, const HeightField& field) {
  const TemperleyanGraph& g = eg.g;
  if (static_cast<int>(field.h.size()) != static_cast<int>(eg.faces.faces.size()))
    throw ValidationError("height field does not match the extended graph");
  std::ostringstream os;
  View vw = graph_view(g);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int f = 0; f < static_cast<int>(field.h.size()); ++f) {
    if (f == eg.outer_face) continue;
    if (first) {
      lo = hi = field.h[f];
      first = false;
    } else {
      lo = std::min(lo, field.h[f]);
      hi = std::max(hi, field.h[f]);
    }
  }
  open_doc(os);
  os << "<g id=\"scale\" data-min=\"" << fmt_exact(lo) << "\" data-max=\""
     << fmt_exact(hi) << "\"/>\n";
  for (int f = 0; f < static_cast<int>(field.h.size()); ++f) {
    if (f == eg.outer_face) continue;
    double t = hi > lo ? (field.h[f] - lo) / (hi - lo) : 0.5;
    // Two-segment diverging ramp: blue -> near-white -> red.
    double r, gg, b;
    if (t < 0.5) {
      double s = t / 0.5;
      r = 33 + s * (247 - 33);
      gg = 102 + s * (247 - 102);
      b = 172 + s * (247 - 172);
    } else {
      double s = (t - 0.5) / 0.5;
      r = 247 + s * (178 - 247);
      gg = 247 + s * (24 - 247);
      b = 247 + s * (43 - 247);
    }
    os << "<polygon points=\"";
    for (int v : eg.faces.faces[f])
      os << fmt(vw.sx(g.pos[v])) << ',' << fmt(vw.sy(g.pos[v])) << ' ';
    os << "\" fill=\"rgb(" << static_cast<int>(std::lround(r)) << ','
       << static_cast<int>(std::lround(gg)) << ','
       << static_cast<int>(std::lround(b)) << ")\" stroke=\"#ffffff\""
       << " stroke-width=\"0.4\"/>\n";
  }
  close_doc(os);
  return os.str();
}

}  // namespace hyperdimer
