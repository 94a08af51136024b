#include "hyperdimer/planar_map.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "hyperdimer/errors.hpp"

namespace hyperdimer {

std::vector<int> PlanarTriangulation::vertices() const {
  std::vector<int> out;
  for (int v = 0; v < capacity(); ++v)
    if (present[v]) out.push_back(v);
  return out;
}

int PlanarTriangulation::num_vertices() const {
  int n = 0;
  for (int v = 0; v < capacity(); ++v)
    if (present[v]) ++n;
  return n;
}

long PlanarTriangulation::num_edges() const {
  long darts = 0;
  for (int v = 0; v < capacity(); ++v)
    if (present[v]) darts += static_cast<long>(rotation[v].size());
  return darts / 2;
}

bool PlanarTriangulation::adjacent(int u, int v) const {
  if (!has_vertex(u)) return false;
  const auto& r = rotation[u];
  return std::find(r.begin(), r.end(), v) != r.end();
}

PlanarTriangulation build_regular_ball(int degree, int radius) {
  if (degree < 7)
    throw ValidationError(
        "degree " + std::to_string(degree) +
        " lies in the parabolic/amenable regime; need degree >= 7");
  if (radius < 0)
    throw ValidationError("radius must be nonnegative, got " +
                          std::to_string(radius));

  PlanarTriangulation t;
  t.degree = degree;
  t.radius = radius;
  t.root = 0;
  std::vector<char> type_b;                 // two parents instead of one
  std::vector<std::array<int, 2>> parents;  // {u1 (clockwise side), u2} or {u,-1}

  auto new_vertex = [&](int lay) {
    t.rotation.emplace_back();
    t.present.push_back(1);
    t.layer.push_back(lay);
    type_b.push_back(0);
    parents.push_back({-1, -1});
    return static_cast<int>(t.rotation.size()) - 1;
  };

  new_vertex(0);
  t.boundary = {0};
  if (radius == 0) return t;

  std::vector<int> cur;
  for (int j = 0; j < degree; ++j) {
    int v = new_vertex(1);
    parents[v] = {0, -1};
    cur.push_back(v);
  }
  t.rotation[0] = cur;
  int m = degree;
  for (int j = 0; j < m; ++j)
    t.rotation[cur[j]] = {0, cur[(j - 1 + m) % m], cur[(j + 1) % m]};
  t.boundary = cur;

  for (int k = 1; k < radius; ++k) {
    m = static_cast<int>(cur.size());
    std::vector<int> ring;  // new layer, ccw
    std::vector<std::vector<int>> kids(t.capacity() + 8 * m + 8);
    std::vector<int> edge_child(m);  // edge_child[i] sits between cur[i], cur[i+1]
    for (int i = 0; i < m; ++i) {
      int v = cur[i], w = cur[(i + 1) % m];
      int e = new_vertex(k + 1);
      type_b[e] = 1;
      parents[e] = {v, w};
      edge_child[i] = e;
      ring.push_back(e);
      int nc = degree - (type_b[w] ? 6 : 5);
      for (int c = 0; c < nc; ++c) {
        int x = new_vertex(k + 1);
        parents[x] = {w, -1};
        kids[w].push_back(x);
        ring.push_back(x);
      }
    }
    int rm = static_cast<int>(ring.size());
    for (int p = 0; p < rm; ++p) {
      int w = ring[p];
      int prv = ring[(p - 1 + rm) % rm], nxt = ring[(p + 1) % rm];
      if (type_b[w])
        t.rotation[w] = {parents[w][0], prv, nxt, parents[w][1]};
      else
        t.rotation[w] = {parents[w][0], prv, nxt};
    }
    // complete each old-ring vertex: fan of children between prev and next
    for (int i = 0; i < m; ++i) {
      int v = cur[i];
      std::vector<int> fan;
      fan.push_back(edge_child[(i - 1 + m) % m]);
      for (int x : kids[v]) fan.push_back(x);
      fan.push_back(edge_child[i]);
      t.rotation[v].insert(t.rotation[v].begin() + 2, fan.begin(), fan.end());
    }
    cur = ring;
    t.boundary = cur;
  }
  return t;
}

int FaceSet::face_of(int u, int v) const {
  auto it = face_of_dart.find({u, v});
  if (it == face_of_dart.end())
    throw StructuralError("dart (" + std::to_string(u) + "," +
                          std::to_string(v) + ") has no traced face");
  return it->second;
}

long FaceSet::dart_count() const {
  long n = 0;
  for (const auto& f : faces) n += static_cast<long>(f.size());
  return n;
}

FaceSet trace_faces(const std::vector<std::vector<int>>& rotation,
                    const std::vector<char>& present,
                    std::pair<int, int> outer_dart) {
  int cap = static_cast<int>(rotation.size());
  for (int v = 0; v < cap; ++v) {
    if (!present[v]) continue;
    auto sorted = rotation[v];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw StructuralError("face tracing requires a simple graph; vertex " +
                            std::to_string(v) + " has a repeated neighbor");
  }
  FaceSet fs;
  for (int u = 0; u < cap; ++u) {
    if (!present[u]) continue;
    for (int v : rotation[u]) {
      if (fs.face_of_dart.count({u, v})) continue;
      std::vector<int> cycle;
      int a = u, b = v;
      do {
        fs.face_of_dart[{a, b}] = static_cast<int>(fs.faces.size());
        cycle.push_back(a);
        const auto& rb = rotation[b];
        int deg = static_cast<int>(rb.size());
        int ia = -1;
        for (int i = 0; i < deg; ++i)
          if (rb[i] == a) ia = i;
        if (ia < 0)
          throw StructuralError("rotation lists are not symmetric at edge (" +
                                std::to_string(a) + "," + std::to_string(b) +
                                ")");
        int c = rb[(ia - 1 + deg) % deg];
        a = b;
        b = c;
      } while (!(a == u && b == v));
      fs.faces.push_back(std::move(cycle));
    }
  }
  if (outer_dart.first >= 0) fs.outer = fs.face_of(outer_dart.first, outer_dart.second);
  return fs;
}

FaceSet trace_faces(const PlanarTriangulation& tri) {
  std::pair<int, int> outer{-1, -1};
  if (tri.boundary.size() >= 2) outer = {tri.boundary[1], tri.boundary[0]};
  return trace_faces(tri.rotation, tri.present, outer);
}

int DualMap::crossing_of(int u, int v) const {
  auto it = primal_edge_id.find({std::min(u, v), std::max(u, v)});
  if (it == primal_edge_id.end())
    throw ValidationError("no primal edge (" + std::to_string(u) + "," +
                          std::to_string(v) + ")");
  return it->second;
}

DualMap dual(const PlanarTriangulation& tri) {
  DualMap d;
  if (tri.num_edges() == 0) {
    d.face_vertices = {{}};
    d.outer_face = 0;
    d.rotation = {{}};
    return d;
  }
  FaceSet fs = trace_faces(tri);
  if (fs.outer < 0)
    throw StructuralError("triangulation has no outer-face marker");
  d.face_vertices = fs.faces;
  d.outer_face = fs.outer;
  for (int u = 0; u < tri.capacity(); ++u) {
    if (!tri.present[u]) continue;
    for (int v : tri.rotation[u]) {
      if (u > v) continue;
      int id = static_cast<int>(d.primal_edge.size());
      d.primal_edge_id[{u, v}] = id;
      d.primal_edge.push_back({u, v});
      d.dual_edge.push_back({fs.face_of(u, v), fs.face_of(v, u)});
    }
  }
  d.rotation.resize(fs.faces.size());
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
    const auto& cyc = fs.faces[f];
    int s = static_cast<int>(cyc.size());
    for (int i = 0; i < s; ++i)
      d.rotation[f].push_back(fs.face_of(cyc[(i + 1) % s], cyc[i]));
  }
  return d;
}

std::vector<std::vector<int>> dual_rotation(
    const std::vector<std::vector<int>>& rotation,
    const std::vector<char>& present) {
  FaceSet fs = trace_faces(rotation, present);
  std::vector<std::vector<int>> out(fs.faces.size());
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
    const auto& cyc = fs.faces[f];
    int s = static_cast<int>(cyc.size());
    for (int i = 0; i < s; ++i)
      out[f].push_back(fs.face_of(cyc[(i + 1) % s], cyc[i]));
  }
  return out;
}

namespace {

std::vector<int> bfs_dist(const std::vector<std::vector<int>>& rotation,
                          const std::vector<char>& present, int src) {
  std::vector<int> dist(rotation.size(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : rotation[v]) {
      if (!present[w] || dist[w] >= 0) continue;
      dist[w] = dist[v] + 1;
      q.push(w);
    }
  }
  return dist;
}

}  // namespace

PlanarTriangulation ball(const PlanarTriangulation& tri, int center, int r,
                         RepairReport* report) {
  if (!tri.has_vertex(center))
    throw ValidationError("ball center " + std::to_string(center) +
                          " is not a vertex");
  if (r < 0) throw ValidationError("ball radius must be nonnegative");

  int cap = tri.capacity();
  std::vector<int> dist = bfs_dist(tri.rotation, tri.present, center);
  std::vector<char> in_s(cap, 0);
  for (int v = 0; v < cap; ++v)
    if (tri.present[v] && dist[v] >= 0 && dist[v] <= r) in_s[v] = 1;

  // fill holes: complement components that do not reach the outer boundary
  std::vector<char> outer_mark(cap, 0);
  for (int b : tri.boundary) outer_mark[b] = 1;
  std::vector<int> comp(cap, -1);
  int ncomp = 0;
  std::vector<std::vector<int>> comp_members;
  std::vector<char> comp_outside;
  for (int v = 0; v < cap; ++v) {
    if (!tri.present[v] || in_s[v] || comp[v] >= 0) continue;
    std::queue<int> q;
    q.push(v);
    comp[v] = ncomp;
    comp_members.emplace_back();
    comp_outside.push_back(0);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      comp_members[ncomp].push_back(x);
      if (outer_mark[x]) comp_outside[ncomp] = 1;
      for (int w : tri.rotation[x]) {
        if (!tri.present[w] || in_s[w] || comp[w] >= 0) continue;
        comp[w] = ncomp;
        q.push(w);
      }
    }
    ++ncomp;
  }
  for (int c = 0; c < ncomp; ++c) {
    if (comp_outside[c]) continue;
    for (int x : comp_members[c]) {
      in_s[x] = 1;
      if (report) report->added_vertices.push_back(x);
    }
  }
  if (report) std::sort(report->added_vertices.begin(), report->added_vertices.end());

  PlanarTriangulation out;
  out.degree = tri.degree;
  out.radius = r;
  out.root = center;
  out.rotation.resize(cap);
  out.present.assign(cap, 0);
  for (int v = 0; v < cap; ++v) {
    if (!in_s[v]) continue;
    out.present[v] = 1;
    for (int w : tri.rotation[v])
      if (in_s[w]) out.rotation[v].push_back(w);
  }
  out.layer = bfs_dist(out.rotation, out.present, center);

  if (out.num_edges() == 0) {
    out.boundary = {center};
    return out;
  }

  FaceSet fs_tri = trace_faces(tri);
  FaceSet fs_sub = trace_faces(out.rotation, out.present);
  int outer_sub = -1;
  for (int f = 0; f < static_cast<int>(fs_sub.faces.size()); ++f) {
    const auto& cyc = fs_sub.faces[f];
    int s = static_cast<int>(cyc.size());
    bool outside = false;
    for (int i = 0; i < s && !outside; ++i) {
      int tf = fs_tri.face_of(cyc[i], cyc[(i + 1) % s]);
      if (tf == fs_tri.outer) {
        outside = true;
        break;
      }
      for (int x : fs_tri.faces[tf])
        if (!in_s[x]) {
          outside = true;
          break;
        }
    }
    if (!outside) continue;
    if (outer_sub >= 0)
      throw StructuralError("extracted ball is not simply connected");
    outer_sub = f;
  }
  if (outer_sub < 0)
    throw StructuralError("extracted ball has no outer face");

  std::vector<int> bd(fs_sub.faces[outer_sub].rbegin(),
                      fs_sub.faces[outer_sub].rend());
  int arg_min = static_cast<int>(
      std::min_element(bd.begin(), bd.end()) - bd.begin());
  std::rotate(bd.begin(), bd.begin() + arg_min, bd.end());
  out.boundary = bd;

  long v_n = out.num_vertices(), e_n = out.num_edges();
  long f_int = static_cast<long>(fs_sub.faces.size()) - 1;
  if (v_n - e_n + f_int != 1)
    throw StructuralError("extracted ball fails the Euler audit: V-E+F_int = " +
                          std::to_string(v_n - e_n + f_int));
  return out;
}

std::vector<PlanarTriangulation> exhaustion(const PlanarTriangulation& tri,
                                            const std::vector<int>& radii) {
  for (size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 0)
      throw ValidationError("exhaustion radii must be nonnegative");
    if (i > 0 && radii[i] <= radii[i - 1])
      throw ValidationError("exhaustion radii must be strictly increasing");
    if (radii[i] > tri.radius)
      throw ValidationError("exhaustion radius " + std::to_string(radii[i]) +
                            " exceeds the construction radius " +
                            std::to_string(tri.radius));
  }
  std::vector<PlanarTriangulation> out;
  for (int r : radii) out.push_back(ball(tri, tri.root, r));
  return out;
}

int graph_distance(const PlanarTriangulation& tri, int u, int v) {
  if (!tri.has_vertex(u) || !tri.has_vertex(v))
    throw ValidationError("graph_distance: unknown vertex");
  return bfs_dist(tri.rotation, tri.present, u)[v];
}

std::string serialize(const PlanarTriangulation& tri) {
  std::ostringstream os;
  os << "hyperdimer-map 1\n";
  os << "degree " << tri.degree << "\n";
  os << "radius " << tri.radius << "\n";
  os << "root " << tri.root << "\n";
  os << "boundary";
  for (int b : tri.boundary) os << " " << b;
  os << "\n";
  os << "vertices " << tri.num_vertices() << "\n";
  for (int v = 0; v < tri.capacity(); ++v) {
    if (!tri.present[v]) continue;
    os << v << ":";
    for (int w : tri.rotation[v]) os << " " << w;
    os << "\n";
  }
  return os.str();
}

PlanarTriangulation parse_map(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto fail = [](const std::string& why) -> void {
    throw ValidationError("map parse error: " + why);
  };

  if (!std::getline(is, line) || line != "hyperdimer-map 1")
    fail("missing 'hyperdimer-map 1' header");

  PlanarTriangulation t;
  auto read_kv = [&](const std::string& key) {
    if (!std::getline(is, line)) fail("missing '" + key + "' line");
    std::istringstream ls(line);
    std::string k;
    long val;
    if (!(ls >> k >> val) || k != key) fail("bad '" + key + "' line");
    return static_cast<int>(val);
  };
  t.degree = read_kv("degree");
  t.radius = read_kv("radius");
  t.root = read_kv("root");

  if (!std::getline(is, line)) fail("missing 'boundary' line");
  {
    std::istringstream ls(line);
    std::string k;
    if (!(ls >> k) || k != "boundary") fail("bad 'boundary' line");
    int b;
    while (ls >> b) t.boundary.push_back(b);
  }
  int nv = read_kv("vertices");
  if (nv < 0) fail("negative vertex count");

  std::vector<std::pair<int, std::vector<int>>> rows;
  int max_id = -1;
  for (int i = 0; i < nv; ++i) {
    if (!std::getline(is, line)) fail("fewer vertex lines than declared");
    std::istringstream ls(line);
    int id;
    char colon;
    if (!(ls >> id >> colon) || colon != ':' || id < 0)
      fail("bad vertex line '" + line + "'");
    std::vector<int> nbrs;
    int w;
    while (ls >> w) {
      if (w < 0) fail("negative neighbor id");
      nbrs.push_back(w);
    }
    max_id = std::max({max_id, id});
    for (int x : nbrs) max_id = std::max(max_id, x);
    rows.emplace_back(id, std::move(nbrs));
  }
  t.rotation.resize(max_id + 1);
  t.present.assign(max_id + 1, 0);
  for (auto& [id, nbrs] : rows) {
    if (t.present[id]) fail("duplicate vertex line for id " + std::to_string(id));
    t.present[id] = 1;
    t.rotation[id] = std::move(nbrs);
  }
  for (int v = 0; v <= max_id; ++v) {
    if (!t.present[v]) continue;
    for (int w : t.rotation[v]) {
      if (w > max_id || !t.present[w])
        fail("vertex " + std::to_string(v) + " lists unknown neighbor " +
             std::to_string(w));
      const auto& rw = t.rotation[w];
      if (std::find(rw.begin(), rw.end(), v) == rw.end())
        fail("edge (" + std::to_string(v) + "," + std::to_string(w) +
             ") is not symmetric");
    }
  }
  if (!t.has_vertex(t.root)) fail("root is not a vertex");
  for (int b : t.boundary)
    if (!t.has_vertex(b)) fail("boundary lists unknown vertex");
  t.layer = bfs_dist(t.rotation, t.present, t.root);
  return t;
}

std::vector<int> canonical_code(const std::vector<std::vector<int>>& rotation,
                                const std::vector<char>& present,
                                std::pair<int, int> start_dart) {
  int cap = static_cast<int>(rotation.size());
  std::vector<int> newid(cap, -1), anchor(cap, -1);
  std::vector<int> order;
  auto [s, t] = start_dart;
  newid[s] = 0;
  anchor[s] = t;
  order.push_back(s);
  int next = 1;
  for (size_t h = 0; h < order.size(); ++h) {
    int v = order[h];
    const auto& rv = rotation[v];
    int deg = static_cast<int>(rv.size());
    int ia = -1;
    for (int i = 0; i < deg; ++i)
      if (rv[i] == anchor[v]) ia = i;
    for (int i = 0; i < deg; ++i) {
      int w = rv[(ia + i) % deg];
      if (newid[w] >= 0) continue;
      newid[w] = next++;
      anchor[w] = v;
      order.push_back(w);
    }
  }
  int n_present = 0;
  for (int v = 0; v < cap; ++v)
    if (present[v]) ++n_present;
  std::vector<int> code;
  code.push_back(n_present);
  for (int v : order) {
    code.push_back(-1);
    const auto& rv = rotation[v];
    int deg = static_cast<int>(rv.size());
    int ia = -1;
    for (int i = 0; i < deg; ++i)
      if (rv[i] == anchor[v]) ia = i;
    for (int i = 0; i < deg; ++i) code.push_back(newid[rv[(ia + i) % deg]]);
  }
  return code;
}

bool oriented_isomorphic(const std::vector<std::vector<int>>& rot_a,
                         const std::vector<char>& present_a,
                         const std::vector<std::vector<int>>& rot_b,
                         const std::vector<char>& present_b) {
  auto first_dart = [](const std::vector<std::vector<int>>& rot,
                       const std::vector<char>& present) -> std::pair<int, int> {
    for (int v = 0; v < static_cast<int>(rot.size()); ++v)
      if (present[v] && !rot[v].empty()) return {v, rot[v][0]};
    return {-1, -1};
  };
  auto da = first_dart(rot_a, present_a);
  auto count_present = [](const std::vector<char>& p) {
    int n = 0;
    for (char c : p) n += (c != 0);
    return n;
  };
  if (da.first < 0) {
    auto db = first_dart(rot_b, present_b);
    return db.first < 0 && count_present(present_a) == count_present(present_b);
  }
  std::vector<int> code_a = canonical_code(rot_a, present_a, da);
  for (int u = 0; u < static_cast<int>(rot_b.size()); ++u) {
    if (!present_b[u]) continue;
    for (int v : rot_b[u])
      if (canonical_code(rot_b, present_b, {u, v}) == code_a) return true;
  }
  return false;
}

}  // namespace hyperdimer
