#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "hyperdimer/errors.hpp"
#include "hyperdimer/planar_map.hpp"

using namespace hyperdimer;

namespace {

// Independent size oracle: per-layer counts of one-parent (a) and two-parent
// (b) vertices satisfy a' = (d-5)a + (d-6)b, b' = a + b, starting from the
// root's ring of d one-parent vertices.
long ball_size_oracle(int d, int r) {
  if (r == 0) return 1;
  long a = d, b = 0, total = 1 + a + b;
  for (int k = 1; k < r; ++k) {
    long a2 = (d - 5) * a + (d - 6) * b;
    long b2 = a + b;
    a = a2;
    b = b2;
    total += a + b;
  }
  return total;
}

long ring_size_oracle(int d, int r) {
  return ball_size_oracle(d, r) - ball_size_oracle(d, r - 1);
}

void audit_rotation_system(const PlanarTriangulation& t) {
  for (int v : t.vertices()) {
    std::set<int> seen;
    for (int w : t.rotation[v]) {
      CHECK(t.has_vertex(w));
      CHECK(w != v);
      CHECK(seen.insert(w).second);
      CHECK(t.adjacent(w, v));
    }
  }
}

// V - E + F = 2 with the outer face, all bounded faces triangles.
void audit_faces(const PlanarTriangulation& t) {
  if (t.num_edges() == 0) return;
  FaceSet fs = trace_faces(t);
  REQUIRE(fs.outer >= 0);
  long total_darts = 0;
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
    total_darts += static_cast<long>(fs.faces[f].size());
    if (f != fs.outer) CHECK(fs.faces[f].size() == 3);
  }
  CHECK(total_darts == 2 * t.num_edges());
  CHECK(t.num_vertices() - t.num_edges() +
            static_cast<long>(fs.faces.size()) ==
        2);
}

std::vector<int> cyclic_canon(std::vector<int> c) {
  if (c.empty()) return c;
  auto mn = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), mn, c.end());
  return c;
}

void check_equal_maps(const PlanarTriangulation& a,
                      const PlanarTriangulation& b) {
  CHECK(a.degree == b.degree);
  CHECK(a.root == b.root);
  CHECK(a.vertices() == b.vertices());
  for (int v : a.vertices()) {
    CHECK(a.rotation[v] == b.rotation[v]);
    CHECK(a.layer[v] == b.layer[v]);
  }
  CHECK(a.boundary == b.boundary);
}

// Octahedron drawn with outer face (r3, r4, apex); the inner apex u sits at
// distance 2 from c while the square ring is at distance 1, so the radius-1
// ball around c encloses u as a hole.
PlanarTriangulation octahedron_map() {
  PlanarTriangulation t;
  t.degree = 4;
  t.radius = 2;
  t.root = 5;
  t.rotation = {{1, 2, 3, 4}, {2, 0, 4, 5}, {3, 0, 1, 5},
                {5, 4, 0, 2}, {3, 5, 1, 0}, {3, 2, 1, 4}};
  t.present.assign(6, 1);
  t.boundary = {3, 4, 5};
  t.layer = {2, 1, 1, 1, 1, 0};
  return t;
}

}  // namespace

TEST_CASE("ball sizes match the layer recurrence and frozen values") {
  const long frozen7[] = {1, 8, 29, 85, 232, 617, 1625};
  for (int r = 0; r <= 6; ++r) {
    CHECK(ball_size_oracle(7, r) == frozen7[r]);
    if (r <= 5) {
      PlanarTriangulation t = build_regular_ball(7, r);
      CHECK(t.num_vertices() == frozen7[r]);
    }
  }
  for (int r = 0; r <= 3; ++r) {
    CHECK(build_regular_ball(8, r).num_vertices() == ball_size_oracle(8, r));
    CHECK(build_regular_ball(9, r).num_vertices() == ball_size_oracle(9, r));
  }
  CHECK(build_regular_ball(8, 3).num_vertices() == 161);
}

TEST_CASE("construction validates its arguments") {
  CHECK_THROWS_AS(build_regular_ball(6, 2), ValidationError);
  CHECK_THROWS_WITH_AS(build_regular_ball(5, 1),
                       doctest::Contains("parabolic/amenable"),
                       ValidationError);
  CHECK_THROWS_AS(build_regular_ball(7, -1), ValidationError);
}

TEST_CASE("radius-0 and radius-1 balls") {
  PlanarTriangulation t0 = build_regular_ball(7, 0);
  CHECK(t0.num_vertices() == 1);
  CHECK(t0.num_edges() == 0);
  CHECK(t0.boundary == std::vector<int>{0});

  PlanarTriangulation t1 = build_regular_ball(7, 1);
  CHECK(t1.num_vertices() == 8);
  CHECK(t1.num_edges() == 14);
  audit_rotation_system(t1);
  audit_faces(t1);
  FaceSet fs = trace_faces(t1);
  CHECK(fs.faces.size() == 8);
  CHECK(fs.faces[fs.outer].size() == 7);
}

TEST_CASE("rotation system, faces, degrees and layers on larger balls") {
  for (int r : {2, 3, 4}) {
    PlanarTriangulation t = build_regular_ball(7, r);
    audit_rotation_system(t);
    audit_faces(t);

    std::set<int> bd(t.boundary.begin(), t.boundary.end());
    CHECK(static_cast<long>(t.boundary.size()) == ring_size_oracle(7, r));
    for (int v : t.vertices()) {
      CHECK(t.layer[v] == graph_distance(t, t.root, v));
      if (bd.count(v)) {
        CHECK(t.layer[v] == r);
        int deg = static_cast<int>(t.rotation[v].size());
        CHECK((deg == 3 || deg == 4));
      } else {
        CHECK(t.layer[v] < r);
        CHECK(t.rotation[v].size() == 7);
      }
    }

    // outer face is the boundary walked clockwise
    FaceSet fs = trace_faces(t);
    std::vector<int> rev(t.boundary.rbegin(), t.boundary.rend());
    CHECK(cyclic_canon(fs.faces[fs.outer]) == cyclic_canon(rev));
  }
}

TEST_CASE("boundary two-parent vertices are never adjacent along the ring") {
  PlanarTriangulation t = build_regular_ball(7, 3);
  int m = static_cast<int>(t.boundary.size());
  for (int i = 0; i < m; ++i) {
    int v = t.boundary[i], w = t.boundary[(i + 1) % m];
    bool vb = t.rotation[v].size() == 4, wb = t.rotation[w].size() == 4;
    CHECK_FALSE((vb && wb));
  }
}

TEST_CASE("growth rate and boundary share stay hyperbolic") {
  long prev = 1;
  for (int r = 1; r <= 5; ++r) {
    long n = ball_size_oracle(7, r);
    CHECK(static_cast<double>(n) / prev >= 1.3);
    CHECK(static_cast<double>(ring_size_oracle(7, r)) / n >= 0.4);
    prev = n;
  }
}

TEST_CASE("dual of the radius-1 ball") {
  PlanarTriangulation t = build_regular_ball(7, 1);
  DualMap d = dual(t);
  CHECK(d.face_vertices.size() == 8);
  CHECK(d.edge_count() == 14);
  CHECK(d.outer_face >= 0);
  CHECK(d.rotation[d.outer_face].size() == 7);
  // crossing bijection: every primal edge crosses exactly one dual edge,
  // and the two dual endpoints are the two faces flanking the primal edge
  FaceSet fs = trace_faces(t);
  for (int e = 0; e < d.edge_count(); ++e) {
    auto [u, v] = d.primal_edge[e];
    CHECK(d.crossing_of(u, v) == e);
    CHECK(d.crossing_of(v, u) == e);
    std::set<int> got{d.dual_edge[e][0], d.dual_edge[e][1]};
    std::set<int> want{fs.face_of(u, v), fs.face_of(v, u)};
    CHECK(got == want);
  }
  // dual degree sum equals twice the edge count
  long dsum = 0;
  for (const auto& rr : d.rotation) dsum += static_cast<long>(rr.size());
  CHECK(dsum == 2 * d.edge_count());
}

TEST_CASE("dual of a single vertex") {
  DualMap d = dual(build_regular_ball(7, 0));
  CHECK(d.face_vertices.size() == 1);
  CHECK(d.edge_count() == 0);
}

TEST_CASE("dual of the dual is the primal map") {
  PlanarTriangulation t = build_regular_ball(7, 2);
  auto r1 = dual_rotation(t.rotation, t.present);
  std::vector<char> p1(r1.size(), 1);
  auto r2 = dual_rotation(r1, p1);
  std::vector<char> p2(r2.size(), 1);
  CHECK(oriented_isomorphic(r2, p2, t.rotation, t.present));
  // sanity: the dual itself is not isomorphic to the primal
  CHECK_FALSE(oriented_isomorphic(r1, p1, t.rotation, t.present));
}

TEST_CASE("canonical code recognizes relabeled maps") {
  PlanarTriangulation t = build_regular_ball(7, 2);
  int cap = t.capacity();
  // relabel v -> cap-1-v
  std::vector<std::vector<int>> rot(cap);
  std::vector<char> pres(cap, 1);
  for (int v = 0; v < cap; ++v)
    for (int w : t.rotation[v]) rot[cap - 1 - v].push_back(cap - 1 - w);
  CHECK(oriented_isomorphic(rot, pres, t.rotation, t.present));
  CHECK_FALSE(oriented_isomorphic(build_regular_ball(7, 1).rotation,
                                  build_regular_ball(7, 1).present,
                                  t.rotation, t.present));
}

TEST_CASE("sub-balls of the construction equal direct construction") {
  PlanarTriangulation big = build_regular_ball(7, 5);
  for (int r : {0, 1, 2, 3, 4}) {
    RepairReport rep;
    PlanarTriangulation sub = ball(big, big.root, r, &rep);
    CHECK(rep.added_vertices.empty());
    PlanarTriangulation direct = build_regular_ball(7, r);
    check_equal_maps(sub, direct);
  }
}

TEST_CASE("off-center balls are simply connected triangulations") {
  PlanarTriangulation big = build_regular_ball(7, 4);
  // centers in layers 1..3
  std::vector<int> centers;
  for (int v : big.vertices())
    if (big.layer[v] >= 1 && big.layer[v] <= 3 && centers.size() < 9 &&
        v % 11 == 3)
      centers.push_back(v);
  REQUIRE(!centers.empty());
  for (int c : centers) {
    for (int r : {1, 2, 3}) {
      RepairReport rep;
      PlanarTriangulation sub = ball(big, c, r, &rep);
      CHECK(sub.root == c);
      audit_rotation_system(sub);
      audit_faces(sub);
      for (int v : sub.vertices()) {
        if (rep.added_vertices.empty())
          CHECK(sub.layer[v] <= r);
        CHECK(sub.layer[v] == graph_distance(sub, c, v));
      }
    }
  }
}

TEST_CASE("hole filling absorbs enclosed vertices") {
  PlanarTriangulation oct = octahedron_map();
  audit_rotation_system(oct);
  audit_faces(oct);
  CHECK(graph_distance(oct, 5, 0) == 2);

  RepairReport rep;
  PlanarTriangulation b = ball(oct, 5, 1, &rep);
  CHECK(rep.added_vertices == std::vector<int>{0});
  CHECK(b.num_vertices() == 6);  // u absorbed, whole octahedron kept
  CHECK(b.num_edges() == 12);
  audit_faces(b);

  RepairReport rep2;
  PlanarTriangulation b2 = ball(oct, 5, 2, &rep2);
  CHECK(rep2.added_vertices.empty());
  CHECK(b2.num_vertices() == 6);
}

TEST_CASE("small ball around a wheel petal") {
  PlanarTriangulation t = build_regular_ball(7, 1);
  PlanarTriangulation b = ball(t, 1, 1);
  CHECK(b.num_vertices() == 4);
  CHECK(b.num_edges() == 5);
  CHECK(b.boundary == std::vector<int>{0, 7, 1, 2});
  audit_faces(b);

  PlanarTriangulation b0 = ball(t, 3, 0);
  CHECK(b0.num_vertices() == 1);
  CHECK(b0.boundary == std::vector<int>{3});
  CHECK(b0.root == 3);
}

TEST_CASE("exhaustion returns nested balls and validates radii") {
  PlanarTriangulation t = build_regular_ball(7, 4);
  auto seq = exhaustion(t, {1, 2, 4});
  REQUIRE(seq.size() == 3);
  for (size_t i = 0; i + 1 < seq.size(); ++i) {
    auto small = seq[i].vertices();
    auto bigv = seq[i + 1].vertices();
    CHECK(std::includes(bigv.begin(), bigv.end(), small.begin(), small.end()));
  }
  CHECK(seq[2].num_vertices() == t.num_vertices());
  CHECK_THROWS_AS(exhaustion(t, {2, 2}), ValidationError);
  CHECK_THROWS_AS(exhaustion(t, {3, 1}), ValidationError);
  CHECK_THROWS_AS(exhaustion(t, {1, 5}), ValidationError);
  CHECK_THROWS_AS(exhaustion(t, {-1, 2}), ValidationError);
}

TEST_CASE("graph distance") {
  PlanarTriangulation t = build_regular_ball(7, 3);
  CHECK(graph_distance(t, t.root, t.root) == 0);
  CHECK(graph_distance(t, t.boundary[0], t.boundary[0]) == 0);
  CHECK(graph_distance(t, t.root, t.boundary[0]) == 3);
  CHECK_THROWS_AS(graph_distance(t, 0, 100000), ValidationError);
}

TEST_CASE("serialization round trip") {
  for (int r : {0, 1, 3}) {
    PlanarTriangulation t = build_regular_ball(7, r);
    std::string s = serialize(t);
    PlanarTriangulation u = parse_map(s);
    CHECK(u.degree == t.degree);
    CHECK(u.radius == t.radius);
    check_equal_maps(u, t);
    CHECK(serialize(u) == s);
  }
  // sub-ball with sparse ids survives the round trip too
  PlanarTriangulation big = build_regular_ball(7, 3);
  PlanarTriangulation sub = ball(big, 12, 2);
  PlanarTriangulation again = parse_map(serialize(sub));
  CHECK(again.vertices() == sub.vertices());
  for (int v : sub.vertices()) CHECK(again.rotation[v] == sub.rotation[v]);
  CHECK(again.boundary == sub.boundary);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_map(""), ValidationError);
  CHECK_THROWS_AS(parse_map("not-a-map\n"), ValidationError);
  std::string good = serialize(build_regular_ball(7, 1));
  CHECK_NOTHROW(parse_map(good));
  // drop one neighbor to break symmetry
  std::string bad = good;
  bad.replace(bad.find("1: 0 7 2"), 8, "1: 0 7ch");
  CHECK_THROWS_AS(parse_map(bad), ValidationError);
  CHECK_THROWS_AS(
      parse_map("hyperdimer-map 1\ndegree 7\nradius 0\nroot 0\nboundary 0\n"
                "vertices 2\n0:\n0:\n"),
      ValidationError);
}
