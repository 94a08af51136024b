#include "hyperdimer/doubledimer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

#include "hyperdimer/errors.hpp"

namespace hyperdimer {

namespace {

bool adjacent_in(const TemperleyanGraph& g, int v, int u) {
  for (int w : g.adj[v])
    if (w == u) return true;
  return false;
}

void validate_cover_pair(const std::vector<int>& m1, const std::vector<int>& m2,
                         const ExtendedGraph& eg) {
  const TemperleyanGraph& g = eg.g;
  if (static_cast<int>(m1.size()) != g.size() ||
      static_cast<int>(m2.size()) != g.size())
    throw ValidationError("covers live on different graphs");
  for (int v = 0; v < g.size(); ++v) {
    if ((m1[v] >= 0) != (m2[v] >= 0))
      throw ValidationError("covers live on different graphs");
    for (const std::vector<int>* m : {&m1, &m2}) {
      int p = (*m)[v];
      if (p < 0) continue;
      if (p >= g.size() || (*m)[p] != v || g.is_black(p) == g.is_black(v) ||
          !adjacent_in(g, v, p))
        throw ValidationError("cover is not a perfect matching of the graph");
    }
  }
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

double shoelace(const std::vector<Cplx>& poly) {
  double s = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Cplx& a = poly[i];
    const Cplx& b = poly[(i + 1) % poly.size()];
    s += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * s;
}

double segment_distance(const Cplx& a, const Cplx& b, const Cplx& p) {
  Cplx d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

// Winding number with a guard against the midpoint sitting on the cycle.
int loop_winding(const std::vector<Cplx>& poly, const Cplx& p, int loop_id) {
  auto graze = [loop_id]() {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "loop %d grazes a face midpoint", loop_id);
    return NumericalError(buf);
  };
  for (size_t i = 0; i < poly.size(); ++i)
    if (segment_distance(poly[i], poly[(i + 1) % poly.size()], p) < 1e-9)
      throw graze();
  double wa = winding_angle(poly, p);
  double turns = wa / (2.0 * kPi);
  if (std::abs(turns - std::round(turns)) > 1e-6) throw graze();
  return static_cast<int>(std::round(turns));
}

void check_face(const ExtendedGraph& eg, int f, const char* what) {
  if (f < 0 || f >= static_cast<int>(eg.faces.faces.size()))
    throw ValidationError(std::string(what) + " face out of range");
  if (f == eg.outer_face)
    throw ValidationError(std::string(what) + " face is the outer face");
}

// Integrates per-edge increments over bounded faces from the base face and
// audits path independence, exactly as the height integrator does.
template <typename Inc>
std::vector<double> integrate_faces(const ExtendedGraph& eg, Inc inc) {
  const int nf = static_cast<int>(eg.faces.faces.size());
  std::vector<std::vector<std::pair<int, double>>> steps(nf);
  for (int f = 0; f < nf; ++f) {
    if (f == eg.outer_face) continue;
    const std::vector<int>& cyc = eg.faces.faces[f];
    for (size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      int other = eg.faces.face_of(b, a);
      if (other == eg.outer_face) continue;
      int w = eg.g.is_black(a) ? b : a;
      int blk = eg.g.is_black(a) ? a : b;
      // Crossing w->blk with the face on the left adds the increment.
      double d = inc(w, blk);
      steps[f].push_back({other, eg.faces.face_of(w, blk) == f ? d : -d});
    }
  }
  std::vector<double> h(nf, 0.0);
  std::vector<char> seen(nf, 0);
  std::queue<int> bfs;
  bfs.push(eg.base_face);
  seen[eg.base_face] = 1;
  while (!bfs.empty()) {
    int f = bfs.front();
    bfs.pop();
    for (const auto& [other, d] : steps[f]) {
      if (!seen[other]) {
        seen[other] = 1;
        h[other] = h[f] - d;
        bfs.push(other);
      }
    }
  }
  for (int f = 0; f < nf; ++f) {
    if (f == eg.outer_face) continue;
    if (!seen[f]) throw StructuralError("bounded face not reached from base");
    for (const auto& [other, d] : steps[f])
      if (std::abs(h[f] - h[other] - d) > 1e-9)
        throw NumericalError("delta height is not path independent");
  }
  return h;
}

std::vector<double> binomial_probs(int k) {
  std::vector<double> p(k + 1);
  p[0] = std::pow(0.5, k);
  for (int j = 1; j <= k; ++j) p[j] = p[j - 1] * (k - j + 1) / j;
  return p;
}

// MLE of q_l proportional to exp(a l + b l^2) on 0..lmax by moment matching;
// fix_b freezes the curvature at zero for the plain exponential law.
struct LevelFit {
  bool ok = false;
  double a = 0.0, b = 0.0;
  double loglik = 0.0;
};

LevelFit fit_level_family(const std::vector<long long>& counts, bool fix_b) {
  const int lmax = static_cast<int>(counts.size()) - 1;
  double n = 0.0, s1 = 0.0, s2 = 0.0;
  for (int l = 0; l <= lmax; ++l) {
    n += counts[l];
    s1 += counts[l] * static_cast<double>(l);
    s2 += counts[l] * static_cast<double>(l) * l;
  }
  s1 /= n;
  s2 /= n;
  LevelFit fit;
  double a = 0.0, b = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    double mx = -std::numeric_limits<double>::infinity();
    for (int l = 0; l <= lmax; ++l) mx = std::max(mx, a * l + b * l * l);
    double z = 0.0, e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0;
    for (int l = 0; l <= lmax; ++l) {
      double q = std::exp(a * l + b * l * l - mx);
      z += q;
      e1 += q * l;
      e2 += q * l * l;
      e3 += q * l * l * static_cast<double>(l);
      e4 += q * l * l * static_cast<double>(l) * l;
    }
    e1 /= z;
    e2 /= z;
    e3 /= z;
    e4 /= z;
    double g1 = e1 - s1, g2 = e2 - s2;
    double v11 = e2 - e1 * e1;            // Cov(l, l)
    double v12 = e3 - e1 * e2;            // Cov(l, l^2)
    double v22 = e4 - e2 * e2;            // Cov(l^2, l^2)
    if (fix_b) {
      if (v11 < 1e-13) return fit;
      double step = g1 / v11;
      a -= std::clamp(step, -4.0, 4.0);
      if (std::abs(g1) < 1e-11) break;
    } else {
      double det = v11 * v22 - v12 * v12;
      if (det < 1e-13) return fit;
      double da = (v22 * g1 - v12 * g2) / det;
      double db = (v11 * g2 - v12 * g1) / det;
      a -= std::clamp(da, -4.0, 4.0);
      b -= std::clamp(db, -4.0, 4.0);
      if (std::abs(g1) < 1e-11 && std::abs(g2) < 1e-11) break;
    }
    if (iter == 199) return fit;
  }
  double mx = -std::numeric_limits<double>::infinity();
  for (int l = 0; l <= lmax; ++l) mx = std::max(mx, a * l + b * l * l);
  double z = 0.0;
  for (int l = 0; l <= lmax; ++l) z += std::exp(a * l + b * l * l - mx);
  double logz = std::log(z) + mx;
  fit.ok = true;
  fit.a = a;
  fit.b = b;
  for (int l = 0; l <= lmax; ++l)
    fit.loglik += counts[l] * (a * l + b * l * l - logz);
  return fit;
}

std::vector<Cplx> convex_hull(std::vector<Cplx> pts) {
  std::sort(pts.begin(), pts.end(), [](const Cplx& p, const Cplx& q) {
    return p.real() != q.real() ? p.real() < q.real() : p.imag() < q.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](const Cplx& o, const Cplx& a, const Cplx& b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<Cplx> hull(2 * pts.size());
  size_t h = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (h >= 2 && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  for (size_t i = pts.size() - 1, lower = h + 1; i-- > 0;) {
    while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  hull.resize(h - 1);
  return hull;
}

}  // namespace

LoopEnsemble symmetric_difference(const std::vector<int>& m1,
                                  const std::vector<int>& m2,
                                  const ExtendedGraph& eg) {
  validate_cover_pair(m1, m2, eg);
  const TemperleyanGraph& g = eg.g;
  LoopEnsemble ens;
  ens.loop_of_white.assign(g.size(), -1);
  ens.loop_blacks.assign(g.size(), {-1, -1});
  for (int w = 0; w < g.size(); ++w) {
    if (g.is_black(w) || m1[w] < 0) continue;
    if (m1[w] == m2[w]) {
      ens.doubled.push_back({w, m1[w]});
      continue;
    }
    if (ens.loop_of_white[w] >= 0) continue;
    const int id = ens.size();
    std::vector<int> cyc;
    int cur = w;
    do {
      ens.loop_of_white[cur] = id;
      ens.loop_blacks[cur] = {m1[cur], m2[cur]};
      cyc.push_back(cur);
      cyc.push_back(m1[cur]);
      cur = m2[m1[cur]];
    } while (cur != w);
    std::vector<Cplx> poly(cyc.size());
    for (size_t i = 0; i < cyc.size(); ++i) poly[i] = g.pos[cyc[i]];
    ens.area.push_back(shoelace(poly));
    ens.polygon.push_back(std::move(poly));
    ens.loops.push_back(std::move(cyc));
  }
  return ens;
}

FaceAdjacency face_adjacency(const ExtendedGraph& eg) {
  FaceAdjacency fa;
  fa.nbr.resize(eg.faces.faces.size());
  for (int f = 0; f < static_cast<int>(eg.faces.faces.size()); ++f) {
    if (f == eg.outer_face) continue;
    const std::vector<int>& cyc = eg.faces.faces[f];
    for (size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      int other = eg.faces.face_of(b, a);
      if (other == eg.outer_face) continue;
      int w = eg.g.is_black(a) ? b : a;
      int blk = eg.g.is_black(a) ? a : b;
      fa.nbr[f].push_back({other, w, blk});
    }
  }
  return fa;
}

SeparationReport separating_loops(const LoopEnsemble& ens,
                                  const ExtendedGraph& eg,
                                  const FaceAdjacency& fa, int f, int f_prime) {
  check_face(eg, f, "first");
  check_face(eg, f_prime, "second");
  if (f == f_prime) throw ValidationError("faces must be distinct");
  if (ens.loop_of_white.size() != static_cast<size_t>(eg.g.size()) ||
      fa.nbr.size() != eg.faces.faces.size())
    throw ValidationError("ensemble or adjacency built on another graph");

  std::vector<char> by_inclusion(ens.size());
  for (int l = 0; l < ens.size(); ++l) {
    int wf = loop_winding(ens.polygon[l], eg.face_mid[f], l);
    int wp = loop_winding(ens.polygon[l], eg.face_mid[f_prime], l);
    by_inclusion[l] = static_cast<char>((wf % 2 != 0) != (wp % 2 != 0));
  }

  std::vector<int> parent(eg.faces.faces.size(), -1);
  std::queue<int> bfs;
  bfs.push(f);
  parent[f] = f;
  while (!bfs.empty() && parent[f_prime] < 0) {
    int cur = bfs.front();
    bfs.pop();
    for (const auto& [other, w, blk] : fa.nbr[cur])
      if (parent[other] < 0) {
        parent[other] = cur;
        bfs.push(other);
      }
  }
  if (parent[f_prime] < 0)
    throw StructuralError("bounded faces are not connected");
  std::vector<int> crossings(ens.size(), 0);
  for (int cur = f_prime; cur != f; cur = parent[cur]) {
    const std::array<int, 3>* step = nullptr;
    for (const auto& e : fa.nbr[parent[cur]])
      if (e[0] == cur) {
        step = &e;
        break;
      }
    if (step == nullptr) throw StructuralError("face path lost its edge");
    int l = ens.loop_of_white[(*step)[1]];
    if (l >= 0 && (ens.loop_blacks[(*step)[1]][0] == (*step)[2] ||
                   ens.loop_blacks[(*step)[1]][1] == (*step)[2]))
      ++crossings[l];
  }

  SeparationReport rep;
  for (int l = 0; l < ens.size(); ++l) {
    if (by_inclusion[l] != static_cast<char>(crossings[l] % 2 != 0))
      throw StructuralError("inclusion and crossing parity disagree");
    if (by_inclusion[l]) {
      ++rep.count;
      rep.loop_ids.push_back(l);
    }
  }
  return rep;
}

HeightField delta_height(const HeightField& h1, const HeightField& h2) {
  if (h1.h.size() != h2.h.size() || h1.base_face != h2.base_face)
    throw ValidationError("height fields use different graphs or base faces");
  if (std::abs(h1.x - h2.x) > 1e-12)
    throw ValidationError("height fields use different targets");
  HeightField out = h1;
  for (size_t i = 0; i < out.h.size(); ++i) out.h[i] -= h2.h[i];
  return out;
}

HeightField delta_height(const std::vector<int>& m1, const std::vector<int>& m2,
                         const ExtendedGraph& eg) {
  validate_cover_pair(m1, m2, eg);
  HeightField out;
  out.h = integrate_faces(eg, [&](int w, int blk) {
    return (m1[w] == blk ? 1.0 : 0.0) - (m2[w] == blk ? 1.0 : 0.0);
  });
  out.base_face = eg.base_face;
  out.x = Cplx(0.0, 0.0);
  return out;
}

int integer_delta(const HeightField& dh, int f, int f_prime) {
  if (f < 0 || f_prime < 0 || f >= static_cast<int>(dh.h.size()) ||
      f_prime >= static_cast<int>(dh.h.size()))
    throw ValidationError("face out of range");
  double v = dh.h[f] - dh.h[f_prime];
  double r = std::round(v);
  if (std::abs(v - r) > 1e-6)
    throw NumericalError("delta height difference is not an integer");
  return static_cast<int>(r);
}

BernoulliReport verify_loop_bernoulli(const std::vector<LoopSample>& samples,
                                      long long min_stratum) {
  BernoulliReport rep;
  rep.n = static_cast<long long>(samples.size());
  if (samples.empty()) throw ValidationError("no samples");
  int kmax = 0;
  for (const LoopSample& s : samples) {
    if (s.loops < 0 || std::abs(s.delta) > s.loops ||
        (s.delta - s.loops) % 2 != 0)
      throw ValidationError("delta incompatible with its loop count");
    kmax = std::max(kmax, s.loops);
  }
  std::vector<std::vector<long long>> counts(kmax + 1);
  for (int k = 0; k <= kmax; ++k) counts[k].assign(k + 1, 0);
  std::vector<double> deltas, loops;
  deltas.reserve(samples.size());
  loops.reserve(samples.size());
  for (const LoopSample& s : samples) {
    ++counts[s.loops][(s.delta + s.loops) / 2];
    deltas.push_back(s.delta);
    loops.push_back(s.loops);
  }
  for (int k = 0; k <= kmax; ++k) {
    long long nk = 0;
    for (long long c : counts[k]) nk += c;
    if (nk == 0) continue;
    BernoulliStratum st;
    st.k = k;
    st.n = nk;
    st.counts = counts[k];
    if (nk < min_stratum) {
      st.skipped = true;
    } else if (k > 0) {
      st.chi_square = chi_square_stat(counts[k], binomial_probs(k));
      st.p_value = chi_square_pvalue(st.chi_square, k);
    }
    rep.strata.push_back(std::move(st));
  }

  rep.var_delta = sample_variance(deltas);
  double m = mean(deltas);
  double m2 = 0.0, m4 = 0.0;
  for (double d : deltas) {
    double c = d - m;
    m2 += c * c;
    m4 += c * c * c * c;
  }
  m2 /= deltas.size();
  m4 /= deltas.size();
  rep.var_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / deltas.size());
  rep.mean_loops = mean(loops);
  rep.mean_loops_se = standard_error(loops);

  for (int k = 1; k <= kmax; ++k)
    for (int j = k + 1 - (k + 1) / 2; j <= k; ++j) {
      if (2 * j - k == 0) continue;
      long long plus = counts[k][j], minus = counts[k][k - j];
      if (plus + minus < 10) continue;
      double d = static_cast<double>(plus - minus);
      rep.sign_chi_square += d * d / (plus + minus);
      ++rep.sign_dof;
    }
  rep.sign_p_value =
      rep.sign_dof > 0 ? chi_square_pvalue(rep.sign_chi_square, rep.sign_dof)
                       : 1.0;
  return rep;
}

ClusterReport height_clusters(const HeightField& field, const ExtendedGraph& eg,
                              double k) {
  if (field.h.size() != eg.faces.faces.size())
    throw ValidationError("height field built on another graph");
  const int nf = static_cast<int>(eg.faces.faces.size());
  ClusterReport rep;
  rep.k = k;
  std::vector<char> in(nf, 0);
  for (int f = 0; f < nf; ++f)
    in[f] = static_cast<char>(f != eg.outer_face && std::abs(field.h[f]) > k);
  FaceAdjacency fa = face_adjacency(eg);
  Dsu dsu(nf);
  for (int f = 0; f < nf; ++f) {
    if (!in[f]) continue;
    for (const auto& [other, w, blk] : fa.nbr[f])
      if (in[other]) dsu.unite(f, other);
  }
  std::map<int, std::vector<int>> comps;
  for (int f = 0; f < nf; ++f)
    if (in[f]) comps[dsu.find(f)].push_back(f);
  std::map<long long, long long> hist;
  for (auto& [root, faces] : comps) {
    long long sz = static_cast<long long>(faces.size());
    rep.largest = std::max(rep.largest, sz);
    ++hist[sz];
    rep.components.push_back(std::move(faces));
  }
  for (const auto& [sz, cnt] : hist) rep.histogram.push_back({sz, cnt});
  return rep;
}

TailReport tail_statistics(const std::vector<double>& values) {
  if (values.empty()) throw ValidationError("no samples");
  TailReport rep;
  rep.n = static_cast<long long>(values.size());
  std::vector<double> mag(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw ValidationError("non-finite sample");
    mag[i] = std::abs(values[i]);
  }
  std::sort(mag.begin(), mag.end());
  for (int j = 1; j <= 4; ++j) {
    std::vector<double> pw(mag.size());
    for (size_t i = 0; i < mag.size(); ++i) pw[i] = std::pow(mag[i], j);
    rep.moments[j - 1] = mean(pw);
    rep.moment_se[j - 1] = standard_error(pw);
  }
  const int klast = static_cast<int>(std::floor(mag.back())) + 1;
  for (int k = -1; k <= klast; ++k) {
    TailRow row;
    row.k = k;
    row.n = rep.n;
    row.exceed = static_cast<long long>(
        mag.end() - std::upper_bound(mag.begin(), mag.end(), k));
    row.p_hat = static_cast<double>(row.exceed) / rep.n;
    row.ci = wilson_interval(row.exceed, rep.n);
    row.censored = row.exceed == 0;
    if (row.p_hat > 0.0 && row.p_hat < 1.0) {
      row.has_loglog = true;
      row.loglog = std::log(-std::log(row.p_hat));
    }
    rep.rows.push_back(row);
  }

  std::vector<long long> levels(static_cast<int>(std::floor(mag.back())) + 1, 0);
  for (double v : mag) ++levels[static_cast<int>(std::floor(v))];
  int support = 0;
  for (long long c : levels) support += c > 0;
  if (levels.size() >= 3 && support >= 3) {
    LevelFit exp_fit = fit_level_family(levels, true);
    LevelFit quad_fit = fit_level_family(levels, false);
    if (exp_fit.ok && quad_fit.ok) {
      rep.fit_ok = true;
      rep.level_rate = exp_fit.a;
      rep.level_curvature = quad_fit.b;
      rep.lr_stat = std::max(0.0, 2.0 * (quad_fit.loglik - exp_fit.loglik));
      rep.exp_p_value = chi_square_pvalue(rep.lr_stat, 1);
      rep.super_exponential = quad_fit.b < 0.0 && rep.exp_p_value < 0.01;
    }
  }
  return rep;
}

TailReport tail_statistics(const std::vector<HeightField>& fields,
                           const std::vector<int>& faces,
                           const ExtendedGraph& eg) {
  if (fields.empty() || faces.empty())
    throw ValidationError("no samples or faces");
  for (int f : faces) check_face(eg, f, "tail");
  std::vector<double> values;
  values.reserve(fields.size() * faces.size());
  for (const HeightField& field : fields) {
    if (field.h.size() != eg.faces.faces.size())
      throw ValidationError("height field built on another graph");
    for (int f : faces) values.push_back(field.h[f]);
  }
  return tail_statistics(values);
}

CorrelationReport correlation_decay(const ExtendedGraph& eg,
                                    const std::vector<int>& faces, double eta,
                                    const std::vector<std::vector<double>>& samples) {
  if (faces.empty()) throw ValidationError("empty face tuple");
  for (int f : faces) check_face(eg, f, "tuple");
  for (size_t i = 0; i < faces.size(); ++i)
    for (size_t j = i + 1; j < faces.size(); ++j)
      if (faces[i] == faces[j])
        throw ValidationError("tuple faces must be distinct");
  CorrelationReport rep;
  rep.faces = faces;
  rep.min_separation = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < faces.size(); ++i)
    for (size_t j = i + 1; j < faces.size(); ++j)
      rep.min_separation =
          std::min(rep.min_separation,
                   std::abs(eg.face_mid[faces[i]] - eg.face_mid[faces[j]]));
  if (faces.size() == 1) rep.min_separation = 0.0;
  if (faces.size() > 1 && rep.min_separation < eta) {
    rep.skipped = true;
    return rep;
  }
  std::vector<double> products;
  products.reserve(samples.size());
  for (const std::vector<double>& row : samples) {
    if (row.size() != faces.size())
      throw ValidationError("sample row does not match the tuple");
    double p = 1.0;
    for (double v : row) p *= v;
    products.push_back(p);
  }
  if (products.empty()) throw ValidationError("no samples");
  rep.n = static_cast<long long>(products.size());
  rep.product_mean = mean(products);
  rep.se = standard_error(products);
  return rep;
}

LoopScaleReport loop_length_statistics(const std::vector<LoopEnsemble>& ensembles) {
  LoopScaleReport rep;
  for (const LoopEnsemble& ens : ensembles) {
    double diam = 0.0;
    int len = 0;
    for (int l = 0; l < ens.size(); ++l) {
      len = std::max(len, static_cast<int>(ens.loops[l].size()));
      std::vector<Cplx> hull = convex_hull(ens.polygon[l]);
      for (size_t i = 0; i < hull.size(); ++i)
        for (size_t j = i + 1; j < hull.size(); ++j)
          diam = std::max(diam, std::abs(hull[i] - hull[j]));
    }
    rep.max_diameter.push_back(diam);
    rep.max_length.push_back(len);
  }
  if (!rep.max_diameter.empty()) {
    rep.median_max_diameter = median(rep.max_diameter);
    rep.mean_max_diameter = mean(rep.max_diameter);
  }
  return rep;
}

std::string tail_to_csv(const TailReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "k,n,exceed,p_hat,ci_lo,ci_hi,censored,loglog\n";
  for (const TailRow& row : report.rows) {
    out << row.k << ',' << row.n << ',' << row.exceed << ',' << row.p_hat
        << ',' << row.ci.lo << ',' << row.ci.hi << ','
        << (row.censored ? 1 : 0) << ',';
    if (row.has_loglog) out << row.loglog;
    out << '\n';
  }
  return out.str();
}

}  // namespace hyperdimer
