#include "hyperdimer/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "hyperdimer/doubledimer.hpp"
#include "hyperdimer/errors.hpp"
#include "hyperdimer/height.hpp"
#include "hyperdimer/packing.hpp"
#include "hyperdimer/planar_map.hpp"
#include "hyperdimer/sampler.hpp"
#include "hyperdimer/stats.hpp"
#include "hyperdimer/svg.hpp"
#include "hyperdimer/temperley.hpp"

namespace hyperdimer {
namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

// Tracks every data file written under the output directory so the manifest
// can record a content hash per file.
struct Writer {
  std::string dir;
  json outputs = json::array();

  void put(const std::string& name, const std::string& content) {
    std::ofstream os(dir + "/" + name, std::ios::binary);
    if (!os) throw ValidationError("cannot open output file " + dir + "/" + name);
    os << content;
    if (!os) throw ValidationError("cannot write output file " + dir + "/" + name);
    outputs.push_back(json{{"file", name},
                           {"bytes", content.size()},
                           {"fnv1a64", hex64(fnv1a64(content))}});
  }
};

struct Pipeline {
  PlanarTriangulation tri;
  DualMap dm;
  RadiiSolution sol;
  Packing pack;
  TemperleyanGraph g;
  int b = -1;
  ExtendedGraph eg;
  std::vector<int> window;  // bounded faces inside the window radius
  int root_face = -1;
};

int face_near(const ExtendedGraph& eg, Cplx p) {
  int best = -1;
  double dist = 1e18;
  for (int f = 0; f < static_cast<int>(eg.faces.faces.size()); ++f) {
    if (f == eg.outer_face) continue;
    double d = std::abs(eg.face_mid[f] - p);
    if (d < dist) {
      dist = d;
      best = f;
    }
  }
  return best;
}

bool node_in_window(const Pipeline& pl, int v, int window_radius) {
  const TemperleyanGraph& g = pl.eg.g;
  switch (g.kind[v]) {
    case NodeKind::PrimalVertex:
      return pl.tri.layer[g.ref[v]] <= window_radius;
    case NodeKind::TriangleDual: {
      for (int u : pl.dm.face_vertices[g.ref[v]])
        if (pl.tri.layer[u] > window_radius) return false;
      return true;
    }
    case NodeKind::EdgeWhite: {
      auto e = pl.dm.primal_edge[g.ref[v]];
      return pl.tri.layer[e[0]] <= window_radius &&
             pl.tri.layer[e[1]] <= window_radius;
    }
    default:
      return false;
  }
}

Pipeline build_pipeline(const ExperimentConfig& cfg) {
  Pipeline pl;
  pl.tri = build_regular_ball(cfg.degree, effective_sampling_radius(cfg));
  pl.dm = dual(pl.tri);
  pl.sol = solve_radii(pl.tri, BoundaryCondition::Hyperbolic);
  pl.pack = layout(pl.tri, pl.sol);
  pl.g = superimpose(pl.tri, pl.dm, pl.pack);
  pl.b = choose_b_towards(pl.g, std::polar(1.0, cfg.target_angle));
  pl.eg = extend_with_boundary(pl.g, pl.b);
  for (int f = 0; f < static_cast<int>(pl.eg.faces.faces.size()); ++f) {
    if (f == pl.eg.outer_face) continue;
    bool in = true;
    for (int v : pl.eg.faces.faces[f])
      if (!node_in_window(pl, v, cfg.radius)) {
        in = false;
        break;
      }
    if (in) pl.window.push_back(f);
  }
  if (pl.window.empty())
    throw StructuralError("window contains no complete face");
  pl.root_face = face_near(pl.eg, Cplx(0.0, 0.0));
  return pl;
}

// Replica loop: stream s draws from Rng(seed, s); quotas split the sample
// budget as evenly as possible with the remainder on the low streams.
template <class Body>
void for_each_replica(const ExperimentConfig& cfg, Body&& body) {
  long long base = cfg.samples / cfg.streams;
  long long rem = cfg.samples % cfg.streams;
  for (int s = 0; s < cfg.streams; ++s) {
    long long quota = base + (s < rem ? 1 : 0);
    Rng rng(cfg.seed, static_cast<std::uint64_t>(s));
    for (long long i = 0; i < quota; ++i) body(rng);
  }
}

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::PrimalVertex: return "primal";
    case NodeKind::OuterApex: return "apex";
    case NodeKind::TriangleDual: return "triangle";
    case NodeKind::WedgeDual: return "wedge";
    case NodeKind::RingBlack: return "ring";
    case NodeKind::EdgeWhite: return "edge";
    case NodeKind::RimWhite: return "rim";
    case NodeKind::OmegaWhite: return "omega";
  }
  return "unknown";
}

void run_pack(const ExperimentConfig& cfg, Writer& wr, json& report) {
  PlanarTriangulation tri = build_regular_ball(cfg.degree, cfg.radius);
  double solver_tol = std::min(cfg.tol_angle, 1e-10);
  RadiiSolution sol = solve_radii(tri, BoundaryCondition::Hyperbolic, solver_tol);
  Packing pk = layout(tri, sol);
  double tang = tangency_residual(tri, pk);
  if (!(sol.max_residual <= cfg.tol_angle))
    throw NumericalError("angle residual " + num(sol.max_residual) +
                         " exceeds tolerance " + num(cfg.tol_angle));
  if (!(tang <= cfg.tol_tangency))
    throw NumericalError("tangency residual " + num(tang) +
                         " exceeds tolerance " + num(cfg.tol_tangency));
  wr.put("packing.csv", packing_to_csv(pk));
  wr.put("packing.svg", svg_packing(tri, pk));
  int vertices = static_cast<int>(tri.num_vertices());
  report["vertices"] = vertices;
  report["boundary-vertices"] = tri.boundary.size();
  report["iterations"] = sol.iterations;
  report["angle-residual"] = sol.max_residual;
  report["tangency-residual"] = tang;
}

void run_sample(const ExperimentConfig& cfg, Writer& wr, json& report) {
  Pipeline pl = build_pipeline(cfg);
  std::set<int> whites;
  for (int f : pl.window)
    for (int v : pl.eg.faces.faces[f])
      if (!pl.eg.g.is_black(v)) whites.insert(v);
  std::map<std::pair<int, int>, long long> counts;
  std::vector<int> first_cover;
  TreePair first_tp;
  for_each_replica(cfg, [&](Rng& rng) {
    std::vector<int> raw = sample_dimer(pl.tri, pl.g, pl.b, rng);
    std::vector<int> cov = with_forced(pl.eg, raw);
    if (first_cover.empty()) {
      first_cover = cov;
      first_tp = tree_pair_of_cover(pl.g, pl.b, raw,
                                    static_cast<int>(pl.tri.capacity()));
    }
    for (int w : whites) ++counts[{w, cov[w]}];
  });
  std::ostringstream csv;
  csv << "white,white_kind,black,black_kind,count,frequency\n";
  for (const auto& [key, c] : counts)
    csv << key.first << ',' << kind_name(pl.eg.g.kind[key.first]) << ','
        << key.second << ',' << kind_name(pl.eg.g.kind[key.second]) << ',' << c
        << ',' << num(static_cast<double>(c) / static_cast<double>(cfg.samples))
        << '\n';
  wr.put("frequencies.csv", csv.str());
  wr.put("cover.svg", svg_cover(pl.eg, first_cover));
  wr.put("trees.svg", svg_trees(pl.eg, first_tp));
  report["window-faces"] = pl.window.size();
  report["window-whites"] = whites.size();
  report["edges-observed"] = counts.size();
}

void run_heights(const ExperimentConfig& cfg, Writer& wr, json& report) {
  Pipeline pl = build_pipeline(cfg);
  ReferenceFlow flow = reference_flow(pl.eg);
  size_t nf = pl.eg.faces.faces.size();
  std::vector<double> sum(nf, 0.0), sq(nf, 0.0);
  std::vector<double> root_vals;
  HeightField last;
  for_each_replica(cfg, [&](Rng& rng) {
    std::vector<int> cov = with_forced(pl.eg, sample_dimer(pl.tri, pl.g, pl.b, rng));
    HeightField hf = height_from_flow(cov, flow, pl.eg);
    for (int f : pl.window) {
      sum[f] += hf.h[f];
      sq[f] += hf.h[f] * hf.h[f];
    }
    root_vals.push_back(hf.h[pl.root_face]);
    last = std::move(hf);
  });
  double n = static_cast<double>(cfg.samples);
  std::ostringstream csv;
  csv << "face,x,y,mean,variance\n";
  for (int f : pl.window) {
    double m = sum[f] / n;
    double var = cfg.samples > 1 ? (sq[f] - n * m * m) / (n - 1.0) : 0.0;
    csv << f << ',' << num(pl.eg.face_mid[f].real()) << ','
        << num(pl.eg.face_mid[f].imag()) << ',' << num(m) << ',' << num(var)
        << '\n';
  }
  wr.put("heights.csv", csv.str());
  wr.put("heatmap.svg", svg_height(pl.eg, last));
  report["window-faces"] = pl.window.size();
  report["root-face"] = pl.root_face;
  report["root-mean"] = mean(root_vals);
  report["root-variance"] = root_vals.size() > 1 ? sample_variance(root_vals) : 0.0;
}

void run_doubledimer(const ExperimentConfig& cfg, Writer& wr, json& report) {
  Pipeline pl = build_pipeline(cfg);
  FaceAdjacency fa = face_adjacency(pl.eg);
  int f0 = pl.root_face;
  if (fa.nbr[f0].empty()) throw StructuralError("root face has no neighbour");
  int f1 = fa.nbr[f0][0][0];
  std::vector<LoopSample> samples;
  LoopEnsemble shown;
  for_each_replica(cfg, [&](Rng& rng) {
    std::vector<int> m1 = with_forced(pl.eg, sample_dimer(pl.tri, pl.g, pl.b, rng));
    std::vector<int> m2 = with_forced(pl.eg, sample_dimer(pl.tri, pl.g, pl.b, rng));
    LoopEnsemble ens = symmetric_difference(m1, m2, pl.eg);
    SeparationReport sep = separating_loops(ens, pl.eg, fa, f0, f1);
    int delta = integer_delta(delta_height(m1, m2, pl.eg), f0, f1);
    samples.push_back(LoopSample{delta, sep.count});
    if (ens.size() > 0 || shown.size() == 0) shown = std::move(ens);
  });
  BernoulliReport br = verify_loop_bernoulli(samples);
  std::ostringstream csv;
  csv << "k,n,skipped,chi_square,p_value\n";
  for (const BernoulliStratum& st : br.strata)
    csv << st.k << ',' << st.n << ',' << (st.skipped ? 1 : 0) << ','
        << num(st.chi_square) << ',' << num(st.p_value) << '\n';
  wr.put("strata.csv", csv.str());
  wr.put("loops.svg", svg_loops(pl.tri, pl.pack, shown));
  report["faces"] = json::array({f0, f1});
  report["pairs"] = br.n;
  report["mean-loops"] = br.mean_loops;
  report["mean-loops-se"] = br.mean_loops_se;
  report["var-delta"] = br.var_delta;
  report["var-delta-se"] = br.var_se;
  report["sign-chi-square"] = br.sign_chi_square;
  report["sign-p-value"] = br.sign_p_value;
  report["sign-dof"] = br.sign_dof;
}

void run_tails(const ExperimentConfig& cfg, Writer& wr, json& report) {
  Pipeline pl = build_pipeline(cfg);
  ReferenceFlow flow = reference_flow(pl.eg);
  std::vector<double> vals;
  for_each_replica(cfg, [&](Rng& rng) {
    std::vector<int> cov = with_forced(pl.eg, sample_dimer(pl.tri, pl.g, pl.b, rng));
    vals.push_back(height_from_flow(cov, flow, pl.eg).h[pl.root_face]);
  });
  TailReport tr = tail_statistics(vals);
  wr.put("tails.csv", tail_to_csv(tr));
  report["root-face"] = pl.root_face;
  report["n"] = tr.n;
  report["moments"] = json::array({tr.moments[0], tr.moments[1], tr.moments[2], tr.moments[3]});
  report["moment-se"] = json::array({tr.moment_se[0], tr.moment_se[1], tr.moment_se[2], tr.moment_se[3]});
  report["fit-ok"] = tr.fit_ok;
  report["level-rate"] = tr.level_rate;
  report["level-curvature"] = tr.level_curvature;
  report["lr-stat"] = tr.lr_stat;
  report["exp-p-value"] = tr.exp_p_value;
  report["super-exponential"] = tr.super_exponential;
}

void run_clusters(const ExperimentConfig& cfg, Writer& wr, json& report) {
  Pipeline pl = build_pipeline(cfg);
  ReferenceFlow flow = reference_flow(pl.eg);
  const std::vector<double> ks{0.5, 1.0, 1.5, 2.0};
  std::vector<std::vector<double>> largest(ks.size());
  for_each_replica(cfg, [&](Rng& rng) {
    std::vector<int> cov = with_forced(pl.eg, sample_dimer(pl.tri, pl.g, pl.b, rng));
    HeightField hf = height_from_flow(cov, flow, pl.eg);
    for (size_t i = 0; i < ks.size(); ++i)
      largest[i].push_back(
          static_cast<double>(height_clusters(hf, pl.eg, ks[i]).largest));
  });
  long long bounded = static_cast<long long>(pl.eg.faces.faces.size()) - 1;
  std::ostringstream csv;
  csv << "k,samples,mean_largest,se_largest,max_largest,bounded_faces\n";
  json rows = json::array();
  for (size_t i = 0; i < ks.size(); ++i) {
    double m = mean(largest[i]);
    double se = largest[i].size() > 1 ? standard_error(largest[i]) : 0.0;
    double mx = *std::max_element(largest[i].begin(), largest[i].end());
    csv << num(ks[i]) << ',' << largest[i].size() << ',' << num(m) << ','
        << num(se) << ',' << num(mx) << ',' << bounded << '\n';
    rows.push_back(json{{"k", ks[i]},
                        {"mean-largest", m},
                        {"se-largest", se},
                        {"max-largest", mx}});
  }
  wr.put("clusters.csv", csv.str());
  report["bounded-faces"] = bounded;
  report["levels"] = rows;
}

void run_correlation(const ExperimentConfig& cfg, Writer& wr, json& report) {
  Pipeline pl = build_pipeline(cfg);
  FaceAdjacency fa = face_adjacency(pl.eg);
  int f0 = pl.root_face;
  if (fa.nbr[f0].empty()) throw StructuralError("root face has no neighbour");
  int fadj = fa.nbr[f0][0][0];
  int ffar = f0;
  double best = -1.0;
  for (int f : pl.window) {
    double d = std::abs(pl.eg.face_mid[f] - pl.eg.face_mid[f0]);
    if (d > best) {
      best = d;
      ffar = f;
    }
  }
  std::vector<std::vector<double>> rows;
  for_each_replica(cfg, [&](Rng& rng) {
    std::vector<int> m1 = with_forced(pl.eg, sample_dimer(pl.tri, pl.g, pl.b, rng));
    std::vector<int> m2 = with_forced(pl.eg, sample_dimer(pl.tri, pl.g, pl.b, rng));
    HeightField dh = delta_height(m1, m2, pl.eg);
    rows.push_back({dh.h[f0], dh.h[fadj], dh.h[ffar]});
  });
  struct Tuple {
    const char* label;
    std::vector<int> faces;
    std::vector<int> cols;
  };
  std::vector<Tuple> tuples{{"single", {f0}, {0}},
                            {"adjacent", {f0, fadj}, {0, 1}},
                            {"far", {f0, ffar}, {0, 2}}};
  std::ostringstream csv;
  csv << "label,faces,n,product_mean,se,min_separation,skipped\n";
  json jt = json::array();
  for (const Tuple& t : tuples) {
    std::vector<std::vector<double>> sub;
    sub.reserve(rows.size());
    for (const auto& r : rows) {
      std::vector<double> s;
      for (int c : t.cols) s.push_back(r[c]);
      sub.push_back(std::move(s));
    }
    CorrelationReport cr = correlation_decay(pl.eg, t.faces, 0.0, sub);
    std::string fl;
    for (size_t i = 0; i < t.faces.size(); ++i)
      fl += (i ? "|" : "") + std::to_string(t.faces[i]);
    csv << t.label << ',' << fl << ',' << cr.n << ',' << num(cr.product_mean)
        << ',' << num(cr.se) << ',' << num(cr.min_separation) << ','
        << (cr.skipped ? 1 : 0) << '\n';
    jt.push_back(json{{"label", t.label},
                      {"faces", t.faces},
                      {"product-mean", cr.product_mean},
                      {"se", cr.se},
                      {"min-separation", cr.min_separation},
                      {"skipped", cr.skipped}});
  }
  wr.put("correlation.csv", csv.str());
  report["tuples"] = jt;
}

void run_loops(const ExperimentConfig& cfg, Writer& wr, json& report) {
  Pipeline pl = build_pipeline(cfg);
  std::vector<double> diam;
  std::vector<int> len, count;
  LoopEnsemble shown;
  for_each_replica(cfg, [&](Rng& rng) {
    std::vector<int> m1 = with_forced(pl.eg, sample_dimer(pl.tri, pl.g, pl.b, rng));
    std::vector<int> m2 = with_forced(pl.eg, sample_dimer(pl.tri, pl.g, pl.b, rng));
    LoopEnsemble ens = symmetric_difference(m1, m2, pl.eg);
    LoopScaleReport one = loop_length_statistics({ens});
    diam.push_back(one.max_diameter[0]);
    len.push_back(one.max_length[0]);
    count.push_back(ens.size());
    if (ens.size() > 0 || shown.size() == 0) shown = std::move(ens);
  });
  std::ostringstream csv;
  csv << "ensemble,loops,max_diameter,max_length\n";
  for (size_t i = 0; i < diam.size(); ++i)
    csv << i << ',' << count[i] << ',' << num(diam[i]) << ',' << len[i] << '\n';
  wr.put("loops.csv", csv.str());
  wr.put("loops.svg", svg_loops(pl.tri, pl.pack, shown));
  std::vector<double> d = diam;
  report["ensembles"] = diam.size();
  report["median-max-diameter"] = median(d);
  report["mean-max-diameter"] = mean(diam);
  report["max-diameter"] = *std::max_element(diam.begin(), diam.end());
  report["max-length"] = *std::max_element(len.begin(), len.end());
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "pack",  "sample",   "heights",     "doubledimer",
      "tails", "clusters", "correlation", "loops"};
  return names;
}

int effective_sampling_radius(const ExperimentConfig& cfg) {
  return cfg.sampling_radius > 0 ? cfg.sampling_radius : cfg.radius + 1;
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> bad;
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), cfg.experiment) == names.end())
    bad.push_back("unknown experiment '" + cfg.experiment + "'");
  if (cfg.degree < 7)
    bad.push_back("degree must be at least 7, got " + std::to_string(cfg.degree));
  if (cfg.radius < 1)
    bad.push_back("radius must be at least 1, got " + std::to_string(cfg.radius));
  if (cfg.sampling_radius != 0 && cfg.sampling_radius <= cfg.radius)
    bad.push_back("sampling-radius must exceed radius, got " +
                  std::to_string(cfg.sampling_radius));
  if (cfg.samples < 1)
    bad.push_back("samples must be at least 1, got " + std::to_string(cfg.samples));
  if (cfg.streams < 1)
    bad.push_back("streams must be at least 1, got " + std::to_string(cfg.streams));
  if (cfg.out.empty()) bad.push_back("out must not be empty");
  if (!std::isfinite(cfg.target_angle))
    bad.push_back("target-angle must be finite");
  struct Tol {
    const char* key;
    double v;
  };
  for (Tol t : {Tol{"tol-angle", cfg.tol_angle}, Tol{"tol-tangency", cfg.tol_tangency},
                Tol{"tol-height", cfg.tol_height}, Tol{"tol-mobius", cfg.tol_mobius}})
    if (!(t.v > 0.0) || !std::isfinite(t.v))
      bad.push_back(std::string(t.key) + " must be positive");
  return bad;
}

namespace {

long long parse_ll(const std::string& key, const std::string& val) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(val, &pos);
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "' needs an integer, got '" + val + "'");
  }
  if (pos != val.size())
    throw ValidationError("config key '" + key + "' needs an integer, got '" + val + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& val) {
  size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(val, &pos);
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "' needs an unsigned integer, got '" +
                          val + "'");
  }
  if (pos != val.size())
    throw ValidationError("config key '" + key + "' needs an unsigned integer, got '" +
                          val + "'");
  return v;
}

double parse_dbl(const std::string& key, const std::string& val) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(val, &pos);
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "' needs a number, got '" + val + "'");
  }
  if (pos != val.size())
    throw ValidationError("config key '" + key + "' needs a number, got '" + val + "'");
  return v;
}

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig apply_config_text(ExperimentConfig base, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) +
                            " is not key=value: '" + t + "'");
    std::string key = trimmed(t.substr(0, eq));
    std::string val = trimmed(t.substr(eq + 1));
    if (key == "experiment") base.experiment = val;
    else if (key == "degree") base.degree = static_cast<int>(parse_ll(key, val));
    else if (key == "radius") base.radius = static_cast<int>(parse_ll(key, val));
    else if (key == "sampling-radius")
      base.sampling_radius = static_cast<int>(parse_ll(key, val));
    else if (key == "samples") base.samples = parse_ll(key, val);
    else if (key == "seed") base.seed = parse_u64(key, val);
    else if (key == "streams") base.streams = static_cast<int>(parse_ll(key, val));
    else if (key == "target-angle") base.target_angle = parse_dbl(key, val);
    else if (key == "out") base.out = val;
    else if (key == "tol-angle") base.tol_angle = parse_dbl(key, val);
    else if (key == "tol-tangency") base.tol_tangency = parse_dbl(key, val);
    else if (key == "tol-height") base.tol_height = parse_dbl(key, val);
    else if (key == "tol-mobius") base.tol_mobius = parse_dbl(key, val);
    else throw ValidationError("unknown config key '" + key + "'");
  }
  return base;
}

std::string config_text(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "degree=" << cfg.degree << '\n'
     << "experiment=" << cfg.experiment << '\n'
     << "out=" << cfg.out << '\n'
     << "radius=" << cfg.radius << '\n'
     << "samples=" << cfg.samples << '\n'
     << "sampling-radius=" << cfg.sampling_radius << '\n'
     << "seed=" << cfg.seed << '\n'
     << "streams=" << cfg.streams << '\n'
     << "target-angle=" << num(cfg.target_angle) << '\n'
     << "tol-angle=" << num(cfg.tol_angle) << '\n'
     << "tol-height=" << num(cfg.tol_height) << '\n'
     << "tol-mobius=" << num(cfg.tol_mobius) << '\n'
     << "tol-tangency=" << num(cfg.tol_tangency) << '\n';
  return os.str();
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string run_experiment(const ExperimentConfig& cfg) {
  std::vector<std::string> bad = validate_config(cfg);
  if (!bad.empty()) {
    std::string msg = "invalid configuration: ";
    for (size_t i = 0; i < bad.size(); ++i) msg += (i ? "; " : "") + bad[i];
    throw ValidationError(msg);
  }
  auto t0 = std::chrono::steady_clock::now();
  std::filesystem::create_directories(cfg.out);
  Writer wr{cfg.out};
  json report;
  if (cfg.experiment == "pack") run_pack(cfg, wr, report);
  else if (cfg.experiment == "sample") run_sample(cfg, wr, report);
  else if (cfg.experiment == "heights") run_heights(cfg, wr, report);
  else if (cfg.experiment == "doubledimer") run_doubledimer(cfg, wr, report);
  else if (cfg.experiment == "tails") run_tails(cfg, wr, report);
  else if (cfg.experiment == "clusters") run_clusters(cfg, wr, report);
  else if (cfg.experiment == "correlation") run_correlation(cfg, wr, report);
  else if (cfg.experiment == "loops") run_loops(cfg, wr, report);
  wr.put("report.json", report.dump(2) + "\n");
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json manifest;
  manifest["tool"] = "hyperdimer";
  manifest["version"] = "0.1.0";
  manifest["experiment"] = cfg.experiment;
  manifest["config"] = json{{"degree", cfg.degree},
                            {"experiment", cfg.experiment},
                            {"out", cfg.out},
                            {"radius", cfg.radius},
                            {"samples", cfg.samples},
                            {"sampling-radius", cfg.sampling_radius},
                            {"sampling-radius-effective",
                             cfg.experiment == "pack" ? cfg.radius
                                                      : effective_sampling_radius(cfg)},
                            {"seed", cfg.seed},
                            {"streams", cfg.streams},
                            {"target-angle", cfg.target_angle},
                            {"tol-angle", cfg.tol_angle},
                            {"tol-height", cfg.tol_height},
                            {"tol-mobius", cfg.tol_mobius},
                            {"tol-tangency", cfg.tol_tangency}};
  manifest["config-hash"] = hex64(fnv1a64(config_text(cfg)));
  manifest["rng"] = json{{"engine", "mt19937_64"},
                         {"derivation", "splitmix64 over (seed, stream counter)"},
                         {"seed", cfg.seed},
                         {"streams", cfg.streams}};
  manifest["outputs"] = wr.outputs;
  manifest["wall-time-seconds"] = elapsed;
  std::string path = cfg.out + "/manifest.json";
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open output file " + path);
  os << manifest.dump(2) << "\n";
  return path;
}

}  // namespace hyperdimer
