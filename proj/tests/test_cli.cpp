#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "hyperdimer/doubledimer.hpp"
#include "hyperdimer/errors.hpp"
#include "hyperdimer/experiment.hpp"
#include "hyperdimer/height.hpp"
#include "hyperdimer/packing.hpp"
#include "hyperdimer/planar_map.hpp"
#include "hyperdimer/sampler.hpp"
#include "hyperdimer/svg.hpp"
#include "hyperdimer/temperley.hpp"

using namespace hyperdimer;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "hyperdimer_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

json manifest_of(const fs::path& dir) {
  return json::parse(slurp(dir / "manifest.json"));
}

long long count_substr(const std::string& hay, const std::string& needle) {
  long long n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

int run_binary(const std::string& args) {
  std::string cmd =
      std::string(HYPERDIMER_BIN) + " " + args + " >/dev/null 2>/dev/null";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

struct Setup {
  PlanarTriangulation tri;
  DualMap dm;
  Packing p;
  TemperleyanGraph g;
  int b = -1;
  ExtendedGraph eg;
};

Setup make_setup(int degree, int radius) {
  Setup s;
  s.tri = build_regular_ball(degree, radius);
  s.dm = dual(s.tri);
  s.p = layout(s.tri, solve_radii(s.tri, BoundaryCondition::Hyperbolic));
  s.g = superimpose(s.tri, s.dm, s.p);
  s.b = choose_b_towards(s.g, Cplx(1.0, 0.0));
  s.eg = extend_with_boundary(s.g, s.b);
  return s;
}

std::string fmt_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TEST_CASE("config validation reports every failure at once") {
  ExperimentConfig ok;
  CHECK(validate_config(ok).empty());
  for (const std::string& name : experiment_names()) {
    ExperimentConfig c;
    c.experiment = name;
    CHECK(validate_config(c).empty());
  }

  ExperimentConfig bad;
  bad.experiment = "bogus";
  bad.degree = 3;
  bad.radius = 0;
  bad.sampling_radius = -2;
  bad.samples = 0;
  bad.streams = 0;
  bad.out = "";
  bad.tol_angle = -1.0;
  bad.target_angle = std::nan("");
  std::vector<std::string> msgs = validate_config(bad);
  CHECK(msgs.size() >= 8);
  std::string all;
  for (const std::string& m : msgs) all += m + ";";
  CHECK(all.find("unknown experiment") != std::string::npos);
  CHECK(all.find("degree") != std::string::npos);
  CHECK(all.find("radius") != std::string::npos);
  CHECK(all.find("sampling-radius") != std::string::npos);
  CHECK(all.find("samples") != std::string::npos);
  CHECK(all.find("streams") != std::string::npos);
  CHECK(all.find("out") != std::string::npos);
  CHECK(all.find("tol-angle") != std::string::npos);
  CHECK(all.find("target-angle") != std::string::npos);

  // sampling radius must exceed the window radius when set explicitly
  ExperimentConfig tight;
  tight.radius = 3;
  tight.sampling_radius = 3;
  std::vector<std::string> m2 = validate_config(tight);
  REQUIRE(m2.size() == 1);
  CHECK(m2[0].find("sampling-radius") != std::string::npos);
  tight.sampling_radius = 4;
  CHECK(validate_config(tight).empty());

  // run_experiment refuses invalid configs with the full list in the message
  CHECK_THROWS_WITH_AS(run_experiment(bad), doctest::Contains("unknown experiment"),
                       ValidationError);
  ExperimentConfig unknown;
  unknown.experiment = "percolate";
  CHECK_THROWS_AS(run_experiment(unknown), ValidationError);
}

TEST_CASE("config files parse, comment lines skip, flags stay overridable") {
  ExperimentConfig base;
  std::string text =
      "# comment\n"
      "\n"
      "experiment = tails\n"
      "degree=9\n"
      "radius = 2\n"
      "sampling-radius = 4\n"
      "samples=123\n"
      "seed = 77\n"
      "streams=2\n"
      "target-angle = 0.5\n"
      "out = somewhere\n"
      "tol-angle=1e-7\n"
      "tol-tangency = 1e-6\n"
      "tol-height=1e-8\n"
      "tol-mobius = 1e-5\n";
  ExperimentConfig c = apply_config_text(base, text);
  CHECK(c.experiment == "tails");
  CHECK(c.degree == 9);
  CHECK(c.radius == 2);
  CHECK(c.sampling_radius == 4);
  CHECK(c.samples == 123);
  CHECK(c.seed == 77);
  CHECK(c.streams == 2);
  CHECK(c.target_angle == doctest::Approx(0.5));
  CHECK(c.out == "somewhere");
  CHECK(c.tol_angle == doctest::Approx(1e-7));
  CHECK(c.tol_tangency == doctest::Approx(1e-6));
  CHECK(c.tol_height == doctest::Approx(1e-8));
  CHECK(c.tol_mobius == doctest::Approx(1e-5));

  CHECK_THROWS_WITH_AS(apply_config_text(base, "zzz=1\n"),
                       doctest::Contains("unknown config key"), ValidationError);
  CHECK_THROWS_WITH_AS(apply_config_text(base, "degree=seven\n"),
                       doctest::Contains("integer"), ValidationError);
  CHECK_THROWS_WITH_AS(apply_config_text(base, "tol-angle=big\n"),
                       doctest::Contains("number"), ValidationError);
  CHECK_THROWS_WITH_AS(apply_config_text(base, "no equals sign\n"),
                       doctest::Contains("key=value"), ValidationError);

  // canonical dump covers every key and round-trips through the parser
  std::string dump = config_text(c);
  CHECK(count_substr(dump, "=") == 13);
  ExperimentConfig back = apply_config_text(ExperimentConfig{}, dump);
  CHECK(config_text(back) == dump);

  CHECK(effective_sampling_radius(base) == base.radius + 1);
  CHECK(effective_sampling_radius(c) == 4);
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(fnv1a64("ab") != fnv1a64("ba"));
}

TEST_CASE("run_experiment writes hashed outputs deterministically") {
  ExperimentConfig cfg;
  cfg.experiment = "pack";
  cfg.degree = 7;
  cfg.radius = 3;
  cfg.out = fresh_dir("pack_a").string();
  std::string manifest_path = run_experiment(cfg);
  CHECK(fs::exists(manifest_path));
  json man = manifest_of(cfg.out);
  CHECK(man["experiment"] == "pack");
  CHECK(man["config"]["degree"] == 7);

  // every listed output exists and its recorded hash matches its bytes
  REQUIRE(man["outputs"].size() >= 3);
  bool saw_csv = false, saw_svg = false;
  for (const auto& o : man["outputs"]) {
    fs::path p = fs::path(cfg.out) / o["file"].get<std::string>();
    REQUIRE(fs::exists(p));
    std::string bytes = slurp(p);
    CHECK(o["bytes"].get<size_t>() == bytes.size());
    char hex[32];
    std::snprintf(hex, sizeof(hex), "0x%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    CHECK(o["fnv1a64"].get<std::string>() == hex);
    std::string name = o["file"].get<std::string>();
    if (name.size() > 4 && name.substr(name.size() - 4) == ".csv") saw_csv = true;
    if (name.size() > 4 && name.substr(name.size() - 4) == ".svg") saw_svg = true;
  }
  CHECK(saw_csv);
  CHECK(saw_svg);

  ExperimentConfig cfg2 = cfg;
  cfg2.out = fresh_dir("pack_b").string();
  run_experiment(cfg2);
  json man2 = manifest_of(cfg2.out);
  CHECK(man["outputs"] == man2["outputs"]);

  // the config hash is the FNV of the canonical dump
  std::uint64_t h = fnv1a64(config_text(cfg));
  char hex[32];
  std::snprintf(hex, sizeof(hex), "0x%016llx", static_cast<unsigned long long>(h));
  CHECK(man["config-hash"].get<std::string>() == hex);
}

TEST_CASE("every experiment writes its contract files") {
  struct Row {
    const char* name;
    std::vector<const char*> files;
  };
  const std::vector<Row> rows{
      {"sample", {"frequencies.csv", "cover.svg", "trees.svg"}},
      {"heights", {"heights.csv", "heatmap.svg"}},
      {"doubledimer", {"strata.csv", "loops.svg"}},
      {"tails", {"tails.csv"}},
      {"clusters", {"clusters.csv"}},
      {"correlation", {"correlation.csv"}},
      {"loops", {"loops.csv", "loops.svg"}},
  };
  for (const Row& row : rows) {
    CAPTURE(row.name);
    ExperimentConfig cfg;
    cfg.experiment = row.name;
    cfg.degree = 7;
    cfg.radius = 1;
    cfg.samples = 25;
    cfg.streams = 2;
    cfg.seed = 11;
    cfg.out = fresh_dir(std::string("exp_") + row.name).string();
    run_experiment(cfg);
    for (const char* f : row.files) {
      CAPTURE(f);
      CHECK(fs::exists(fs::path(cfg.out) / f));
    }
    CHECK(fs::exists(fs::path(cfg.out) / "report.json"));
    CHECK(fs::exists(fs::path(cfg.out) / "manifest.json"));
    json man = manifest_of(cfg.out);
    CHECK(man["config"]["sampling-radius-effective"] == 2);
    // report.json parses and is hashed in the manifest
    json rep = json::parse(slurp(fs::path(cfg.out) / "report.json"));
    CHECK(!rep.empty());
    bool listed = false;
    for (const auto& o : man["outputs"])
      if (o["file"] == "report.json") listed = true;
    CHECK(listed);
  }
}

TEST_CASE("svg scenes stay deterministic and carry the contract elements") {
  Setup one = make_setup(7, 1);
  std::string pk = svg_packing(one.tri, one.p);
  CHECK(count_substr(pk, "<circle") == 8);
  CHECK(pk == svg_packing(one.tri, one.p));
  CHECK(pk.find("<svg") != std::string::npos);
  CHECK(pk.rfind("</svg>\n") == pk.size() - 7);

  // an empty ensemble leaves the bare packing
  LoopEnsemble empty;
  std::string lp = svg_loops(one.tri, one.p, empty);
  CHECK(count_substr(lp, "class=\"loop\"") == 0);
  CHECK(count_substr(lp, "<circle") == 8);

  // a non-trivial ensemble adds one closed path per loop
  Setup two = make_setup(7, 2);
  Rng rng(404);
  LoopEnsemble ens;
  for (int t = 0; t < 200 && ens.size() == 0; ++t) {
    std::vector<int> m1 = with_forced(two.eg, sample_dimer(two.tri, two.g, two.b, rng));
    std::vector<int> m2 = with_forced(two.eg, sample_dimer(two.tri, two.g, two.b, rng));
    ens = symmetric_difference(m1, m2, two.eg);
  }
  REQUIRE(ens.size() > 0);
  std::string lp2 = svg_loops(two.tri, two.p, ens);
  CHECK(count_substr(lp2, "class=\"loop\"") == ens.size());
  CHECK(count_substr(lp2, " Z\"") == ens.size());

  // cover scene: one segment per matched white
  Rng rng1(7);
  std::vector<int> cov = with_forced(one.eg, sample_dimer(one.tri, one.g, one.b, rng1));
  std::string cv = svg_cover(one.eg, cov);
  long long matched_whites = 0;
  for (int v = 0; v < one.eg.g.size(); ++v)
    if (!one.eg.g.is_black(v) && cov[v] >= 0) ++matched_whites;
  CHECK(count_substr(cv, "<line") == matched_whites);
  std::vector<int> short_cov(3, -1);
  CHECK_THROWS_AS(svg_cover(one.eg, short_cov), ValidationError);

  // tree scene draws both trees in their two colours
  std::vector<int> raw = sample_dimer(one.tri, one.g, one.b, rng1);
  TreePair tp = tree_pair_of_cover(one.g, one.b, raw,
                                   static_cast<int>(one.tri.capacity()));
  std::string tr = svg_trees(one.eg, tp);
  CHECK(count_substr(tr, "#7b3294") > 0);
  CHECK(count_substr(tr, "#008837") > 0);

  // heatmap embeds the observed range and one polygon per bounded face
  ReferenceFlow flow = reference_flow(one.eg);
  HeightField hf = height_from_flow(cov, flow, one.eg);
  std::string hm = svg_height(one.eg, hf);
  double lo = 1e18, hi = -1e18;
  int bounded = 0;
  for (int f = 0; f < static_cast<int>(hf.h.size()); ++f) {
    if (f == one.eg.outer_face) continue;
    lo = std::min(lo, hf.h[f]);
    hi = std::max(hi, hf.h[f]);
    ++bounded;
  }
  CHECK(count_substr(hm, "<polygon") == bounded);
  CHECK(hm.find("data-min=\"" + fmt_exact(lo) + "\"") != std::string::npos);
  CHECK(hm.find("data-max=\"" + fmt_exact(hi) + "\"") != std::string::npos);
  HeightField wrong;
  wrong.h.assign(3, 0.0);
  CHECK_THROWS_AS(svg_height(one.eg, wrong), ValidationError);
}

TEST_CASE("the binary honours the exit code contract end to end") {
  fs::path base = fresh_dir("bin");

  // success path: pack on the one-flower ball
  std::string out0 = (base / "pack").string();
  CHECK(run_binary("pack --degree 7 --radius 1 --out " + out0) == 0);
  json man = manifest_of(out0);
  for (const auto& o : man["outputs"]) {
    fs::path p = fs::path(out0) / o["file"].get<std::string>();
    REQUIRE(fs::exists(p));
    char hex[32];
    std::snprintf(hex, sizeof(hex), "0x%016llx",
                  static_cast<unsigned long long>(fnv1a64(slurp(p))));
    CHECK(o["fnv1a64"].get<std::string>() == hex);
  }
  CHECK(count_substr(slurp(fs::path(out0) / "packing.svg"), "<circle") == 8);

  // validation failures exit with 2
  CHECK(run_binary("percolate --out " + (base / "x1").string()) == 2);
  CHECK(run_binary("pack --degree 3 --radius 0 --out " + (base / "x2").string()) == 2);
  CHECK(run_binary("pack --no-such-flag 1 --out " + (base / "x3").string()) == 2);
  CHECK(run_binary("") == 2);  // missing required experiment
  CHECK(run_binary("pack --config " + (base / "missing.cfg").string()) == 2);

  // numerical failures exit with 3
  CHECK(run_binary("pack --degree 7 --radius 1 --tol-angle 1e-30 --out " +
                   (base / "x4").string()) == 3);

  // config file values load and explicit flags override them
  fs::path cfgfile = base / "run.cfg";
  {
    std::ofstream os(cfgfile);
    os << "degree=7\nradius=1\nsamples=10\nseed=7\nstreams=2\n";
  }
  std::string out1 = (base / "cfgrun").string();
  CHECK(run_binary("heights --config " + cfgfile.string() + " --samples 20 --out " +
                   out1) == 0);
  json man1 = manifest_of(out1);
  CHECK(man1["config"]["radius"] == 1);
  CHECK(man1["config"]["samples"] == 20);
  CHECK(man1["config"]["seed"] == 7);

  // two identical sampling runs agree byte for byte on every data file
  std::string outa = (base / "det_a").string(), outb = (base / "det_b").string();
  std::string args = "sample --degree 7 --radius 1 --samples 15 --seed 99 --streams 3";
  CHECK(run_binary(args + " --out " + outa) == 0);
  CHECK(run_binary(args + " --out " + outb) == 0);
  CHECK(manifest_of(outa)["outputs"] == manifest_of(outb)["outputs"]);

  // a different seed changes the sampled frequencies
  std::string outc = (base / "det_c").string();
  CHECK(run_binary("sample --degree 7 --radius 1 --samples 15 --seed 100 --streams 3 --out " +
                   outc) == 0);
  CHECK(slurp(fs::path(outa) / "frequencies.csv") !=
        slurp(fs::path(outc) / "frequencies.csv"));
}
