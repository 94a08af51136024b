#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hyperdimer/errors.hpp"
#include "hyperdimer/experiment.hpp"

using namespace hyperdimer;

int main(int argc, char** argv) {
  CLI::App app{"hyperdimer: dimer and double-dimer experiments on hyperbolic "
               "circle packings"};
  std::string experiment, config_path;
  ExperimentConfig flags;
  app.add_option("experiment", experiment,
                 "one of: pack sample heights doubledimer tails clusters "
                 "correlation loops")
      ->required();
  app.add_option("--config", config_path, "flat key=value configuration file");
  app.add_option("--degree", flags.degree, "vertex degree of the lattice");
  app.add_option("--radius", flags.radius, "window radius (graph distance)");
  app.add_option("--sampling-radius", flags.sampling_radius,
                 "sampling ball radius; default radius+1");
  app.add_option("--samples", flags.samples, "number of samples");
  app.add_option("--seed", flags.seed, "master seed");
  app.add_option("--streams", flags.streams, "independent replica streams");
  app.add_option("--target-angle", flags.target_angle,
                 "boundary target angle in radians");
  app.add_option("--out", flags.out, "output directory");
  app.add_option("--tol-angle", flags.tol_angle, "packing angle-sum tolerance");
  app.add_option("--tol-tangency", flags.tol_tangency, "tangency tolerance");
  app.add_option("--tol-height", flags.tol_height, "height audit tolerance");
  app.add_option("--tol-mobius", flags.tol_mobius, "Mobius identity tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream is(config_path, std::ios::binary);
      if (!is) throw ValidationError("cannot read config file " + config_path);
      std::ostringstream text;
      text << is.rdbuf();
      cfg = apply_config_text(cfg, text.str());
    }
    // Command-line flags override config-file values.
    cfg.experiment = experiment;
    if (app.count("--degree")) cfg.degree = flags.degree;
    if (app.count("--radius")) cfg.radius = flags.radius;
    if (app.count("--sampling-radius")) cfg.sampling_radius = flags.sampling_radius;
    if (app.count("--samples")) cfg.samples = flags.samples;
    if (app.count("--seed")) cfg.seed = flags.seed;
    if (app.count("--streams")) cfg.streams = flags.streams;
    if (app.count("--target-angle")) cfg.target_angle = flags.target_angle;
    if (app.count("--out")) cfg.out = flags.out;
    if (app.count("--tol-angle")) cfg.tol_angle = flags.tol_angle;
    if (app.count("--tol-tangency")) cfg.tol_tangency = flags.tol_tangency;
    if (app.count("--tol-height")) cfg.tol_height = flags.tol_height;
    if (app.count("--tol-mobius")) cfg.tol_mobius = flags.tol_mobius;
    std::string manifest = run_experiment(cfg);
    std::cout << manifest << "\n";
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return 3;
  }
}
