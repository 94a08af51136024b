#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hyperdimer {

// Flat run configuration; keys in config files and command-line flags share
// the kebab-case spelling from `config_keys`.
struct ExperimentConfig {
  std::string experiment = "pack";
  int degree = 7;
  int radius = 3;            // window radius
  int sampling_radius = 0;   // 0 = window radius + 1
  long long samples = 1000;
  std::uint64_t seed = 42;
  int streams = 4;
  double target_angle = 0.0;  // boundary target x = exp(i * angle)
  std::string out = "out";
  double tol_angle = 1e-9;
  double tol_tangency = 1e-8;
  double tol_height = 1e-9;
  double tol_mobius = 1e-6;
};

const std::vector<std::string>& experiment_names();

int effective_sampling_radius(const ExperimentConfig& cfg);

// Every violated invariant, one message each; empty means the config is valid.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

// Apply "key=value" lines (blank lines and '#' comments allowed) on top of
// `base`.  Unknown keys and malformed values raise ValidationError.
ExperimentConfig apply_config_text(ExperimentConfig base,
                                   const std::string& text);

// Canonical one-line-per-key dump; hashing it yields the config hash.
std::string config_text(const ExperimentConfig& cfg);

std::uint64_t fnv1a64(const std::string& data);

// Run one experiment, write its outputs plus manifest.json under cfg.out,
// and return the manifest path.  Invalid configs raise ValidationError with
// all failures joined; numerical guards raise NumericalError.
std::string run_experiment(const ExperimentConfig& cfg);

}  // namespace hyperdimer
