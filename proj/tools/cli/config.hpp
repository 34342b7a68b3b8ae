#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "racetrack/model.hpp"

namespace racetrack::cli {

struct EquilibriumConfig {
  std::string density = "uniform";  // uniform | spike | cosine
  double amplitude = 0.01;          // cosine perturbation
};

struct TaukConfig {
  double tau_min = 1e-4;
  double tau_max = 2.0;
  std::size_t points = 200;
  std::vector<double> lemma_taus{0.01, 0.1, 1.0, 10.0};
};

struct DynamicsConfig {
  std::string initial = "cosine";  // uniform | spike | cosine
  double amplitude = 0.01;
  std::optional<double> dt;  // 0.01 / v when unset
  double t_end = 50.0;
  std::size_t snapshot_every = 10;
};

struct HicksConfig {
  std::size_t schemes = 200;
};

/// Everything one CLI invocation needs.
struct RunConfig {
  ModelParams params;
  std::size_t n = 512;
  double tol = 1e-10;
  int max_iter = 10'000;
  std::filesystem::path out = ".";
  std::uint64_t seed = 42;
  EquilibriumConfig equilibrium;
  TaukConfig tauk;
  DynamicsConfig dynamics;
  HicksConfig hicks;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

}  // namespace racetrack::cli
