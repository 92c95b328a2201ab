#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scatter/io.hpp"

namespace scatter {

/// Invalid or inconsistent configuration; the message names the field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MetadataMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct InvarianceSpec {
  double k = 1.0;
  bool single_wave = false;
  std::vector<Vec2> shifts;
  std::vector<int> lattice_n;
  std::vector<double> lattice_a;
  std::vector<double> probes;  // multiples of d1 - d2
};

struct OracleSpec {
  double R = 1.0;
  Vec2 center = Vec2::Zero();
  std::vector<double> ks;
  int n_f = 64;
  int max_n_q = 256;
};

struct ExperimentConfig {
  Curve obstacle = BenchmarkCurve::apple();
  BoundaryCondition bc = Dirichlet{};
  std::vector<Incidence> pairs;
  std::vector<double> frequencies = default_frequencies();
  int n_f = 128;
  double delta = 0.0;
  std::uint64_t seed = 0;
  IterateState initial = initial_circle(0.5, Vec2::Zero(), 25);
  InversionConfig inversion;
  std::filesystem::path output = ".";
  InvarianceSpec invariance;
  OracleSpec oracle;
  std::vector<std::string> warnings;
};

/// Parses a config document; relative file references resolve against `base`.
ExperimentConfig parse_config(const io::json& j, const std::filesystem::path& base = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Incidences given as degree lists; angles become unit directions.
std::vector<Incidence> parse_pairs(const io::json& j);

/// True when two incidences have non-parallel bisector normals.
bool locates_obstacle(const std::vector<Incidence>& pairs);

PhaselessDataset cmd_synthesize(const ExperimentConfig& cfg, const std::filesystem::path& out);

InversionResult cmd_invert(const ExperimentConfig& cfg, const std::filesystem::path& dataset,
                           const std::filesystem::path& out_dir);

/// Rows (ell_x, ell_y, discrepancy).
std::vector<std::vector<double>> cmd_verify_invariance(const ExperimentConfig& cfg,
                                                       const std::filesystem::path& out);

/// Rows (k, n_q, sup error).
std::vector<std::vector<double>> cmd_oracle_check(const ExperimentConfig& cfg,
                                                  const std::filesystem::path& out);

/// Throws MetadataMismatchError when the dataset disagrees with the config.
void check_metadata(const ExperimentConfig& cfg, const PhaselessDataset& ds);

}  // namespace scatter
