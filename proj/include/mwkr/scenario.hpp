#pragma once

// Scenario files: a YAML document naming the grid, weight, measure, exponent,
// function family, task and task parameters. See docs/scenario.md.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mwkr/compactness.hpp"
#include "mwkr/cubes.hpp"
#include "mwkr/grid.hpp"
#include "mwkr/space.hpp"
#include "mwkr/weights.hpp"

namespace mwkr {

struct GridSpec {
  int n = 1;
  double half_width = 1.0;
  int points = 64;
};

struct WeightSpec {
  std::string type = "identity";  ///< identity | constant | power | file
  int dim = 1;
  std::vector<double> alpha;
  std::vector<std::vector<double>> matrix;
  std::string rotation = "none";  ///< none | planar
  double rotation_rate = 1.0;     ///< theta(x) = rate * x_1
  std::string path;
};

struct MeasureSpec {
  std::string type = "lebesgue";  ///< lebesgue | quadratic | file
  double coefficient = 0.5;       ///< u(x) = 1 + coefficient |x|^2
  std::string path;
};

struct ExponentSpec {
  std::string type = "constant";  ///< constant | step | file
  double p = 2.0;
  double left = 2.0;   ///< step: p on x_1 < 0
  double right = 3.0;  ///< step: p on x_1 >= 0
  std::string path;
};

struct FamilySpec {
  std::string type = "gaussian_bumps";  ///< gaussian_bumps | zero | constant | files
  int dim = 1;
  BumpOptions bumps;
  double value = 1.0;
  std::vector<std::string> paths;
};

struct TaskParams {
  std::vector<double> epsilons{0.1};
  std::string route = "dyadic";          ///< dyadic | average
  std::string notion = "translation";    ///< translation | twisted | averaging
  std::string cubes = "default";         ///< default | dyadic | anchored | sliding
  int divisions = 8;
  std::string norm = "weight";           ///< weight (W^{1/p}) | lq | image
  double q = 2.0;
  std::vector<std::vector<double>> norm_matrix;
  int samples = 0;
  int vectors = 1000;
  int count = -1;                        ///< verify-lemmas instance count; -1 keeps defaults
  double c_net = 1.0;
  std::vector<std::string> centers;
  std::vector<double> radii;
  std::vector<double> scales;
};

struct Scenario {
  GridSpec grid;
  WeightSpec weight;
  MeasureSpec measure;
  ExponentSpec exponent;
  FamilySpec family;
  std::string task = "norm";
  TaskParams params;
  std::uint64_t seed = 0;
  std::filesystem::path base_dir;
};

inline const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names{"ap-constant", "john",  "norm",      "moduli",
                                              "net",         "certify", "necessity", "verify-lemmas"};
  return names;
}

/// Parses scenario text; file paths resolve against `base_dir`. Throws
/// SchemaError with the line and field of the offending entry.
Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical echo with every default filled in.
nlohmann::ordered_json scenario_to_json(const Scenario& s);

/// Built-in scenario used by the task shorthands: the 40-bump family under the
/// rotated power weight, n = 1, L = 16, N = 4096, d = 2, p = 2.
Scenario default_scenario(const std::string& task);

Grid make_grid(const Scenario& s);
MatrixWeightField make_weight(const Scenario& s, const Grid& grid);
MeasureDensity make_measure(const Scenario& s, const Grid& grid);
ExponentField make_exponent(const Scenario& s, const Grid& grid);
FunctionFamily make_family(const Scenario& s, const Grid& grid);
FunctionSpace make_space(const Scenario& s, const MatrixWeightField& w, const Grid& grid);
Ladders make_ladders(const Scenario& s, const Grid& grid);
CubeFamily make_cubes(const Scenario& s, const Grid& grid);

}  // namespace mwkr
