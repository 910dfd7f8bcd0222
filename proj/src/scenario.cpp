#include "mwkr/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "mwkr/error.hpp"
#include "mwkr/field_io.hpp"

namespace mwkr {

namespace {

namespace fs = std::filesystem;

class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {}

  [[noreturn]] void error(const std::string& key, const std::string& what, const YAML::Node& at) const {
    const int line = at.IsDefined() && !at.IsNull() ? at.Mark().line + 1 : node_.Mark().line + 1;
    fail(ErrorCode::SchemaError, "line " + std::to_string(std::max(line, 1)) + ", field '" + field(key) + "': " + what);
  }
  [[noreturn]] void error(const std::string& key, const std::string& what) const { error(key, what, node_[key]); }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void allow(std::initializer_list<const char*> keys) const {
    if (!node_.IsMap()) {
      const int line = node_.Mark().line + 1;
      fail(ErrorCode::SchemaError,
           "line " + std::to_string(std::max(line, 1)) + ", field '" + (path_.empty() ? "<root>" : path_) +
               "': expected a mapping");
    }
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!known.count(key)) error(key, "unknown key", kv.first);
    }
  }

  bool has(const std::string& key) const { return node_[key].IsDefined() && !node_[key].IsNull(); }

  template <class T>
  T get(const std::string& key, T fallback) const {
    if (!has(key)) return fallback;
    return as<T>(key, node_[key]);
  }

  template <class T>
  std::vector<T> list(const std::string& key, std::vector<T> fallback) const {
    if (!has(key)) return fallback;
    const YAML::Node n = node_[key];
    if (!n.IsSequence()) error(key, "expected a list");
    std::vector<T> out;
    for (const auto& item : n) out.push_back(as<T>(key, item));
    return out;
  }

  std::vector<std::vector<double>> matrix(const std::string& key) const {
    if (!has(key)) return {};
    const YAML::Node n = node_[key];
    if (!n.IsSequence()) error(key, "expected a list of rows");
    std::vector<std::vector<double>> out;
    for (const auto& row : n) {
      if (!row.IsSequence()) error(key, "expected a list of rows", row);
      std::vector<double> r;
      for (const auto& x : row) r.push_back(as<double>(key, x));
      out.push_back(std::move(r));
    }
    return out;
  }

  Section child(const std::string& key) const {
    if (!has(key)) return Section(YAML::Node(YAML::NodeType::Map), field(key));
    return Section(node_[key], field(key));
  }

  const YAML::Node& node() const { return node_; }

 private:
  template <class T>
  T as(const std::string& key, const YAML::Node& n) const {
    if (!n.IsScalar()) error(key, "expected a scalar", n);
    try {
      if constexpr (std::is_same_v<T, double>) {
        const std::string s = n.Scalar();
        if (s == "inf" || s == ".inf" || s == "infinity") return std::numeric_limits<double>::infinity();
      }
      return n.as<T>();
    } catch (const YAML::Exception&) {
      error(key, "cannot read '" + n.Scalar() + "'", n);
    }
  }

  YAML::Node node_;
  std::string path_;
};

std::string one_of(const Section& s, const std::string& key, const std::string& fallback,
                   std::initializer_list<const char*> options) {
  const std::string v = s.get<std::string>(key, fallback);
  for (const char* o : options)
    if (v == o) return v;
  std::string msg = "expected one of";
  for (const char* o : options) msg += std::string(" ") + o;
  s.error(key, msg + ", got '" + v + "'");
}

std::string resolve(const Section& s, const std::string& key, const fs::path& base) {
  const std::string raw = s.get<std::string>(key, "");
  if (raw.empty()) s.error(key, "a file path is required");
  fs::path p(raw);
  if (p.is_relative() && !base.empty()) p = base / p;
  if (!fs::exists(p)) s.error(key, "file '" + p.string() + "' does not exist");
  return p.string();
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void parse_grid(const Section& s, GridSpec& g) {
  s.allow({"n", "L", "N"});
  g.n = s.get<int>("n", g.n);
  g.half_width = s.get<double>("L", g.half_width);
  g.points = s.get<int>("N", g.points);
  if (g.n != 1 && g.n != 2) s.error("n", "must be 1 or 2");
  if (!(g.half_width > 0.0) || !std::isfinite(g.half_width)) s.error("L", "must be positive and finite");
  if (!power_of_two(g.points) || g.points < 8) s.error("N", "must be a power of two >= 8");
  if (g.n == 2 && g.points > 1024) s.error("N", "2-D grids are limited to N <= 1024");
}

void parse_weight(const Section& s, WeightSpec& w, const fs::path& base) {
  s.allow({"type", "dim", "alpha", "matrix", "rotation", "rotation_rate", "path"});
  w.type = one_of(s, "type", w.type, {"identity", "constant", "power", "file"});
  w.dim = s.get<int>("dim", w.dim);
  if (w.type == "power") {
    w.alpha = s.list<double>("alpha", {});
    if (w.alpha.empty() || w.alpha.size() > static_cast<std::size_t>(kMaxDim))
      s.error("alpha", "power weights need 1..8 exponents");
    w.dim = static_cast<int>(w.alpha.size());
    w.rotation = one_of(s, "rotation", w.rotation, {"none", "planar"});
    w.rotation_rate = s.get<double>("rotation_rate", w.rotation_rate);
    if (w.rotation == "planar" && w.dim < 2) s.error("rotation", "planar rotation needs at least two exponents");
  } else if (w.type == "constant") {
    w.matrix = s.matrix("matrix");
    if (w.matrix.empty()) s.error("matrix", "a constant weight needs a matrix");
    w.dim = static_cast<int>(w.matrix.size());
    for (const auto& row : w.matrix)
      if (row.size() != w.matrix.size()) s.error("matrix", "matrix must be square");
  } else if (w.type == "file") {
    w.path = resolve(s, "path", base);
  }
  if (w.dim < 1 || w.dim > kMaxDim) s.error("dim", "must be in 1..8");
}

void parse_measure(const Section& s, MeasureSpec& m, const fs::path& base) {
  s.allow({"type", "coefficient", "path"});
  m.type = one_of(s, "type", m.type, {"lebesgue", "quadratic", "file"});
  m.coefficient = s.get<double>("coefficient", m.coefficient);
  if (m.type == "quadratic" && !(m.coefficient >= 0.0)) s.error("coefficient", "must be non-negative");
  if (m.type == "file") m.path = resolve(s, "path", base);
}

void parse_exponent(const Section& s, ExponentSpec& e, const fs::path& base) {
  s.allow({"type", "p", "left", "right", "path"});
  e.type = one_of(s, "type", e.type, {"constant", "step", "file"});
  e.p = s.get<double>("p", e.p);
  e.left = s.get<double>("left", e.left);
  e.right = s.get<double>("right", e.right);
  if (e.type == "constant" && !(e.p > 0.0 && std::isfinite(e.p))) s.error("p", "must be positive and finite");
  if (e.type == "step") {
    if (!(e.left >= 1.0 && std::isfinite(e.left))) s.error("left", "must be finite and >= 1");
    if (!(e.right >= 1.0 && std::isfinite(e.right))) s.error("right", "must be finite and >= 1");
  }
  if (e.type == "file") e.path = resolve(s, "path", base);
}

void parse_family(const Section& s, FamilySpec& f, const fs::path& base) {
  s.allow({"type", "dim", "count", "center_min", "center_max", "width_min", "width_max", "value", "paths"});
  f.type = one_of(s, "type", f.type, {"gaussian_bumps", "zero", "constant", "files"});
  f.dim = s.get<int>("dim", f.dim);
  f.bumps.count = s.get<int>("count", f.bumps.count);
  f.bumps.center_min = s.get<double>("center_min", f.bumps.center_min);
  f.bumps.center_max = s.get<double>("center_max", f.bumps.center_max);
  f.bumps.width_min = s.get<double>("width_min", f.bumps.width_min);
  f.bumps.width_max = s.get<double>("width_max", f.bumps.width_max);
  f.value = s.get<double>("value", f.value);
  if (f.dim < 1 || f.dim > kMaxDim) s.error("dim", "must be in 1..8");
  if (f.bumps.count < 1) s.error("count", "must be positive");
  if (!(f.bumps.center_min <= f.bumps.center_max)) s.error("center_max", "must be >= center_min");
  if (!(f.bumps.width_min > 0.0 && f.bumps.width_min <= f.bumps.width_max))
    s.error("width_min", "widths need 0 < width_min <= width_max");
  if (f.type == "files") {
    if (!s.has("paths") || !s.node()["paths"].IsSequence() || s.node()["paths"].size() == 0)
      s.error("paths", "a nonempty list of field files is required");
    const auto raw = s.list<std::string>("paths", {});
    for (std::size_t i = 0; i < raw.size(); ++i) {
      fs::path p(raw[i]);
      if (p.is_relative() && !base.empty()) p = base / p;
      if (!fs::exists(p)) s.error("paths", "file '" + p.string() + "' does not exist", s.node()["paths"][i]);
      f.paths.push_back(p.string());
    }
  }
}

void parse_params(const Section& s, TaskParams& t) {
  s.allow({"epsilons", "route", "notion", "cubes", "divisions", "norm", "q", "norm_matrix", "samples", "vectors",
           "count", "c_net", "centers", "radii", "scales"});
  t.epsilons = s.list<double>("epsilons", t.epsilons);
  for (double e : t.epsilons)
    if (!(e > 0.0 && std::isfinite(e))) s.error("epsilons", "every epsilon must be positive and finite");
  t.route = one_of(s, "route", t.route, {"dyadic", "average"});
  t.notion = one_of(s, "notion", t.notion, {"translation", "twisted", "averaging"});
  t.cubes = one_of(s, "cubes", t.cubes, {"default", "dyadic", "anchored", "sliding"});
  t.divisions = s.get<int>("divisions", t.divisions);
  if (t.divisions < 1) s.error("divisions", "must be positive");
  t.norm = one_of(s, "norm", t.norm, {"lq", "image", "weight"});
  t.q = s.get<double>("q", t.q);
  if (!(t.q >= 1.0)) s.error("q", "must be >= 1 or inf");
  t.norm_matrix = s.matrix("norm_matrix");
  if (t.norm == "image") {
    if (t.norm_matrix.empty()) s.error("norm_matrix", "an image norm needs a matrix");
    for (const auto& row : t.norm_matrix)
      if (row.size() != t.norm_matrix.size()) s.error("norm_matrix", "matrix must be square");
  }
  t.samples = s.get<int>("samples", t.samples);
  if (t.samples < 0) s.error("samples", "must be non-negative");
  t.vectors = s.get<int>("vectors", t.vectors);
  if (t.vectors < 1) s.error("vectors", "must be positive");
  t.count = s.get<int>("count", t.count);
  if (t.count < -1) s.error("count", "must be non-negative");
  t.c_net = s.get<double>("c_net", t.c_net);
  if (!(t.c_net >= 1.0)) s.error("c_net", "must be >= 1");
  t.centers = s.list<std::string>("centers", {});
  t.radii = s.list<double>("radii", {});
  t.scales = s.list<double>("scales", {});
  for (double r : t.radii)
    if (!(r >= 0.0)) s.error("radii", "radii must be non-negative");
  for (double r : t.scales)
    if (!(r > 0.0)) s.error("scales", "scales must be positive");
}

nlohmann::ordered_json matrix_json(const std::vector<std::vector<double>>& m) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

nlohmann::ordered_json finite_or_string(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const fs::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    fail(ErrorCode::SchemaError, "line " + std::to_string(e.mark.line + 1) + ", field '<root>': " + e.msg);
  }
  if (!root.IsDefined() || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  Scenario s;
  s.base_dir = base_dir;
  const Section top(root, "");
  top.allow({"grid", "weight", "measure", "exponent", "family", "task", "params", "seed"});
  parse_grid(top.child("grid"), s.grid);
  parse_weight(top.child("weight"), s.weight, base_dir);
  parse_measure(top.child("measure"), s.measure, base_dir);
  parse_exponent(top.child("exponent"), s.exponent, base_dir);
  parse_family(top.child("family"), s.family, base_dir);
  if (!top.has("task")) top.error("task", "a task is required");
  s.task = top.get<std::string>("task", "");
  if (std::find(task_names().begin(), task_names().end(), s.task) == task_names().end()) {
    std::string msg = "unknown task '" + s.task + "', expected one of";
    for (const auto& t : task_names()) msg += " " + t;
    top.error("task", msg);
  }
  parse_params(top.child("params"), s.params);
  s.seed = top.get<std::uint64_t>("seed", 0);
  const Section params = top.child("params");
  for (const auto& c : s.params.centers) {
    fs::path p(c);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    if (!fs::exists(p)) params.error("centers", "file '" + p.string() + "' does not exist");
  }
  for (auto& c : s.params.centers) {
    fs::path p(c);
    if (p.is_relative() && !base_dir.empty()) c = (base_dir / p).string();
  }
  if (s.exponent.type != "constant" && s.measure.type != "lebesgue")
    top.error("measure", "variable exponents are supported with the Lebesgue measure only");
  return s;
}

Scenario load_scenario(const fs::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::SchemaError, "cannot open scenario '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.parent_path());
}

nlohmann::ordered_json scenario_to_json(const Scenario& s) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["grid"] = {{"n", s.grid.n}, {"L", s.grid.half_width}, {"N", s.grid.points}};
  ordered_json w = {{"type", s.weight.type}, {"dim", s.weight.dim}};
  if (s.weight.type == "power") {
    w["alpha"] = s.weight.alpha;
    w["rotation"] = s.weight.rotation;
    w["rotation_rate"] = s.weight.rotation_rate;
  }
  if (s.weight.type == "constant") w["matrix"] = matrix_json(s.weight.matrix);
  if (s.weight.type == "file") w["path"] = fs::path(s.weight.path).filename().string();
  j["weight"] = w;
  ordered_json m = {{"type", s.measure.type}};
  if (s.measure.type == "quadratic") m["coefficient"] = s.measure.coefficient;
  if (s.measure.type == "file") m["path"] = fs::path(s.measure.path).filename().string();
  j["measure"] = m;
  ordered_json e = {{"type", s.exponent.type}};
  if (s.exponent.type == "constant") e["p"] = s.exponent.p;
  if (s.exponent.type == "step") {
    e["left"] = s.exponent.left;
    e["right"] = s.exponent.right;
  }
  if (s.exponent.type == "file") e["path"] = fs::path(s.exponent.path).filename().string();
  j["exponent"] = e;
  ordered_json f = {{"type", s.family.type}, {"dim", s.family.dim}};
  if (s.family.type == "gaussian_bumps") {
    f["count"] = s.family.bumps.count;
    f["center_min"] = s.family.bumps.center_min;
    f["center_max"] = s.family.bumps.center_max;
    f["width_min"] = s.family.bumps.width_min;
    f["width_max"] = s.family.bumps.width_max;
  }
  if (s.family.type == "constant") f["value"] = s.family.value;
  if (s.family.type == "files") {
    ordered_json paths = ordered_json::array();
    for (const auto& p : s.family.paths) paths.push_back(fs::path(p).filename().string());
    f["paths"] = paths;
  }
  j["family"] = f;
  j["task"] = s.task;
  const TaskParams& t = s.params;
  ordered_json p;
  p["epsilons"] = t.epsilons;
  p["route"] = t.route;
  p["notion"] = t.notion;
  p["cubes"] = t.cubes;
  p["divisions"] = t.divisions;
  p["norm"] = t.norm;
  p["q"] = finite_or_string(t.q);
  if (!t.norm_matrix.empty()) p["norm_matrix"] = matrix_json(t.norm_matrix);
  p["samples"] = t.samples;
  p["vectors"] = t.vectors;
  p["count"] = t.count;
  p["c_net"] = t.c_net;
  if (!t.centers.empty()) {
    ordered_json c = ordered_json::array();
    for (const auto& x : t.centers) c.push_back(fs::path(x).filename().string());
    p["centers"] = c;
  }
  if (!t.radii.empty()) p["radii"] = t.radii;
  if (!t.scales.empty()) p["scales"] = t.scales;
  j["params"] = p;
  j["seed"] = s.seed;
  return j;
}

Scenario default_scenario(const std::string& task) {
  Scenario s;
  s.grid = {1, 16.0, 4096};
  s.weight.type = "power";
  s.weight.alpha = {0.5, 1.0 / 3.0};
  s.weight.dim = 2;
  s.weight.rotation = "planar";
  s.weight.rotation_rate = 1.0;
  s.family.type = "gaussian_bumps";
  s.family.dim = 2;
  s.task = task;
  s.seed = 2024;
  if (task == "net" || task == "certify") s.params.epsilons = {0.1, 0.05};
  if (task == "necessity") s.params.epsilons = {0.2, 0.1, 0.05};
  if (task == "john") {
    s.params.norm = "lq";
    s.params.q = 3.0;
  }
  return s;
}

Grid make_grid(const Scenario& s) { return Grid(s.grid.n, s.grid.half_width, s.grid.points); }

MatrixWeightField make_weight(const Scenario& s, const Grid& grid) {
  const WeightSpec& w = s.weight;
  if (w.type == "identity") return constant_weight(grid, HermitianMatrix::identity(w.dim));
  if (w.type == "constant") {
    CMatrix m(w.dim, w.dim);
    for (int i = 0; i < w.dim; ++i)
      for (int j = 0; j < w.dim; ++j) m(i, j) = w.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return constant_weight(grid, HermitianMatrix(m));
  }
  if (w.type == "power") {
    RotationField rot;
    if (w.rotation == "planar") {
      const double rate = w.rotation_rate;
      rot = planar_rotation([rate](const Grid::Point& x) { return rate * x[0]; }, w.dim);
    }
    return make_power_weight(grid, w.alpha, rot);
  }
  MatrixWeightField loaded = load_weight_field(w.path);
  require(loaded.grid() == grid, ErrorCode::ShapeMismatch, "weight file grid differs from the scenario grid");
  return loaded;
}

MeasureDensity make_measure(const Scenario& s, const Grid& grid) {
  const MeasureSpec& m = s.measure;
  if (m.type == "lebesgue") return MeasureDensity::lebesgue(grid);
  if (m.type == "quadratic") {
    std::vector<double> u(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = grid.radius(i);
      u[i] = 1.0 + m.coefficient * r * r;
    }
    return MeasureDensity(grid, std::move(u));
  }
  auto [g, values] = load_scalar_field(m.path);
  require(g == grid, ErrorCode::ShapeMismatch, "measure file grid differs from the scenario grid");
  return MeasureDensity(grid, std::move(values));
}

ExponentField make_exponent(const Scenario& s, const Grid& grid) {
  const ExponentSpec& e = s.exponent;
  if (e.type == "constant") return ExponentField::constant(grid, e.p);
  if (e.type == "step") {
    std::vector<double> p(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) p[i] = grid.point(i)[0] < 0.0 ? e.left : e.right;
    return ExponentField(grid, std::move(p));
  }
  auto [g, values] = load_scalar_field(e.path);
  require(g == grid, ErrorCode::ShapeMismatch, "exponent file grid differs from the scenario grid");
  return ExponentField(grid, std::move(values));
}

FunctionFamily make_family(const Scenario& s, const Grid& grid) {
  const FamilySpec& f = s.family;
  if (f.type == "gaussian_bumps") return gaussian_bumps(grid, f.dim, s.seed, f.bumps);
  if (f.type == "zero") return FunctionFamily({SampledVectorField(grid, f.dim)}, "zero function");
  if (f.type == "constant") {
    SampledVectorField c(grid, f.dim, std::vector<cplx>(grid.size() * static_cast<std::size_t>(f.dim), f.value));
    return FunctionFamily({std::move(c)}, "constant function " + format_double(f.value));
  }
  std::vector<SampledVectorField> members;
  for (const auto& p : f.paths) {
    members.push_back(load_vector_field(p));
    require(members.back().grid() == grid, ErrorCode::ShapeMismatch, "field file '" + p + "' grid differs");
  }
  return FunctionFamily(std::move(members), std::to_string(members.size()) + " field files");
}

FunctionSpace make_space(const Scenario& s, const MatrixWeightField& w, const Grid& grid) {
  if (s.exponent.type == "constant") {
    const double p = s.exponent.p;
    std::optional<MeasureDensity> mu;
    if (s.measure.type != "lebesgue") mu = make_measure(s, grid);
    if (s.params.norm == "lq") return FunctionSpace::normed(NormFamily::uniform(grid, lq_norm(w.dim(), s.params.q)), p, mu);
    return FunctionSpace::weighted(w, p, mu);
  }
  ExponentField exponent = make_exponent(s, grid);
  if (s.params.norm == "lq")
    return FunctionSpace::variable(NormFamily::uniform(grid, lq_norm(w.dim(), s.params.q)), exponent);
  std::vector<CMatrix> mats(grid.size());
  std::vector<double> bounds(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    mats[i] = power_from_spectrum(w.spectrum(i), 1.0 / exponent[i]);
    bounds[i] = std::pow(w.spectrum(i).max_eigenvalue(), 1.0 / exponent[i]);
  }
  auto shared = std::make_shared<const std::vector<CMatrix>>(std::move(mats));
  NormFamily rho = NormFamily::custom(
      grid, w.dim(),
      [shared](std::size_t i, std::span<const cplx> v) {
        const auto& m = (*shared)[i];
        const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, 1>> x(v.data(), static_cast<Eigen::Index>(v.size()));
        return (m * x).norm();
      },
      "|W^{1/p(x)}(x) v|", std::move(bounds));
  return FunctionSpace::variable(std::move(rho), std::move(exponent));
}

Ladders make_ladders(const Scenario& s, const Grid& grid) {
  Ladders l = default_ladders(grid);
  if (!s.params.radii.empty()) l.radii = s.params.radii;
  if (!s.params.scales.empty()) l.scales = s.params.scales;
  return l;
}

CubeFamily make_cubes(const Scenario& s, const Grid& grid) {
  const std::string& c = s.params.cubes;
  if (c == "dyadic") return dyadic_cubes(grid);
  if (c == "anchored") return origin_anchored_cubes(grid);
  if (c == "sliding") return sliding_cubes(grid, s.params.divisions);
  return default_cube_family(grid);
}

}  // namespace mwkr
