#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mwkr/error.hpp"
#include "mwkr/field_io.hpp"
#include "mwkr/report.hpp"
#include "mwkr/runner.hpp"
#include "mwkr/scenario.hpp"

using namespace mwkr;
namespace fs = std::filesystem;

namespace {

const std::string kBase = R"(grid: {n: 1, L: 4, N: 256}
weight: {type: identity, dim: 2}
family: {type: gaussian_bumps, dim: 2, count: 5}
seed: 7
)";

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "mwkr_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string schema_message(const std::string& text) {
  try {
    (void)parse_scenario(text, {});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
    return e.what();
  }
  return "";
}

int cli(const std::string& args) {
  const std::string cmd = std::string(MWKR_CLI) + " " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

RunOutcome run(const std::string& text) { return run_scenario(parse_scenario(text, scratch())); }

}  // namespace

TEST_CASE("scenario schema errors name the line and field") {
  const std::string bad_n = schema_message("grid:\n  n: 3\ntask: norm\n");
  CHECK(bad_n.find("line 2") != std::string::npos);
  CHECK(bad_n.find("grid.n") != std::string::npos);
  const std::string unknown = schema_message("task: norm\ngrid:\n  n: 1\n  M: 4\n");
  CHECK(unknown.find("line 4") != std::string::npos);
  CHECK(unknown.find("grid.M") != std::string::npos);
  CHECK(schema_message("grid: {N: 100}\ntask: norm\n").find("grid.N") != std::string::npos);
  CHECK(schema_message("task: frobnicate\n").find("unknown task") != std::string::npos);
  CHECK(schema_message("grid: {n: 1}\n").find("'task'") != std::string::npos);
  CHECK(schema_message("task: norm\nweight: {type: file, path: missing.txt}\n").find("does not exist") !=
        std::string::npos);
  CHECK(schema_message("task: norm\nexponent: {type: step}\nmeasure: {type: quadratic}\n").find("measure") !=
        std::string::npos);
  CHECK(schema_message("task: [norm\n").find("line") != std::string::npos);
}

TEST_CASE("task results on trivial inputs") {
  SUBCASE("norm of the zero family") {
    const RunOutcome out = run("grid: {n: 1, L: 4, N: 256}\nweight: {type: identity, dim: 2}\n"
                               "family: {type: zero, dim: 2}\ntask: norm\n");
    CHECK(out.status == Status::pass);
    CHECK(out.report["results"]["value"] == 0.0);
  }
  SUBCASE("A_p constant of the identity") {
    const RunOutcome out = run(kBase + "task: ap-constant\n");
    CHECK(out.status == Status::pass);
    CHECK(out.report["results"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("verify-lemmas with zero instances") {
    RunOptions opts;
    opts.count = 0;
    const RunOutcome out = run_scenario(parse_scenario(kBase + "task: verify-lemmas\n", {}), opts);
    CHECK(out.status == Status::pass);
    for (const auto& suite : out.report["results"]["suites"]) CHECK(suite["instances"] == 0);
  }
  SUBCASE("a bad family is an error report") {
    const RunOutcome out = run(kBase + "task: net\nparams: {epsilons: [0.1], route: average}\n"
                                       "exponent: {type: constant, p: 0.5}\n");
    CHECK(out.status == Status::error);
    CHECK(exit_code(out.status) == 1);
    CHECK(out.report.contains("error"));
    CHECK(validate_report(out.report).empty());
  }
}

TEST_CASE("default net scenario certifies at epsilon 0.1") {
  Scenario s = default_scenario("net");
  s.params.epsilons = {0.1};
  const RunOutcome out = run_scenario(s);
  CHECK(out.status == Status::pass);
  const auto& net = out.report["results"]["nets"][0];
  CHECK(net["size"].get<int>() <= 40);
  CHECK(net["certificate"]["pass"] == true);
  CHECK(validate_report(out.report).empty());
}

TEST_CASE("a corrupted weight file is reported as NotPSD") {
  const fs::path dir = scratch();
  std::string text = "# mwfield matrix\n1 4 8 1\n";
  for (int i = 0; i < 8; ++i) text += i == 3 ? "-2 0\n" : "1 0\n";
  spill(dir / "bad_weight.txt", text);
  const std::string yaml = "grid: {n: 1, L: 4, N: 8}\nweight: {type: file, path: bad_weight.txt}\n"
                           "family: {type: zero, dim: 1}\ntask: norm\n";
  spill(dir / "bad_weight.yaml", yaml);
  const RunOutcome out = run_scenario(load_scenario(dir / "bad_weight.yaml"));
  CHECK(out.status == Status::error);
  CHECK(out.report["error"]["code"] == "NotPSD");
  CHECK(validate_report(out.report).empty());
  CHECK(cli("run " + (dir / "bad_weight.yaml").string()) == 1);

  RunOptions opts;
  opts.count = 1;
  Scenario verify = load_scenario(dir / "bad_weight.yaml");
  verify.task = "verify-lemmas";
  const RunOutcome v = run_scenario(verify, opts);
  bool seen = false;
  for (const auto& suite : v.report["results"]["suites"])
    if (suite["name"] == "scenario_weight") {
      seen = true;
      CHECK(suite.at("error") == "NotPSD");
      CHECK(suite["pass"] == false);
    }
  CHECK(seen);
  CHECK(v.status == Status::fail);
}

TEST_CASE("certify fails honestly with exit code 2") {
  const fs::path dir = scratch();
  const Grid g(1, 4.0, 256);
  save_vector_field(dir / "zero_center.txt", SampledVectorField(g, 2));
  spill(dir / "certify.yaml", kBase + "task: certify\nparams: {epsilons: [0.01], centers: [zero_center.txt]}\n");
  const RunOutcome out = run_scenario(load_scenario(dir / "certify.yaml"));
  CHECK(out.status == Status::fail);
  CHECK(out.report["results"]["certificates"][0]["certificate"]["pass"] == false);
  CHECK(cli("run " + (dir / "certify.yaml").string()) == 2);
}

TEST_CASE("every task writes a schema-valid report") {
  const std::vector<std::string> tasks{
      "ap-constant: {}",
      "john: {}\nparams: {norm: lq, q: 3}",
      "norm: {}",
      "moduli: {}",
      "net: {}\nparams: {epsilons: [0.2]}",
      "certify: {}\nparams: {epsilons: [0.2]}",
      "necessity: {}\nparams: {epsilons: [0.2]}",
      "verify-lemmas: {}\nparams: {count: 1}"};
  for (const auto& t : tasks) {
    const std::string name = t.substr(0, t.find(':'));
    const std::string rest = t.substr(t.find('\n') == std::string::npos ? t.size() : t.find('\n'));
    CAPTURE(name);
    const RunOutcome out = run(kBase + "task: " + name + rest + "\n");
    CHECK(out.status != Status::error);
    const auto problems = validate_report(out.report);
    CHECK(problems.empty());
    CHECK(out.report["task"] == name);
    CHECK_FALSE(out.report.contains("timings"));
  }
  RunOptions timed;
  timed.timings = true;
  const RunOutcome out = run_scenario(parse_scenario(kBase + "task: norm\n", {}), timed);
  CHECK(out.report.contains("timings"));
  CHECK(validate_report(out.report).empty());
}

TEST_CASE("the validator rejects malformed reports") {
  Json r = run(kBase + "task: norm\n").report;
  CHECK(validate_report(r).empty());
  Json extra = r;
  extra["surprise"] = 1;
  CHECK_FALSE(validate_report(extra).empty());
  Json missing = r;
  missing.erase("provenance");
  CHECK_FALSE(validate_report(missing).empty());
  Json bad_status = r;
  bad_status["status"] = "maybe";
  CHECK_FALSE(validate_report(bad_status).empty());
}

TEST_CASE("the published schema matches the embedded one") {
  const std::string published = slurp(fs::path(MWKR_SOURCE_DIR) / "docs" / "report.schema.json");
  CHECK(published == report_schema_text());
  CHECK(report_schema()["$id"] == kReportSchemaId);
}

TEST_CASE("reruns are byte-identical and curves are CSV") {
  const fs::path dir = scratch();
  spill(dir / "moduli.yaml", kBase + "task: moduli\n");
  const std::string yaml = (dir / "moduli.yaml").string();
  REQUIRE(cli("run " + yaml + " --out " + (dir / "a.json").string()) == 0);
  REQUIRE(cli("run " + yaml + " --out " + (dir / "b.json").string() + " --threads 1") == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(dir / "a.tail.csv") == slurp(dir / "b.tail.csv"));
  const Json report = Json::parse(slurp(dir / "a.json"));
  CHECK(validate_report(report).empty());

  std::istringstream csv(slurp(dir / "a.equicontinuity.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "scale,value");
  std::size_t rows = 0;
  double previous = 0.0;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    const double scale = std::stod(line.substr(0, comma));
    CHECK(scale > previous);
    previous = scale;
    (void)std::stod(line.substr(comma + 1));
    ++rows;
  }
  CHECK(rows == report["results"]["equicontinuity"].size());
  CHECK(cli("schema") == 0);
  CHECK(cli("run /nonexistent.yaml") != 0);
}

TEST_CASE("shipped example scenarios run and pass") {
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(fs::path(MWKR_SOURCE_DIR) / "docs" / "scenarios")) {
    if (entry.path().extension() != ".yaml") continue;
    CAPTURE(entry.path().filename().string());
    const RunOutcome out = run_scenario(load_scenario(entry.path()));
    CHECK(out.status == Status::pass);
    CHECK(validate_report(out.report).empty());
    ++seen;
  }
  CHECK(seen >= 5);
}
