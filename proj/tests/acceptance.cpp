// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mwkr/compactness.hpp"
#include "mwkr/cubes.hpp"
#include "mwkr/muckenhoupt.hpp"
#include "mwkr/operators.hpp"
#include "mwkr/scenario.hpp"
#include "mwkr/verify.hpp"

using namespace mwkr;

namespace {

constexpr std::uint64_t kSeed = 2024;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: no runtime limit
  std::function<Outcome()> run;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Outcome from_suite(const SuiteResult& s) {
  Outcome o;
  o.pass = s.pass;
  o.detail = std::to_string(s.instances) + " instances, " + std::to_string(s.failures) +
             " failures, worst residual " + fmt(s.worst_residual) + " (tol " + fmt(s.tolerance) + ")";
  if (!s.error_code.empty()) o.detail += ", error " + s.error_code;
  return o;
}

struct Setup {
  Scenario s;
  Grid grid;
  MatrixWeightField w;
  FunctionFamily family;
  FunctionSpace space;

  explicit Setup(Scenario sc)
      : s(std::move(sc)),
        grid(make_grid(s)),
        w(make_weight(s, grid)),
        family(make_family(s, grid)),
        space(make_space(s, w, grid)) {}
};

bool sample_family(const Scenario& s) {
  return s.grid.n == 1 && s.grid.points == 4096 && s.family.type == "gaussian_bumps" && s.family.dim == 2 &&
         s.family.bumps.count == 40 && s.weight.type == "power" && s.weight.alpha == std::vector<double>{0.5, 1.0 / 3.0} &&
         s.exponent.type == "constant" && s.exponent.p == 2.0;
}

Outcome sufficiency() {
  const Setup a(default_scenario("net"));
  if (!sample_family(a.s)) return {false, "default scenario is not the 40-member sample family"};
  Outcome o{true, ""};
  for (double eps : {0.1, 0.05}) {
    const EpsilonNet net = build_net_dyadic(a.family, eps, a.space);
    const bool ok = net.certificate.pass && net.centers.size() <= 40;
    o.pass = o.pass && ok;
    o.detail += "eps=" + fmt(eps) + ": K=" + std::to_string(net.centers.size()) + " C_net=" + fmt(net.c_net) +
                " worst=" + fmt(net.certificate.worst_distance) + (net.certificate.pass ? " PASS" : " FAIL") + "; ";
  }
  return o;
}

Outcome averaging_route() {
  Outcome o{true, ""};
  for (const std::string measure : {"lebesgue", "quadratic"}) {
    Scenario s = default_scenario("net");
    s.measure.type = measure;
    s.measure.coefficient = 0.5;
    const Setup a(s);
    const double eps = 0.1;
    const double third = eps / 3.0;
    const EpsilonNet net = build_net_average(a.family, eps, a.space);
    const double cover = net.scaling / 3.0 * net.uniform_spread;
    const bool budget = net.tail_at_r < third && net.average_at_r < third && cover <= third &&
                        net.budget_bound <= eps && net.certificate.worst_distance <= net.budget_bound * (1 + 1e-12);
    o.pass = o.pass && budget && net.certificate.pass;
    o.detail += measure + ": K=" + std::to_string(net.centers.size()) + " tail=" + fmt(net.tail_at_r) +
                " avg=" + fmt(net.average_at_r) + " cover=" + fmt(cover) + " (each < " + fmt(third) +
                ") worst=" + fmt(net.certificate.worst_distance) + (net.certificate.pass ? " PASS" : " FAIL") + "; ";
  }
  return o;
}

Outcome necessity() {
  const Setup a(default_scenario("necessity"));
  const NecessityReport r = necessity_check(a.family, {0.2, 0.1, 0.05}, a.space);
  Outcome o{r.pass && r.rows.size() == 3, ""};
  for (const auto& row : r.rows)
    o.detail += "eps=" + fmt(row.epsilon) + ": tail " + fmt(row.tail) + " <= " + fmt(row.tail_bound) + ", S_r " +
                fmt(row.average) + " <= " + fmt(row.average_bound) + (row.pass ? " PASS" : " FAIL") + "; ";
  return o;
}

// Muckenhoupt characteristic computed directly from the values.
double scalar_reference(std::span<const double> w, double p, const CubeFamily& cubes) {
  double best = 0.0;
  for (const Cube& q : cubes.cubes()) {
    const auto cells = cubes.cells(q);
    double a = 0.0;
    double b = 0.0;
    for (std::size_t i : cells) {
      a += w[i];
      b += std::pow(w[i], -1.0 / (p - 1.0));
    }
    const double n = static_cast<double>(cells.size());
    best = std::max(best, (a / n) * std::pow(b / n, p - 1.0));
  }
  return best;
}

Outcome scalar_reduction() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> expo(-0.45, 0.9);
  std::uniform_real_distribution<double> pick_p(1.5, 3.0);
  double worst = 0.0;
  std::string where;
  const auto track = [&](double x, double y, const char* what) {
    const double rel = std::abs(x - y) / std::max(1.0, std::abs(y));
    if (rel > worst) {
      worst = rel;
      where = what;
    }
  };
  for (int trial = 0; trial < 20; ++trial) {
    const Grid g(1, 4.0, 512);
    const double a = expo(rng);
    const double p = pick_p(rng);
    std::vector<double> vals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) vals[i] = (1.0 + 0.3 * std::sin(3.0 * g.point(i)[0])) * std::pow(g.radius(i), a);
    const ScalarWeightField sw(g, vals);
    const MatrixWeightField mw = as_matrix_weight(sw);
    const FunctionSpace matrix = FunctionSpace::weighted(mw, p);
    const FunctionSpace scalar = FunctionSpace::normed(
        NormFamily::custom(
            g, 1, [&vals, p](std::size_t i, std::span<const cplx> v) { return std::pow(vals[i], 1.0 / p) * std::abs(v[0]); },
            "scalar"),
        p);
    BumpOptions opts;
    opts.count = 6;
    const FunctionFamily family = gaussian_bumps(g, 1, kSeed + static_cast<std::uint64_t>(trial), opts);

    track(matrix.norm(family[0]), scalar_lp_norm(family[0], sw, p), "norm");
    const CubeFamily cubes = default_cube_family(g);
    track(ap_constant(mw, p, cubes).value, scalar_reference(vals, p, cubes), "A_p");
    std::vector<HermitianMatrix> twice;
    for (double v : vals) twice.push_back(HermitianMatrix::diagonal(std::vector<double>{v, v}));
    const CubeFamily small = dyadic_cubes(g, 3);
    track(ap_constant(MatrixWeightField(g, twice), p, small).value, scalar_reference(vals, p, small), "A_p (w I_2)");
    track(tail_modulus(family, 1.0, matrix), tail_modulus(family, 1.0, scalar), "tail");
    track(translation_modulus(family, 0.125, matrix), translation_modulus(family, 0.125, scalar), "translation");
    track(averaging_modulus(family, 0.25, matrix), averaging_modulus(family, 0.25, scalar), "averaging");
    const EpsilonNet net = build_net_dyadic(family, 0.2, matrix);
    const NetCertificate ref = certify_net(family, net.centers, 0.2, net.c_net, scalar);
    for (std::size_t i = 0; i < family.size(); ++i) track(net.certificate.distance[i], ref.distance[i], "net distance");
  }
  return {worst <= 1e-10, "20 cases, worst relative gap " + fmt(worst) + (where.empty() ? "" : " (" + where + ")")};
}

Outcome symdiff_probe() {
  const Grid g(1, 4.0, 1024);
  const MeasureDensity leb = MeasureDensity::lebesgue(g);
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::size_t> pick(256, 767);
  std::uniform_real_distribution<double> radius(4 * g.spacing(), 1.0);
  int cases = 0;
  double worst = 0.0;
  while (cases < 100) {
    const std::size_t x = pick(rng);
    const std::size_t y = pick(rng);
    const double r = radius(rng);
    const double gap = std::abs(g.point(x)[0] - g.point(y)[0]);
    if (gap >= 2.0 * r) continue;
    worst = std::max(worst, std::abs(symdiff_measure(x, y, r, leb) - 2.0 * gap));
    ++cases;
  }
  return {worst <= g.cell_volume() + 1e-12,
          "100 cases, worst |mu - 2|x-y|| = " + fmt(worst) + " vs cell volume " + fmt(g.cell_volume())};
}

Outcome ap_split() {
  const double half[] = {0.5, 0.5};
  std::vector<double> stable;
  for (int n : {1024, 2048, 4096}) {
    const Grid g(1, 1.0, n);
    stable.push_back(ap_constant(make_power_weight(g, half), 2.0, default_cube_family(g)).value);
  }
  const double change = std::abs(stable[2] - stable[1]) / stable[1];
  const double cubic[] = {3.0, 3.0};
  std::vector<double> growth;
  for (int n : {512, 1024, 2048, 4096, 8192}) {
    const Grid g(1, 1.0, n);
    growth.push_back(ap_constant(make_power_weight(g, cubic), 2.0, origin_anchored_cubes(g)).value);
  }
  const double factor = growth.back() / growth.front();
  std::string trail;
  for (double v : stable) trail += fmt(v) + " ";
  return {change < 0.05 && factor >= 10.0, "|x|^(1/2) I: " + trail + "(last change " + fmt(100 * change) +
                                               "%); |x|^3 I: " + fmt(growth.front()) + " -> " + fmt(growth.back()) +
                                               " (x" + fmt(factor) + ")"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "spectral identities", 5.0, [] { return from_suite(verify_spectral(kSeed, 500)); }},
      {2, "John sandwich", 30.0, [] { return from_suite(verify_john(kSeed, 50, 1000)); }},
      {3, "modular and Luxemburg clauses", 10.0, [] { return from_suite(verify_luxemburg(kSeed, 100)); }},
      {4, "dyadic nets certify on the sample family", 120.0, sufficiency},
      {5, "averaging nets honor the eps/3 budgets", 120.0, averaging_route},
      {6, "necessity check", 120.0, necessity},
      {7, "ball averages bounded in L^2(W)", 0.0, [] { return from_suite(verify_average_bound(kSeed, 50)); }},
      {8, "d = 1 matrix path matches the scalar path", 0.0, scalar_reduction},
      {9, "symmetric difference of balls", 0.0, symdiff_probe},
      {10, "A_p stability and growth", 0.0, ap_split}};

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    std::string timing = fmt(secs) + " s";
    if (c.limit_seconds > 0.0) {
      timing += " (limit " + fmt(c.limit_seconds) + " s)";
      pass = pass && secs < c.limit_seconds;
    }
    all = all && pass;
    std::printf("criterion %2d %s: %s | %s | %s\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
