#include "mwkr/runner.hpp"

#include <chrono>
#include <cmath>

#include "mwkr/field_io.hpp"
#include "mwkr/john.hpp"
#include "mwkr/muckenhoupt.hpp"
#include "mwkr/verify.hpp"

namespace mwkr {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  void lap(const std::string& name) {
    const auto now = Clock::now();
    seconds_[name] += std::chrono::duration<double>(now - last_).count();
    last_ = now;
  }
  const std::map<std::string, double>& seconds() const { return seconds_; }

 private:
  Clock::time_point last_ = Clock::now();
  std::map<std::string, double> seconds_;
};

struct Context {
  const Scenario& s;
  Grid grid;
  Stopwatch& clock;
};

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

Json ladders_json(const Ladders& l) { return {{"radii", l.radii}, {"scales", l.scales}}; }

Norm scenario_norm(const Scenario& s) {
  if (s.params.norm == "image") {
    const int d = static_cast<int>(s.params.norm_matrix.size());
    CMatrix a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        a(i, j) = s.params.norm_matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return linear_image_norm(a);
  }
  if (s.params.norm == "weight")
    fail(ErrorCode::InvalidArgument, "the john task needs params.norm = lq or image");
  return lq_norm(s.family.dim, s.params.q);
}

EquicontinuityNotion notion_of(const Scenario& s) {
  if (s.params.notion == "twisted") return EquicontinuityNotion::twisted;
  if (s.params.notion == "averaging") return EquicontinuityNotion::averaging;
  return EquicontinuityNotion::translation;
}

Json certificate_json(const NetCertificate& c) {
  return {{"epsilon", c.epsilon},
          {"c_net", c.c_net},
          {"bound", c.c_net * c.epsilon},
          {"worst_distance", c.worst_distance},
          {"worst_member", c.worst_member},
          {"pass", c.pass}};
}

Json net_json(const EpsilonNet& net, const FunctionFamily& family) {
  Json j;
  j["epsilon"] = net.epsilon;
  j["route"] = net.route;
  j["family"] = family.description();
  j["family_size"] = family.size();
  j["size"] = net.centers.size();
  j["c_net"] = net.c_net;
  j["center_members"] = net.center_members;
  if (net.route == "dyadic") {
    j["outer_generation"] = net.outer_generation;
    j["inner_generation"] = net.inner_generation;
    j["tail_at_m"] = net.tail_at_m;
    j["modulus_at_t"] = net.modulus_at_t;
    j["approximation_error"] = net.approximation_error;
  } else {
    const double third = net.epsilon / 3.0;
    j["radius"] = net.radius;
    j["ball_radius"] = net.ball_radius;
    j["scaling"] = net.scaling;
    j["cluster_radius"] = net.cluster_radius;
    j["uniform_spread"] = net.uniform_spread;
    j["budget"] = {{"tail", {{"value", net.tail_at_r}, {"limit", third}, {"within", net.tail_at_r < third}}},
                   {"average", {{"value", net.average_at_r}, {"limit", third}, {"within", net.average_at_r < third}}},
                   {"cover",
                    {{"value", net.scaling / 3.0 * net.uniform_spread},
                     {"limit", third},
                     {"within", net.scaling / 3.0 * net.uniform_spread <= third}}},
                   {"total", net.budget_bound},
                   {"within", net.budget_bound <= net.epsilon}};
  }
  j["certificate"] = certificate_json(net.certificate);
  return j;
}

EpsilonNet build_net(const Context& ctx, const FunctionFamily& family, double epsilon, const FunctionSpace& space,
                     const MatrixWeightField& w) {
  if (ctx.s.params.route == "average") return build_net_average(family, epsilon, space);
  const bool twisted = ctx.s.params.notion == "twisted";
  return build_net_dyadic(family, epsilon, space, twisted ? &w : nullptr);
}

Status task_ap(const Context& ctx, Json& results) {
  const MatrixWeightField w = make_weight(ctx.s, ctx.grid);
  const CubeFamily cubes = make_cubes(ctx.s, ctx.grid);
  ctx.clock.lap("setup");
  const ApEstimate est = ap_constant(w, ctx.s.exponent.p, cubes);
  ctx.clock.lap("ap_constant");
  results["p"] = ctx.s.exponent.p;
  results["value"] = number(est.value);
  results["worst_cube"] = cubes.describe(est.worst);
  results["cubes_evaluated"] = est.cubes_evaluated;
  results["cube_family"] = est.family;
  return Status::pass;
}

Status task_john(const Context& ctx, Json& results) {
  const Norm rho = scenario_norm(ctx.s);
  JohnOptions opts;
  opts.sphere_samples = ctx.s.params.samples;
  opts.seed = ctx.s.seed;
  const JohnFit fit = john_ellipsoid(rho, opts);
  ctx.clock.lap("fit");
  const SandwichCheck check = check_sandwich(fit.w, rho, ctx.s.params.vectors, ctx.s.seed + 1);
  ctx.clock.lap("check");
  results["norm"] = rho.name();
  results["dim"] = rho.dim();
  results["w"] = matrix_json(fit.w.matrix());
  results["upper_ratio"] = fit.upper_ratio;
  results["sqrt_d"] = std::sqrt(static_cast<double>(rho.dim()));
  results["scale"] = fit.scale;
  results["iterations"] = fit.iterations;
  results["gap"] = fit.gap;
  results["samples"] = fit.samples;
  results["sandwich"] = {{"vectors", ctx.s.params.vectors},
                         {"min_lower", check.min_lower},
                         {"max_upper", check.max_upper},
                         {"delta", 0.05},
                         {"pass", check.pass}};
  return check.pass ? Status::pass : Status::fail;
}

Status task_norm(const Context& ctx, Json& results) {
  const MatrixWeightField w = make_weight(ctx.s, ctx.grid);
  const FunctionFamily family = make_family(ctx.s, ctx.grid);
  const FunctionSpace space = make_space(ctx.s, w, ctx.grid);
  ctx.clock.lap("setup");
  Json norms = Json::array();
  double top = 0.0;
  for (const auto& f : family.members()) {
    const double v = space.norm(f);
    top = std::max(top, v);
    norms.push_back(number(v));
  }
  ctx.clock.lap("norm");
  results["space"] = space.description();
  results["family"] = family.description();
  results["values"] = norms;
  results["value"] = number(top);
  return Status::pass;
}

Status task_moduli(const Context& ctx, Json& results, std::map<std::string, Curve>& curves) {
  const MatrixWeightField w = make_weight(ctx.s, ctx.grid);
  const FunctionFamily family = make_family(ctx.s, ctx.grid);
  const FunctionSpace space = make_space(ctx.s, w, ctx.grid);
  const Ladders ladders = make_ladders(ctx.s, ctx.grid);
  ctx.clock.lap("setup");
  const ModuliReport m = compute_moduli(family, space, ladders, notion_of(ctx.s), &w);
  ctx.clock.lap("moduli");
  results["space"] = space.description();
  results["family"] = family.description();
  results["ladders"] = ladders_json(ladders);
  results["gauge"] = m.gauge;
  results["notion"] = std::string(to_string(m.notion));
  results["bound"] = number(m.bound);
  results["tail"] = curve_json(m.tail);
  results["equicontinuity"] = curve_json(m.equicontinuity);
  curves["tail"] = m.tail;
  curves["equicontinuity"] = m.equicontinuity;
  return Status::pass;
}

Status task_net(const Context& ctx, Json& results) {
  const MatrixWeightField w = make_weight(ctx.s, ctx.grid);
  const FunctionFamily family = make_family(ctx.s, ctx.grid);
  const FunctionSpace space = make_space(ctx.s, w, ctx.grid);
  ctx.clock.lap("setup");
  Json nets = Json::array();
  bool pass = true;
  for (double eps : ctx.s.params.epsilons) {
    const EpsilonNet net = build_net(ctx, family, eps, space, w);
    ctx.clock.lap("net eps=" + format_double(eps));
    pass = pass && net.certificate.pass;
    nets.push_back(net_json(net, family));
  }
  results["space"] = space.description();
  results["family"] = family.description();
  results["notion"] = ctx.s.params.route == "average" ? "averaging" : ctx.s.params.notion;
  results["nets"] = nets;
  return pass ? Status::pass : Status::fail;
}

Status task_certify(const Context& ctx, Json& results) {
  const MatrixWeightField w = make_weight(ctx.s, ctx.grid);
  const FunctionFamily family = make_family(ctx.s, ctx.grid);
  const FunctionSpace space = make_space(ctx.s, w, ctx.grid);
  std::vector<SampledVectorField> given;
  for (const auto& path : ctx.s.params.centers) {
    given.push_back(load_vector_field(path));
    require(given.back().grid() == ctx.grid, ErrorCode::ShapeMismatch, "center file '" + path + "' grid differs");
  }
  ctx.clock.lap("setup");
  Json rows = Json::array();
  bool pass = true;
  for (double eps : ctx.s.params.epsilons) {
    Json row;
    NetCertificate cert;
    if (!given.empty()) {
      cert = certify_net(family, given, eps, ctx.s.params.c_net, space);
      row["centers"] = "files";
      row["size"] = given.size();
    } else {
      const EpsilonNet net = build_net(ctx, family, eps, space, w);
      const double c_net = std::max(ctx.s.params.c_net, net.c_net);
      cert = certify_net(family, net.centers, eps, c_net, space);
      row["centers"] = net.route + " net";
      row["size"] = net.centers.size();
    }
    ctx.clock.lap("certify eps=" + format_double(eps));
    row["certificate"] = certificate_json(cert);
    row["distances"] = cert.distance;
    row["nearest"] = cert.nearest;
    pass = pass && cert.pass;
    rows.push_back(row);
  }
  results["space"] = space.description();
  results["family"] = family.description();
  results["certificates"] = rows;
  return pass ? Status::pass : Status::fail;
}

Status task_necessity(const Context& ctx, Json& results) {
  const MatrixWeightField w = make_weight(ctx.s, ctx.grid);
  const FunctionFamily family = make_family(ctx.s, ctx.grid);
  const FunctionSpace space = make_space(ctx.s, w, ctx.grid);
  ctx.clock.lap("setup");
  const NecessityReport rep = necessity_check(family, ctx.s.params.epsilons, space);
  ctx.clock.lap("necessity");
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row = {{"epsilon", r.epsilon},
                {"net_size", r.net_size},
                {"radius", r.radius},
                {"ball_radius", r.ball_radius},
                {"tail", r.tail},
                {"tail_bound", r.tail_bound},
                {"average", r.average},
                {"measured_constant", r.averaging_constant},
                {"average_bound", r.average_bound},
                {"pass", r.pass}};
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(row);
  }
  results["space"] = space.description();
  results["family"] = family.description();
  results["ladders"] = ladders_json(default_ladders(ctx.grid));
  results["rows"] = rows;
  return rep.pass ? Status::pass : Status::fail;
}

Status task_verify(const Context& ctx, Json& results, int count) {
  VerifyReport rep = verify_lemmas(ctx.s.seed, count);
  ctx.clock.lap("suites");
  if (ctx.s.weight.type == "file") {
    const Scenario& s = ctx.s;
    const Grid grid = ctx.grid;
    SuiteResult weight = verify_weight([&s, &grid] { return make_weight(s, grid); });
    rep.pass = rep.pass && weight.pass;
    rep.suites.push_back(std::move(weight));
    ctx.clock.lap("scenario_weight");
  }
  Json suites = Json::array();
  for (const auto& suite : rep.suites) suites.push_back(to_json(suite));
  results["seed"] = ctx.s.seed;
  results["suites"] = suites;
  results["pass"] = rep.pass;
  return rep.pass ? Status::pass : Status::fail;
}

}  // namespace

RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options) {
  RunOutcome out;
  out.report = make_report(scenario, Status::pass);
  Stopwatch clock;
  Json results = Json::object();
  try {
    const Context ctx{scenario, make_grid(scenario), clock};
    const std::string& t = scenario.task;
    if (t == "ap-constant")
      out.status = task_ap(ctx, results);
    else if (t == "john")
      out.status = task_john(ctx, results);
    else if (t == "norm")
      out.status = task_norm(ctx, results);
    else if (t == "moduli")
      out.status = task_moduli(ctx, results, out.curves);
    else if (t == "net")
      out.status = task_net(ctx, results);
    else if (t == "certify")
      out.status = task_certify(ctx, results);
    else if (t == "necessity")
      out.status = task_necessity(ctx, results);
    else
      out.status = task_verify(ctx, results, options.count >= 0 ? options.count : scenario.params.count);
    out.report["status"] = to_string(out.status);
  } catch (const Error& e) {
    out.status = Status::error;
    attach_error(out.report, std::string(to_string(e.code())), "task " + scenario.task + ": " + e.what());
  }
  out.report["results"] = results;
  if (options.timings) {
    clock.lap("report");
    std::map<std::string, double> secs = clock.seconds();
    double total = 0.0;
    for (const auto& [k, v] : secs) total += v;
    secs["total"] = total;
    attach_timings(out.report, secs);
  }
  return out;
}

int exit_code(Status status) {
  switch (status) {
    case Status::pass: return 0;
    case Status::fail: return 2;
    case Status::error: return 1;
  }
  return 1;
}

}  // namespace mwkr
