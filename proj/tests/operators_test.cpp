#include <doctest.h>

#include <cmath>

#include "mwkr/compactness.hpp"
#include "mwkr/error.hpp"
#include "mwkr/operators.hpp"
#include "support.hpp"

using namespace mwkr;

namespace {

SampledVectorField linear(const Grid& g) {
  return SampledVectorField::from_function(g, 1, [](const Grid::Point& p) {
    CVector v(1);
    v << p[0];
    return v;
  });
}

SampledVectorField constant(const Grid& g, int d, cplx c) {
  return SampledVectorField(g, d, std::vector<cplx>(g.size() * static_cast<std::size_t>(d), c));
}

double max_diff(const SampledVectorField& a, const SampledVectorField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a.value(i) - b.value(i)).norm());
  return worst;
}

}  // namespace

TEST_CASE("translate") {
  std::mt19937_64 rng(1);
  const Grid g(1, 2.0, 64);
  const double h = g.spacing();
  const SampledVectorField f = testing::random_field(rng, g, 2);
  CHECK(translate(f, {0.0, 0.0}) == f);
  CHECK(translate(SampledVectorField(g, 2), {3 * h, 0.0}) == SampledVectorField(g, 2));
  // indicator of [0,1) moves to [h, 1+h)
  CHECK(translate(testing::indicator(g, 1, 0.0, 1.0), {h, 0.0}) == testing::indicator(g, 1, h, 1.0 + h));
  try {
    (void)translate(f, {0.3 * h, 0.0});
    FAIL("expected OffLattice");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OffLattice);
  }
}

TEST_CASE("property: translations invert on interior supports") {
  std::mt19937_64 rng(2);
  const Grid g(2, 1.0, 32);
  const double h = g.spacing();
  const auto inner = g.ball_mask(0.5);
  const SampledVectorField f = testing::random_field(rng, g, 2).masked(inner);
  for (const Grid::Cell s : {Grid::Cell{3, -2}, Grid::Cell{-5, 0}, Grid::Cell{1, 7}}) {
    const Grid::Point y{s[0] * h, s[1] * h};
    const Grid::Point back{-y[0], -y[1]};
    CHECK(translate(translate(f, y), back) == f);
  }
}

TEST_CASE("dyadic averaging") {
  const Grid g(1, 1.0, 64);
  SUBCASE("two cubes on [-1,1) and f(x) = x") {
    const DyadicScheme scheme(g, 0, -1);
    CHECK(scheme.cube_count() == 4);
    const DyadicScheme halves(g, 0, 0);
    CHECK(halves.cube_count() == 2);
    const SampledVectorField phi = dyadic_average(linear(g), halves);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double expect = g.point(i)[0] < 0.0 ? -0.5 : 0.5;
      CHECK(std::abs(phi.value(i)(0) - expect) < 1e-15);
    }
  }
  SUBCASE("constants map to c on R_m") {
    const Grid big(1, 4.0, 128);
    const DyadicScheme scheme(big, 1, -2);
    const SampledVectorField phi = dyadic_average(constant(big, 2, cplx(1.5, -2.0)), scheme);
    const auto mask = scheme.support_mask();
    for (std::size_t i = 0; i < big.size(); ++i) {
      const cplx expect = mask[i] ? cplx(1.5, -2.0) : cplx(0.0);
      CHECK(phi.value(i)(0) == expect);
      CHECK(phi.value(i)(1) == expect);
    }
    CHECK(dyadic_average(SampledVectorField(big, 2), scheme) == SampledVectorField(big, 2));
  }
  SUBCASE("idempotent") {
    std::mt19937_64 rng(3);
    const Grid g2(2, 2.0, 32);
    const DyadicScheme scheme(g2, 1, -1);
    const SampledVectorField once = dyadic_average(testing::random_field(rng, g2, 2), scheme);
    CHECK(dyadic_average(once, scheme) == once);
  }
  SUBCASE("scheme mismatches") {
    const auto code = [&](int m, int t) {
      try {
        DyadicScheme(g, m, t);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::InvalidArgument;
    };
    CHECK(code(1, 0) == ErrorCode::SchemeMismatch);   // R_1 leaves the box
    CHECK(code(0, 1) == ErrorCode::SchemeMismatch);   // t > m
    CHECK(code(0, -7) == ErrorCode::SchemeMismatch);  // cube side below one cell
  }
}

TEST_CASE("ball averages") {
  const Grid g(1, 2.0, 256);
  const MeasureDensity leb = MeasureDensity::lebesgue(g);
  const BallScheme scheme(g, 0.25);
  const SampledVectorField c = constant(g, 2, cplx(2.0, 1.0));
  CHECK(max_diff(ball_average(c, leb, scheme), c) < 1e-14);
  const SampledVectorField x = linear(g);
  const SampledVectorField avg = ball_average(x, leb, scheme);
  const auto interior = g.ball_mask(g.half_width() - 0.25);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (interior[i]) CHECK(std::abs(avg.value(i)(0) - x.value(i)(0)) < 1e-13);

  const Grid g2(2, 1.0, 32);
  const BallScheme disc(g2, 0.2);
  const MeasureDensity leb2 = MeasureDensity::lebesgue(g2);
  const SampledVectorField c2 = constant(g2, 1, cplx(-0.5));
  CHECK(max_diff(ball_average(c2, leb2, disc), c2) < 1e-14);

  CHECK_THROWS_AS(BallScheme(g, g.spacing()), Error);
  std::vector<double> u(g.size(), 0.0);
  u[0] = 1.0;
  try {
    (void)ball_average(c, MeasureDensity(g, u), scheme);
    FAIL("expected EmptyBall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyBall);
  }
}

TEST_CASE("maximal operator") {
  const Grid g(1, 2.0, 128);
  const MatrixWeightField one = constant_weight(g, HermitianMatrix::identity(1));
  const auto radii = dyadic_radii(g);
  const ScalarWeightField m = christ_goldberg_maximal(testing::indicator(g, 1, 0.0, 1.0), one, 2.0, radii);
  std::size_t half = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(g.point(i)[0] - 0.5) < std::abs(g.point(half)[0] - 0.5)) half = i;
  CHECK(m[half] == doctest::Approx(1.0));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(m[i] <= 1.0 + 1e-15);
  const ScalarWeightField z = christ_goldberg_maximal(SampledVectorField(g, 1), one, 2.0, radii);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(z[i] == 0.0);
}

TEST_CASE("symmetric difference of balls") {
  const Grid g(1, 4.0, 512);
  const MeasureDensity leb = MeasureDensity::lebesgue(g);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick(128, 383);
  std::uniform_real_distribution<double> radius(0.2, 1.0);
  CHECK(symdiff_measure(200, 200, 0.5, leb) == 0.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t x = pick(rng);
    const double r = radius(rng);
    std::size_t y = pick(rng);
    const double gap = std::abs(g.point(x)[0] - g.point(y)[0]);
    if (gap >= 2.0 * r) continue;
    CHECK(std::abs(symdiff_measure(x, y, r, leb) - 2.0 * gap) <= g.cell_volume() + 1e-12);
  }
  std::vector<double> u(g.size(), 1.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(g.point(i)[0]) > 0.5) u[i] = 0.0;
  // balls of radius 2 about +-1 differ only where |x| > 1, and u vanishes there
  std::size_t a = 0;
  std::size_t b = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.point(i)[0] - 1.0 + g.spacing() / 2) < 1e-12) a = i;
    if (std::abs(g.point(i)[0] + 1.0 - g.spacing() / 2) < 1e-12) b = i;
  }
  CHECK(symdiff_measure(a, b, 2.0, MeasureDensity(g, u)) == 0.0);
}

TEST_CASE("property: dyadic error is controlled by tail plus translation") {
  // ||f - Phi f||^p <= C (tail beyond R_m + translation at scale 2^t), with C
  // measured on two grids and required stable within a factor of 2.
  std::vector<double> constants;
  for (int n : {1024, 2048}) {
    const Grid g(1, 8.0, n);
    const double alpha[] = {0.5, 1.0 / 3.0};
    const auto w = make_power_weight(g, alpha, planar_rotation([](const Grid::Point& x) { return x[0]; }, 2));
    const FunctionSpace space = FunctionSpace::weighted(w, 2.0);
    BumpOptions opts;
    opts.count = 8;
    const FunctionFamily family = gaussian_bumps(g, 2, 99, opts);
    const int m = 2;
    const int t = -3;
    const DyadicScheme scheme(g, m, t);
    double worst = 0.0;
    for (const auto& f : family.members()) {
      const double err = std::pow(space.norm(f - dyadic_average(f, scheme)), 2.0);
      const FunctionFamily single({f}, "member");
      const double tail = std::pow(cube_tail_modulus(single, m, space), 2.0);
      const double shift = std::pow(translation_modulus(single, std::ldexp(1.0, t), space), 2.0);
      worst = std::max(worst, err / (tail + shift));
    }
    constants.push_back(worst);
  }
  CHECK(std::isfinite(constants[0]));
  CHECK(constants[1] < 2.0 * constants[0]);
  CHECK(constants[0] < 2.0 * constants[1]);
}

TEST_CASE("operator kernels agree bitwise across backends") {
  std::mt19937_64 rng(6);
  for (int n : {1, 2}) {
    const Grid g(n, 1.0, n == 1 ? 512 : 32);
    const SampledVectorField f = testing::random_field(rng, g, 2);
    std::vector<double> u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = 1.0 + g.radius(i) * g.radius(i);
    const MeasureDensity mu(g, u);
    const BallScheme scheme(g, 0.2);
    CHECK(ball_average(f, mu, scheme, {}, Backend::serial) == ball_average(f, mu, scheme, {}, Backend::openmp));
    const DyadicScheme dy(g, 0, -2);
    CHECK(dyadic_average(f, dy, Backend::serial) == dyadic_average(f, dy, Backend::openmp));
    const double alpha[] = {0.5, -0.25};
    const auto w = make_power_weight(g, alpha);
    std::vector<double> radii{0.15, 0.25, 0.5};
    const auto a = christ_goldberg_maximal(f, w, 2.0, radii, Backend::serial);
    const auto b = christ_goldberg_maximal(f, w, 2.0, radii, Backend::openmp);
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  }
}

TEST_CASE("averages are dominated by the maximal function") {
  std::mt19937_64 rng(12);
  const Grid g(1, 2.0, 256);
  const double alpha[] = {0.5, -0.3};
  const auto w = make_power_weight(g, alpha, planar_rotation([](const Grid::Point& x) { return 2.0 * x[0]; }, 2));
  const SampledVectorField f = testing::random_field(rng, g, 2);
  const auto radii = dyadic_radii(g);
  for (double r : {2 * g.spacing(), 0.25, 0.5}) {
    const DominationRatio d = maximal_domination_ratio(f, w, 2.0, r, radii);
    CHECK(d.ratio <= 1.0 + 1e-12);
  }
}
