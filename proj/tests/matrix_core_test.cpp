#include <doctest.h>

#include "mwkr/error.hpp"
#include "mwkr/linalg.hpp"
#include "support.hpp"

using namespace mwkr;
using mwkr::testing::max_abs_diff;

namespace {

HermitianMatrix real2(double a, double b, double c, double d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return HermitianMatrix(m);
}

}  // namespace

TEST_CASE("spectral_decompose on hand examples") {
  SUBCASE("diagonal input keeps its basis") {
    const double v[] = {1.0, 4.0};
    const auto s = spectral_decompose(HermitianMatrix::diagonal(v));
    CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(4.0));
    CHECK(max_abs_diff(s.vectors, CMatrix::Identity(2, 2)) < 1e-14);
  }
  SUBCASE("identity in d = 3") {
    const auto s = spectral_decompose(HermitianMatrix::identity(3));
    for (int k = 0; k < 3; ++k) CHECK(s.eigenvalues(k) == doctest::Approx(1.0));
    CHECK(max_abs_diff(s.reconstruct(), CMatrix::Identity(3, 3)) < 1e-14);
  }
  SUBCASE("[[2,1],[1,2]] has eigenvalues 1 and 3") {
    // characteristic polynomial (2 - l)^2 - 1
    const auto s = spectral_decompose(real2(2, 1, 1, 2));
    CHECK(s.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-14));
  }
}

TEST_CASE("mat_power on hand examples") {
  const double v[] = {4.0, 1.0};
  const HermitianMatrix half = mat_power(HermitianMatrix::diagonal(v), 0.5);
  CHECK(half(0, 0).real() == doctest::Approx(2.0));
  CHECK(half(1, 1).real() == doctest::Approx(1.0));
  CHECK(std::abs(half(0, 1)) < 1e-15);

  for (double s : {-1.5, 0.3, 2.0}) CHECK(max_abs_diff(mat_power(HermitianMatrix::identity(3), s).matrix(), CMatrix::Identity(3, 3)) < 1e-14);

  // [[2,1],[1,2]]^2 by direct multiplication
  const HermitianMatrix sq = mat_power(real2(2, 1, 1, 2), 2.0);
  CMatrix expect(2, 2);
  expect << 5, 4, 4, 5;
  CHECK(max_abs_diff(sq.matrix(), expect) < 1e-12);
}

TEST_CASE("op_norm on hand examples") {
  const double v[] = {3.0, 7.0};
  CHECK(op_norm(HermitianMatrix::diagonal(v)) == doctest::Approx(7.0));
  CHECK(op_norm(HermitianMatrix::zero(2)) == 0.0);
  CHECK(op_norm(real2(2, 1, 1, 2)) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("construction and domain errors") {
  CMatrix skew(2, 2);
  skew << 1, 2, 0, 1;
  CHECK_THROWS_AS(HermitianMatrix{skew}, Error);
  try {
    HermitianMatrix{skew};
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  const HermitianMatrix neg = real2(1, 2, 2, 1);  // eigenvalues -1, 3
  try {
    (void)mat_power(neg, 0.5);
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
  }
  const double sing[] = {0.0, 1.0};
  try {
    (void)mat_power(HermitianMatrix::diagonal(sing), -1.0);
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("tiny negative eigenvalues clamp to zero") {
  const double v[] = {-1e-12, 1.0};
  const HermitianMatrix a = HermitianMatrix::diagonal(v);
  const HermitianMatrix r = mat_power(a, 0.5);
  CHECK(r(0, 0).real() == 0.0);
  CHECK(op_norm(a) == 1.0);
}

TEST_CASE("complex and real decomposition paths agree") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 5;
    CMatrix g = testing::random_matrix(rng, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = g(i, j).real();
    const HermitianMatrix a(CMatrix(g * g.adjoint()));
    const auto r = spectral_decompose(a);
    const auto c = spectral_decompose_complex(a);
    CHECK((r.eigenvalues - c.eigenvalues).cwiseAbs().maxCoeff() < 1e-10 * (1.0 + c.max_eigenvalue()));
    CHECK(max_abs_diff(r.reconstruct(), a.matrix()) < 1e-10 * (1.0 + c.max_eigenvalue()));
  }
}

TEST_CASE("property: spectral identities on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit;
  std::uniform_int_distribution<int> dims(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = dims(rng);
    const CMatrix q = testing::random_unitary(rng, d);
    std::vector<double> lam(static_cast<std::size_t>(d));
    for (auto& l : lam) l = 0.05 + 5.0 * unit(rng);
    const HermitianMatrix a = testing::with_spectrum(q, lam);
    const double top = *std::max_element(lam.begin(), lam.end());
    const double bottom = *std::min_element(lam.begin(), lam.end());
    const auto s = spectral_decompose(a);
    CHECK(max_abs_diff(s.vectors.adjoint() * s.vectors, CMatrix::Identity(d, d)) < 1e-10);
    CHECK(max_abs_diff(s.reconstruct(), a.matrix()) < 1e-10 * top);
    for (double e : {1.0 / 3.0, 0.5, 1.0, 2.0}) {
      CHECK(std::abs(op_norm(mat_power(a, e)) - std::pow(top, e)) < 1e-10 * std::max(1.0, std::pow(top, e)));
      CHECK(std::abs(1.0 / op_norm(mat_power(a, -e)) - std::pow(bottom, e)) < 1e-10);
    }
    for (double e : {0.5, 2.0})
      CHECK(max_abs_diff(mat_power(mat_power(a, e), 1.0 / e).matrix(), a.matrix()) < 1e-8 * top);
    CHECK(max_abs_diff(mat_power(a, 1.0).matrix(), a.matrix()) < 1e-10 * top);
  }
}

TEST_CASE("spectral_norm closed form matches the solver") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 4;
    const CMatrix b = testing::random_matrix(rng, d);
    const double svd = Eigen::JacobiSVD<Eigen::MatrixXcd>(Eigen::MatrixXcd(b)).singularValues()(0);
    CHECK(spectral_norm(b) == doctest::Approx(svd).epsilon(1e-12));
  }
}
