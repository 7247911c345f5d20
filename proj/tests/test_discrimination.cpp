#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pingpong/discrimination.hpp"
#include "test_support.hpp"

using namespace pingpong;
using testsupport::qber_closed;
using testsupport::qloss_closed;
using testsupport::random_density;
using testsupport::rho_mu_stage4;

namespace {

std::pair<ComplexMatrix, ComplexMatrix> orthogonal_pure_pair() {
  ComplexMatrix rho0 = ComplexMatrix::Zero(2, 2);
  rho0(0, 0) = 1.0;
  ComplexMatrix rho1 = ComplexMatrix::Zero(2, 2);
  rho1(1, 1) = 1.0;
  return {rho0, rho1};
}

}  // namespace

TEST_CASE("trace_distance endpoints") {
  const ComplexMatrix rho = random_density(4);
  CHECK(trace_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-14));
  const auto [p0, p1] = orthogonal_pure_pair();
  CHECK(trace_distance(p0, p1) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("trace_distance of the stage-4 pair is 2 r^2") {
  for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CHECK(trace_distance(rho_mu_stage4(r, 0), rho_mu_stage4(r, 1)) ==
          doctest::Approx(2.0 * r * r).epsilon(1e-12));
  }
}

TEST_CASE("fidelity endpoints and symmetry") {
  const ComplexMatrix rho = random_density(4);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
  const auto [p0, p1] = orthogonal_pure_pair();
  CHECK(fidelity(p0, p1) == doctest::Approx(0.0).epsilon(1e-12));

  const ComplexMatrix a = random_density(3);
  const ComplexMatrix b = random_density(3);
  CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-12));
}

TEST_CASE("fidelity of the stage-4 pair at r = 0.8") {
  const double expected = 0.5 * 0.36 + 0.5 * std::sqrt(0.36 * 2.92);
  CHECK(fidelity(rho_mu_stage4(0.8, 0), rho_mu_stage4(0.8, 1)) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("min_error_probability endpoints and the r = 0.8 value") {
  const ComplexMatrix rho = random_density(4);
  CHECK(min_error_probability(rho, rho) == doctest::Approx(0.5).epsilon(1e-12));
  const auto [p0, p1] = orthogonal_pure_pair();
  CHECK(min_error_probability(p0, p1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(min_error_probability(rho_mu_stage4(0.8, 0), rho_mu_stage4(0.8, 1)) ==
        doctest::Approx(0.18).epsilon(1e-12));
}

TEST_CASE("unambiguous_failure endpoints") {
  const auto [p0, p1] = orthogonal_pure_pair();
  CHECK(unambiguous_failure(p0, p1) == doctest::Approx(0.0).epsilon(1e-12));
  const ComplexMatrix rho = random_density(4);
  CHECK(unambiguous_failure(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
  // r = 0: the pair coincides and the measurement always fails.
  CHECK(unambiguous_failure(rho_mu_stage4(0.0, 0), rho_mu_stage4(0.0, 1)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form QBER and QLOSS across the full reliability range") {
  for (int i = 0; i <= 20; ++i) {
    const double r = static_cast<double>(i) / 20.0;
    const ComplexMatrix rho0 = rho_mu_stage4(r, 0);
    const ComplexMatrix rho1 = rho_mu_stage4(r, 1);
    CHECK(std::abs(min_error_probability(rho0, rho1) - qber_closed(r)) < 1e-10);
    CHECK(std::abs(unambiguous_failure(rho0, rho1) - qloss_closed(r)) < 1e-10);
  }
}

TEST_CASE("QBER and QLOSS are non-increasing in r") {
  double prev_qber = 1.0, prev_qloss = 2.0;
  for (int i = 0; i <= 20; ++i) {
    const double r = static_cast<double>(i) / 20.0;
    const DiscriminationResult result =
        discriminate(rho_mu_stage4(r, 0), rho_mu_stage4(r, 1));
    CHECK(result.qber <= prev_qber + 1e-12);
    CHECK(result.qloss <= prev_qloss + 1e-12);
    prev_qber = result.qber;
    prev_qloss = result.qloss;
  }
}

TEST_CASE("Fuchs-van de Graaf bounds hold on random pairs") {
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index dim = 2 + rep % 3;
    const ComplexMatrix rho0 = random_density(dim);
    const ComplexMatrix rho1 = random_density(dim);
    const double f = fidelity(rho0, rho1);
    const double half_dist = 0.5 * trace_distance(rho0, rho1);
    CHECK(1.0 - f <= half_dist + 1e-9);
    CHECK(half_dist <= std::sqrt(std::max(0.0, 1.0 - f * f)) + 1e-9);
  }
}

TEST_CASE("min_error_probability is symmetric") {
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix rho0 = random_density(4);
    const ComplexMatrix rho1 = random_density(4);
    CHECK(std::abs(min_error_probability(rho0, rho1) -
                   min_error_probability(rho1, rho0)) < 1e-12);
  }
}

TEST_CASE("discriminate bundles consistent figures of merit") {
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix rho0 = random_density(4);
    const ComplexMatrix rho1 = random_density(4);
    const DiscriminationResult result = discriminate(rho0, rho1);
    CHECK(result.qber ==
          doctest::Approx(0.5 * (1.0 - 0.5 * result.trace_distance)).epsilon(1e-12));
    CHECK(result.qloss == doctest::Approx(result.fidelity).epsilon(1e-15));
    CHECK(result.qber >= 0.0);
    CHECK(result.qber <= 0.5);
    CHECK(result.qloss >= 0.0);
    CHECK(result.qloss <= 1.0);
  }
  // fidelity == 1 exactly when the trace distance vanishes.
  const ComplexMatrix rho = random_density(4);
  const DiscriminationResult same = discriminate(rho, rho);
  CHECK(same.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(same.trace_distance == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dimension mismatches are rejected") {
  const ComplexMatrix a = random_density(2);
  const ComplexMatrix b = random_density(3);
  CHECK_THROWS_AS(trace_distance(a, b), std::invalid_argument);
  CHECK_THROWS_AS(fidelity(a, b), std::invalid_argument);
  CHECK_THROWS_AS(min_error_probability(a, b), std::invalid_argument);
  CHECK_THROWS_AS(unambiguous_failure(a, b), std::invalid_argument);
}
