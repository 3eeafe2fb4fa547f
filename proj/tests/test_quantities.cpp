#include <doctest.h>

#include <vector>

#include "collapse/constants.hpp"
#include "collapse/uncertain.hpp"
#include "collapse/units.hpp"
#include "test_support.hpp"

using namespace collapse;
using collapse::testing::rel_diff;

namespace {
using PF = PowerFactor<double>;
}

TEST_CASE("propagate_power: square of the published ASD") {
  const auto y = propagate_power(UncertainValue{5.2, 0.1}, 2.0);
  // 2 * (0.1 / 5.2) * 27.04
  CHECK(rel_diff(y.value, 27.04) < 1e-14);
  CHECK(rel_diff(y.sigma, 1.04) < 1e-14);
}

TEST_CASE("propagate_power: zero uncertainty in, zero out") {
  for (double e : {-3.0, -2.0 / 3.0, 0.0, 0.5, 1.0, 2.5}) {
    const auto y = propagate_power(UncertainValue{3.7, 0.0}, e);
    CHECK(y.sigma == 0.0);
    CHECK(rel_diff(y.value, std::pow(3.7, e)) < 1e-15);
  }
}

TEST_CASE("propagate_power: -2/3 exponent carries 2/3 of the relative error") {
  const auto y = propagate_power(UncertainValue{5.2, 0.1}, -2.0 / 3.0);
  CHECK(rel_diff(y.value, std::pow(5.2, -2.0 / 3.0)) < 1e-15);
  CHECK(rel_diff(y.relative(), (2.0 / 3.0) * (0.1 / 5.2)) < 1e-14);
  CHECK(std::abs(y.relative() - 0.01282) < 1e-5);
}

TEST_CASE("propagate_power: domain errors") {
  CHECK_THROWS_AS(propagate_power(UncertainValue{-2.0, 0.1}, 0.5), DomainError);
  CHECK_THROWS_AS(propagate_power(UncertainValue{0.0, 0.1}, -1.0), DivisionByZeroError);
  CHECK_THROWS_AS(propagate_power(UncertainValue{0.0, 0.1}, 0.5), DivisionByZeroError);
  CHECK_THROWS_AS(propagate_power(UncertainValue{1.0, -0.1}, 2.0), DomainError);
  // integer exponents of negative bases are fine
  const auto y = propagate_power(UncertainValue{-2.0, 0.1}, 3.0);
  CHECK(y.value == -8.0);
  CHECK(rel_diff(y.sigma, 3.0 * 8.0 * 0.05) < 1e-15);
}

TEST_CASE("propagate_power: zero base with exponent >= 1 uses the derivative") {
  CHECK(propagate_power(UncertainValue{0.0, 0.2}, 1.0) == UncertainValue{0.0, 0.2});
  CHECK(propagate_power(UncertainValue{0.0, 0.2}, 2.0) == UncertainValue{0.0, 0.0});
  CHECK(propagate_power(UncertainValue{0.0, 0.0}, 0.5) == UncertainValue{0.0, 0.0});
}

TEST_CASE("product_with_uncertainty examples") {
  const auto cube = product_with_uncertainty<double>({PF{{2.0, 0.0}, 3.0}});
  CHECK(cube == UncertainValue{8.0, 0.0});

  const auto p = product_with_uncertainty<double>({PF{{5.2, 0.1}, 2.0}, PF{{1.928, 0.0}, 2.0}});
  CHECK(rel_diff(p.value, 27.04 * 1.928 * 1.928) < 1e-14);
  CHECK(rel_diff(p.relative(), 2.0 * 0.1 / 5.2) < 1e-13);
  CHECK(std::abs(p.relative() - 0.03846) < 1e-5);

  const double a = 7.3, sa = 0.4;
  const auto q = product_with_uncertainty<double>({PF{{a, sa}, 1.0}, PF{{a, 0.0}, -1.0}});
  CHECK(rel_diff(q.value, 1.0) < 1e-15);
  CHECK(rel_diff(q.sigma, sa / a) < 1e-15);
}

TEST_CASE("product_with_uncertainty: independent relative errors add in quadrature") {
  const auto p = product_with_uncertainty<double>({PF{{2.0, 0.02}, 1.0}, PF{{5.0, 0.1}, -2.0}});
  const double rel = std::hypot(0.01, 2.0 * 0.02);
  CHECK(rel_diff(p.value, 2.0 / 25.0) < 1e-15);
  CHECK(rel_diff(p.relative(), rel) < 1e-14);
}

TEST_CASE("property: power 1 is exact, square/sqrt round-trips, single factor == power") {
  for (int i = 0; i < 2000; ++i) {
    const UncertainValue x{collapse::testing::log_uniform(-30, 30),
                           0.0};
    const UncertainValue xs{x.value, x.value * collapse::testing::uniform(0.0, 0.2)};
    CHECK(propagate_power(xs, 1.0) == xs);

    const auto back = propagate_power(propagate_power(xs, 2.0), 0.5);
    CHECK(back.value == xs.value);
    CHECK(rel_diff(back.sigma, xs.sigma) < 1e-12);

    const double e = collapse::testing::uniform(-3.0, 3.0);
    const std::vector<PF> one{PF{xs, e}};
    CHECK(product_with_uncertainty(std::span<const PF>(one)) == propagate_power(xs, e));
  }
}

TEST_CASE("units: formula dimensions are checked at compile time") {
  using namespace units;
  static_assert(decltype(Rate{} * square(Action{} / Length{}))::dimension == kDiffusion);
  static_assert(decltype(Gravitation{} * Action{} * Mass{} * Density{})::dimension == kDiffusion);
  static_assert(decltype(square(Density{}) * square(square(Length{})) * square(Length{}) /
                         square(Mass{}))::dimension == kDimensionless);
  static_assert(decltype(sqrt(AccelerationPsd{}))::dimension == kAccelerationAsd);
  static_assert(decltype(square(Mass{}) * AccelerationPsd{})::dimension == kDiffusion);
  static_assert(decltype(cbrt(cube(Length{})))::dimension == kLength);

  const Length a(4e-10);
  const Length b(2e-10);
  CHECK((a / b).value() == 2.0);
  CHECK((a + b).value() == doctest::Approx(6e-10));
  CHECK(4.0 * angstrom == doctest::Approx(4e-10));
}

TEST_CASE("constants and band validation") {
  CHECK_NOTHROW(validate(PhysicalConstants{}));
  PhysicalConstants bad;
  bad.G = 0.0;
  CHECK_THROWS_AS(validate(bad), ValidationError);
  CHECK_NOTHROW(validate(FrequencyBand{7e-4, 2e-2}));
  CHECK_THROWS_AS(validate(FrequencyBand{0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(validate(FrequencyBand{2.0, 1.0}), ValidationError);
  try {
    validate(FrequencyBand{2.0, 1.0});
  } catch (const ValidationError& e) {
    CHECK(e.field() == "band.f_hi");
  }
}
