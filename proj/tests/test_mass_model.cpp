#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "collapse/errors.hpp"
#include "collapse/mass_model.hpp"
#include "test_support.hpp"

using namespace collapse;
using collapse::testing::rel_diff;

TEST_CASE("alloy_material: 73/27 Au/Pt by mass") {
  const std::vector<AlloyComponent> parts{{handbook::gold(), 0.73}, {handbook::platinum(), 0.27}};
  const Material m = alloy_material(parts);
  // 0.73 * 19300 + 0.27 * 21450
  CHECK(rel_diff(m.density, 19880.5) < 1e-12);
  CHECK(rel_diff(m.density, 19881.0) < 1e-3);
  // 0.73 * 4.078 + 0.27 * 3.924 Angstrom
  CHECK(rel_diff(m.lattice_constant, 4.03642e-10) < 1e-12);
  CHECK(rel_diff(m.lattice_constant, 4.0e-10) < 1e-2);
}

TEST_CASE("alloy_material: single component is the identity") {
  const std::vector<AlloyComponent> parts{{handbook::gold(), 1.0}};
  CHECK(alloy_material(parts) == handbook::gold());
}

TEST_CASE("alloy_material: rejects bad input") {
  CHECK_THROWS_AS(alloy_material({}), ValidationError);
  const std::vector<AlloyComponent> short_sum{{handbook::gold(), 0.7}, {handbook::platinum(), 0.2}};
  CHECK_THROWS_AS(alloy_material(short_sum), ValidationError);
  const std::vector<AlloyComponent> zero_fraction{{handbook::gold(), 1.0}, {handbook::platinum(), 0.0}};
  CHECK_THROWS_AS(alloy_material(zero_fraction), ValidationError);
  const std::vector<AlloyComponent> bad_density{{Material{"x", -1.0, 1e-10}, 1.0}};
  CHECK_THROWS_AS(alloy_material(bad_density), ValidationError);
}

TEST_CASE("property: alloy averages are permutation invariant and convex") {
  auto& rng = collapse::testing::property_rng();
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 6)(rng);
    std::vector<double> w(n);
    for (auto& x : w) x = collapse::testing::uniform(0.05, 1.0);
    double total = 0.0;
    for (double x : w) total += x;

    std::vector<AlloyComponent> parts;
    double fraction_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double f = i + 1 < n ? w[i] / total : 1.0 - fraction_sum;
      fraction_sum += f;
      parts.push_back({Material{"m" + std::to_string(i), collapse::testing::uniform(1e3, 2.5e4),
                                collapse::testing::uniform(2e-10, 6e-10)},
                       f});
    }
    const Material ref = alloy_material(parts);
    std::shuffle(parts.begin(), parts.end(), rng);
    const Material shuffled = alloy_material(parts);
    CHECK(shuffled.density == ref.density);
    CHECK(shuffled.lattice_constant == ref.lattice_constant);

    const auto [dmin, dmax] = std::minmax_element(parts.begin(), parts.end(), [](auto& a, auto& b) {
      return a.material.density < b.material.density;
    });
    CHECK(ref.density >= dmin->material.density * (1 - 1e-12));
    CHECK(ref.density <= dmax->material.density * (1 + 1e-12));
    const auto [amin, amax] = std::minmax_element(parts.begin(), parts.end(), [](auto& a, auto& b) {
      return a.material.lattice_constant < b.material.lattice_constant;
    });
    CHECK(ref.lattice_constant >= amin->material.lattice_constant * (1 - 1e-12));
    CHECK(ref.lattice_constant <= amax->material.lattice_constant * (1 + 1e-12));
  }
}

TEST_CASE("LISA Pathfinder preset holds the published table values") {
  const TestMass tm = lisa_pathfinder_test_mass();
  CHECK(tm.mass == 1.928);
  CHECK(tm.side_length == doctest::Approx(0.046).epsilon(1e-15));
  CHECK(tm.material.density == 19881.0);
  CHECK(tm.material.lattice_constant == doctest::Approx(4.0e-10).epsilon(1e-15));
  CHECK(preset_test_mass("lisa-pathfinder") == tm);
  CHECK_FALSE(preset_test_mass("lisa").has_value());
  // quasi-cubic: rho b^3 = 1.935 kg vs 1.928 kg
  CHECK(cube_mass_residual(tm) < 0.01);
  CHECK(cube_mass_residual(tm) > 0.0);
}

TEST_CASE("test mass validation names the field") {
  TestMass tm = lisa_pathfinder_test_mass();
  tm.side_length = 0.0;
  try {
    validate(tm);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "test_mass.side_length");
  }
}
