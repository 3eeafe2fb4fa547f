#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace collapse {

/// Bulk material, SI units.
struct Material {
  std::string name;
  double density = 0.0;           ///< kg m^-3
  double lattice_constant = 0.0;  ///< m, cubic cell scale

  bool operator==(const Material&) const = default;
};

struct AlloyComponent {
  Material material;
  double mass_fraction = 0.0;  ///< in (0, 1]
};

/// A cubic test mass. `mass` and `side_length` are independent inputs; the
/// flight hardware is quasi-cubic, so mass need not equal density * side^3.
struct TestMass {
  double mass = 0.0;         ///< kg
  double side_length = 0.0;  ///< m
  Material material;

  bool operator==(const TestMass&) const = default;
};

void validate(const Material& material);
void validate(const TestMass& test_mass);

/// Mass-fraction weighted arithmetic mean of density and lattice constant.
/// The result does not depend on component order.
Material alloy_material(std::span<const AlloyComponent> components);

/// |M - rho b^3| / M, for the warning-level consistency check.
double cube_mass_residual(const TestMass& test_mass);

/// Test mass of the LISA Pathfinder mission: 1.928 kg, 46 mm Au/Pt cube,
/// rho = 19881 kg m^-3, a = 4.0 Angstrom (rounded published values).
TestMass lisa_pathfinder_test_mass();

inline constexpr std::string_view kLisaPathfinderPreset = "lisa-pathfinder";

/// Looks up a named preset; only "lisa-pathfinder" exists.
std::optional<TestMass> preset_test_mass(std::string_view name);

/// Room-temperature handbook values.
namespace handbook {
Material gold();      ///< 19300 kg m^-3, 4.078 Angstrom
Material platinum();  ///< 21450 kg m^-3, 3.924 Angstrom
}  // namespace handbook

}  // namespace collapse
