#include "collapse/mass_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "collapse/errors.hpp"
#include "collapse/units.hpp"

namespace collapse {

namespace {

void require_positive(double v, const std::string& field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(field, "must be finite and > 0");
}

constexpr double kFractionSumTolerance = 1e-9;

}  // namespace

void validate(const Material& material) {
  require_positive(material.density, "material.density");
  require_positive(material.lattice_constant, "material.lattice_constant");
}

void validate(const TestMass& test_mass) {
  require_positive(test_mass.mass, "test_mass.mass");
  require_positive(test_mass.side_length, "test_mass.side_length");
  validate(test_mass.material);
}

Material alloy_material(std::span<const AlloyComponent> components) {
  if (components.empty()) throw ValidationError("components", "alloy needs at least one component");

  std::vector<AlloyComponent> sorted(components.begin(), components.end());
  for (const auto& c : sorted) {
    validate(c.material);
    if (!(c.mass_fraction > 0.0 && c.mass_fraction <= 1.0))
      throw ValidationError("mass_fraction", "must lie in (0, 1]");
  }
  // Canonical summation order keeps the result bit-identical under
  // permutation of the input list.
  std::sort(sorted.begin(), sorted.end(), [](const AlloyComponent& a, const AlloyComponent& b) {
    return std::tie(a.material.density, a.material.lattice_constant, a.mass_fraction,
                    a.material.name) < std::tie(b.material.density, b.material.lattice_constant,
                                                b.mass_fraction, b.material.name);
  });

  double fraction_sum = 0.0;
  double density = 0.0;
  double lattice = 0.0;
  for (const auto& c : sorted) {
    fraction_sum += c.mass_fraction;
    density += c.mass_fraction * c.material.density;
    lattice += c.mass_fraction * c.material.lattice_constant;
  }
  if (std::abs(fraction_sum - 1.0) > kFractionSumTolerance)
    throw ValidationError("mass_fraction", "fractions must sum to 1");

  if (sorted.size() == 1) return sorted.front().material;

  // Name follows input order, which is what a reader expects to see.
  std::ostringstream name;
  name << "alloy(";
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) name << ',';
    name << components[i].material.name << ':' << components[i].mass_fraction;
  }
  name << ')';
  return {name.str(), density, lattice};
}

double cube_mass_residual(const TestMass& test_mass) {
  const double b = test_mass.side_length;
  return std::abs(test_mass.mass - test_mass.material.density * b * b * b) / test_mass.mass;
}

TestMass lisa_pathfinder_test_mass() {
  using namespace units;
  return {1.928, 46.0 * millimetre, Material{"Au-Pt 73/27", 19881.0, 4.0 * angstrom}};
}

std::optional<TestMass> preset_test_mass(std::string_view name) {
  if (name == kLisaPathfinderPreset) return lisa_pathfinder_test_mass();
  return std::nullopt;
}

namespace handbook {
Material gold() { return {"Au", 19300.0, 4.078 * units::angstrom}; }
Material platinum() { return {"Pt", 21450.0, 3.924 * units::angstrom}; }
}  // namespace handbook

}  // namespace collapse
