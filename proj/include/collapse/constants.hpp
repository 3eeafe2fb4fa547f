#pragma once

#include <string_view>

namespace collapse {

/// Fundamental constants entering the diffusion formulas, SI units.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;  ///< J s
  double G = 6.67430e-11;         ///< m^3 kg^-1 s^-2
  double m0 = 1.66053906660e-27;  ///< kg, nucleon reference mass (1 u)

  bool operator==(const PhysicalConstants&) const = default;
};

/// Label recorded in result metadata for the default m0.
inline constexpr std::string_view kNucleonMassConvention = "1 u (unified atomic mass unit)";

void validate(const PhysicalConstants& c);

/// Frequency range [f_lo, f_hi] in Hz, 0 < f_lo < f_hi.
struct FrequencyBand {
  double f_lo = 0.0;
  double f_hi = 0.0;

  bool operator==(const FrequencyBand&) const = default;
};

void validate(const FrequencyBand& band);

}  // namespace collapse
