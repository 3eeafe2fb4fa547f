#pragma once

#include <optional>
#include <string>

#include "collapse/collapse_models.hpp"
#include "collapse/constants.hpp"
#include "collapse/mass_model.hpp"
#include "collapse/uncertain.hpp"

namespace collapse {

/// Single-sided amplitude spectral density sqrt(S_a) of the differential
/// acceleration between test masses, in m s^-2 Hz^-1/2.
struct NoiseSpec {
  UncertainValue asd;
  FrequencyBand band;
  int n_masses = 2;  ///< independently collapsing masses feeding the signal

  bool operator==(const NoiseSpec&) const = default;
};

void validate(const NoiseSpec& noise);

/// 5.2 +- 0.1 fm s^-2/sqrt(Hz) over 0.7-20 mHz, two test masses.
NoiseSpec lisa_pathfinder_noise();

/// The postulated improved sensitivity, 3.5 fm s^-2/sqrt(Hz), no stated error.
NoiseSpec postulated_noise();

enum class BoundKind { upper, lower };

struct BoundResult {
  ModelTag model = ModelTag::csl;
  BoundKind kind = BoundKind::upper;
  std::string parameter_name;
  UncertainValue bound;  ///< s^-1 for CSL, m for DP
  UncertainValue d_max;  ///< kg^2 m^2 s^-3
  FrequencyBand band;
  std::string inputs_digest;
};

/// Largest collapse-force strength compatible with the measured noise when
/// all of it is attributed to collapse. With S_a = n S_F / M^2 and the
/// single-sided S_F = 2 D:  D_max = M^2 S_a / (2 n).
UncertainValue d_max(const NoiseSpec& noise, const TestMass& test_mass);

/// lambda_max = m0^2 / (32 pi hbar^2 r^2) (M/rho)^2 S_a / b^2   (n = 2).
/// Throws OutOfRegimeError when the cube is not much larger than r_csl.
BoundResult lambda_csl_max(const NoiseSpec& noise, const TestMass& test_mass, double r_csl,
                           const PhysicalConstants& constants = {});

/// sigma_min = [ (2 hbar G / 3 sqrt(pi)) (rho/M) / S_a ]^{1/3} a   (n = 2).
BoundResult sigma_dp_min(const NoiseSpec& noise, const TestMass& test_mass,
                         const PhysicalConstants& constants = {});

/// lambda = D / ((hbar/r)^2 alpha).
UncertainValue invert_csl(const UncertainValue& d, double alpha, double r, double hbar);

/// sigma = a [ (G hbar / 6 sqrt(pi)) M rho / D ]^{1/3}.
UncertainValue invert_dp(const UncertainValue& d, const TestMass& test_mass, double hbar,
                         double G);

/// SHA-256 over a canonical hex-float rendering of every input. `r_csl` is
/// absent for DP results.
std::string inputs_digest(const PhysicalConstants& constants, const TestMass& test_mass,
                          const NoiseSpec& noise, std::optional<double> r_csl);

}  // namespace collapse
