#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collapse/bound_engine.hpp"
#include "collapse/constants.hpp"
#include "collapse/mass_model.hpp"
#include "collapse/noise_simulator.hpp"

namespace collapse::cli {

/// Exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kIoError = 3,
};

/// Environment variable naming a default config file.
inline constexpr const char* kConfigEnvVar = "COLLAPSE_BOUNDS_CONFIG";

/// Everything a run needs. Built-ins reproduce the published numbers.
struct RunConfig {
  std::string preset = std::string(kLisaPathfinderPreset);
  TestMass test_mass = lisa_pathfinder_test_mass();
  NoiseSpec noise = lisa_pathfinder_noise();
  double r_csl = 100e-9;
  PhysicalConstants constants{};
  std::optional<std::string> catalog_path;
  SimulationConfig simulation = default_simulation_config();
};

/// Applies a JSON config document on top of `base`. Keys (all optional):
///
///   preset                    "lisa-pathfinder"
///   test_mass.mass            kg
///   test_mass.side_length     m
///   test_mass.material        {name, density, lattice_constant}
///                             or {name, components: [{material, mass_fraction}]}
///   noise.asd, noise.asd_sigma   m s^-2 Hz^-1/2 (asd without asd_sigma means sigma 0)
///   noise.band                {f_lo_hz, f_hi_hz}
///   noise.n_masses            integer
///   r_csl                     m
///   constants                 {hbar, G, m0}
///   catalog                   path to a catalog JSON file
///   simulation                {d_c, mass, sample_rate, duration, segment_length,
///                              n_segments, n_masses, seed}
///
/// Throws ValidationError naming the offending key.
RunConfig apply_config_text(std::string_view text, RunConfig base = {});

/// Entry point shared by the executable and the tests. `args[0]` is the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collapse::cli
