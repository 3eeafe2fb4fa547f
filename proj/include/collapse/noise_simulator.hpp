#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "collapse/uncertain.hpp"

namespace collapse {

using Series = Eigen::ArrayXd;

/// Monte Carlo run of white collapse forces on one or two test masses.
struct SimulationConfig {
  double d_c = 0.0;           ///< kg^2 m^2 s^-3
  double mass = 1.928;        ///< kg
  double sample_rate = 1.0;   ///< Hz
  double duration = 0.0;      ///< s; 0 means exactly segment_length * n_segments samples
  int n_masses = 2;           ///< 1 (single mass) or 2 (differential)
  std::uint64_t seed = 1;
  Eigen::Index segment_length = 4096;
  Eigen::Index n_segments = 64;

  Eigen::Index samples() const;
};

/// Throws ValidationError naming the offending field.
void validate(const SimulationConfig& config);

/// Defaults: d_c = D_max of the LISA Pathfinder inputs, 64 x 4096 samples at 1 Hz.
SimulationConfig default_simulation_config();

/// One force series per mass, each i.i.d. Gaussian with variance d_c * f_s
/// (the sampled form of <F(t)F(t')> = d_c delta(t - t')). Mass i draws from
/// its own generator stream seeded by (seed, i), so output is a pure
/// function of the config.
std::vector<Series> simulate_white_force(const SimulationConfig& config);

/// (F1 - F2) / M.
Series differential_acceleration(const Series& force_1, const Series& force_2, double mass);

/// Single-sided averaged periodogram.
struct SpectrumEstimate {
  Eigen::ArrayXd frequencies;  ///< k f_s / N for k = 0..N/2
  Eigen::ArrayXd psd;          ///< per Hz
  /// Mean over bins 1..N/2-1 (DC and Nyquist excluded) with its standard
  /// error mean / sqrt(n_segments * n_bins).
  UncertainValue band_mean;
  Eigen::Index bins_in_band = 0;
  Eigen::Index n_segments = 0;
  double sample_rate = 0.0;
};

/// Rectangular window, non-overlapping segments, using the first
/// segment_length * n_segments samples. sum(psd) * f_s / N equals the mean
/// square of those samples.
SpectrumEstimate estimate_psd(const Series& series, double sample_rate,
                              Eigen::Index segment_length, Eigen::Index n_segments);

/// D = M^2 S_a / (2 n) from the band-mean PSD.
UncertainValue recover_diffusion(const SpectrumEstimate& spectrum, double mass, int n_masses);

struct AttributionReport {
  SimulationConfig config;
  double d_c_in = 0.0;
  UncertainValue d_c_recovered;
  double z_score = 0.0;
  double asd_expected = 0.0;  ///< sqrt(2 n d_c / M^2)
  UncertainValue asd_recovered;
  bool passed = false;        ///< |z| <= 3
  SpectrumEstimate spectrum;
};

inline constexpr double kAttributionZThreshold = 3.0;

/// simulate -> differential acceleration -> PSD -> D, compared with the input.
AttributionReport verify_attribution(const SimulationConfig& config);

struct EnsembleReport {
  int trials = 0;
  double d_c_in = 0.0;
  double mean_recovered = 0.0;
  double relative_bias = 0.0;   ///< mean / d_c_in - 1 (0 when d_c_in = 0)
  double pass_fraction = 0.0;
  std::vector<double> recovered;  ///< per trial, seed = config.seed + i
};

/// Runs `trials` independent verifications with consecutive seeds.
EnsembleReport verify_ensemble(const SimulationConfig& config, int trials);

}  // namespace collapse
