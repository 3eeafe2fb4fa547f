#include "collapse/noise_simulator.hpp"

#include <cmath>
#include <complex>
#include <random>

#include <unsupported/Eigen/FFT>

#include "collapse/bound_engine.hpp"
#include "collapse/errors.hpp"

namespace collapse {

Eigen::Index SimulationConfig::samples() const {
  const Eigen::Index needed = segment_length * n_segments;
  if (duration <= 0.0) return needed;
  return static_cast<Eigen::Index>(std::floor(duration * sample_rate + 1e-9));
}

void validate(const SimulationConfig& config) {
  if (!(config.d_c >= 0.0) || !std::isfinite(config.d_c))
    throw ValidationError("d_c", "must be finite and >= 0");
  if (!(config.mass > 0.0) || !std::isfinite(config.mass))
    throw ValidationError("mass", "must be finite and > 0");
  if (!(config.sample_rate > 0.0) || !std::isfinite(config.sample_rate))
    throw ValidationError("sample_rate", "must be finite and > 0");
  if (config.duration < 0.0 || !std::isfinite(config.duration))
    throw ValidationError("duration", "must be finite and >= 0");
  if (config.n_masses != 1 && config.n_masses != 2)
    throw ValidationError("n_masses", "must be 1 or 2");
  if (config.segment_length < 4 || config.segment_length % 2 != 0)
    throw ValidationError("segment_length", "must be even and >= 4");
  if (config.n_segments < 8) throw ValidationError("n_segments", "must be >= 8");
  if (config.samples() < config.segment_length * config.n_segments)
    throw ValidationError("duration",
                          "sample_rate * duration must cover segment_length * n_segments");
}

SimulationConfig default_simulation_config() {
  SimulationConfig c;
  const TestMass tm = lisa_pathfinder_test_mass();
  c.d_c = d_max(lisa_pathfinder_noise(), tm).value;
  c.mass = tm.mass;
  return c;
}

std::vector<Series> simulate_white_force(const SimulationConfig& config) {
  validate(config);
  const Eigen::Index n = config.samples();
  const double sd = std::sqrt(config.d_c * config.sample_rate);
  std::vector<Series> out;
  out.reserve(static_cast<std::size_t>(config.n_masses));
  for (int stream = 0; stream < config.n_masses; ++stream) {
    if (config.d_c == 0.0) {
      out.emplace_back(Series::Zero(n));
      continue;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(stream), 0x5eedu};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, sd);
    Series s(n);
    for (Eigen::Index i = 0; i < n; ++i) s[i] = normal(rng);
    out.push_back(std::move(s));
  }
  return out;
}

Series differential_acceleration(const Series& force_1, const Series& force_2, double mass) {
  if (force_1.size() != force_2.size())
    throw LengthMismatchError("force series lengths differ");
  if (!(mass > 0.0)) throw ValidationError("mass", "must be > 0");
  return (force_1 - force_2) / mass;
}

SpectrumEstimate estimate_psd(const Series& series, double sample_rate,
                              Eigen::Index segment_length, Eigen::Index n_segments) {
  if (!(sample_rate > 0.0)) throw ValidationError("sample_rate", "must be > 0");
  if (segment_length < 4 || segment_length % 2 != 0)
    throw ValidationError("segment_length", "must be even and >= 4");
  if (n_segments < 1) throw ValidationError("n_segments", "must be >= 1");
  if (series.size() < segment_length * n_segments)
    throw InsufficientDataError("series shorter than segment_length * n_segments");

  const Eigen::Index n = segment_length;
  const Eigen::Index half = n / 2;
  Eigen::FFT<double> fft;
  Eigen::VectorXd segment(n);
  Eigen::VectorXcd spectrum(n);
  Eigen::ArrayXd power = Eigen::ArrayXd::Zero(half + 1);
  for (Eigen::Index s = 0; s < n_segments; ++s) {
    segment = series.segment(s * n, n).matrix();
    fft.fwd(spectrum, segment);
    power += spectrum.head(half + 1).array().abs2();
  }

  SpectrumEstimate out;
  out.sample_rate = sample_rate;
  out.n_segments = n_segments;
  out.frequencies = Eigen::ArrayXd::LinSpaced(half + 1, 0.0, sample_rate / 2.0);
  // One-sided scaling: interior bins carry their mirror image.
  out.psd = power * (2.0 / (sample_rate * static_cast<double>(n) * static_cast<double>(n_segments)));
  out.psd[0] *= 0.5;
  out.psd[half] *= 0.5;

  out.bins_in_band = half - 1;
  const double mean = out.psd.segment(1, out.bins_in_band).mean();
  out.band_mean = {mean, mean / std::sqrt(static_cast<double>(n_segments * out.bins_in_band))};
  return out;
}

UncertainValue recover_diffusion(const SpectrumEstimate& spectrum, double mass, int n_masses) {
  if (!(mass > 0.0)) throw ValidationError("mass", "must be > 0");
  if (n_masses < 1) throw ValidationError("n_masses", "must be >= 1");
  return scale(spectrum.band_mean, mass * mass / (2.0 * n_masses));
}

AttributionReport verify_attribution(const SimulationConfig& config) {
  validate(config);
  const auto forces = simulate_white_force(config);
  const Series accel = config.n_masses == 2
                           ? differential_acceleration(forces[0], forces[1], config.mass)
                           : Series(forces[0] / config.mass);

  AttributionReport r;
  r.config = config;
  r.d_c_in = config.d_c;
  r.spectrum = estimate_psd(accel, config.sample_rate, config.segment_length, config.n_segments);
  r.d_c_recovered = recover_diffusion(r.spectrum, config.mass, config.n_masses);
  r.asd_expected = std::sqrt(2.0 * config.n_masses * config.d_c) / config.mass;
  r.asd_recovered = r.spectrum.band_mean.value > 0.0
                        ? propagate_power(r.spectrum.band_mean, 0.5)
                        : UncertainValue{0.0, 0.0};
  if (r.d_c_recovered.sigma > 0.0)
    r.z_score = (r.d_c_recovered.value - r.d_c_in) / r.d_c_recovered.sigma;
  else
    r.z_score = r.d_c_recovered.value == r.d_c_in ? 0.0 : INFINITY;
  r.passed = std::abs(r.z_score) <= kAttributionZThreshold;
  return r;
}

EnsembleReport verify_ensemble(const SimulationConfig& config, int trials) {
  if (trials < 1) throw ValidationError("trials", "must be >= 1");
  EnsembleReport e;
  e.trials = trials;
  e.d_c_in = config.d_c;
  int passed = 0;
  double sum = 0.0;
  for (int i = 0; i < trials; ++i) {
    SimulationConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(i);
    const auto r = verify_attribution(c);
    e.recovered.push_back(r.d_c_recovered.value);
    sum += r.d_c_recovered.value;
    passed += r.passed ? 1 : 0;
  }
  e.mean_recovered = sum / trials;
  e.relative_bias = e.d_c_in > 0.0 ? e.mean_recovered / e.d_c_in - 1.0 : 0.0;
  e.pass_fraction = static_cast<double>(passed) / trials;
  return e;
}

}  // namespace collapse
