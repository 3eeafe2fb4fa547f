#include "collapse/bound_engine.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "collapse/errors.hpp"
#include "collapse/units.hpp"

namespace collapse {

namespace {

using std::numbers::pi;

std::string hexfloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace

void validate(const NoiseSpec& noise) {
  if (!(noise.asd.value > 0.0) || !std::isfinite(noise.asd.value))
    throw ValidationError("noise.asd", "must be finite and > 0");
  if (!(noise.asd.sigma >= 0.0) || !std::isfinite(noise.asd.sigma))
    throw ValidationError("noise.asd_sigma", "must be finite and >= 0");
  validate(noise.band);
  if (noise.n_masses < 1) throw ValidationError("noise.n_masses", "must be >= 1");
}

NoiseSpec lisa_pathfinder_noise() {
  using namespace units;
  return {{5.2 * femto_asd, 0.1 * femto_asd}, {0.7 * millihertz, 20.0 * millihertz}, 2};
}

NoiseSpec postulated_noise() {
  using namespace units;
  return {{3.5 * femto_asd, 0.0}, {0.7 * millihertz, 20.0 * millihertz}, 2};
}

UncertainValue d_max(const NoiseSpec& noise, const TestMass& test_mass) {
  validate(noise);
  validate(test_mass);
  const double m = test_mass.mass;
  const UncertainValue s_a = propagate_power(noise.asd, 2.0);
  return scale(s_a, m * m / (2.0 * noise.n_masses));
}

BoundResult lambda_csl_max(const NoiseSpec& noise, const TestMass& test_mass, double r_csl,
                           const PhysicalConstants& constants) {
  validate(noise);
  validate(test_mass);
  validate(constants);
  // Regime gate lives with the geometric factor.
  (void)csl_geometric_factor_cube(test_mass.material.density, r_csl, test_mass.side_length,
                                  constants.m0);

  const double m0 = constants.m0, hbar = constants.hbar, b = test_mass.side_length;
  const double volume_ratio = test_mass.mass / test_mass.material.density;
  const double prefactor = m0 * m0 / (16.0 * noise.n_masses * pi * hbar * hbar * r_csl * r_csl) *
                           volume_ratio * volume_ratio / (b * b);

  BoundResult out;
  out.model = ModelTag::csl;
  out.kind = BoundKind::upper;
  out.parameter_name = "lambda_csl";
  out.bound = scale(propagate_power(noise.asd, 2.0), prefactor);
  out.d_max = d_max(noise, test_mass);
  out.band = noise.band;
  out.inputs_digest = inputs_digest(constants, test_mass, noise, r_csl);
  return out;
}

BoundResult sigma_dp_min(const NoiseSpec& noise, const TestMass& test_mass,
                         const PhysicalConstants& constants) {
  validate(noise);
  validate(test_mass);
  validate(constants);

  const double rho = test_mass.material.density;
  const double inner = noise.n_masses * constants.hbar * constants.G / (3.0 * std::sqrt(pi)) *
                       rho / test_mass.mass;
  const double prefactor = std::cbrt(inner) * test_mass.material.lattice_constant;

  BoundResult out;
  out.model = ModelTag::dp;
  out.kind = BoundKind::lower;
  out.parameter_name = "sigma_dp";
  out.bound = scale(propagate_power(noise.asd, -2.0 / 3.0), prefactor);
  out.d_max = d_max(noise, test_mass);
  out.band = noise.band;
  out.inputs_digest = inputs_digest(constants, test_mass, noise, std::nullopt);
  return out;
}

UncertainValue invert_csl(const UncertainValue& d, double alpha, double r, double hbar) {
  if (alpha == 0.0) throw DivisionByZeroError("invert_csl: alpha is zero");
  if (!(alpha > 0.0)) throw DomainError("invert_csl: alpha must be positive");
  if (!(r > 0.0) || !(hbar > 0.0)) throw DomainError("invert_csl: r and hbar must be positive");
  const double h_over_r = hbar / r;
  return scale(d, 1.0 / (h_over_r * h_over_r * alpha));
}

UncertainValue invert_dp(const UncertainValue& d, const TestMass& test_mass, double hbar,
                         double G) {
  if (d.value == 0.0) throw DivisionByZeroError("invert_dp: D is zero");
  if (!(d.value > 0.0)) throw DomainError("invert_dp: D must be positive");
  const double strength = G * hbar / (6.0 * std::sqrt(pi)) * test_mass.mass *
                          test_mass.material.density;
  return scale(propagate_power(d, -1.0 / 3.0),
               std::cbrt(strength) * test_mass.material.lattice_constant);
}

std::string inputs_digest(const PhysicalConstants& constants, const TestMass& test_mass,
                          const NoiseSpec& noise, std::optional<double> r_csl) {
  std::ostringstream canon;
  canon << "hbar=" << hexfloat(constants.hbar) << ";G=" << hexfloat(constants.G)
        << ";m0=" << hexfloat(constants.m0) << ";mass=" << hexfloat(test_mass.mass)
        << ";side_length=" << hexfloat(test_mass.side_length)
        << ";density=" << hexfloat(test_mass.material.density)
        << ";lattice_constant=" << hexfloat(test_mass.material.lattice_constant)
        << ";asd=" << hexfloat(noise.asd.value) << ";asd_sigma=" << hexfloat(noise.asd.sigma)
        << ";f_lo=" << hexfloat(noise.band.f_lo) << ";f_hi=" << hexfloat(noise.band.f_hi)
        << ";n_masses=" << noise.n_masses
        << ";r_csl=" << (r_csl ? hexfloat(*r_csl) : std::string("none")) << ';';
  return sha256_hex(canon.str());
}

}  // namespace collapse
