#pragma once

#include <string_view>

#include "collapse/mass_model.hpp"
#include "collapse/uncertain.hpp"
#include "collapse/units.hpp"

namespace collapse {

enum class ModelTag { csl, dp };

std::string_view to_string(ModelTag tag);

/// Continuous Spontaneous Localization parameters.
struct CSLParams {
  double lambda = 0.0;  ///< collapse rate, s^-1
  double r = 100e-9;    ///< correlation length, m
};

/// Diosi-Penrose regularization cut-off.
struct DPParams {
  double sigma = 0.0;  ///< m
};

/// Strength D of the white collapse force <F(t)F(t')> = D delta(t - t'),
/// in kg^2 m^2 s^-3.
struct DiffusionCoefficient {
  static constexpr units::Dimension dimension = units::kDiffusion;

  UncertainValue value;
  ModelTag model = ModelTag::csl;
};

/// Smallest side/correlation-length ratio at which the closed-form cube
/// factor is accepted.
inline constexpr double kAsymptoticRegimeRatio = 100.0;

/// Closed-form CSL geometric factor of a cube much larger than r:
/// alpha = 8 pi rho^2 r^4 b^2 / m0^2.
///
/// Throws OutOfRegimeError when b < 100 r; use the quadrature version there.
double csl_geometric_factor_cube(double density, double r, double b, double m0);

struct GeometricFactorQuadrature {
  double alpha = 0.0;
  double relative_error = 0.0;     ///< propagated from the 1-D error estimates
  double axial_integral = 0.0;     ///< I_x, m^-1
  double transverse_integral = 0.0;  ///< I_y = I_z, m
  long evaluations = 0;
};

/// CSL geometric factor of a uniform cube by numerical quadrature, valid at
/// any b/r. Normalized so that D = lambda (hbar/r)^2 alpha:
///
///   alpha = rho^2 r^5 / (pi^{3/2} m0^2) * I_x * I_y^2
///   I_x = int dk 4 sin^2(kb/2) e^{-k^2 r^2}
///   I_y = int dk (2 sin(kb/2)/k)^2 e^{-k^2 r^2}      (k over the real line)
///
/// For b >> r, I_x -> 2 sqrt(pi)/r (sin^2 averages to 1/2) and
/// I_y -> 2 pi b (the sinc^2 integral), which gives back the closed form.
/// Leading finite-size correction: alpha / alpha_cube ~= 1 - 4 r / (sqrt(pi) b).
///
/// Throws QuadratureError if a panel fails to converge.
GeometricFactorQuadrature csl_geometric_factor_quadrature(double density, double r, double b,
                                                          double m0, double rel_tol = 1e-6);

/// Shorthand for csl_geometric_factor_quadrature(...).alpha.
double csl_geometric_factor_numeric(double density, double r, double b, double m0,
                                    double rel_tol = 1e-6);

/// D = lambda (hbar/r)^2 alpha.
DiffusionCoefficient csl_diffusion(const CSLParams& params, double alpha, double hbar);

/// D = (G hbar / 6 sqrt(pi)) (a/sigma)^3 M rho.
DiffusionCoefficient dp_diffusion(const DPParams& params, const TestMass& test_mass, double hbar,
                                  double G);

}  // namespace collapse
