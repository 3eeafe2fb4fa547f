#include "collapse/collapse_models.hpp"

#include <cmath>
#include <numbers>

#include "collapse/errors.hpp"
#include "collapse/quadrature.hpp"

namespace collapse {

namespace {

using std::numbers::pi;

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(field, "must be finite and > 0");
}

void require_non_negative(double v, const char* field) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(field, "must be finite and >= 0");
}

// (2 sin(x/2) / k)^2 with x = k b, continuous through k = 0.
double box_transform_squared(double k, double b) {
  const double x = 0.5 * k * b;
  if (std::abs(x) < 1e-4) {
    const double s = b * (1.0 - x * x / 6.0);
    return s * s;
  }
  const double s = 2.0 * std::sin(x) / k;
  return s * s;
}

}  // namespace

std::string_view to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::csl:
      return "CSL";
    case ModelTag::dp:
      return "DP";
  }
  return "?";
}

double csl_geometric_factor_cube(double density, double r, double b, double m0) {
  require_non_negative(density, "density");
  require_positive(r, "r_csl");
  require_positive(b, "side_length");
  require_positive(m0, "m0");
  if (b < kAsymptoticRegimeRatio * r)
    throw OutOfRegimeError("closed-form cube factor needs side_length >= 100 r_csl");

  const units::Density rho(density);
  const units::Length rc(r), side(b);
  const units::Mass nucleon(m0);
  const units::Dimensionless alpha =
      8.0 * pi * square(rho) * square(square(rc)) * square(side) / square(nucleon);
  return alpha.value();
}

GeometricFactorQuadrature csl_geometric_factor_quadrature(double density, double r, double b,
                                                          double m0, double rel_tol) {
  require_non_negative(density, "density");
  require_positive(r, "r_csl");
  require_positive(b, "side_length");
  require_positive(m0, "m0");
  require_positive(rel_tol, "rel_tol");

  GeometricFactorQuadrature out;
  if (density == 0.0) return out;

  // Both integrands are even in k and non-negative, so integrate over
  // [0, k_max] panel by panel; a per-panel relative tolerance then bounds the
  // relative error of the sum. Panels span one period of sin^2(kb/2).
  const double k_max = 50.0 / r;
  const double panel = std::min(2.0 * pi / b, 1.0 / r);
  const auto axial = [b, r](double k) {
    const double s = std::sin(0.5 * k * b);
    return 4.0 * s * s * std::exp(-k * k * r * r);
  };
  const auto transverse = [b, r](double k) {
    return box_transform_squared(k, b) * std::exp(-k * k * r * r);
  };

  double ix = 0.0, iy = 0.0, ex = 0.0, ey = 0.0;
  const double tail_target = 1e-3 * rel_tol;
  for (long i = 0;; ++i) {
    const double lo = static_cast<double>(i) * panel;
    if (lo >= k_max) break;
    const double hi = std::min(lo + panel, k_max);
    const auto px = integrate_adaptive(axial, lo, hi, rel_tol);
    const auto py = integrate_adaptive(transverse, lo, hi, rel_tol);
    ix += px.value;
    iy += py.value;
    ex += px.error_estimate;
    ey += py.error_estimate;
    out.evaluations += px.evaluations + py.evaluations;

    // Remaining mass under the Gaussian envelope beyond hi:
    // int_hi^inf 4 e^{-k^2 r^2} dk  (divided by hi^2 for the transverse one).
    const double envelope_tail = 2.0 * std::sqrt(pi) / r * std::erfc(hi * r);
    if (envelope_tail <= tail_target * ix && envelope_tail / (hi * hi) <= tail_target * iy) {
      ex += envelope_tail;
      ey += envelope_tail / (hi * hi);
      break;
    }
  }

  out.axial_integral = 2.0 * ix;
  out.transverse_integral = 2.0 * iy;
  const double rel_x = ex / ix;
  const double rel_y = ey / iy;
  out.relative_error = rel_x + 2.0 * rel_y;
  if (!(out.relative_error <= 10.0 * rel_tol))
    throw QuadratureError("geometric factor quadrature above tolerance", out.relative_error);

  const double r5 = r * r * r * r * r;
  out.alpha = density * density * r5 / (std::pow(pi, 1.5) * m0 * m0) * out.axial_integral *
              out.transverse_integral * out.transverse_integral;
  return out;
}

double csl_geometric_factor_numeric(double density, double r, double b, double m0,
                                    double rel_tol) {
  return csl_geometric_factor_quadrature(density, r, b, m0, rel_tol).alpha;
}

DiffusionCoefficient csl_diffusion(const CSLParams& params, double alpha, double hbar) {
  require_non_negative(params.lambda, "lambda_csl");
  require_positive(params.r, "r_csl");
  require_non_negative(alpha, "alpha");
  require_positive(hbar, "hbar");

  const units::Rate lambda(params.lambda);
  const units::Action h(hbar);
  const units::Length r(params.r);
  const units::Diffusion d = lambda * square(h / r) * units::Dimensionless(alpha);
  return {{d.value(), 0.0}, ModelTag::csl};
}

DiffusionCoefficient dp_diffusion(const DPParams& params, const TestMass& test_mass, double hbar,
                                  double G) {
  require_positive(params.sigma, "sigma_dp");
  require_non_negative(test_mass.mass, "test_mass.mass");
  require_non_negative(test_mass.material.density, "material.density");
  require_positive(test_mass.material.lattice_constant, "material.lattice_constant");
  require_positive(hbar, "hbar");
  require_positive(G, "G");

  const units::Gravitation grav(G);
  const units::Action h(hbar);
  const units::Length a(test_mass.material.lattice_constant), sigma(params.sigma);
  const units::Mass m(test_mass.mass);
  const units::Density rho(test_mass.material.density);
  const units::Diffusion d =
      grav * h / (6.0 * std::sqrt(pi)) * cube(a / sigma) * m * rho;
  return {{d.value(), 0.0}, ModelTag::dp};
}

}  // namespace collapse
